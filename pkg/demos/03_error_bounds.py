"""Chernoff pairwise bounds versus Monte Carlo error rates, and union totals.

For a handful of overlap signatures, compares the closed-form pairwise
error bound against the simulated probability that the alternative beats
the truth in likelihood, then shows the union bound collapsing as the
sample probability grows past the threshold.
"""

from graphmc import (GroundTruth, ModelKind, ModelParams, Seed,
                     empirical_pairwise_error, graph_quality, msp_model1,
                     overlap_signature, pairwise_error_bound_model1,
                     sample_ground_truth, union_bound_total)

params = ModelParams(kind=ModelKind.BASIC, n=50, m=50,
                     alpha1=0.4, beta1=0.15, alpha2=0.4, beta2=0.15,
                     p=0.12, theta=0.2)
I1 = graph_quality(params.alpha1, params.beta1, params.n)
I2 = graph_quality(params.alpha2, params.beta2, params.m)
print(f"graph qualities: I1 = {I1:.3f}, I2 = {I2:.3f}, p = {params.p}")

xi = sample_ground_truth(params, None, Seed(1))


def swapped(xi, k_users, k_movies):
    men, women = sorted(xi.men), sorted(xi.women)
    act, rom = sorted(xi.action), sorted(xi.romance)
    new_men = men[k_users:] + women[:k_users]
    new_act = act[k_movies:] + rom[:k_movies]
    new_rom = [j for j in range(xi.m) if j not in new_act]
    return GroundTruth(n=xi.n, m=xi.m, men=frozenset(new_men),
                       typical_action=frozenset(new_act), atypical_action=frozenset(),
                       typical_romance=frozenset(new_rom), atypical_romance=frozenset())


print(f"{'overlap':<16}{'Chernoff bound':>16}{'Monte Carlo':>14}{'95% CI':>22}")
for k1, k2 in ((1, 0), (0, 1), (1, 1), (2, 0)):
    alt = swapped(xi, k1, k2)
    sig = overlap_signature(xi, alt)
    bound = pairwise_error_bound_model1(sig, params, I1, I2)
    est = empirical_pairwise_error(xi, alt, params, trials=1500, seed=Seed(k1 * 10 + k2))
    print(f"(k1={k1}, k2={k2})   {bound:>16.5f}{est.rate:>14.4f}"
          f"      [{est.ci_low:.4f}, {est.ci_high:.4f}]")

print("\nunion bound over every alternative, as p grows (I1 = I2 = 0):")
pstar = msp_model1(100, 100, 0.0, 0.0, 0.2).p_value
for mult in (0.5, 1.0, 1.5, 2.0, 3.0):
    noisy = ModelParams(kind=ModelKind.BASIC, n=100, m=100, alpha1=0.3, beta1=0.3,
                        alpha2=0.3, beta2=0.3, p=min(1.0, mult * pstar), theta=0.2)
    total = union_bound_total(noisy, 0.0, 0.0)
    print(f"  p = {mult:>3}*p*: total <= {total:.3e}")
