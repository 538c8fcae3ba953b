"""Computable objects from the achievability analysis.

For a ground truth and an alternative clustering at user overlap k1 and
movie overlap k2, the pairwise maximum-likelihood error probability admits
the Chernoff bound (basic model)

    P(L(alt) <= L(truth)) <= exp(-g1 I1 log(n)/n - g2 I2 log(m)/m - g3 p h(theta))

with g1 = n k1 - 2 k1^2, g2 = m k2 - 2 k2^2, g3 = 2 m k1 + 2 n k2 - 8 k1 k2.
The atypical model adds per-genre typicality disagreement counts
(t_aa, t_rr, and t_ar/t_ra on genre-switching movies); its bound comes in
two flavours, the exact per-bucket form and the relaxed closed form built
from Phi(k1, k2, t_aa, t_rr).  Summing bound times type-class cardinality
over every overlap signature yields an explicit finite-size upper bound on
the ML failure probability; an empirical Monte Carlo estimator of the true
pairwise error is provided for bound-validity testing.

All bound evaluation is done in the log domain; linear-domain outputs
underflow to exact zero below exp(-745) or so (use the log_* variants to
keep resolution).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln, logsumexp

from .likelihood import likelihood_constants, likelihood_difference
from .model import (ERASED, GroundTruth, ModelKind, ModelParams, Seed,
                    sample_observation)
from .thresholds import h, nu, tau

_Z95 = 1.959963984540054


@dataclass(frozen=True)
class TypeClassOverlap:
    """Overlap signature between a ground truth and an alternative.

    ``k1`` users per side and ``k2`` movies per genre switch cluster;
    ``t_aa``/``t_rr`` count typicality disagreements among movies keeping
    their genre, ``t_ar``/``t_ra`` among movies switching genre (the latter
    only enter the exact atypical-model bound; the Phi form drops them).
    """

    k1: int
    k2: int
    t_aa: int = 0
    t_rr: int = 0
    t_ar: int = 0
    t_ra: int = 0

    def validate(self, params: ModelParams):
        n, m = params.n, params.m
        if not (0 <= self.k1 and 4 * self.k1 <= n):
            raise ValueError(f"k1 must lie in [0, n/4], got {self.k1}")
        if not (0 <= self.k2 and 4 * self.k2 <= m):
            raise ValueError(f"k2 must lie in [0, m/4], got {self.k2}")
        straight = m // 2 - self.k2
        for name, t, cap in (("t_aa", self.t_aa, straight), ("t_rr", self.t_rr, straight),
                             ("t_ar", self.t_ar, self.k2), ("t_ra", self.t_ra, self.k2)):
            if not 0 <= t <= cap:
                raise ValueError(f"{name} must lie in [0, {cap}], got {t}")
        if params.kind is ModelKind.BASIC:
            # without typicality flags the only admissible pattern is the
            # forced one: genre switches flip the nominal column, nothing else
            if self.t_aa or self.t_rr or self.t_ar != self.t_ra or \
                    self.t_ar not in (0, self.k2):
                raise ValueError("typicality disagreements require the atypical model")


def g1(n: int, k1: int) -> int:
    return n * k1 - 2 * k1 * k1


def g2(m: int, k2: int) -> int:
    return m * k2 - 2 * k2 * k2


def g3(n: int, m: int, k1: int, k2: int) -> int:
    return 2 * m * k1 + 2 * n * k2 - 8 * k1 * k2


def overlap_signature(xi: GroundTruth, xi2: GroundTruth) -> TypeClassOverlap:
    """Overlap signature of xi2 relative to xi (t counts use w = genre*typ)."""
    if (xi.n, xi.m) != (xi2.n, xi2.m):
        raise ValueError("clusterings have different shapes")
    k1 = len(xi.men - xi2.men)
    w1 = xi.genre_spins() * xi.typicality_spins()
    w2 = xi2.genre_spins() * xi2.typicality_spins()
    act1, act2 = xi.genre_spins() > 0, xi2.genre_spins() > 0
    diff = w1 != w2
    return TypeClassOverlap(
        k1=k1,
        k2=int((act1 & ~act2).sum()),
        t_aa=int((diff & act1 & act2).sum()),
        t_rr=int((diff & ~act1 & ~act2).sum()),
        t_ar=int((diff & act1 & ~act2).sum()),
        t_ra=int((diff & ~act1 & act2).sum()),
    )


# ---------------------------------------------------------------------------
# Pairwise Chernoff bounds
# ---------------------------------------------------------------------------

def log_pairwise_error_bound_model1(overlap: TypeClassOverlap, params: ModelParams,
                                    I1: float, I2: float) -> float:
    if params.kind is not ModelKind.BASIC:
        raise ValueError("basic-model bound called with atypical params")
    overlap.validate(params)
    n, m = params.n, params.m
    return -(g1(n, overlap.k1) * I1 * math.log(n) / n
             + g2(m, overlap.k2) * I2 * math.log(m) / m
             + g3(n, m, overlap.k1, overlap.k2) * params.p * h(params.theta))


def pairwise_error_bound_model1(overlap: TypeClassOverlap, params: ModelParams,
                                I1: float, I2: float) -> float:
    """exp(-g1 I1 log(n)/n - g2 I2 log(m)/m - g3 p h(theta))."""
    return math.exp(log_pairwise_error_bound_model1(overlap, params, I1, I2))


def phi_exponent(overlap: TypeClassOverlap, params: ModelParams) -> float:
    """Phi(k1, k2, t_aa, t_rr): the relaxed rating exponent (without p)."""
    n, m = params.n, params.m
    nu_aa, nu_rr = h(params.theta_a), h(params.theta_r)
    tau_ar = tau(params.theta_a, params.theta_r) if params.theta_a != params.theta_r else 0.0
    return (2.0 * tau_ar * n * overlap.k2
            + overlap.k1 * (m - 2 * overlap.k2) * (nu_aa + nu_rr)
            + (overlap.t_aa + overlap.t_rr) * (n - 4 * overlap.k1) * min(nu_aa, nu_rr))


def _exact_rating_exponent(overlap: TypeClassOverlap, n: int, m: int,
                           theta_a: float, theta_r: float) -> float:
    """Sum over genre buckets of |S_e| tau + |S_ue| nu (without p).

    Per bucket, |S_ue| = (n - 2 k1) t + 2 k1 (cols - t) where cols is the
    bucket's column count and t its typicality-disagreement count; tau
    vanishes on the same-genre buckets.
    """
    k1, k2 = overlap.k1, overlap.k2
    straight = m // 2 - k2
    nu_aa, nu_rr = h(theta_a), h(theta_r)
    nu_ar = nu(theta_a, theta_r)
    tau_ar = tau(theta_a, theta_r)

    def s_ue(t, cols):
        return (n - 2 * k1) * t + 2 * k1 * (cols - t)

    total = nu_aa * s_ue(overlap.t_aa, straight) + nu_rr * s_ue(overlap.t_rr, straight)
    for t in (overlap.t_ar, overlap.t_ra):
        ue = s_ue(t, k2)
        total += tau_ar * (n * k2 - ue) + nu_ar * ue
    return total


def log_pairwise_error_bound_model2(overlap: TypeClassOverlap, params: ModelParams,
                                    I1: float, I2: float, form: str = "phi") -> float:
    if params.kind is not ModelKind.ATYPICAL:
        raise ValueError("atypical-model bound called with basic params")
    overlap.validate(params)
    n, m = params.n, params.m
    graph = (g1(n, overlap.k1) * I1 * math.log(n) / n
             + g2(m, overlap.k2) * I2 * math.log(m) / m)
    if form == "phi":
        rating = phi_exponent(overlap, params)
    elif form == "exact":
        rating = _exact_rating_exponent(overlap, n, m, params.theta_a, params.theta_r)
    else:
        raise ValueError(f"unknown bound form {form!r}")
    return -(graph + params.p * rating)


def pairwise_error_bound_model2(overlap: TypeClassOverlap, params: ModelParams,
                                I1: float, I2: float, form: str = "phi") -> float:
    """Atypical-model pairwise bound; form='exact' keeps the per-bucket
    tau/nu terms (tighter), form='phi' the relaxed closed form."""
    return math.exp(log_pairwise_error_bound_model2(overlap, params, I1, I2, form))


# ---------------------------------------------------------------------------
# Type-class cardinalities
# ---------------------------------------------------------------------------

def type_class_count(overlap: TypeClassOverlap, params: ModelParams,
                     sum_cross: bool = False) -> int:
    """Exact number of alternatives sharing this overlap signature.

    For the atypical model, ``sum_cross=True`` sums out the t_ar/t_ra
    coordinates (factor 4^k2); otherwise they are held fixed.
    """
    overlap.validate(params)
    n2, m2 = params.n // 2, params.m // 2
    count = math.comb(n2, overlap.k1) ** 2 * math.comb(m2, overlap.k2) ** 2
    if params.kind is ModelKind.BASIC:
        return count
    straight = m2 - overlap.k2
    count *= math.comb(straight, overlap.t_aa) * math.comb(straight, overlap.t_rr)
    if sum_cross:
        return count * 4 ** overlap.k2
    return count * math.comb(overlap.k2, overlap.t_ar) * math.comb(overlap.k2, overlap.t_ra)


def log_type_class_count(overlap: TypeClassOverlap, params: ModelParams,
                         sum_cross: bool = False) -> float:
    """Overflow-safe log of :func:`type_class_count`."""
    return math.log(type_class_count(overlap, params, sum_cross))


# ---------------------------------------------------------------------------
# Union bound over the whole parameter space
# ---------------------------------------------------------------------------

def _log_binom(n: int, k: np.ndarray) -> np.ndarray:
    return gammaln(n + 1) - gammaln(k + 1) - gammaln(n - k + 1)


def union_bound_total(params: ModelParams, I1: float, I2: float) -> float:
    """Explicit finite-size union bound on the ML failure probability.

    Sums count times pairwise bound over every overlap signature of the full
    alternative space (k1 up to n/2, k2 up to m/2; the Chernoff exponents
    are exact combinatorial identities on that whole range), excluding the
    ground truth's indistinguishability orbit.  Basic-model alternatives
    come in flip pairs with identical likelihoods, so that sum is halved;
    the atypical sum is left whole (its flip pairs are distinct hypotheses
    whenever theta_a != theta_r), making it at most a factor 2 conservative
    on the diagonal.
    """
    n, m = params.n, params.m
    k1 = np.arange(n // 2 + 1)[:, None]
    k2 = np.arange(m // 2 + 1)[None, :]
    log_counts = 2.0 * _log_binom(n // 2, k1) + 2.0 * _log_binom(m // 2, k2)
    graph_exponent = ((n * k1 - 2 * k1 ** 2) * I1 * math.log(n) / n
                      + (m * k2 - 2 * k2 ** 2) * I2 * math.log(m) / m)

    if params.kind is ModelKind.BASIC:
        rating = (2 * m * k1 + 2 * n * k2 - 8 * k1 * k2) * params.p * h(params.theta)
        log_terms = log_counts - graph_exponent - rating
        log_terms[0, 0] = -np.inf          # the truth itself
        log_terms[-1, -1] = -np.inf        # its flip (same likelihood)
        return float(np.exp(logsumexp(log_terms))) / 2.0

    nu_aa, nu_rr = h(params.theta_a), h(params.theta_r)
    nu_ar = nu(params.theta_a, params.theta_r)
    tau_ar = tau(params.theta_a, params.theta_r)
    p = params.p
    straight = m // 2 - k2
    base = p * (2.0 * k1 * straight * (nu_aa + nu_rr)
                + 2.0 * tau_ar * n * k2
                + 4.0 * k1 * k2 * (nu_ar - tau_ar))
    # Binomial sums over the four t coordinates collapse to (1 + e^x)^count.
    lever = -(p * (n - 4 * k1)).astype(float)
    t_sums = (straight * (np.logaddexp(0.0, nu_aa * lever) + np.logaddexp(0.0, nu_rr * lever))
              + 2.0 * k2 * np.logaddexp(0.0, (nu_ar - tau_ar) * lever))
    log_cells = log_counts - graph_exponent - base + t_sums
    total = float(np.exp(logsumexp(log_cells)))
    # Remove the truth's whole indistinguishability orbit: itself, the
    # user+typicality flip (bound exactly 1), and the two genre-swapping
    # flips whose exact bound is exp(-p n m tau_ar) each.
    total -= 2.0 + 2.0 * math.exp(-p * n * m * tau_ar)
    return max(total, 0.0)


# ---------------------------------------------------------------------------
# Monte Carlo pairwise error
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PairwiseErrorEstimate:
    rate: float
    ci_low: float
    ci_high: float
    trials: int
    errors: int


def wilson_interval(successes: int, trials: int, z: float = _Z95) -> tuple[float, float]:
    """Wilson score interval for a binomial proportion."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    phat = successes / trials
    denom = 1.0 + z * z / trials
    centre = phat + z * z / (2 * trials)
    half = z * math.sqrt(phat * (1 - phat) / trials + z * z / (4 * trials * trials))
    return (centre - half) / denom, (centre + half) / denom


class _PairEvaluator:
    """Per-pair caches for evaluating L(xi) - L(xi2) on fresh observations.

    Stores the edge-count difference weights and the per-entry rating
    weights of the likelihood-difference decomposition so each trial costs
    a handful of reductions; agrees with :func:`likelihood_difference`
    exactly (covered by tests).
    """

    def __init__(self, xi: GroundTruth, xi2: GroundTruth, params: ModelParams):
        from .model import build_nominal_matrix

        consts = likelihood_constants(params)
        men1 = np.zeros(xi.n, dtype=bool)
        men1[list(xi.men)] = True
        men2 = np.zeros(xi.n, dtype=bool)
        men2[list(xi2.men)] = True
        cross1 = men1[:, None] != men1[None, :]
        cross2 = men2[:, None] != men2[None, :]
        self.w_social = consts.d1 * (cross1.astype(float) - cross2.astype(float))
        act1, act2 = xi.genre_spins() > 0, xi2.genre_spins() > 0
        mcross1 = act1[:, None] != act1[None, :]
        mcross2 = act2[:, None] != act2[None, :]
        self.w_movie = consts.d2 * (mcross1.astype(float) - mcross2.astype(float))

        b1 = build_nominal_matrix(xi, params.kind)
        b2 = build_nominal_matrix(xi2, params.kind)
        eq = b1 == b2
        if params.kind is ModelKind.BASIC:
            theta = {"a": params.theta, "r": params.theta}
        else:
            theta = {"a": params.theta_a, "r": params.theta_r}
        f = {g: math.log((1 - theta[g]) / theta[g]) for g in ("a", "r")}
        gen1 = np.where(act1, "a", "r")
        gen2 = np.where(act2, "a", "r")
        w_base = np.zeros((xi.n, xi.m))
        w_match = np.zeros((xi.n, xi.m))
        w_mismatch = np.zeros((xi.n, xi.m))
        for j in range(xi.m):
            u, v = gen1[j], gen2[j]
            w_base[:, j] = np.where(eq[:, j], math.log(theta[u] / theta[v]),
                                    math.log((1 - theta[u]) / theta[v]))
            w_match[:, j] = np.where(eq[:, j], f[u] - f[v], 0.0)
            w_mismatch[:, j] = np.where(eq[:, j], 0.0, -(f[u] + f[v]))
        self.w_base, self.w_match, self.w_mismatch = w_base, w_match, w_mismatch
        self.b1 = b1

    def difference(self, obs) -> float:
        revealed = obs.ratings != ERASED
        match1 = revealed & (obs.ratings == self.b1)
        rating = (float((revealed * self.w_base).sum())
                  + float((match1 * self.w_match).sum())
                  + float(((revealed & ~match1) * self.w_mismatch).sum()))
        social = float((obs.social_graph * self.w_social).sum()) / 2.0
        movie = float((obs.movie_graph * self.w_movie).sum()) / 2.0
        return social + movie - rating


def empirical_pairwise_error(xi: GroundTruth, xi2: GroundTruth, params: ModelParams,
                             trials: int, seed: Seed) -> PairwiseErrorEstimate:
    """Monte Carlo estimate of P_xi(L(xi2) <= L(xi)) with a 95% Wilson CI.

    Fresh observations are generated from ``xi`` with per-trial derived
    seeds; likelihood ties count as errors, so the flip of xi scores rate 1
    in the basic model.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if xi2.encoding() == xi.encoding():
        raise ValueError("xi2 must differ from xi")
    evaluator = _PairEvaluator(xi, xi2, params)
    errors = 0
    for t in range(trials):
        obs = sample_observation(xi, params, seed.derive("trial", t))
        if evaluator.difference(obs) >= 0.0:
            errors += 1
    low, high = wilson_interval(errors, trials)
    return PairwiseErrorEstimate(rate=errors / trials, ci_low=low, ci_high=high,
                                 trials=trials, errors=errors)
