"""Closed-form threshold landscape: synergy of the two graphs, regimes.

Reproduces the qualitative figure shapes numerically: for equal sizes the
minimum sample probability only moves when BOTH graph qualities are
positive; for n = 2m it falls linearly in I1 up to a kink, after which the
movie side dominates.  Then classifies a few (theta_a, theta_r) points of
the atypical model.
"""

import numpy as np

from graphmc import (classify_regime, model2_achievable_p, model2_converse_p,
                     msp_kink_i1, msp_model1)

print("equal sizes (n = m = 10000, theta = 0.2): p* versus I1")
for i2 in (0.0, 1.0, 2.0):
    row = [msp_model1(10_000, 10_000, i1, i2, 0.2).p_value
           for i1 in np.arange(0.0, 2.5, 0.5)]
    print(f"  I2 = {i2}: " + "  ".join(f"{p:.5f}" for p in row))
print("(one graph alone leaves the baseline untouched; two graphs lower it)\n")

n, m = 10_000, 5_000
kink = msp_kink_i1(n, m, 0.0)
print(f"n = 2m = {n}: the movie term takes over at I1 = {kink:.4f}")
for i1 in (0.0, 0.5, round(kink, 2), 1.5, 2.0):
    rep = msp_model1(n, m, i1, 0.0, 0.2)
    print(f"  I1 = {i1:<5} p* = {rep.p_value:.6f}  dominant = {rep.dominant_term.value}")
print()

print("atypical model at n = 5m = 10000: achievable and converse bounds")
for ta, tr in ((0.3, 0.03), (0.3, 0.15), (0.35, 0.1156), (0.25, 0.25)):
    regime = classify_regime(10_000, 2_000, ta, tr, rel_tol=0.01)
    ach = model2_achievable_p(10_000, 2_000, 0.0, 0.0, ta, tr)
    con = model2_converse_p(10_000, 2_000, 0.0, 0.0, ta, tr)
    print(f"  (theta_a, theta_r) = ({ta}, {tr}): regime = {regime.value}")
    print(f"     achievable p = {ach.p_value}, converse p = {con.p_value}, "
          f"feasible = {ach.feasible}")
