"""A small Monte Carlo phase-transition sweep, end to end.

Builds an experiment config programmatically, sweeps the sample probability
through the predicted threshold at a modest size, and prints the resulting
CSV rows (the same artifact the plotting layer consumes).
"""

import tempfile

from graphmc import ExperimentConfig, ModelKind, msp_model1, run_sweep
from graphmc.experiments import GraphSpec

n = m = 64
pstar = msp_model1(n, m, 0.0, 0.0, 0.2).p_value
print(f"n = m = {n}, theta = 0.2: predicted threshold p* = {pstar:.4f}")

with tempfile.NamedTemporaryFile(suffix=".csv", delete=False) as handle:
    out_path = handle.name

config = ExperimentConfig(
    kind=ModelKind.BASIC,
    n=n, m=m, theta=0.2,
    graph1=GraphSpec(alpha=0.2, beta=0.2),   # I1 = 0
    graph2=GraphSpec(alpha=0.2, beta=0.2),   # I2 = 0
    axis="p", start=0.3 * pstar, stop=2.1 * pstar, steps=7,
    trials=20, estimator="local_search", restarts=8,
    master_seed=20_260_810, out_path=out_path,
)

result = run_sweep(config)
print(f"wrote {out_path}\n")
print(f"{'p':>8}  {'success':>7}  {'95% CI':>18}  theory p*")
for row in result.rows:
    print(f"{row.axis_value:8.4f}  {row.success_rate:7.2f}  "
          f"[{row.ci_low:.2f}, {row.ci_high:.2f}]    {row.theory_achievable_p:.4f}")
