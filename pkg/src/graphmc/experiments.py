"""Monte Carlo experiment harness: configs, success-rate sweeps, CSV output.

A sweep varies one axis (p, I1, I2, theta, theta_a or theta_r) over a
linearly spaced range, runs ``trials`` independent
generate-estimate-score rounds per point, and writes one CSV row per point
with the empirical success rate, a 95% Wilson interval, and the theory
thresholds evaluated at the same parameters (slack epsilon = 0).

Success rates estimate the error probability under a uniform prior over
canonically oriented ground truths, not the worst case over ground truths:
the maximum is not observable by sampling, and averaging is what the
converse argument bounds anyway.

Everything is deterministic given the config file and master seed: points
get pairwise distinct derived seeds, trials likewise, and rows are written
in axis order regardless of worker scheduling (only the elapsed_ms column
varies between runs).
"""

from __future__ import annotations

import configparser
import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .bounds import wilson_interval
from .estimators import exact_recovery, ml_exhaustive, ml_local_search
from .model import GroundTruth, ModelKind, ModelParams, Seed, generate_instance
from .thresholds import (Regime, ThresholdReport, graph_quality, model2_achievable_p,
                         model2_converse_p, msp_model1)

CSV_COLUMNS = ("axis_name", "axis_value", "success_rate", "ci_low", "ci_high",
               "trials", "theory_achievable_p", "theory_converse_p", "regime",
               "elapsed_ms", "seed")

SWEEP_AXES = ("p", "I1", "I2", "theta", "theta_a", "theta_r")


class ConfigError(Exception):
    """Malformed or contradictory experiment configuration."""


class InfeasibleParameterError(Exception):
    """Requested graph quality cannot be met by any alpha < 1."""


def solve_graph_params(I_target: float, size: int, beta_base: float) -> tuple[float, float]:
    """Back-solve (alpha, beta) giving graph quality I with beta fixed.

    sqrt(alpha) = sqrt(beta) + sqrt(I log(size) / size); raises
    InfeasibleParameterError when that lands at or beyond alpha = 1.
    """
    if size < 2:
        raise ValueError("size must be >= 2")
    if not 0.0 < beta_base < 1.0:
        raise ValueError("beta_base must lie strictly inside (0, 1)")
    if I_target < 0:
        raise ValueError("graph quality target must be nonnegative")
    if I_target == 0.0:
        return beta_base, beta_base
    alpha = (math.sqrt(beta_base) + math.sqrt(I_target * math.log(size) / size)) ** 2
    if alpha >= 1.0:
        raise InfeasibleParameterError(
            f"I = {I_target} needs alpha = {alpha:.4f} >= 1 at size {size}, beta {beta_base}")
    return alpha, beta_base


# ---------------------------------------------------------------------------
# Configuration
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GraphSpec:
    """Either fixed (alpha, beta) or a quality target with a beta base."""

    alpha: float | None = None
    beta: float | None = None
    quality: float | None = None
    beta_base: float | None = None

    def resolve(self, size: int) -> tuple[float, float]:
        if self.alpha is not None:
            return self.alpha, self.beta
        return solve_graph_params(self.quality, size, self.beta_base)


@dataclass(frozen=True)
class ExperimentConfig:
    kind: ModelKind
    n: int
    m: int
    graph1: GraphSpec
    graph2: GraphSpec
    axis: str
    start: float
    stop: float
    steps: int
    trials: int
    estimator: str
    restarts: int
    master_seed: int
    out_path: str
    jobs: int = 1
    p: float | None = None
    theta: float | None = None
    theta_a: float | None = None
    theta_r: float | None = None
    atypical_counts: tuple[int, int] | str | None = None

    @staticmethod
    def from_file(path: str) -> "ExperimentConfig":
        parser = configparser.ConfigParser()
        read = parser.read(path)
        if not read:
            raise ConfigError(f"cannot read config file {path}")
        return _parse_config(parser)


_KNOWN_KEYS = {
    "model": {"kind", "n", "m", "p", "theta", "theta_a", "theta_r",
              "alpha1", "beta1", "alpha2", "beta2", "i1", "i2",
              "beta1_base", "beta2_base", "atypical_counts"},
    "sweep": {"axis", "start", "stop", "steps"},
    "estimator": {"kind", "restarts"},
    "run": {"trials", "seed", "jobs"},
    "output": {"path"},
}


def _parse_config(parser: configparser.ConfigParser) -> ExperimentConfig:
    for section in parser.sections():
        if section not in _KNOWN_KEYS:
            raise ConfigError(f"unknown config section [{section}]")
        for key in parser[section]:
            if key not in _KNOWN_KEYS[section]:
                raise ConfigError(f"unknown key '{key}' in section [{section}]")
    for required in ("model", "sweep", "run", "output"):
        if required not in parser:
            raise ConfigError(f"missing config section [{required}]")

    model = parser["model"]
    try:
        kind = ModelKind(model.get("kind", ""))
    except ValueError:
        raise ConfigError("model.kind must be 'basic' or 'atypical'") from None

    sweep = parser["sweep"]
    axis = sweep.get("axis", "")
    if axis not in SWEEP_AXES:
        raise ConfigError(f"sweep.axis must be one of {SWEEP_AXES}")

    def model_float(key):
        if key.lower() in model:
            if key.lower() == axis.lower() or key == axis:
                raise ConfigError(f"model.{key} conflicts with sweeping axis '{axis}'")
            return model.getfloat(key)
        return None

    graph1 = _graph_spec(model, "1", swept=axis == "I1")
    graph2 = _graph_spec(model, "2", swept=axis == "I2")

    counts = None
    if "atypical_counts" in model:
        raw = model.get("atypical_counts").strip()
        if raw == "uniform":
            counts = "uniform"
        else:
            parts = raw.split()
            if len(parts) != 2:
                raise ConfigError("atypical_counts must be 'uniform' or two integers")
            counts = (int(parts[0]), int(parts[1]))

    try:
        steps = sweep.getint("steps")
        cfg = ExperimentConfig(
            kind=kind,
            n=model.getint("n"), m=model.getint("m"),
            p=model_float("p"),
            theta=model_float("theta"),
            theta_a=model_float("theta_a"), theta_r=model_float("theta_r"),
            graph1=graph1, graph2=graph2,
            atypical_counts=counts,
            axis=axis, start=sweep.getfloat("start"), stop=sweep.getfloat("stop"),
            steps=steps,
            trials=parser["run"].getint("trials"),
            estimator=parser.get("estimator", "kind", fallback="local_search"),
            restarts=parser.getint("estimator", "restarts", fallback=10),
            master_seed=parser["run"].getint("seed"),
            jobs=parser.getint("run", "jobs", fallback=1),
            out_path=parser["output"].get("path"),
        )
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"invalid config value: {exc}") from None
    _validate_config(cfg)
    return cfg


def _graph_spec(model, suffix: str, swept: bool) -> GraphSpec:
    alpha = model.getfloat(f"alpha{suffix}", fallback=None)
    beta = model.getfloat(f"beta{suffix}", fallback=None)
    quality = model.getfloat(f"i{suffix}", fallback=None)
    base = model.getfloat(f"beta{suffix}_base", fallback=None)
    if swept:
        if alpha is not None or beta is not None or quality is not None:
            raise ConfigError(f"sweeping I{suffix} conflicts with fixed graph-{suffix} keys")
        if base is None:
            raise ConfigError(f"sweeping I{suffix} requires beta{suffix}_base")
        return GraphSpec(quality=None, beta_base=base)
    if quality is not None:
        if alpha is not None or beta is not None:
            raise ConfigError(f"give either I{suffix}+beta{suffix}_base or alpha{suffix}+beta{suffix}")
        if base is None:
            raise ConfigError(f"I{suffix} requires beta{suffix}_base")
        return GraphSpec(quality=quality, beta_base=base)
    if alpha is None or beta is None:
        raise ConfigError(f"graph {suffix} needs alpha{suffix}+beta{suffix} or I{suffix}+beta{suffix}_base")
    return GraphSpec(alpha=alpha, beta=beta)


def _validate_config(cfg: ExperimentConfig):
    if cfg.steps < 1:
        raise ConfigError("sweep.steps must be >= 1")
    if cfg.start > cfg.stop:
        raise ConfigError("sweep range is empty (start > stop)")
    if cfg.trials < 1:
        raise ConfigError("run.trials must be >= 1")
    if cfg.estimator not in ("exhaustive", "local_search"):
        raise ConfigError("estimator.kind must be 'exhaustive' or 'local_search'")
    if cfg.restarts < 1:
        raise ConfigError("estimator.restarts must be >= 1")
    if cfg.jobs < 1:
        raise ConfigError("run.jobs must be >= 1")
    if cfg.kind is ModelKind.BASIC:
        if cfg.theta is None and cfg.axis != "theta":
            raise ConfigError("basic model requires model.theta")
        if cfg.axis in ("theta_a", "theta_r"):
            raise ConfigError("theta_a/theta_r axes require the atypical model")
    else:
        if cfg.theta_a is None and cfg.axis != "theta_a":
            raise ConfigError("atypical model requires model.theta_a")
        if cfg.theta_r is None and cfg.axis != "theta_r":
            raise ConfigError("atypical model requires model.theta_r")
        if cfg.axis == "theta":
            raise ConfigError("theta axis requires the basic model")
    if cfg.p is None and cfg.axis != "p":
        raise ConfigError("model.p is required unless sweeping p")


# ---------------------------------------------------------------------------
# Running
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PointResult:
    axis_name: str
    axis_value: float
    success_rate: float | None
    ci_low: float | None
    ci_high: float | None
    trials: int
    theory_achievable_p: float | None
    theory_converse_p: float | None
    regime: str
    elapsed_ms: float
    seed: int

    def csv_fields(self) -> list[str]:
        def num(x):
            return "" if x is None else repr(float(x))

        return [self.axis_name, repr(float(self.axis_value)), num(self.success_rate),
                num(self.ci_low), num(self.ci_high), str(self.trials),
                num(self.theory_achievable_p), num(self.theory_converse_p),
                self.regime, repr(float(self.elapsed_ms)), str(self.seed)]


@dataclass(frozen=True)
class ExperimentResult:
    config: ExperimentConfig
    rows: tuple[PointResult, ...]


def resolve_point(cfg: ExperimentConfig, axis_value: float) -> ModelParams:
    """Model parameters at one sweep point (may raise InfeasibleParameterError)."""
    values = {"p": cfg.p, "theta": cfg.theta, "theta_a": cfg.theta_a, "theta_r": cfg.theta_r}
    if cfg.axis in values:
        values[cfg.axis] = axis_value
    g1 = cfg.graph1 if cfg.axis != "I1" else replace(cfg.graph1, quality=axis_value)
    g2 = cfg.graph2 if cfg.axis != "I2" else replace(cfg.graph2, quality=axis_value)
    alpha1, beta1 = g1.resolve(cfg.n)
    alpha2, beta2 = g2.resolve(cfg.m)
    return ModelParams(kind=cfg.kind, n=cfg.n, m=cfg.m,
                       alpha1=alpha1, beta1=beta1, alpha2=alpha2, beta2=beta2,
                       p=values["p"], theta=values["theta"],
                       theta_a=values["theta_a"], theta_r=values["theta_r"])


def theory_reports(params: ModelParams) -> tuple[ThresholdReport, ThresholdReport]:
    """Achievable and converse thresholds (epsilon = 0) for these parameters."""
    I1 = graph_quality(params.alpha1, params.beta1, params.n)
    I2 = graph_quality(params.alpha2, params.beta2, params.m)
    if params.kind is ModelKind.BASIC:
        report = msp_model1(params.n, params.m, I1, I2, params.theta)
        return report, report  # the threshold is sharp at epsilon = 0
    ach = model2_achievable_p(params.n, params.m, I1, I2, params.theta_a, params.theta_r)
    con = model2_converse_p(params.n, params.m, I1, I2, params.theta_a, params.theta_r)
    return ach, con


def _estimate(obs, params: ModelParams, cfg: ExperimentConfig, seed: Seed) -> GroundTruth:
    if cfg.estimator == "exhaustive":
        return ml_exhaustive(obs, params)
    return ml_local_search(obs, params, cfg.restarts, seed)


def run_point(cfg: ExperimentConfig, axis_value: float, seed: Seed) -> PointResult:
    """One sweep point: ``trials`` generate-estimate-score rounds."""
    started = time.perf_counter()
    try:
        params = resolve_point(cfg, axis_value)
    except InfeasibleParameterError:
        return PointResult(axis_name=cfg.axis, axis_value=axis_value,
                           success_rate=None, ci_low=None, ci_high=None,
                           trials=cfg.trials, theory_achievable_p=None,
                           theory_converse_p=None, regime="infeasible",
                           elapsed_ms=0.0, seed=seed.master)
    successes = 0
    for t in range(cfg.trials):
        trial_seed = seed.derive("trial", t)
        xi, obs = generate_instance(params, cfg.atypical_counts, trial_seed)
        xi_hat = _estimate(obs, params, cfg, trial_seed.derive("search"))
        successes += exact_recovery(xi_hat, xi)
    low, high = wilson_interval(successes, cfg.trials)
    ach, con = theory_reports(params)
    elapsed = (time.perf_counter() - started) * 1000.0
    return PointResult(axis_name=cfg.axis, axis_value=axis_value,
                       success_rate=successes / cfg.trials, ci_low=low, ci_high=high,
                       trials=cfg.trials, theory_achievable_p=ach.p_value,
                       theory_converse_p=con.p_value, regime=ach.regime.value,
                       elapsed_ms=elapsed, seed=seed.master)


def axis_values(cfg: ExperimentConfig) -> np.ndarray:
    if cfg.steps == 1:
        return np.array([cfg.start])
    return np.linspace(cfg.start, cfg.stop, cfg.steps)


def run_sweep(cfg: ExperimentConfig, out_path: str | None = None) -> ExperimentResult:
    """Run every sweep point (up to ``jobs`` concurrently) and write the CSV."""
    master = Seed(cfg.master_seed)
    values = axis_values(cfg)
    seeds = [master.derive("point", i) for i in range(len(values))]
    if cfg.jobs > 1:
        with ThreadPoolExecutor(max_workers=cfg.jobs) as pool:
            rows = list(pool.map(lambda iv: run_point(cfg, float(values[iv]), seeds[iv]),
                                 range(len(values))))
    else:
        rows = [run_point(cfg, float(v), s) for v, s in zip(values, seeds)]
    result = ExperimentResult(config=cfg, rows=tuple(rows))
    write_csv(out_path or cfg.out_path, result.rows)
    return result


def write_csv(path: str, rows) -> None:
    """Write result rows atomically (tmp file + rename), header included."""
    tmp = path + ".tmp"
    with open(tmp, "w", encoding="utf-8") as fh:
        fh.write(",".join(CSV_COLUMNS) + "\n")
        for row in rows:
            fh.write(",".join(row.csv_fields()) + "\n")
    os.replace(tmp, path)
