"""Command-line interface.

Subcommands: ``generate`` (write an instance file), ``estimate`` (recover
the clustering from an instance file), ``threshold`` (closed-form bounds
and regime classification, including a batch grid for regime maps),
``bound`` (pairwise / union Chernoff bounds), ``sweep`` (Monte Carlo
sweep from a config file).  Exit codes: 0 success, 2 configuration error,
3 infeasible parameters.
"""

from __future__ import annotations

import argparse
import sys

from . import io
from .bounds import TypeClassOverlap, pairwise_error_bound_model1, \
    pairwise_error_bound_model2, union_bound_total
from .estimators import exact_recovery, ml_exhaustive, ml_local_search
from .experiments import (ConfigError, ExperimentConfig, InfeasibleParameterError,
                          run_sweep, solve_graph_params)
from .model import ModelKind, ModelParams, Seed, generate_instance
from .thresholds import (classify_regime, graph_quality, model2_achievable_p,
                         model2_converse_p, msp_model1)

EXIT_CONFIG = 2
EXIT_INFEASIBLE = 3


def _add_model_args(parser: argparse.ArgumentParser, with_p: bool = True):
    parser.add_argument("--model", choices=("basic", "atypical"), required=True)
    parser.add_argument("--n", type=int, required=True)
    parser.add_argument("--m", type=int, required=True)
    parser.add_argument("--theta", type=float)
    parser.add_argument("--theta-a", type=float)
    parser.add_argument("--theta-r", type=float)
    for side in ("1", "2"):
        parser.add_argument(f"--alpha{side}", type=float)
        parser.add_argument(f"--beta{side}", type=float)
        parser.add_argument(f"--I{side}", type=float, dest=f"i{side}")
        parser.add_argument(f"--beta{side}-base", type=float)
    if with_p:
        parser.add_argument("--p", type=float, required=True)


def _params_from_args(args) -> ModelParams:
    def side(suffix):
        quality = getattr(args, f"i{suffix}")
        if quality is not None:
            base = getattr(args, f"beta{suffix}_base")
            if base is None:
                raise ConfigError(f"--I{suffix} requires --beta{suffix}-base")
            return solve_graph_params(quality, args.n if suffix == "1" else args.m, base)
        alpha = getattr(args, f"alpha{suffix}")
        beta = getattr(args, f"beta{suffix}")
        if alpha is None or beta is None:
            raise ConfigError(f"graph {suffix} needs --alpha{suffix}/--beta{suffix} "
                              f"or --I{suffix}/--beta{suffix}-base")
        return alpha, beta

    alpha1, beta1 = side("1")
    alpha2, beta2 = side("2")
    try:
        return ModelParams(kind=ModelKind(args.model), n=args.n, m=args.m,
                           alpha1=alpha1, beta1=beta1, alpha2=alpha2, beta2=beta2,
                           p=args.p, theta=args.theta,
                           theta_a=args.theta_a, theta_r=args.theta_r)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def _print_kv(pairs, out=sys.stdout):
    for key, value in pairs:
        print(f"{key} = {value}", file=out)


def _cmd_generate(args) -> int:
    params = _params_from_args(args)
    counts = None
    if args.atypical_counts is not None:
        if args.atypical_counts == "uniform":
            counts = "uniform"
        else:
            parts = args.atypical_counts.split()
            if len(parts) != 2:
                raise ConfigError("--atypical-counts takes 'uniform' or two integers")
            counts = (int(parts[0]), int(parts[1]))
    xi, obs = generate_instance(params, counts, Seed(args.seed))
    io.write_instance(args.out, params, xi, obs)
    print(f"wrote {args.out}")
    return 0


def _cmd_estimate(args) -> int:
    params, xi_true, obs = io.read_instance(getattr(args, "in"))
    if args.estimator == "exhaustive":
        xi_hat = ml_exhaustive(obs, params)
    else:
        xi_hat = ml_local_search(obs, params, args.restarts, Seed(args.seed))
    _print_kv([
        ("men", " ".join(str(i) for i in sorted(xi_hat.men))),
        ("typical_action", " ".join(str(j) for j in sorted(xi_hat.typical_action))),
        ("atypical_action", " ".join(str(j) for j in sorted(xi_hat.atypical_action))),
        ("typical_romance", " ".join(str(j) for j in sorted(xi_hat.typical_romance))),
        ("atypical_romance", " ".join(str(j) for j in sorted(xi_hat.atypical_romance))),
        ("exact_recovery", str(exact_recovery(xi_hat, xi_true)).lower()),
    ])
    return 0


def _cmd_threshold(args) -> int:
    if args.grid_res is not None:
        return _regime_grid(args)
    kind = ModelKind(args.model)
    pairs = [("model", args.model), ("n", args.n), ("m", args.m),
             ("I1", repr(args.i1)), ("I2", repr(args.i2)), ("epsilon", repr(args.epsilon))]
    if kind is ModelKind.BASIC:
        if args.theta is None:
            raise ConfigError("basic model requires --theta")
        ach = msp_model1(args.n, args.m, args.i1, args.i2, args.theta, args.epsilon)
        con = msp_model1(args.n, args.m, args.i1, args.i2, args.theta, -args.epsilon)
        pairs += [("theta", repr(args.theta))]
    else:
        if args.theta_a is None or args.theta_r is None:
            raise ConfigError("atypical model requires --theta-a and --theta-r")
        ach = model2_achievable_p(args.n, args.m, args.i1, args.i2,
                                  args.theta_a, args.theta_r, args.epsilon)
        con = model2_converse_p(args.n, args.m, args.i1, args.i2,
                                args.theta_a, args.theta_r, args.epsilon)
        pairs += [("theta_a", repr(args.theta_a)), ("theta_r", repr(args.theta_r)),
                  ("regime", classify_regime(args.n, args.m,
                                             args.theta_a, args.theta_r).value)]
    pairs += [("achievable_p", repr(ach.p_value)),
              ("achievable_dominant", ach.dominant_term.value),
              ("achievable_feasible", str(ach.feasible).lower()),
              ("achievable_exceeds_one", str(ach.exceeds_one).lower()),
              ("converse_p", repr(con.p_value)),
              ("converse_dominant", con.dominant_term.value),
              ("converse_feasible", str(con.feasible).lower())]
    _print_kv(pairs)
    return 0


def _regime_grid(args) -> int:
    """Batch regime classification over an evenly spaced (theta_a, theta_r) grid."""
    res = args.grid_res
    if res < 16:
        raise ConfigError("--grid-res must be at least 16")
    out = open(args.out, "w", encoding="utf-8") if args.out else sys.stdout
    try:
        print("theta_a,theta_r,regime", file=out)
        for i in range(res):
            theta_a = 0.5 * (i + 0.5) / res
            for j in range(res):
                theta_r = 0.5 * (j + 0.5) / res
                regime = classify_regime(args.n, args.m, theta_a, theta_r)
                print(f"{theta_a!r},{theta_r!r},{regime.value}", file=out)
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


def _cmd_bound(args) -> int:
    params = _params_from_args(args)
    I1 = args.i1 if args.i1 is not None else graph_quality(params.alpha1, params.beta1, params.n)
    I2 = args.i2 if args.i2 is not None else graph_quality(params.alpha2, params.beta2, params.m)
    pairs = [("I1", repr(I1)), ("I2", repr(I2))]
    if args.union:
        pairs.append(("union_bound_total", repr(union_bound_total(params, I1, I2))))
    if args.k1 is not None or args.k2 is not None:
        overlap = TypeClassOverlap(k1=args.k1 or 0, k2=args.k2 or 0,
                                   t_aa=args.taa, t_rr=args.trr,
                                   t_ar=args.tar, t_ra=args.tra)
        if params.kind is ModelKind.BASIC:
            value = pairwise_error_bound_model1(overlap, params, I1, I2)
            pairs.append(("pairwise_bound", repr(value)))
        else:
            phi = pairwise_error_bound_model2(overlap, params, I1, I2, form="phi")
            exact = pairwise_error_bound_model2(overlap, params, I1, I2, form="exact")
            pairs += [("pairwise_bound_phi", repr(phi)), ("pairwise_bound_exact", repr(exact))]
    _print_kv(pairs)
    return 0


def _cmd_sweep(args) -> int:
    if args.format != "csv":
        raise ConfigError(f"unsupported output format {args.format!r}")
    cfg = ExperimentConfig.from_file(args.config)
    if args.seed is not None:
        cfg = type(cfg)(**{**cfg.__dict__, "master_seed": args.seed})
    if args.jobs is not None:
        cfg = type(cfg)(**{**cfg.__dict__, "jobs": args.jobs})
    result = run_sweep(cfg, out_path=args.out)
    print(f"wrote {args.out or cfg.out_path} ({len(result.rows)} rows)")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="graphmc")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="sample an instance and write it to a file")
    _add_model_args(gen)
    gen.add_argument("--atypical-counts", help="'uniform' or two integers, e.g. '2 3'")
    gen.add_argument("--seed", type=int, required=True)
    gen.add_argument("--out", required=True)
    gen.set_defaults(func=_cmd_generate)

    est = sub.add_parser("estimate", help="run an estimator on an instance file")
    est.add_argument("--in", required=True)
    est.add_argument("--estimator", choices=("exhaustive", "local_search"),
                     default="local_search")
    est.add_argument("--restarts", type=int, default=10)
    est.add_argument("--seed", type=int, default=0)
    est.set_defaults(func=_cmd_estimate)

    thr = sub.add_parser("threshold", help="closed-form thresholds and regimes")
    thr.add_argument("--model", choices=("basic", "atypical"), required=True)
    thr.add_argument("--n", type=int, required=True)
    thr.add_argument("--m", type=int, required=True)
    thr.add_argument("--I1", type=float, default=0.0, dest="i1")
    thr.add_argument("--I2", type=float, default=0.0, dest="i2")
    thr.add_argument("--theta", type=float)
    thr.add_argument("--theta-a", type=float)
    thr.add_argument("--theta-r", type=float)
    thr.add_argument("--epsilon", type=float, default=0.0)
    thr.add_argument("--grid-res", type=int,
                     help="emit a regime grid over (theta_a, theta_r) at this resolution")
    thr.add_argument("--out", help="grid output file (default: stdout)")
    thr.set_defaults(func=_cmd_threshold)

    bnd = sub.add_parser("bound", help="pairwise and union Chernoff bounds")
    _add_model_args(bnd)
    bnd.add_argument("--union", action="store_true")
    bnd.add_argument("--k1", type=int)
    bnd.add_argument("--k2", type=int)
    bnd.add_argument("--taa", type=int, default=0)
    bnd.add_argument("--trr", type=int, default=0)
    bnd.add_argument("--tar", type=int, default=0)
    bnd.add_argument("--tra", type=int, default=0)
    bnd.set_defaults(func=_cmd_bound)

    swp = sub.add_parser("sweep", help="run a Monte Carlo sweep from a config file")
    swp.add_argument("--config", required=True)
    swp.add_argument("--seed", type=int)
    swp.add_argument("--jobs", type=int)
    swp.add_argument("--out")
    swp.add_argument("--format", choices=("csv",), default="csv")
    swp.set_defaults(func=_cmd_sweep)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except InfeasibleParameterError as exc:
        print(f"infeasible parameters: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
