"""Instance files: a human-readable text round-trip of (params, truth, observation).

Layout: a version line, then bracketed sections.  Scalars are ``key = value``
lines; the ratings section has one row per user with tokens 0/1/- (``-`` is
the erasure), and the graph sections have one 0/1 row per node.  Reading a
written file reproduces every field exactly.
"""

from __future__ import annotations

import numpy as np

from .model import ERASED, GroundTruth, ModelKind, ModelParams, Observation

_MAGIC = "graphmc-instance v1"
_SET_FIELDS = ("men", "typical_action", "atypical_action",
               "typical_romance", "atypical_romance")


def _format_set(values) -> str:
    return " ".join(str(i) for i in sorted(values))


def write_instance(path: str, params: ModelParams, xi: GroundTruth, obs: Observation) -> None:
    lines = [_MAGIC, "[params]", f"kind = {params.kind.value}",
             f"n = {params.n}", f"m = {params.m}"]
    if params.kind is ModelKind.BASIC:
        lines.append(f"theta = {params.theta!r}")
    else:
        lines.append(f"theta_a = {params.theta_a!r}")
        lines.append(f"theta_r = {params.theta_r!r}")
    for key in ("alpha1", "beta1", "alpha2", "beta2", "p"):
        lines.append(f"{key} = {getattr(params, key)!r}")

    lines.append("[ground_truth]")
    for key in _SET_FIELDS:
        lines.append(f"{key} = {_format_set(getattr(xi, key))}")

    lines.append("[ratings]")
    for row in obs.ratings:
        lines.append(" ".join("-" if x == ERASED else str(int(x)) for x in row))
    for name, graph in (("social_graph", obs.social_graph), ("movie_graph", obs.movie_graph)):
        lines.append(f"[{name}]")
        for row in graph:
            lines.append(" ".join("1" if x else "0" for x in row))
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def read_instance(path: str) -> tuple[ModelParams, GroundTruth, Observation]:
    with open(path, encoding="utf-8") as fh:
        lines = [line.rstrip("\n") for line in fh]
    if not lines or lines[0] != _MAGIC:
        raise ValueError(f"{path} is not a graphmc instance file")

    sections: dict[str, list[str]] = {}
    current = None
    for line in lines[1:]:
        if not line.strip():
            continue
        if line.startswith("["):
            current = line.strip("[]")
            sections[current] = []
        elif current is None:
            raise ValueError("content before the first section")
        else:
            sections[current].append(line)
    for needed in ("params", "ground_truth", "ratings", "social_graph", "movie_graph"):
        if needed not in sections:
            raise ValueError(f"missing section [{needed}]")

    scalars = dict(_split_kv(line) for line in sections["params"])
    kind = ModelKind(scalars.pop("kind"))
    n, m = int(scalars.pop("n")), int(scalars.pop("m"))
    params = ModelParams(kind=kind, n=n, m=m,
                         **{key: float(val) for key, val in scalars.items()})

    sets = dict(_split_kv(line, allow_empty=True) for line in sections["ground_truth"])
    parsed = {key: frozenset(int(tok) for tok in sets[key].split()) for key in _SET_FIELDS}
    xi = GroundTruth(n=n, m=m, **parsed)

    ratings = np.array([[ERASED if tok == "-" else int(tok) for tok in line.split()]
                        for line in sections["ratings"]], dtype=np.int8)
    social = np.array([[tok == "1" for tok in line.split()]
                       for line in sections["social_graph"]], dtype=bool)
    movie = np.array([[tok == "1" for tok in line.split()]
                      for line in sections["movie_graph"]], dtype=bool)
    obs = Observation(ratings=ratings, social_graph=social, movie_graph=movie)
    if (obs.n, obs.m) != (n, m):
        raise ValueError("array sections disagree with declared n, m")
    return params, xi, obs


def _split_kv(line: str, allow_empty: bool = False):
    key, sep, value = line.partition("=")
    if not sep or (not value.strip() and not allow_empty):
        raise ValueError(f"malformed line: {line!r}")
    return key.strip(), value.strip()
