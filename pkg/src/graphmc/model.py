"""Generative model for rating matrices with two-sided graph side-information.

Conventions used throughout the package:

* ``n`` users are split into two equal clusters, "men" and "women"; ``m``
  movies are split into equal "action" and "romance" clusters.  In the
  atypical variant each genre additionally contains an arbitrary-sized
  atypical subset whose nominal column is the complement of the typical
  pattern for that genre.
* Nominal ratings: men like typical action (1) and atypical romance (1),
  dislike typical romance (0) and atypical action (0); women are the
  elementwise complement.
* The observed matrix reveals each personalized entry independently with
  probability ``p``; unrevealed entries carry the erasure value
  :data:`ERASED` (-1 in the int8 rating array, the token ``-`` on disk).
* Both graphs are symmetric SBMs with no self-loops: edge probability
  ``alpha`` inside a cluster and ``beta`` across.  The movie graph is
  clustered by genre only; atypicality never affects it.

All sampling is a pure function of (parameters, seed).  Seeds are derived
per purpose (partition / flips / reveals / each graph) so that, e.g.,
changing the sample probability does not perturb the flip pattern.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

ERASED = -1

# Dense boolean adjacency everywhere: desk scale tops out around 10^4 nodes
# (~100 MB per graph), which keeps one code path for all sizes.


class ModelKind(Enum):
    """Which generative table drives the nominal ratings."""

    BASIC = "basic"        # no atypical movies
    ATYPICAL = "atypical"  # per-genre atypical subsets, per-genre flip rates


class Seed:
    """Master seed plus labelled, independently derived substreams.

    Identical (master, labels) always yields a bit-identical generator,
    independent of platform and of any other stream's consumption.
    """

    def __init__(self, master: int):
        if not 0 <= int(master) < 2**64:
            raise ValueError("master seed must be a 64-bit unsigned integer")
        self.master = int(master)

    def _entropy(self, labels: tuple) -> list[int]:
        ent = [self.master]
        for lab in labels:
            digest = hashlib.blake2b(str(lab).encode(), digest_size=8).digest()
            ent.append(int.from_bytes(digest, "little"))
        return ent

    def generator(self, *labels) -> np.random.Generator:
        """Generator for the substream named by ``labels``."""
        return np.random.default_rng(np.random.SeedSequence(self._entropy(labels)))

    def derive(self, *labels) -> "Seed":
        """Child seed for the substream named by ``labels`` (e.g. a trial index)."""
        seq = np.random.SeedSequence(self._entropy(labels))
        return Seed(int(seq.generate_state(1, np.uint64)[0]))

    def __repr__(self):
        return f"Seed({self.master})"

    def __eq__(self, other):
        return isinstance(other, Seed) and other.master == self.master


@dataclass(frozen=True)
class ModelParams:
    """All generative constants for one instance family.

    ``theta`` is the single personalization (flip) probability of the basic
    model; ``theta_a`` / ``theta_r`` are the per-genre flip probabilities of
    the atypical model.  Exactly the fields relevant to ``kind`` must be set.
    """

    kind: ModelKind
    n: int
    m: int
    alpha1: float
    beta1: float
    alpha2: float
    beta2: float
    p: float
    theta: float | None = None
    theta_a: float | None = None
    theta_r: float | None = None

    def __post_init__(self):
        # n, m >= 2 even: the spec's own enumeration oracles run at n = m = 2.
        for name, size in (("n", self.n), ("m", self.m)):
            if size < 2 or size % 2 != 0:
                raise ValueError(f"{name} must be an even integer >= 2, got {size}")
        for name, val in (("alpha1", self.alpha1), ("beta1", self.beta1),
                          ("alpha2", self.alpha2), ("beta2", self.beta2)):
            if not 0.0 < val < 1.0:
                raise ValueError(f"{name} must lie strictly inside (0, 1), got {val}")
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"p must lie in [0, 1], got {self.p}")
        if self.kind is ModelKind.BASIC:
            if self.theta is None:
                raise ValueError("basic model requires theta")
            if self.theta_a is not None or self.theta_r is not None:
                raise ValueError("theta_a/theta_r are only valid for the atypical model")
            _check_theta("theta", self.theta)
        else:
            if self.theta_a is None or self.theta_r is None:
                raise ValueError("atypical model requires theta_a and theta_r")
            if self.theta is not None:
                raise ValueError("theta is only valid for the basic model")
            _check_theta("theta_a", self.theta_a)
            _check_theta("theta_r", self.theta_r)

    def flip_probability(self, genre: str) -> float:
        """Flip probability for a genre ('a' or 'r')."""
        if self.kind is ModelKind.BASIC:
            return self.theta
        return self.theta_a if genre == "a" else self.theta_r


def _check_theta(name: str, value: float):
    if not 0.0 < value < 0.5:
        raise ValueError(f"{name} must lie strictly inside (0, 1/2), got {value}")


@dataclass(frozen=True)
class GroundTruth:
    """A hidden clustering: user partition plus genre/typicality partition.

    ``men`` holds user indices; the remaining users are women.  The four
    movie sets are pairwise disjoint, typical+atypical action has size m/2,
    and likewise for romance.  In the basic model both atypical sets are
    empty.  Instances are immutable and hashable.
    """

    n: int
    m: int
    men: frozenset[int]
    typical_action: frozenset[int]
    atypical_action: frozenset[int]
    typical_romance: frozenset[int]
    atypical_romance: frozenset[int]

    def __post_init__(self):
        if self.n < 2 or self.n % 2 or self.m < 2 or self.m % 2:
            raise ValueError("n and m must be even integers >= 2")
        if not self.men <= frozenset(range(self.n)) or len(self.men) != self.n // 2:
            raise ValueError("men must be a subset of [0, n) of size n/2")
        movie_sets = (self.typical_action, self.atypical_action,
                      self.typical_romance, self.atypical_romance)
        union = set()
        total = 0
        for s in movie_sets:
            union |= s
            total += len(s)
        if total != self.m or union != set(range(self.m)):
            raise ValueError("movie sets must partition [0, m)")
        if len(self.typical_action | self.atypical_action) != self.m // 2:
            raise ValueError("action movies (typical + atypical) must number m/2")

    # -- derived sets ------------------------------------------------------

    @property
    def women(self) -> frozenset[int]:
        return frozenset(range(self.n)) - self.men

    @property
    def action(self) -> frozenset[int]:
        return self.typical_action | self.atypical_action

    @property
    def romance(self) -> frozenset[int]:
        return self.typical_romance | self.atypical_romance

    @property
    def has_atypical(self) -> bool:
        return bool(self.atypical_action or self.atypical_romance)

    # -- spin encodings (+1/-1), the workhorse representation --------------

    def user_spins(self) -> np.ndarray:
        """+1 for men, -1 for women."""
        u = -np.ones(self.n, dtype=np.int8)
        u[list(self.men)] = 1
        return u

    def genre_spins(self) -> np.ndarray:
        """+1 for action movies, -1 for romance movies."""
        v = -np.ones(self.m, dtype=np.int8)
        v[list(self.action)] = 1
        return v

    def typicality_spins(self) -> np.ndarray:
        """+1 for typical movies, -1 for atypical movies (of either genre)."""
        s = np.ones(self.m, dtype=np.int8)
        atyp = list(self.atypical_action | self.atypical_romance)
        s[atyp] = -1
        return s

    def encoding(self) -> tuple:
        """Sorted-index-list encoding used for lexicographic tie-breaking."""
        return (tuple(sorted(self.men)),
                tuple(sorted(self.action)),
                tuple(sorted(self.atypical_action)),
                tuple(sorted(self.atypical_romance)))

    @staticmethod
    def from_spins(u: np.ndarray, v: np.ndarray, s: np.ndarray) -> "GroundTruth":
        n, m = len(u), len(v)
        men = frozenset(np.flatnonzero(u > 0).tolist())
        action = v > 0
        typical = s > 0
        return GroundTruth(
            n=n, m=m, men=men,
            typical_action=frozenset(np.flatnonzero(action & typical).tolist()),
            atypical_action=frozenset(np.flatnonzero(action & ~typical).tolist()),
            typical_romance=frozenset(np.flatnonzero(~action & typical).tolist()),
            atypical_romance=frozenset(np.flatnonzero(~action & ~typical).tolist()),
        )


@dataclass
class Observation:
    """What the learner sees: erased ratings plus the two graphs.

    ``ratings`` is an n x m int8 array over {0, 1, ERASED}; both adjacency
    matrices are symmetric boolean arrays with empty diagonals.
    """

    ratings: np.ndarray
    social_graph: np.ndarray
    movie_graph: np.ndarray

    def __post_init__(self):
        r = np.asarray(self.ratings)
        if r.ndim != 2:
            raise ValueError("ratings must be a 2-d array")
        if not np.isin(r, (0, 1, ERASED)).all():
            raise ValueError("ratings entries must be 0, 1 or ERASED")
        for name, g, size in (("social_graph", self.social_graph, r.shape[0]),
                              ("movie_graph", self.movie_graph, r.shape[1])):
            g = np.asarray(g)
            if g.shape != (size, size):
                raise ValueError(f"{name} must be {size} x {size}")
            if g.dtype != bool or (g != g.T).any() or g.diagonal().any():
                raise ValueError(f"{name} must be boolean, symmetric, with empty diagonal")

    @property
    def n(self) -> int:
        return self.ratings.shape[0]

    @property
    def m(self) -> int:
        return self.ratings.shape[1]


# ---------------------------------------------------------------------------
# Generation
# ---------------------------------------------------------------------------

def build_nominal_matrix(xi: GroundTruth, kind: ModelKind) -> np.ndarray:
    """Nominal 0/1 rating matrix implied by the clustering ``xi``.

    Entry (i, j) is 1 exactly when u_i * v_j * s_j = +1 in the spin encoding
    (man=+1, action=+1, typical=+1), which reproduces both rating tables.
    """
    if kind is ModelKind.BASIC and xi.has_atypical:
        raise ValueError("basic model does not admit atypical movies")
    u = xi.user_spins().astype(np.int8)
    w = (xi.genre_spins() * xi.typicality_spins()).astype(np.int8)
    return ((1 + np.outer(u, w)) // 2).astype(np.int8)


def sample_ground_truth(params: ModelParams,
                        atypical_counts=None,
                        seed: Seed | None = None) -> GroundTruth:
    """Draw a uniformly random clustering with canonical orientation.

    Both partitions are sampled uniformly and then label-flipped so that a
    majority of the first n/2 users are men and a majority of the first m/2
    movies are action (exact majority ties are resolved toward user 0 being
    a man, movie 0 being action).  ``atypical_counts`` is a pair
    (count_action, count_romance), or ``"uniform"``/``None`` to draw each
    count uniformly from [0, m/2]; it must be (0, 0)-equivalent for the
    basic model.
    """
    if seed is None:
        raise ValueError("sample_ground_truth requires a seed")
    rng = seed.generator("partition")
    n, m = params.n, params.m

    men = _canonical_half(rng.permutation(n)[: n // 2], n)
    action = _canonical_half(rng.permutation(m)[: m // 2], m)

    if params.kind is ModelKind.BASIC:
        if atypical_counts not in (None, (0, 0)):
            raise ValueError("atypical counts must be absent or (0, 0) for the basic model")
        count_a = count_r = 0
    elif atypical_counts is None or atypical_counts == "uniform":
        count_a = int(rng.integers(0, m // 2 + 1))
        count_r = int(rng.integers(0, m // 2 + 1))
    else:
        count_a, count_r = atypical_counts
        if not (0 <= count_a <= m // 2 and 0 <= count_r <= m // 2):
            raise ValueError("atypical counts must lie in [0, m/2]")

    action_list = sorted(action)
    romance_list = sorted(set(range(m)) - action)
    atyp_a = frozenset(rng.permutation(action_list)[:count_a].tolist())
    atyp_r = frozenset(rng.permutation(romance_list)[:count_r].tolist())

    return GroundTruth(
        n=n, m=m, men=men,
        typical_action=action - atyp_a, atypical_action=atyp_a,
        typical_romance=frozenset(romance_list) - atyp_r, atypical_romance=atyp_r,
    )


def _canonical_half(chosen, size: int) -> frozenset[int]:
    """Orient a labelled half-partition so the majority rule holds.

    The complement is taken when the chosen half holds a strict minority of
    the first size/2 indices, or exactly half of them without index 0.
    """
    half = frozenset(int(i) for i in chosen)
    first = frozenset(range(size // 2))
    overlap = len(half & first)
    if overlap * 4 < size or (overlap * 4 == size and 0 not in half):
        return frozenset(range(size)) - half
    return half


def personalize_and_sample(nominal: np.ndarray,
                           params: ModelParams,
                           xi: GroundTruth,
                           seed: Seed) -> np.ndarray:
    """Flip each nominal entry with its genre's probability, then erase.

    Flips use one substream, reveals another, so sweeps over p can be
    coupled to a fixed flip pattern.
    """
    nominal = np.asarray(nominal)
    if nominal.shape != (params.n, params.m):
        raise ValueError("nominal matrix shape does not match params")
    flip_rng = seed.generator("flips")
    reveal_rng = seed.generator("reveals")

    if params.kind is ModelKind.BASIC:
        flips = flip_rng.random(nominal.shape) < params.theta
    else:
        per_column = np.where(xi.genre_spins() > 0, params.theta_a, params.theta_r)
        flips = flip_rng.random(nominal.shape) < per_column[None, :]

    personalized = nominal.astype(np.int8) ^ flips.astype(np.int8)
    revealed = reveal_rng.random(nominal.shape) < params.p
    return np.where(revealed, personalized, np.int8(ERASED)).astype(np.int8)


def sample_sbm(size: int,
               cluster_of: np.ndarray,
               alpha: float,
               beta: float,
               seed: Seed,
               stream: str = "graph") -> np.ndarray:
    """Symmetric SBM adjacency: P(edge) = alpha within a cluster, beta across."""
    if not (0.0 < alpha < 1.0 and 0.0 < beta < 1.0):
        raise ValueError("alpha and beta must lie strictly inside (0, 1)")
    cluster_of = np.asarray(cluster_of)
    if cluster_of.shape != (size,):
        raise ValueError("cluster_of must assign every node a cluster")
    rng = seed.generator(stream)
    same = cluster_of[:, None] == cluster_of[None, :]
    prob = np.where(same, alpha, beta)
    upper = rng.random((size, size)) < prob
    adj = np.triu(upper, k=1)
    return (adj | adj.T).astype(bool)


def sample_observation(xi: GroundTruth, params: ModelParams, seed: Seed) -> Observation:
    """Observation for a fixed ground truth: erased ratings plus both graphs.

    The movie graph is clustered by genre only, so redrawing with a
    different atypical split (same seed) leaves it untouched.
    """
    nominal = build_nominal_matrix(xi, params.kind)
    ratings = personalize_and_sample(nominal, params, xi, seed)
    user_cluster = (xi.user_spins() < 0).astype(np.int8)
    genre = (xi.genre_spins() < 0).astype(np.int8)  # action=0, romance=1
    social = sample_sbm(params.n, user_cluster, params.alpha1, params.beta1, seed, "graph1")
    movie = sample_sbm(params.m, genre, params.alpha2, params.beta2, seed, "graph2")
    return Observation(ratings=ratings, social_graph=social, movie_graph=movie)


def generate_instance(params: ModelParams,
                      atypical_counts=None,
                      seed: Seed | None = None) -> tuple[GroundTruth, Observation]:
    """Sample a full (ground truth, observation) pair.

    Composes partition sampling, nominal-matrix construction, personalized
    sub-sampling and the two SBM draws, each on its own substream.
    """
    if seed is None:
        raise ValueError("generate_instance requires a seed")
    xi = sample_ground_truth(params, atypical_counts, seed)
    return xi, sample_observation(xi, params, seed)
