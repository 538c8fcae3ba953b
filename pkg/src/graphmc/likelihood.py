"""Exact negative log-likelihood of a candidate clustering, and fast differences.

The joint probability of an observation factorizes into the rating block and
the two graph blocks.  With ``f(x) = log((1-x)/x)`` and the graph log-odds
weights

    d1 = log(alpha1 (1-beta1) / (beta1 (1-alpha1)))
    d2 = log(alpha2 (1-beta2) / (beta2 (1-alpha2)))

the negative log-likelihood satisfies, up to a candidate-independent
constant, L = -f(theta) |Pi| + d1 e1 + d2 e2 where |Pi| counts revealed
entries matching the nominal matrix and e1, e2 count cluster-crossing edges.
:func:`neg_log_likelihood` keeps the constant (so exp(-L) is the actual joint
probability), while :func:`likelihood_difference` evaluates L(a) - L(b)
directly from the disagreement structure between the two candidates without
forming either full likelihood.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import xlogy

from .model import ERASED, GroundTruth, ModelKind, ModelParams, Observation


@dataclass(frozen=True)
class LikelihoodConstants:
    """Log-odds weights entering the likelihood: d1, d2 and f(theta)."""

    d1: float
    d2: float
    f_theta: float | tuple[float, float]  # f(theta), or (f(theta_a), f(theta_r))


def log_odds(x: float) -> float:
    """f(x) = log((1 - x) / x)."""
    return math.log((1.0 - x) / x)


def likelihood_constants(params: ModelParams) -> LikelihoodConstants:
    d1 = math.log(params.alpha1 * (1 - params.beta1) / (params.beta1 * (1 - params.alpha1)))
    d2 = math.log(params.alpha2 * (1 - params.beta2) / (params.beta2 * (1 - params.alpha2)))
    if params.kind is ModelKind.BASIC:
        f = log_odds(params.theta)
    else:
        f = (log_odds(params.theta_a), log_odds(params.theta_r))
    return LikelihoodConstants(d1=d1, d2=d2, f_theta=f)


@dataclass(frozen=True)
class SufficientStats:
    """Counts that determine the likelihood given the parameters."""

    revealed_action: int
    matched_action: int
    revealed_romance: int
    matched_romance: int
    cross_edges_social: int
    edges_social: int
    cross_edges_movie: int
    edges_movie: int

    @property
    def revealed(self) -> int:
        return self.revealed_action + self.revealed_romance

    @property
    def pi_size(self) -> int:
        """|Pi|: revealed entries equal to the nominal rating."""
        return self.matched_action + self.matched_romance


def cross_edges(adj: np.ndarray, in_first: np.ndarray) -> int:
    """Number of edges with exactly one endpoint in the flagged group."""
    in_first = np.asarray(in_first, dtype=bool)
    return int(adj[np.ix_(in_first, ~in_first)].sum())


def sufficient_stats(xi: GroundTruth, obs: Observation, params: ModelParams) -> SufficientStats:
    from .model import build_nominal_matrix

    _check_shapes(xi, obs, params)
    nominal = build_nominal_matrix(xi, params.kind)
    revealed = obs.ratings != ERASED
    matched = revealed & (obs.ratings == nominal)
    action_cols = xi.genre_spins() > 0

    men_mask = np.zeros(xi.n, dtype=bool)
    men_mask[list(xi.men)] = True

    return SufficientStats(
        revealed_action=int(revealed[:, action_cols].sum()),
        matched_action=int(matched[:, action_cols].sum()),
        revealed_romance=int(revealed[:, ~action_cols].sum()),
        matched_romance=int(matched[:, ~action_cols].sum()),
        cross_edges_social=cross_edges(obs.social_graph, men_mask),
        edges_social=int(obs.social_graph.sum()) // 2,
        cross_edges_movie=cross_edges(obs.movie_graph, action_cols),
        edges_movie=int(obs.movie_graph.sum()) // 2,
    )


def _check_shapes(xi: GroundTruth, obs: Observation, params: ModelParams):
    if (xi.n, xi.m) != (params.n, params.m) or (obs.n, obs.m) != (params.n, params.m):
        raise ValueError("xi, obs and params disagree on (n, m)")
    if params.kind is ModelKind.BASIC and xi.has_atypical:
        raise ValueError("basic model does not admit atypical movies")


def _graph_neg_loglik(cross: int, edges: int, size: int, alpha: float, beta: float) -> float:
    """-log P(G) for a two-equal-cluster SBM with ``cross`` crossing edges."""
    half = size // 2
    cross_pairs = half * half
    intra_pairs = half * (half - 1)  # two clusters of C(half, 2) pairs each
    intra = edges - cross
    return -(cross * math.log(beta) + (cross_pairs - cross) * math.log1p(-beta)
             + intra * math.log(alpha) + (intra_pairs - intra) * math.log1p(-alpha))


def neg_log_likelihood(xi: GroundTruth, obs: Observation, params: ModelParams) -> float:
    """L(xi) = -log P_xi(ratings, social graph, movie graph), exactly.

    The candidate-independent constant is kept, so summing exp(-L) over all
    observations gives one; values are comparable across candidates and runs.
    """
    st = sufficient_stats(xi, obs, params)
    nm = params.n * params.m
    theta_a = params.flip_probability("a")
    theta_r = params.flip_probability("r")

    reveal_part = xlogy(st.revealed, params.p) + xlogy(nm - st.revealed, 1.0 - params.p)
    # Per-genre terms are formed symmetrically so that the simultaneous
    # cluster flip reproduces L bit-for-bit whenever the flip preserves the
    # distribution (always in the basic model, theta_a == theta_r otherwise).
    term_action = (st.matched_action * math.log1p(-theta_a)
                   + (st.revealed_action - st.matched_action) * math.log(theta_a))
    term_romance = (st.matched_romance * math.log1p(-theta_r)
                    + (st.revealed_romance - st.matched_romance) * math.log(theta_r))
    rating_part = -(float(reveal_part) + (term_action + term_romance))

    g1 = _graph_neg_loglik(st.cross_edges_social, st.edges_social,
                           params.n, params.alpha1, params.beta1)
    g2 = _graph_neg_loglik(st.cross_edges_movie, st.edges_movie,
                           params.m, params.alpha2, params.beta2)
    return rating_part + g1 + g2


def likelihood_difference(xi: GroundTruth, xi2: GroundTruth,
                          obs: Observation, params: ModelParams) -> float:
    """L(xi) - L(xi2) from the disagreement structure of the two candidates.

    Only cluster-crossing edge counts and the entries where the two nominal
    matrices (or their flip rates) differ enter the computation; neither full
    likelihood is formed.
    """
    from .model import build_nominal_matrix

    _check_shapes(xi, obs, params)
    _check_shapes(xi2, obs, params)
    consts = likelihood_constants(params)

    men1 = np.zeros(xi.n, dtype=bool)
    men1[list(xi.men)] = True
    men2 = np.zeros(xi2.n, dtype=bool)
    men2[list(xi2.men)] = True
    gamma1 = cross_edges(obs.social_graph, men1) - cross_edges(obs.social_graph, men2)

    act1 = xi.genre_spins() > 0
    act2 = xi2.genre_spins() > 0
    gamma2 = cross_edges(obs.movie_graph, act1) - cross_edges(obs.movie_graph, act2)

    b1 = build_nominal_matrix(xi, params.kind)
    b2 = build_nominal_matrix(xi2, params.kind)
    revealed = obs.ratings != ERASED

    if params.kind is ModelKind.BASIC:
        # Disagreement set only: each revealed entry there matches exactly one
        # of the two nominal matrices.
        disagree = revealed & (b1 != b2)
        match1 = int((obs.ratings[disagree] == b1[disagree]).sum())
        gamma3 = 2 * match1 - int(disagree.sum())
        return consts.d1 * gamma1 + consts.d2 * gamma2 - consts.f_theta * gamma3

    theta = {"a": params.theta_a, "r": params.theta_r}
    f = {"a": consts.f_theta[0], "r": consts.f_theta[1]}
    equal = b1 == b2
    matches1 = obs.ratings == b1
    rating_sum = 0.0
    for u in ("a", "r"):
        for v in ("a", "r"):
            cols = (act1 == (u == "a")) & (act2 == (v == "a"))
            if not cols.any():
                continue
            rev = revealed[:, cols]
            eq = equal[:, cols]
            m1 = matches1[:, cols]
            n_e = int((rev & eq).sum())
            n_e_match = int((rev & eq & m1).sum())
            n_ue = int((rev & ~eq).sum())
            n_ue_mismatch = int((rev & ~eq & ~m1).sum())
            gamma_e = (f[u] - f[v]) * n_e_match + math.log(theta[u] / theta[v]) * n_e
            gamma_ue = (-(f[u] + f[v]) * n_ue_mismatch
                        + math.log((1 - theta[u]) / theta[v]) * n_ue)
            rating_sum += gamma_e + gamma_ue
    return consts.d1 * gamma1 + consts.d2 * gamma2 - rating_sum


# ---------------------------------------------------------------------------
# Flip equivalence and canonical orientation
# ---------------------------------------------------------------------------

def flip(xi: GroundTruth) -> GroundTruth:
    """Simultaneously swap men/women and the genre labels of every movie.

    Typicality status travels with each movie, so the nominal matrix is
    unchanged.  The flipped instance induces the same distribution in the
    basic model and, in the atypical model, whenever theta_a == theta_r.
    """
    return GroundTruth(
        n=xi.n, m=xi.m, men=xi.women,
        typical_action=xi.typical_romance, atypical_action=xi.atypical_romance,
        typical_romance=xi.typical_action, atypical_romance=xi.atypical_action,
    )


def flip_users_and_typicality(xi: GroundTruth) -> GroundTruth:
    """Swap men/women and every movie's typicality flag, keeping genres.

    Complements the nominal matrix twice over (user spin and pattern spin
    both negate), so the distribution is preserved for any flip rates; only
    the atypical model can express the image.
    """
    return GroundTruth(
        n=xi.n, m=xi.m, men=xi.women,
        typical_action=xi.atypical_action, atypical_action=xi.typical_action,
        typical_romance=xi.atypical_romance, atypical_romance=xi.typical_romance,
    )


def flip_genres_and_typicality(xi: GroundTruth) -> GroundTruth:
    """Swap every movie's genre and typicality together, keeping users.

    The nominal matrix is unchanged (typical action maps to atypical
    romance, and so on), but genre labels move, so the distribution is
    preserved only when theta_a == theta_r.  Composing this with
    :func:`flip_users_and_typicality` gives :func:`flip`.
    """
    return GroundTruth(
        n=xi.n, m=xi.m, men=xi.men,
        typical_action=xi.atypical_romance, atypical_action=xi.typical_romance,
        typical_romance=xi.atypical_action, atypical_romance=xi.typical_action,
    )


def _side_canonical(members: frozenset[int], size: int) -> bool:
    """Majority of the first size/2 indices, index-0 rule on exact ties."""
    overlap = sum(1 for i in members if i < size // 2)
    if 4 * overlap != size:
        return 4 * overlap > size
    return 0 in members


def is_canonical(xi: GroundTruth) -> bool:
    """User-side canonical orientation: majority of the first n/2 users are men,
    with exact ties requiring user 0 to be a man."""
    return _side_canonical(xi.men, xi.n)


def canonicalize(xi: GroundTruth) -> GroundTruth:
    """Orient a clustering: return xi if canonical, else flip(xi).

    Exactly one of {xi, flip(xi)} is canonical, because the flip complements
    the men set.
    """
    return xi if is_canonical(xi) else flip(xi)


def orbit_representative(xi: GroundTruth) -> GroundTruth:
    """Doubly canonical representative of xi's indistinguishability orbit.

    The three flips above generate a four-element group; exactly one orbit
    member has both a canonical user side and a canonical movie side
    (majority of the first m/2 movies are action, movie-0 rule on ties),
    and that member is returned.  Two clusterings are equivalent for exact
    recovery purposes exactly when they share this representative; for
    basic-model instances (no atypicals) this coincides with comparing
    :func:`canonicalize` outputs, since the typicality-flipped orbit
    members fall outside the basic parameter space.
    """
    x = xi if _side_canonical(xi.men, xi.n) else flip_users_and_typicality(xi)
    return x if _side_canonical(x.action, x.m) else flip_genres_and_typicality(x)
