"""Recovery of the hidden clustering from an observation.

Both estimators work on a spin encoding (men/action/typical = +1) in which
the negative log-likelihood is, up to a constant,

    L = -( sum_j c_j mu(theta_j) + (1/2) sum_j f(theta_j) w_j q_j
           + (d1/4) u' A1 u + (d2/4) v' A2 v )

with q = R' u, R the +1/-1/0 signed rating matrix, w = v * s, c_j the
revealed count of column j and mu(x) = (log(1-x) + log(x)) / 2.  The
exhaustive estimator evaluates this for every candidate in one vectorized
grid; the local search updates it incrementally move by move.
"""

from __future__ import annotations

import math
from itertools import combinations

import numpy as np

from .likelihood import (canonicalize, likelihood_constants, neg_log_likelihood,
                         orbit_representative)
from .model import ERASED, GroundTruth, ModelKind, ModelParams, Observation, Seed

EXHAUSTIVE_LIMIT = 12
LIKELIHOOD_TIE_TOL = 1e-9  # relative tolerance treating two likelihoods as tied
_GAIN_TOL = 1e-9


def signed_ratings(obs: Observation) -> np.ndarray:
    """Ratings as +1 (liked), -1 (disliked), 0 (erased)."""
    r = np.zeros(obs.ratings.shape)
    r[obs.ratings == 1] = 1.0
    r[obs.ratings == 0] = -1.0
    return r


def _mu(x: float) -> float:
    return 0.5 * (math.log1p(-x) + math.log(x))


def canonical_halves(size: int):
    """Half-size subsets with canonical orientation (majority of the first
    half, index-0 rule on ties); one per complement pair."""
    first = size // 2
    for comb in combinations(range(size), size // 2):
        overlap = sum(1 for i in comb if i < first)
        if 4 * overlap > size or (4 * overlap == size and comb[0] == 0):
            yield comb


def ml_exhaustive(obs: Observation, params: ModelParams) -> GroundTruth:
    """Maximum-likelihood clustering by full enumeration (n, m <= 12).

    The candidate space holds one representative per flip-equivalence class:
    the user side is canonically oriented (which also absorbs the
    user+typicality symmetry, since that flip never changes the likelihood),
    while every genre partition and, in the atypical model, every
    atypical-subset assignment is enumerated.  The minimum over this space
    equals the minimum over all clusterings.  Likelihood ties (within the
    1e-9 equality tolerance) break toward the lexicographically smallest
    (men, action, atypical-action, atypical-romance) encoding.
    """
    n, m = params.n, params.m
    if (obs.n, obs.m) != (n, m):
        raise ValueError("observation shape does not match params")
    if n > EXHAUSTIVE_LIMIT or m > EXHAUSTIVE_LIMIT:
        raise ValueError(f"instance too large for exhaustive search (n, m <= {EXHAUSTIVE_LIMIT})")

    consts = likelihood_constants(params)
    R = signed_ratings(obs)
    A1 = obs.social_graph.astype(float)
    A2 = obs.movie_graph.astype(float)
    col_counts = (obs.ratings != ERASED).sum(axis=0).astype(float)

    user_sets = list(canonical_halves(n))
    U = -np.ones((len(user_sets), n))
    for row, s in enumerate(user_sets):
        U[row, list(s)] = 1.0
    quad_u = np.einsum("ci,ij,cj->c", U, A1, U)
    X = U @ R  # (candidates, m): q vectors

    genre_sets = list(combinations(range(m), m // 2))
    V = -np.ones((len(genre_sets), m))
    for row, s in enumerate(genre_sets):
        V[row, list(s)] = 1.0
    quad_v = np.einsum("cj,jk,ck->c", V, A2, V)

    theta_a = params.theta if params.kind is ModelKind.BASIC else params.theta_a
    theta_r = params.theta if params.kind is ModelKind.BASIC else params.theta_r
    f_col = np.where(V > 0, math.log((1 - theta_a) / theta_a), math.log((1 - theta_r) / theta_r))
    mu_const = np.where(V > 0, _mu(theta_a), _mu(theta_r)) @ col_counts

    def score_blocks():
        if params.kind is ModelKind.BASIC:
            cross = X @ (0.5 * f_col * V).T
            vals = -(cross + 0.25 * consts.d1 * quad_u[:, None]
                     + 0.25 * consts.d2 * quad_v[None, :] + mu_const[None, :])

            def build_basic(idx):
                ui, gi = idx
                return _from_sets(n, m, user_sets[ui], genre_sets[gi], (), ())

            yield vals, build_basic
            return
        S = -2.0 * ((np.arange(2 ** m)[:, None] >> np.arange(m)[None, :]) & 1) + 1.0
        for gi in range(len(genre_sets)):
            scaled = X * (0.5 * f_col[gi] * V[gi])[None, :]
            cross = scaled @ S.T  # (users, typicality masks)
            vals = -(cross + 0.25 * consts.d1 * quad_u[:, None]
                     + 0.25 * consts.d2 * quad_v[gi] + mu_const[gi])

            def build_atypical(idx, gi=gi):
                ui, si = idx
                action = genre_sets[gi]
                atyp = [j for j in range(m) if S[si, j] < 0]
                atyp_a = tuple(j for j in atyp if j in action)
                atyp_r = tuple(j for j in atyp if j not in action)
                return _from_sets(n, m, user_sets[ui], action, atyp_a, atyp_r)

            yield vals, build_atypical

    # Two passes: locate the minimum, then take the lexicographically
    # smallest candidate within the likelihood-equality tolerance of it.
    best_val = min(float(vals.min()) for vals, _ in score_blocks())
    cutoff = best_val + LIKELIHOOD_TIE_TOL * (1.0 + abs(best_val))
    best = None
    for vals, builder in score_blocks():
        for idx in np.argwhere(vals <= cutoff):
            cand = builder(tuple(int(t) for t in idx))
            if best is None or cand.encoding() < best.encoding():
                best = cand
    return canonicalize(best)


def _from_sets(n, m, men, action, atyp_a, atyp_r) -> GroundTruth:
    action = frozenset(action)
    romance = frozenset(range(m)) - action
    return GroundTruth(
        n=n, m=m, men=frozenset(men),
        typical_action=action - frozenset(atyp_a), atypical_action=frozenset(atyp_a),
        typical_romance=romance - frozenset(atyp_r), atypical_romance=frozenset(atyp_r),
    )


def random_clustering(params: ModelParams, rng: np.random.Generator) -> GroundTruth:
    """Uniform random valid clustering (used for local-search restarts)."""
    n, m = params.n, params.m
    u = -np.ones(n, dtype=np.int8)
    u[rng.permutation(n)[: n // 2]] = 1
    v = -np.ones(m, dtype=np.int8)
    v[rng.permutation(m)[: m // 2]] = 1
    if params.kind is ModelKind.BASIC:
        s = np.ones(m, dtype=np.int8)
    else:
        s = rng.choice(np.array([-1, 1], dtype=np.int8), size=m)
    return GroundTruth.from_spins(u, v, s)


class _SearchState:
    """Spin state plus the cached fields the move gains are read from."""

    def __init__(self, xi: GroundTruth, obs: Observation, params: ModelParams):
        self.params = params
        self.consts = likelihood_constants(params)
        self.R = signed_ratings(obs)
        self.A1 = obs.social_graph.astype(float)
        self.A2 = obs.movie_graph.astype(float)
        self.col_counts = (obs.ratings != ERASED).sum(axis=0).astype(float)
        self.u = xi.user_spins().astype(float)
        self.v = xi.genre_spins().astype(float)
        self.s = xi.typicality_spins().astype(float)
        theta_a = params.flip_probability("a")
        theta_r = params.flip_probability("r")
        self.f_by_genre = (math.log((1 - theta_a) / theta_a),
                           math.log((1 - theta_r) / theta_r))
        self.mu_by_genre = (_mu(theta_a), _mu(theta_r))
        self.refresh()

    def refresh(self):
        self.w = self.v * self.s
        self.f_col = np.where(self.v > 0, self.f_by_genre[0], self.f_by_genre[1])
        self.mu_col = np.where(self.v > 0, self.mu_by_genre[0], self.mu_by_genre[1])
        self.q = self.R.T @ self.u
        self.rphi = self.R @ (self.f_col * self.w)
        self.a1u = self.A1 @ self.u
        self.a2v = self.A2 @ self.v

    def clustering(self) -> GroundTruth:
        return GroundTruth.from_spins(self.u.astype(np.int8),
                                      self.v.astype(np.int8),
                                      self.s.astype(np.int8))

    # -- move evaluation ----------------------------------------------------

    def best_user_swap(self):
        men = np.flatnonzero(self.u > 0)
        women = np.flatnonzero(self.u < 0)
        field = self.rphi + self.consts.d1 * self.a1u
        gains = (field[women][None, :] - field[men][:, None]
                 - 2.0 * self.consts.d1 * self.A1[np.ix_(men, women)])
        i, k = np.unravel_index(np.argmax(gains), gains.shape)
        return gains[i, k], (int(men[i]), int(women[k]))

    def best_movie_swap(self):
        act = np.flatnonzero(self.v > 0)
        rom = np.flatnonzero(self.v < 0)
        mu_a, mu_r = self.mu_by_genre
        f_a, f_r = self.f_by_genre
        mu_gain = self.col_counts * np.where(self.v > 0, mu_r - mu_a, mu_a - mu_r)
        wq = self.w * self.q
        # A genre-switching movie may keep or flip its typicality flag;
        # keeping negates its pattern spin, flipping preserves it.
        keep = mu_gain - 0.5 * (f_a + f_r) * wq
        flip_s = mu_gain + 0.5 * np.where(self.v > 0, f_r - f_a, f_a - f_r) * wq
        if self.params.kind is ModelKind.BASIC:
            delta, take_flip = keep, np.zeros(len(self.v), dtype=bool)
        else:
            take_flip = flip_s > keep
            delta = np.where(take_flip, flip_s, keep)
        left = delta[act] - self.consts.d2 * self.a2v[act]
        right = delta[rom] + self.consts.d2 * self.a2v[rom]
        gains = (left[:, None] + right[None, :]
                 - 2.0 * self.consts.d2 * self.A2[np.ix_(act, rom)])
        jj, ll = np.unravel_index(np.argmax(gains), gains.shape)
        j, l = int(act[jj]), int(rom[ll])
        return gains[jj, ll], (j, l, bool(take_flip[j]), bool(take_flip[l]))

    def best_toggle(self):
        gains = -self.f_col * self.w * self.q
        t = int(np.argmax(gains))
        return gains[t], t

    # -- move application ----------------------------------------------------

    def apply_user_swap(self, i: int, k: int):
        self.u[i], self.u[k] = -1.0, 1.0
        self.a1u += 2.0 * (self.A1[:, k] - self.A1[:, i])
        self.q += 2.0 * (self.R[k, :] - self.R[i, :])

    def apply_movie_swap(self, j: int, l: int, sflip_j: bool = False,
                         sflip_l: bool = False):
        for col, sflip in ((j, sflip_j), (l, sflip_l)):
            old_phi = self.f_col[col] * self.w[col]
            self.v[col] = -self.v[col]
            if sflip:
                self.s[col] = -self.s[col]
            self.w[col] = self.v[col] * self.s[col]
            genre = 0 if self.v[col] > 0 else 1
            self.f_col[col] = self.f_by_genre[genre]
            self.mu_col[col] = self.mu_by_genre[genre]
            self.rphi += self.R[:, col] * (self.f_col[col] * self.w[col] - old_phi)
        self.a2v += 2.0 * (self.A2[:, l] - self.A2[:, j])

    def apply_toggle(self, t: int):
        old_phi = self.f_col[t] * self.w[t]
        self.s[t] = -self.s[t]
        self.w[t] = -self.w[t]
        self.rphi += self.R[:, t] * (self.f_col[t] * self.w[t] - old_phi)


def _descend(state: _SearchState) -> None:
    """Greedy best-move descent to a local minimum of L."""
    atypical = state.params.kind is ModelKind.ATYPICAL
    max_moves = 20 * (state.params.n + state.params.m) + 100
    for _ in range(max_moves):
        moves = [state.best_user_swap(), state.best_movie_swap()]
        if atypical:
            moves.append(state.best_toggle())
        which = max(range(len(moves)), key=lambda i: moves[i][0])
        gain, payload = moves[which]
        if gain <= _GAIN_TOL:
            return
        if which == 0:
            state.apply_user_swap(*payload)
        elif which == 1:
            state.apply_movie_swap(*payload)
        else:
            state.apply_toggle(payload)


def ml_local_search(obs: Observation, params: ModelParams,
                    restarts: int, seed: Seed) -> GroundTruth:
    """Randomized greedy descent over paired swaps (and typicality toggles).

    Each restart starts from a uniform random clustering and repeatedly
    applies the single best likelihood-decreasing move: a men/women pair
    swap, an action/romance pair swap, or (atypical model) one typicality
    toggle.  The best local minimum across restarts is returned,
    canonicalized, with exact likelihood ties broken lexicographically.
    """
    if restarts < 1:
        raise ValueError("restarts must be >= 1")
    best: tuple[float, tuple, GroundTruth] | None = None
    for r in range(restarts):
        start = random_clustering(params, seed.generator("restart", r))
        state = _SearchState(start, obs, params)
        _descend(state)
        xi = canonicalize(state.clustering())
        value = neg_log_likelihood(xi, obs, params)
        if best is None:
            best = (value, xi.encoding(), xi)
            continue
        tol = LIKELIHOOD_TIE_TOL * (1.0 + abs(best[0]))
        if value < best[0] - tol or (value <= best[0] + tol and xi.encoding() < best[1]):
            best = (min(value, best[0]), xi.encoding(), xi)
    return best[2]


def exact_recovery(xi_hat: GroundTruth, xi_true: GroundTruth) -> bool:
    """True when the two clusterings are indistinguishable as parameters.

    Compares orbit representatives, so the simultaneous flip and (atypical
    model) the typicality-coupled flips all count as the same answer; for
    basic-model pairs this reduces to equality up to the flip.
    """
    if (xi_hat.n, xi_hat.m) != (xi_true.n, xi_true.m):
        raise ValueError("clusterings have different shapes")
    return orbit_representative(xi_hat).encoding() == orbit_representative(xi_true).encoding()
