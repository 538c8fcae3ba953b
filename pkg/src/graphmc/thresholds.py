"""Closed-form sample-probability thresholds and the regime classifier.

Graph quality is I = size (sqrt(alpha) - sqrt(beta))^2 / log(size); a value
above 2 lets the corresponding clusters be recovered from that graph alone.
The basic model has a sharp minimum sample probability

    p* = max{ (2(1+eps) - I1) log n / (2 h(theta) m),
              (2(1+eps) - I2) log m / (2 h(theta) n) }

with h(x) = (sqrt(1-x) - sqrt(x))^2, each term clamped below at zero (a
negative requirement means that side needs no samples at all).  The
atypical model replaces h by the divergence-style functions tau and nu of
(theta_a, theta_r), giving a three-term achievable bound and a matching
converse up to a factor of two in the third term.

Signed slack convention: callers pass ``epsilon >= 0`` for the achievable
(1 + eps) forms; the converse functions apply (1 - eps) themselves.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum


class Regime(Enum):
    """Which recovery task dominates the sample requirement."""

    SOCIAL_SENSITIVE = "social_sensitive"          # recovering user clusters
    MOVIE_SENSITIVE = "movie_sensitive"            # recovering movie clusters
    ATYPICALITY_SENSITIVE = "atypicality_sensitive"  # identifying atypical movies
    BOUNDARY = "boundary"


@dataclass(frozen=True)
class ThresholdReport:
    """A sample-probability bound plus which max-term attained it.

    ``feasible`` is False only in the theta_a == theta_r regime when the
    movie graph is too weak (I2 below its gate); the achievable bound is
    then undefined (p_value = nan), and the converse holds for every p
    (p_value = inf).  ``exceeds_one`` flags raw formula values above 1,
    which arise outside the asymptotic regime and are reported unclamped.
    """

    p_value: float
    dominant_term: Regime
    regime: Regime
    feasible: bool = True
    exceeds_one: bool = False
    terms: tuple = field(default=())


def h(x: float) -> float:
    """(sqrt(1-x) - sqrt(x))^2, the erasure-channel divergence rate."""
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"h is defined on [0, 1], got {x}")
    return (math.sqrt(1.0 - x) - math.sqrt(x)) ** 2


def _check_half_open(name: str, x: float):
    if not 0.0 < x < 0.5:
        raise ValueError(f"{name} must lie strictly inside (0, 1/2), got {x}")


def tau(theta_u: float, theta_v: float) -> float:
    """1 - sqrt(t_u t_v) - sqrt((1-t_u)(1-t_v)); vanishes when t_u == t_v."""
    _check_half_open("theta_u", theta_u)
    _check_half_open("theta_v", theta_v)
    return 1.0 - math.sqrt(theta_u * theta_v) - math.sqrt((1.0 - theta_u) * (1.0 - theta_v))


def nu(theta_u: float, theta_v: float) -> float:
    """1 - sqrt(t_u (1-t_v)) - sqrt(t_v (1-t_u)); equals h on the diagonal."""
    _check_half_open("theta_u", theta_u)
    _check_half_open("theta_v", theta_v)
    return 1.0 - math.sqrt(theta_u * (1.0 - theta_v)) - math.sqrt(theta_v * (1.0 - theta_u))


def graph_quality(alpha: float, beta: float, size: int) -> float:
    """I = size (sqrt(alpha) - sqrt(beta))^2 / log(size)."""
    if size < 2:
        raise ValueError("graph quality needs size >= 2")
    if not (0.0 < alpha < 1.0 and 0.0 < beta < 1.0):
        raise ValueError("alpha and beta must lie strictly inside (0, 1)")
    return size * (math.sqrt(alpha) - math.sqrt(beta)) ** 2 / math.log(size)


def _report(labels: tuple[Regime, ...], terms: tuple[float, ...],
            feasible: bool = True, p_override: float | None = None) -> ThresholdReport:
    p = max(terms) if p_override is None else p_override
    order = sorted(range(len(terms)), key=lambda i: terms[i], reverse=True)
    if len(terms) > 1 and terms[order[0]] == terms[order[1]]:
        dominant = Regime.BOUNDARY
    else:
        dominant = labels[order[0]]
    return ThresholdReport(p_value=p, dominant_term=dominant, regime=dominant,
                           feasible=feasible, exceeds_one=bool(p > 1.0), terms=terms)


def msp_model1(n: int, m: int, I1: float, I2: float, theta: float,
               epsilon: float = 0.0) -> ThresholdReport:
    """Basic-model minimum sample probability, with signed slack epsilon.

    Each max-term is clamped at zero before the max, so p* = 0 exactly when
    both graph qualities reach 2(1 + epsilon).  An exact tie of the two
    terms is reported as the boundary regime.
    """
    if n < 2 or m < 2:
        raise ValueError("n and m must be >= 2")
    h_theta = h(theta)
    if h_theta == 0.0:
        raise ValueError("theta = 1/2 leaves the ratings uninformative (h(theta) = 0)")
    need = 2.0 * (1.0 + epsilon)
    term_users = max(0.0, (need - I1) * math.log(n) / (2.0 * h_theta * m))
    term_movies = max(0.0, (need - I2) * math.log(m) / (2.0 * h_theta * n))
    return _report((Regime.SOCIAL_SENSITIVE, Regime.MOVIE_SENSITIVE),
                   (term_users, term_movies))


def msp_kink_i1(n: int, m: int, I2: float) -> float:
    """Social-graph quality at which the movie term takes over in msp_model1.

    Solves term_users(I1) = term_movies(I2) for I1; the personalization
    parameter cancels.  Values outside [0, 2] mean no kink occurs on that
    side of the range.
    """
    return 2.0 - (2.0 - I2) * (m * math.log(m)) / (n * math.log(n))


def _model2_terms(n, m, I1, I2, theta_a, theta_r, factor):
    nu_aa = nu(theta_a, theta_a)
    nu_rr = nu(theta_r, theta_r)
    term_users = max(0.0, (2.0 * factor - I1) * math.log(n) / ((nu_aa + nu_rr) * m))
    term_atypical = max(0.0, factor * math.log(m) / (min(nu_aa, nu_rr) * n))
    return nu_aa, nu_rr, term_users, term_atypical


_M2_LABELS = (Regime.SOCIAL_SENSITIVE, Regime.ATYPICALITY_SENSITIVE, Regime.MOVIE_SENSITIVE)


def model2_achievable_p(n: int, m: int, I1: float, I2: float,
                        theta_a: float, theta_r: float,
                        epsilon: float = 0.0) -> ThresholdReport:
    """Atypical-model achievable sample probability (three-term max).

    With theta_a != theta_r the third term uses tau(theta_a, theta_r); on
    the diagonal the movie side must instead come entirely from the graph,
    so the report is infeasible (p_value = nan) unless I2 >= 2(1 + eps).
    """
    factor = 1.0 + epsilon
    _, _, term_users, term_atypical = _model2_terms(n, m, I1, I2, theta_a, theta_r, factor)
    if theta_a == theta_r:
        feasible = I2 >= 2.0 * factor
        terms = (term_users, term_atypical)
        return _report(_M2_LABELS[:2], terms, feasible=feasible,
                       p_override=None if feasible else math.nan)
    term_movies = _movie_term(2.0 * factor - I2, m, n, theta_a, theta_r)
    return _report(_M2_LABELS, (term_users, term_atypical, term_movies))


def _movie_term(need: float, m: int, n: int, theta_a: float, theta_r: float) -> float:
    """(need) log m / (2 tau n), clamped at zero; infinite when tau underflows
    to zero (thetas so close that ratings cannot separate the genres)."""
    if need <= 0.0:
        return 0.0
    tau_ar = tau(theta_a, theta_r)
    if tau_ar <= 0.0:
        return math.inf
    return need * math.log(m) / (2.0 * tau_ar * n)


def model2_converse_p(n: int, m: int, I1: float, I2: float,
                      theta_a: float, theta_r: float,
                      epsilon: float = 0.0) -> ThresholdReport:
    """Atypical-model converse: recovery fails below this sample probability.

    Mirrors the achievable bound with (1 - eps) factors; the third term is
    ((1-eps) - I2) log m / (2 tau n), half the achievable counterpart at
    I2 = 0.  On the diagonal with I2 < 2(1 - eps), recovery fails at every
    p (reported as p_value = inf, feasible = False).
    """
    factor = 1.0 - epsilon
    _, _, term_users, term_atypical = _model2_terms(n, m, I1, I2, theta_a, theta_r, factor)
    if theta_a == theta_r:
        feasible = I2 >= 2.0 * factor
        terms = (term_users, term_atypical)
        return _report(_M2_LABELS[:2], terms, feasible=feasible,
                       p_override=None if feasible else math.inf)
    term_movies = _movie_term(factor - I2, m, n, theta_a, theta_r)
    return _report(_M2_LABELS, (term_users, term_atypical, term_movies))


def classify_regime(n: int, m: int, theta_a: float, theta_r: float,
                    rel_tol: float = 1e-9) -> Regime:
    """Label which achievable term dominates at I1 = I2 = 0, eps = 0.

    The comparison uses the large-size normalization in which log n and
    log m share a common factor (their ratio tends to one at a fixed n/m
    aspect ratio); this is the partition the published regime diagrams
    draw, and at finite sizes it keeps the diagonal boundary points exact.
    The top two terms agreeing within ``rel_tol`` (relative) classifies as
    the boundary.
    """
    nu_aa = nu(theta_a, theta_a)
    nu_rr = nu(theta_r, theta_r)
    coef = [2.0 / ((nu_aa + nu_rr) * m), 1.0 / (min(nu_aa, nu_rr) * n)]
    if theta_a == theta_r:
        coef.append(math.inf)  # tau vanishes: the movie side needs the graph
    else:
        coef.append(1.0 / (tau(theta_a, theta_r) * n))
    order = sorted(range(3), key=lambda i: coef[i], reverse=True)
    top, second = coef[order[0]], coef[order[1]]
    if math.isfinite(top) and (top - second) <= rel_tol * top:
        return Regime.BOUNDARY
    return _M2_LABELS[order[0]]
