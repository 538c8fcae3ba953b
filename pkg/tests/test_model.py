"""Generative model: tables, sampling determinism, empirical marginals."""

import math

import numpy as np
import pytest

from graphmc import (ERASED, GroundTruth, ModelKind, ModelParams, Seed,
                     build_nominal_matrix, generate_instance, personalize_and_sample,
                     sample_ground_truth, sample_observation, sample_sbm)

from conftest import atypical_params, basic_params, truth_from_lists


def test_nominal_matrix_basic_table():
    xi = truth_from_lists(2, 2, men=[0], action=[0])
    b = build_nominal_matrix(xi, ModelKind.BASIC)
    assert b.tolist() == [[1, 0], [0, 1]]


def test_nominal_matrix_atypical_table():
    xi = truth_from_lists(2, 2, men=[0], action=[0], atyp_a=[0], atyp_r=[1])
    b = build_nominal_matrix(xi, ModelKind.ATYPICAL)
    assert b.tolist() == [[0, 1], [1, 0]]


def test_nominal_matrix_four_column_types():
    # columns: typical action, atypical action, typical romance, atypical romance
    xi = truth_from_lists(2, 4, men=[0], action=[0, 1], atyp_a=[1], atyp_r=[3])
    b = build_nominal_matrix(xi, ModelKind.ATYPICAL)
    assert b[0].tolist() == [1, 0, 0, 1]  # man row
    assert b[1].tolist() == [0, 1, 1, 0]  # woman row


def test_nominal_matrix_user_swap_is_complement(rng):
    params = basic_params()
    for k in range(5):
        xi = sample_ground_truth(params, None, Seed(k))
        swapped = GroundTruth(n=xi.n, m=xi.m, men=xi.women,
                              typical_action=xi.typical_action,
                              atypical_action=xi.atypical_action,
                              typical_romance=xi.typical_romance,
                              atypical_romance=xi.atypical_romance)
        b = build_nominal_matrix(xi, params.kind)
        assert (build_nominal_matrix(swapped, params.kind) == 1 - b).all()


def test_nominal_matrix_rejects_kind_mismatch():
    xi = truth_from_lists(4, 4, men=[0, 1], action=[0, 1], atyp_a=[0])
    with pytest.raises(ValueError):
        build_nominal_matrix(xi, ModelKind.BASIC)


def test_params_validation():
    with pytest.raises(ValueError):
        basic_params(n=7)  # odd
    with pytest.raises(ValueError):
        basic_params(theta=0.5)
    with pytest.raises(ValueError):
        basic_params(alpha1=1.0)
    with pytest.raises(ValueError):
        basic_params(p=1.5)
    with pytest.raises(ValueError):
        atypical_params(theta_a=None)
    with pytest.raises(ValueError):
        ModelParams(kind=ModelKind.BASIC, n=4, m=4, alpha1=0.5, beta1=0.5,
                    alpha2=0.5, beta2=0.5, p=0.5, theta=0.2, theta_a=0.1)


def test_sample_ground_truth_invariants():
    params = basic_params(n=4, m=4)
    xi = sample_ground_truth(params, None, Seed(7))
    assert len(xi.men) == 2 and len(xi.action) == 2
    assert not xi.has_atypical
    # canonical orientation on both sides
    assert sum(1 for i in xi.men if i < 2) >= 1
    assert sum(1 for j in xi.action if j < 2) >= 1


def test_sample_ground_truth_deterministic():
    params = atypical_params()
    a = sample_ground_truth(params, "uniform", Seed(11))
    b = sample_ground_truth(params, "uniform", Seed(11))
    assert a == b


def test_sample_ground_truth_full_atypical():
    params = atypical_params(n=4, m=4)
    xi = sample_ground_truth(params, (2, 2), Seed(3))
    assert xi.typical_action == frozenset() and xi.typical_romance == frozenset()
    assert len(xi.atypical_action) == 2 and len(xi.atypical_romance) == 2


def test_sample_ground_truth_count_errors():
    with pytest.raises(ValueError):
        sample_ground_truth(atypical_params(n=4, m=4), (3, 0), Seed(0))
    with pytest.raises(ValueError):
        sample_ground_truth(basic_params(), (1, 0), Seed(0))


def test_canonical_orientation_over_many_draws(rng):
    params = atypical_params(n=10, m=6)
    for k in range(200):
        xi = sample_ground_truth(params, "uniform", Seed(k))
        um = sum(1 for i in xi.men if i < 5)
        am = sum(1 for j in xi.action if j < 3)
        assert 4 * um > 10 or (4 * um == 10 and 0 in xi.men)
        assert 4 * am > 6 or (4 * am == 6 and 0 in xi.action)


def test_personalize_p_zero_all_erased():
    params = basic_params(p=0.0)
    xi = sample_ground_truth(params, None, Seed(1))
    b = build_nominal_matrix(xi, params.kind)
    ratings = personalize_and_sample(b, params, xi, Seed(1))
    assert (ratings == ERASED).all()


def test_flip_rate_matches_theta():
    # binomial oracle: p=1, theta=0.01, n=m=100, 3 standard errors
    params = basic_params(n=100, m=100, p=1.0, theta=0.01)
    xi = sample_ground_truth(params, None, Seed(5))
    b = build_nominal_matrix(xi, params.kind)
    ratings = personalize_and_sample(b, params, xi, Seed(5))
    frac = (ratings != b).mean()
    se = math.sqrt(0.01 * 0.99 / (100 * 100))
    assert abs(frac - 0.01) <= 3 * se


def test_flip_rate_per_genre():
    params = atypical_params(n=100, m=100, p=1.0, theta_a=0.3, theta_r=0.1)
    xi = sample_ground_truth(params, "uniform", Seed(8))
    b = build_nominal_matrix(xi, params.kind)
    ratings = personalize_and_sample(b, params, xi, Seed(8))
    flips = ratings != b
    action = sorted(xi.action)
    romance = sorted(xi.romance)
    for cols, theta in ((action, 0.3), (romance, 0.1)):
        rate = flips[:, cols].mean()
        se = math.sqrt(theta * (1 - theta) / (100 * len(cols)))
        assert abs(rate - theta) <= 3 * se


def test_sbm_erdos_renyi_density():
    cluster = np.zeros(200, dtype=int)
    cluster[100:] = 1
    adj = sample_sbm(200, cluster, 0.3, 0.3, Seed(2))
    pairs = 200 * 199 / 2
    density = adj.sum() / 2 / pairs
    se = math.sqrt(0.3 * 0.7 / pairs)
    assert abs(density - 0.3) <= 3 * se
    assert (adj == adj.T).all() and not adj.diagonal().any()


def test_sbm_strong_separation():
    cluster = np.zeros(20, dtype=int)
    cluster[10:] = 1
    adj = sample_sbm(20, cluster, 0.999, 0.001, Seed(9))
    within = adj[:10, :10].sum() + adj[10:, 10:].sum()
    across = adj[:10, 10:].sum() * 2
    assert within >= across


def test_sbm_deterministic():
    cluster = np.array([0, 0, 1, 1])
    a = sample_sbm(4, cluster, 0.5, 0.2, Seed(4))
    b = sample_sbm(4, cluster, 0.5, 0.2, Seed(4))
    assert (a == b).all()
    with pytest.raises(ValueError):
        sample_sbm(4, cluster, 0.0, 0.2, Seed(4))


def test_generate_instance_shapes_and_determinism():
    params = basic_params(n=4, m=4, p=0.5)
    xi, obs = generate_instance(params, None, Seed(6))
    assert obs.ratings.shape == (4, 4)
    assert obs.social_graph.shape == (4, 4) and obs.movie_graph.shape == (4, 4)
    xi2, obs2 = generate_instance(params, None, Seed(6))
    assert xi == xi2
    assert (obs.ratings == obs2.ratings).all()
    assert (obs.social_graph == obs2.social_graph).all()
    assert (obs.movie_graph == obs2.movie_graph).all()


def test_movie_graph_ignores_atypicality():
    params = atypical_params()
    base = sample_ground_truth(params, (0, 0), Seed(13))
    _, obs_a = generate_instance(params, (0, 0), Seed(13))
    _, obs_b = generate_instance(params, (3, 2), Seed(13))
    assert (obs_a.movie_graph == obs_b.movie_graph).all()
    assert (obs_a.social_graph == obs_b.social_graph).all()


def test_reveal_pattern_decoupled_from_flips():
    # same seed, different p: revealed values agree where both revealed
    params_lo = basic_params(n=20, m=20, p=0.3)
    params_hi = basic_params(n=20, m=20, p=0.9)
    xi = sample_ground_truth(params_lo, None, Seed(21))
    lo = sample_observation(xi, params_lo, Seed(21))
    hi = sample_observation(xi, params_hi, Seed(21))
    both = (lo.ratings != ERASED) & (hi.ratings != ERASED)
    assert (lo.ratings[both] == hi.ratings[both]).all()
    assert (lo.ratings != ERASED).sum() < (hi.ratings != ERASED).sum()


def test_seed_derivation_distinct():
    master = Seed(99)
    children = {master.derive("trial", i).master for i in range(100)}
    assert len(children) == 100
    assert master.derive("a").master != master.derive("b").master
