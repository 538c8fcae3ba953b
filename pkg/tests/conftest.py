import numpy as np
import pytest

from graphmc import GroundTruth, ModelKind, ModelParams, Seed


def basic_params(n=8, m=8, **kw):
    defaults = dict(kind=ModelKind.BASIC, n=n, m=m, alpha1=0.6, beta1=0.2,
                    alpha2=0.7, beta2=0.3, p=0.7, theta=0.2)
    defaults.update(kw)
    return ModelParams(**defaults)


def atypical_params(n=8, m=8, **kw):
    defaults = dict(kind=ModelKind.ATYPICAL, n=n, m=m, alpha1=0.6, beta1=0.2,
                    alpha2=0.7, beta2=0.3, p=0.7, theta_a=0.3, theta_r=0.1)
    defaults.update(kw)
    return ModelParams(**defaults)


def truth_from_lists(n, m, men, action, atyp_a=(), atyp_r=()):
    action = frozenset(action)
    romance = frozenset(range(m)) - action
    return GroundTruth(n=n, m=m, men=frozenset(men),
                       typical_action=action - frozenset(atyp_a),
                       atypical_action=frozenset(atyp_a),
                       typical_romance=romance - frozenset(atyp_r),
                       atypical_romance=frozenset(atyp_r))


@pytest.fixture
def rng():
    return np.random.default_rng(20260810)


def seeds(rng, count):
    return [Seed(int(s)) for s in rng.integers(0, 2**63, size=count)]
