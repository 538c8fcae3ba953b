"""Instance file round-trips."""

import numpy as np
import pytest

from graphmc import ERASED, Seed, generate_instance, read_instance, write_instance

from conftest import atypical_params, basic_params


@pytest.mark.parametrize("params,counts", [
    (basic_params(n=6, m=4, p=0.5), None),
    (atypical_params(n=4, m=6, p=0.3), "uniform"),
    (basic_params(n=4, m=4, p=0.0), None),   # all erased
    (basic_params(n=4, m=4, p=1.0), None),   # fully revealed
])
def test_round_trip_lossless(tmp_path, params, counts):
    xi, obs = generate_instance(params, counts, Seed(31))
    path = tmp_path / "instance.txt"
    write_instance(str(path), params, xi, obs)
    params2, xi2, obs2 = read_instance(str(path))
    assert params2 == params
    assert xi2 == xi
    assert (obs2.ratings == obs.ratings).all()
    assert (obs2.social_graph == obs.social_graph).all()
    assert (obs2.movie_graph == obs.movie_graph).all()


def test_erased_token_on_disk(tmp_path):
    params = basic_params(n=4, m=4, p=0.0)
    xi, obs = generate_instance(params, None, Seed(1))
    path = tmp_path / "inst.txt"
    write_instance(str(path), params, xi, obs)
    text = path.read_text()
    assert "- - - -" in text
    assert str(ERASED) not in text.split("[ratings]")[1].split("[social_graph]")[0]


def test_rejects_foreign_file(tmp_path):
    path = tmp_path / "bogus.txt"
    path.write_text("not an instance\n")
    with pytest.raises(ValueError):
        read_instance(str(path))
