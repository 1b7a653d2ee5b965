import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from poolq.discretize import colours_from_features
from poolq.featuregen import random_colouring, random_features


@given(st.integers(1, 40), st.integers(0, 10**6))
def test_feature_modes(n, seed):
    assert colours_from_features(random_features(n, "same", seed), 0.5).num_colours == 1
    assert colours_from_features(random_features(n, "distinct", seed), 0.5).num_colours == n
    x = random_features(n, "mixed", seed)
    half = -(-n // 2)
    assert np.array_equal(x[:half], np.eye(half))
    # every second-half row already appears in the first half
    assert all(any(np.array_equal(r, h) for h in x[:half]) for r in x[half:])
    assert np.array_equal(x, random_features(n, "mixed", seed))


def test_seed_independent_modes():
    assert np.array_equal(random_features(7, "same", 1), random_features(7, "same", 2))
    assert np.array_equal(random_features(7, "distinct", 1), random_features(7, "distinct", 2))


def test_unknown_mode():
    with pytest.raises(ValueError):
        random_features(3, "gaussian")


def test_random_colouring_basics():
    assert random_colouring(9, 1, 0).num_colours == 1
    assert random_colouring(9, 4, 3) == random_colouring(9, 4, 3)
    with pytest.raises(ValueError):
        random_colouring(3, 4)
    with pytest.raises(ValueError):
        random_colouring(3, 0)


def test_balls_in_bins_expectation():
    n = 200
    realized = np.mean([random_colouring(n, n, s).num_colours / n for s in range(50)])
    expected = 1 - (1 - 1 / n) ** n
    assert abs(realized - expected) < 0.02


@given(st.integers(1, 30).flatmap(lambda n: st.tuples(st.just(n), st.integers(1, n))), st.integers(0, 10**6))
def test_surjective_uses_exactly_k(nk, seed):
    n, k = nk
    c = random_colouring(n, k, seed, surjective=True, canonical=False)
    assert set(c.colours.tolist()) == set(range(k))
