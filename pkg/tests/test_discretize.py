import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from poolq.discretize import (
    colour_count_curve,
    colours_from_features,
    component_labels,
    parse_grid,
    shared_colours_from_features,
)

from oracles import same_classes, threshold_components_oracle

small_floats = st.floats(-3, 3, allow_nan=False).map(lambda v: round(v, 3))
feature_mats = st.tuples(st.integers(1, 12), st.integers(1, 4)).flatmap(
    lambda s: arrays(np.float64, s, elements=small_floats)
)


def test_one_hot_rows_stay_apart():
    assert colours_from_features(np.eye(5), 0.5).num_colours == 5


def test_identical_rows_merge():
    assert colours_from_features(np.ones((4, 3)), 1.0).num_colours == 1


def test_chain_merges_through_middle():
    x = np.array([[1, 0], [1 / math.sqrt(2), 1 / math.sqrt(2)], [0, 1]])
    assert colours_from_features(x, 0.7).num_colours == 1
    assert colours_from_features(x, 0.71).num_colours == 3


def test_zero_rows():
    x = np.array([[0, 0], [0, 0], [1, 0]])
    assert colours_from_features(x, 0.5).colours.tolist() == [0, 0, 1]
    # similarity 0 still clears a zero threshold
    assert colours_from_features(x, 0.0).num_colours == 1


def test_rejects_nan():
    with pytest.raises(ValueError):
        component_labels(np.array([[np.nan, 1.0]]), 0.5)


def test_curve_examples():
    assert all(k == pytest.approx(1 / 4) for _, k in colour_count_curve(np.ones((4, 2)), [0, 0.5, 1]))
    assert all(k == 1.0 for _, k in colour_count_curve(np.eye(3), [0.1, 0.5, 1]))
    with pytest.raises(ValueError):
        colour_count_curve(np.eye(3), [])
    with pytest.raises(ValueError):
        colour_count_curve(np.eye(3), [0.5, 0.1])


def test_parse_grid():
    g = parse_grid("0:0.01:1")
    assert len(g) == 101 and g[0] == 0.0 and g[-1] == 1.0 and g[48] == 0.48
    assert parse_grid("0.2,0.1") == [0.1, 0.2]


@given(feature_mats, st.floats(0, 1))
def test_matches_pairwise_oracle(x, tau):
    assert same_classes(component_labels(x, tau).tolist(), threshold_components_oracle(x, tau))


@given(feature_mats)
def test_count_non_decreasing_in_tau(x):
    counts = [k for _, k in colour_count_curve(x, parse_grid("0:0.05:1"))]
    assert counts == sorted(counts)


@given(feature_mats, st.floats(0, 1), st.lists(st.floats(0.1, 10), min_size=12, max_size=12))
def test_positive_scaling_invariance(x, tau, scales):
    scaled = x * np.array(scales[: len(x)])[:, None]
    assert same_classes(component_labels(x, tau).tolist(), component_labels(scaled, tau).tolist())


def test_tau_one_keeps_parallel_only():
    x = np.array([[1, 0], [2, 0], [1, 1e-3]])
    assert colours_from_features(x, 1.0).colours.tolist() == [0, 0, 1]


@pytest.mark.parametrize("alphabet", ["index", "centroid"])
def test_shared_alphabet_per_graph_classes(alphabet):
    feats = [np.eye(3), np.array([[1.0, 0, 0], [1.0, 0, 0]])]
    cols = shared_colours_from_features(feats, 0.5, alphabet)
    assert cols[0].num_colours == 3 and cols[1].num_colours == 1
    # the first component of both graphs is the same vector, so both keyings agree on it
    assert cols[0].colours[0] == cols[1].colours[0]


def test_centroid_keys_separate_different_vectors():
    feats = [np.array([[1.0, 0.0]]), np.array([[0.0, 1.0]])]
    a, b = shared_colours_from_features(feats, 0.5, "centroid")
    assert a.colours[0] != b.colours[0]
    a, b = shared_colours_from_features(feats, 0.5, "index")
    assert a.colours[0] == b.colours[0]
