import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from poolq.alignment import alignment_matrix, dataset_alignment, nmi
from poolq.fixtures import TWO_COMMUNITIES
from poolq.graphcore import Graph, GraphError, Partition
from poolq.spectral import spectral_partition

from oracles import nmi_oracle
from strategies import partitions

pair = st.integers(1, 20).flatmap(lambda n: st.tuples(partitions(n, 5), partitions(n, 5)))


def test_identity_and_relabel():
    p = Partition(((0, 1), (2, 3, 4)))
    assert nmi(p, p) == 1.0
    assert nmi(p, Partition(((2, 3, 4), (0, 1)))) == 1.0


def test_independent_is_zero():
    assert nmi(Partition(((0, 1), (2, 3))), Partition(((0, 2), (1, 3)))) == 0.0


def test_zero_entropy_convention():
    one = Partition(((0, 1, 2),))
    assert nmi(one, one) == 1.0
    assert nmi(one, Partition(((0,), (1, 2)))) == 0.0


def test_size_mismatch():
    with pytest.raises(GraphError):
        nmi(Partition(((0,),)), Partition(((0, 1),)))


@given(pair, st.sampled_from(["sqrt", "arithmetic"]))
def test_matches_oracle(pq, norm):
    p, q = pq
    assert nmi(p, q, norm) == pytest.approx(nmi_oracle(p, q, norm), abs=1e-12)
    assert nmi(p, q, norm) == pytest.approx(nmi(q, p, norm), abs=1e-15)
    assert 0.0 <= nmi(p, q, norm) <= 1.0


@given(pair, st.randoms(use_true_random=False))
def test_node_relabelling_invariance(pq, rnd):
    p, q = pq
    perm = list(range(p.n))
    rnd.shuffle(perm)

    def moved(x):
        return Partition(tuple(tuple(perm[v] for v in g) for g in x.groups))

    assert nmi(moved(p), moved(q)) == pytest.approx(nmi(p, q), abs=1e-12)


def test_matrix_with_aligned_features():
    target = spectral_partition(TWO_COMMUNITIES, 2, 0)
    g = TWO_COMMUNITIES.with_features(np.eye(2)[target.labels])
    names, m = alignment_matrix(g, 2, 0)
    assert names == ["SC(A)", "SC(X)"]
    assert np.allclose(np.diag(m), 1.0) and np.allclose(m, m.T)
    assert m[0, 1] == pytest.approx(1.0)


def test_missing_features_named():
    with pytest.raises(GraphError, match="graph 1 has no node features"):
        dataset_alignment([TWO_COMMUNITIES.with_features(np.ones((10, 1))), TWO_COMMUNITIES], 2)


def test_extra_partitions_join_matrix():
    g = TWO_COMMUNITIES.with_features(np.eye(10))
    names, m = alignment_matrix(g, 2, 0, extra={"halves": Partition((tuple(range(5)), tuple(range(5, 10))))})
    assert names[-1] == "halves" and m.shape == (3, 3)
    assert m[0, 2] == pytest.approx(1.0)


def test_random_features_near_zero():
    rng = np.random.default_rng(0)
    vals = []
    for _ in range(100):
        x = rng.random((10, 4))
        vals.append(alignment_matrix(TWO_COMMUNITIES.with_features(x), 2, int(rng.integers(1 << 30)))[1][0, 1])
    assert np.mean(vals) < 0.2
