import pytest
from hypothesis import given
from hypothesis import strategies as st

from poolq.ingest import DatasetFormatError, load_tudataset, split_seen_unseen


def write(tmp_path, name, **files):
    for suffix, text in files.items():
        (tmp_path / f"{name}_{suffix}.txt").write_text(text)
    return tmp_path


def test_two_file_toy(tmp_path):
    b = load_tudataset(write(tmp_path, "T", A="1, 2\n2, 1\n", graph_indicator="1\n1\n"), "T")
    assert len(b.graphs) == 1
    assert b.graphs[0].n == 2
    assert b.graphs[0].edges.tolist() == [[0, 1]]
    assert b.node_label_colouring is None


def test_cross_graph_edge_names_line(tmp_path):
    d = write(tmp_path, "T", A="1,2\n\n2,1\n1,3\n", graph_indicator="1\n1\n2\n")
    with pytest.raises(DatasetFormatError, match=r"T_A\.txt:4: edge \(1, 3\)"):
        load_tudataset(d, "T")


def test_missing_mandatory_file(tmp_path):
    write(tmp_path, "T", A="1,2\n")
    with pytest.raises(FileNotFoundError):
        load_tudataset(tmp_path, "T")


def test_non_integer_token(tmp_path):
    d = write(tmp_path, "T", A="1,2\n2,x\n", graph_indicator="1\n1\n")
    with pytest.raises(DatasetFormatError, match=r"T_A\.txt:2"):
        load_tudataset(d, "T")


def test_repeated_pairs_stay_multiedges(tmp_path):
    d = write(tmp_path, "T", A="1,2\n2,1\n1,2\n2,1\n2 3\n3 2\n", graph_indicator="1\n1\n1\n", node_labels="4\n0\n4\n")
    b = load_tudataset(d, "T")
    assert sorted(map(tuple, b.graphs[0].edges.tolist())) == [(0, 1), (0, 1), (1, 2)]
    assert b.node_label_colouring[0].colours.tolist() == [1, 0, 1]
    assert b.graphs[0].features.shape == (3, 2)


def test_attributes_win_over_labels(tmp_path):
    d = write(
        tmp_path, "T", A="1,2\n2,1\n", graph_indicator="1\n1\n", node_labels="0\n1\n",
        node_attributes="0.5, 1.0\n2.0, -1\n", graph_labels="1\n",
    )
    b = load_tudataset(d, "T")
    assert b.graphs[0].features.tolist() == [[0.5, 1.0], [2.0, -1.0]]
    assert b.node_label_colouring[0].num_colours == 2
    assert b.graph_labels == [1] or list(b.graph_labels) == [1]


def test_mutag_shape(mutag):
    assert len(mutag.graphs) == 188
    n = [g.n for g in mutag.graphs]
    assert sum(n) == 3371
    assert abs(sum(n) / 188 - 17.93) < 0.01
    alphabet = set().union(*(set(c.colours.tolist()) for c in mutag.node_label_colouring))
    assert len(alphabet) == 7
    assert all(g.features is not None and g.features.shape[0] == g.n for g in mutag.graphs)


def test_mutag_reload_identical(mutag, data_dir):
    again = load_tudataset(data_dir / "MUTAG", "MUTAG")
    assert all((a.edges == b.edges).all() for a, b in zip(mutag.graphs, again.graphs))
    assert mutag.node_label_colouring == again.node_label_colouring


def test_split_examples():
    s = split_seen_unseen(188, 0.8, 3)
    assert (len(s.seen), len(s.unseen)) == (150, 38)
    s = split_seen_unseen(2, 0.5, 0)
    assert (len(s.seen), len(s.unseen)) == (1, 1)
    with pytest.raises(ValueError):
        split_seen_unseen(5, 0.99, 0)


@given(st.integers(2, 300), st.floats(0.05, 0.95), st.integers(0, 10**6))
def test_split_covers_without_overlap(n, frac, seed):
    k = round(frac * n)
    if k in (0, n):
        with pytest.raises(ValueError):
            split_seen_unseen(n, frac, seed)
        return
    s = split_seen_unseen(n, frac, seed)
    assert sorted((*s.seen, *s.unseen)) == list(range(n))
    assert len(s.seen) == k
    assert s == split_seen_unseen(n, frac, seed)
