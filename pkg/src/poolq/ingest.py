"""Reader for the TUDataset text format and seen/unseen splitting."""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .graphcore import Colouring, Graph

_SPLIT = re.compile(r"[,\s]+")


class DatasetFormatError(ValueError):
    pass


@dataclass(frozen=True)
class DatasetBundle:
    name: str
    graphs: tuple[Graph, ...]
    graph_labels: tuple[int, ...] | None = None
    # per-graph colouring keyed by raw label value, shared across graphs
    node_label_colouring: tuple[Colouring, ...] | None = None
    # empirical continuous attributes, kept even when labels drive the features
    node_attributes: tuple[np.ndarray, ...] | None = None

    def __len__(self) -> int:
        return len(self.graphs)

    def subset(self, indices) -> DatasetBundle:
        idx = list(indices)
        pick = lambda xs: None if xs is None else tuple(xs[i] for i in idx)  # noqa: E731
        return DatasetBundle(
            self.name,
            pick(self.graphs),
            pick(self.graph_labels),
            pick(self.node_label_colouring),
            pick(self.node_attributes),
        )


@dataclass(frozen=True)
class DatasetSplit:
    seen: tuple[int, ...]
    unseen: tuple[int, ...]


def _read_rows(path: Path, kind=int, with_lines: bool = False) -> list:
    """Parsed non-blank lines; with ``with_lines`` each entry is ``(line number, row)``."""
    rows = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                row = [kind(tok) for tok in _SPLIT.split(line) if tok]
            except ValueError:
                raise DatasetFormatError(
                    f"{path.name}:{lineno}: expected {kind.__name__} tokens, got {line!r}"
                ) from None
            rows.append((lineno, row) if with_lines else row)
    return rows


def _require(path: Path) -> Path:
    if not path.is_file():
        raise FileNotFoundError(f"missing mandatory file {path}")
    return path


def load_tudataset(directory, name: str) -> DatasetBundle:
    """Load ``<name>_*.txt`` files from ``directory``.

    Node ids are converted from 1-based to per-graph 0-based indices. Both
    directions of an undirected edge collapse into one edge; extra copies
    beyond the symmetric pair are kept as multiedges.
    """
    d = Path(directory)
    if not d.is_dir():
        raise FileNotFoundError(f"dataset directory {d} does not exist")
    indicator_rows = _read_rows(_require(d / f"{name}_graph_indicator.txt"))
    edge_path = _require(d / f"{name}_A.txt")
    edge_rows = _read_rows(edge_path, with_lines=True)

    indicator = np.array([r[0] for r in indicator_rows], dtype=np.int64)
    num_nodes = len(indicator)
    graph_ids = np.unique(indicator)
    if graph_ids[0] != 1 or graph_ids[-1] != len(graph_ids):
        raise DatasetFormatError("graph ids in indicator file must be contiguous from 1")
    n_graphs = len(graph_ids)
    sizes = np.bincount(indicator - 1, minlength=n_graphs)
    offsets = np.concatenate([[0], np.cumsum(sizes)])
    if np.any(np.diff(indicator) < 0):
        raise DatasetFormatError("indicator file must list nodes grouped by graph")

    directed: list[Counter] = [Counter() for _ in range(n_graphs)]
    for lineno, row in edge_rows:
        if len(row) != 2:
            raise DatasetFormatError(f"{edge_path.name}:{lineno}: expected two node ids")
        u, v = row[0] - 1, row[1] - 1
        if not (0 <= u < num_nodes and 0 <= v < num_nodes):
            raise DatasetFormatError(f"{edge_path.name}:{lineno}: node id out of range")
        gu, gv = indicator[u] - 1, indicator[v] - 1
        if gu != gv:
            raise DatasetFormatError(
                f"{edge_path.name}:{lineno}: edge ({u + 1}, {v + 1}) crosses graphs {gu + 1} and {gv + 1}"
            )
        directed[gu][(u - offsets[gu], v - offsets[gu])] += 1

    labels = None
    label_path = d / f"{name}_node_labels.txt"
    if label_path.is_file():
        labels = np.array([r[0] for r in _read_rows(label_path)], dtype=np.int64)
        if len(labels) != num_nodes:
            raise DatasetFormatError(f"{label_path.name}: {len(labels)} rows, expected {num_nodes}")
    attrs = None
    attr_path = d / f"{name}_node_attributes.txt"
    if attr_path.is_file():
        attrs = np.array(_read_rows(attr_path, float), dtype=np.float64)
        if len(attrs) != num_nodes:
            raise DatasetFormatError(f"{attr_path.name}: {len(attrs)} rows, expected {num_nodes}")
    graph_labels = None
    gl_path = d / f"{name}_graph_labels.txt"
    if gl_path.is_file():
        graph_labels = tuple(r[0] for r in _read_rows(gl_path))
        if len(graph_labels) != n_graphs:
            raise DatasetFormatError(f"{gl_path.name}: {len(graph_labels)} rows, expected {n_graphs}")

    label_ids = None
    features = attrs
    if labels is not None:
        alphabet, label_ids = np.unique(labels, return_inverse=True)
        if attrs is None:
            features = np.eye(len(alphabet))[label_ids]

    graphs, colourings, attr_blocks = [], [], []
    for g in range(n_graphs):
        lo, hi = offsets[g], offsets[g + 1]
        graphs.append(Graph(int(hi - lo), _undirected(directed[g]), None if features is None else features[lo:hi]))
        if label_ids is not None:
            colourings.append(Colouring(label_ids[lo:hi]))
        if attrs is not None:
            attr_blocks.append(attrs[lo:hi])

    return DatasetBundle(
        name=name,
        graphs=tuple(graphs),
        graph_labels=graph_labels,
        node_label_colouring=tuple(colourings) if label_ids is not None else None,
        node_attributes=tuple(attr_blocks) if attrs is not None else None,
    )


def _undirected(counts: Counter) -> np.ndarray:
    edges = []
    for (u, v), c in sorted(counts.items()):
        if u == v:
            edges.extend([(u, u)] * c)
        elif u < v:
            edges.extend([(u, v)] * max(c, counts.get((v, u), 0)))
        elif (v, u) not in counts:
            edges.extend([(v, u)] * c)
    return np.asarray(edges, dtype=np.int64).reshape(-1, 2)


def split_seen_unseen(bundle: DatasetBundle | int, fraction: float = 0.8, seed: int = 0) -> DatasetSplit:
    """Seeded shuffled split; ``round(fraction * n)`` graphs are seen."""
    n = bundle if isinstance(bundle, int) else len(bundle)
    if not 0 < fraction < 1:
        raise ValueError("fraction must lie strictly between 0 and 1")
    if n < 2:
        raise ValueError("need at least two graphs to split")
    n_seen = int(round(fraction * n))
    if n_seen == 0 or n_seen == n:
        raise ValueError(f"split of {n} graphs at {fraction} leaves one side empty")
    order = np.random.default_rng(seed).permutation(n)
    return DatasetSplit(tuple(sorted(order[:n_seen].tolist())), tuple(sorted(order[n_seen:].tolist())))
