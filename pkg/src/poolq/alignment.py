"""Normalised mutual information between partitions and feature/topology alignment."""

from __future__ import annotations

from typing import Mapping, Sequence

import numpy as np

from .graphcore import Graph, GraphError, Partition
from .spectral import default_num_clusters, feature_spectral_partition, spectral_partition


def _entropy(counts: np.ndarray) -> float:
    p = counts[counts > 0] / counts.sum()
    return float(-(p * np.log(p)).sum())


def nmi(p: Partition, q: Partition, normalization: str = "sqrt") -> float:
    """I(P;Q) normalised by sqrt(H(P) H(Q)) (or their mean with ``arithmetic``), natural log."""
    if p.n != q.n:
        raise GraphError(f"partitions cover {p.n} and {q.n} nodes")
    table = np.zeros((p.k, q.k))
    np.add.at(table, (p.labels, q.labels), 1.0)
    hp, hq = _entropy(table.sum(axis=1)), _entropy(table.sum(axis=0))
    if hp == 0.0 or hq == 0.0:
        return 1.0 if p.k == 1 and q.k == 1 else 0.0
    # entropy form: identical partitions give MI == H exactly
    mi = hp + hq - _entropy(table[table > 0])
    if normalization == "sqrt":
        denom = np.sqrt(hp * hq)
    elif normalization == "arithmetic":
        denom = (hp + hq) / 2.0
    else:
        raise ValueError(f"unknown normalization {normalization!r}")
    return float(min(1.0, max(0.0, mi / denom)))


def alignment_matrix(
    g: Graph,
    k: int | None = None,
    seed=0,
    affinity: str = "cosine",
    extra: Mapping[str, Partition] | None = None,
    normalization: str = "sqrt",
    graph_id=None,
) -> tuple[list[str], np.ndarray]:
    """Pairwise NMI among SC(A), SC(X) and any extra partitions of the same nodes."""
    if g.features is None:
        label = "graph" if graph_id is None else f"graph {graph_id}"
        raise GraphError(f"{label} has no node features")
    k = default_num_clusters(g.n) if k is None else min(k, g.n)
    parts = {"SC(A)": spectral_partition(g, k, seed), "SC(X)": feature_spectral_partition(g.features, k, seed, affinity)}
    parts.update(extra or {})
    names = list(parts)
    m = np.eye(len(names))
    for i in range(len(names)):
        for j in range(i + 1, len(names)):
            m[i, j] = m[j, i] = nmi(parts[names[i]], parts[names[j]], normalization)
    return names, m


def dataset_alignment(
    graphs: Sequence[Graph],
    k: int | None = None,
    seed=0,
    affinity: str = "cosine",
    extras: Sequence[Mapping[str, Partition]] | None = None,
    normalization: str = "sqrt",
) -> tuple[list[str], np.ndarray]:
    """Average of the per-graph alignment matrices; graph i is clustered with seed (seed, i)."""
    total, names = None, None
    for i, g in enumerate(graphs):
        names, m = alignment_matrix(
            g, k, (seed, i), affinity, None if extras is None else extras[i], normalization, graph_id=i
        )
        total = m if total is None else total + m
    return names, total / len(graphs)
