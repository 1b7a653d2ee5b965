"""Core domain types: graphs, colourings, partitions and quality reports."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import numpy as np


class GraphError(ValueError):
    """Raised when a graph, colouring or partition violates its invariants."""


@dataclass(frozen=True)
class Graph:
    """Undirected multigraph with optional dense node features.

    ``edges`` is an (m, 2) integer array; repeated rows are multiedges and
    rows ``(i, i)`` are self-loops.
    """

    n: int
    edges: np.ndarray = field(default_factory=lambda: np.zeros((0, 2), dtype=np.int64))
    features: np.ndarray | None = None

    def __post_init__(self):
        if self.n < 1:
            raise GraphError("empty graph")
        edges = np.asarray(self.edges, dtype=np.int64).reshape(-1, 2)
        if edges.size and (edges.min() < 0 or edges.max() >= self.n):
            raise GraphError(f"edge endpoint out of range for n={self.n}")
        edges.setflags(write=False)
        object.__setattr__(self, "edges", edges)
        if self.features is not None:
            x = np.asarray(self.features, dtype=np.float64)
            if x.ndim == 1:
                x = x[:, None]
            if x.shape[0] != self.n:
                raise GraphError(f"feature matrix has {x.shape[0]} rows, expected {self.n}")
            x.setflags(write=False)
            object.__setattr__(self, "features", x)

    @classmethod
    def from_edges(cls, n: int, edges: Sequence[tuple[int, int]], features=None) -> Graph:
        return cls(n, np.asarray(list(edges), dtype=np.int64).reshape(-1, 2), features)

    def with_features(self, features) -> Graph:
        return Graph(self.n, self.edges, features)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @cached_property
    def adjacency(self) -> np.ndarray:
        """Dense adjacency with multiedge multiplicities; a self-loop adds 1 to A[i, i]."""
        a = np.zeros((self.n, self.n))
        u, v = self.edges[:, 0], self.edges[:, 1]
        np.add.at(a, (u, v), 1.0)
        off = u != v
        np.add.at(a, (v[off], u[off]), 1.0)
        return a

    @cached_property
    def degrees(self) -> np.ndarray:
        return self.adjacency.sum(axis=1)

    @cached_property
    def neighbours(self) -> tuple[tuple[int, ...], ...]:
        """Adjacency lists with multiplicity; a self-loop lists the node once."""
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges.tolist():
            adj[u].append(v)
            if u != v:
                adj[v].append(u)
        return tuple(tuple(sorted(a)) for a in adj)

    def permuted(self, perm: Sequence[int]) -> Graph:
        """Relabel node ``i`` as ``perm[i]``."""
        perm = np.asarray(perm, dtype=np.int64)
        feats = None
        if self.features is not None:
            feats = np.empty_like(self.features)
            feats[perm] = self.features
        return Graph(self.n, perm[self.edges] if len(self.edges) else self.edges, feats)


@dataclass(frozen=True)
class Colouring:
    """Node colouring as an integer array of colour ids.

    Colourings built by :func:`canonicalize_colouring` use contiguous ids
    ``0..|C|-1``. Colourings of several graphs that share one alphabet keep
    their global ids, so ids need not be contiguous within a single graph.
    """

    colours: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.colours, dtype=np.int64).ravel()
        if c.size == 0:
            raise GraphError("empty graph")
        if c.min() < 0:
            raise GraphError("colour ids must be non-negative")
        c.setflags(write=False)
        object.__setattr__(self, "colours", c)

    def __len__(self) -> int:
        return len(self.colours)

    def __eq__(self, other) -> bool:
        return isinstance(other, Colouring) and np.array_equal(self.colours, other.colours)

    def __hash__(self) -> int:
        return hash(self.colours.tobytes())

    @cached_property
    def num_colours(self) -> int:
        return len(np.unique(self.colours))

    def classes(self) -> list[frozenset[int]]:
        """Colour classes as node sets, in order of first appearance."""
        out: dict[int, list[int]] = {}
        for node, c in enumerate(self.colours.tolist()):
            out.setdefault(c, []).append(node)
        return [frozenset(v) for v in out.values()]

    def class_partition(self) -> frozenset[frozenset[int]]:
        return frozenset(self.classes())

    def one_hot(self) -> np.ndarray:
        canon = canonicalize_colouring(self.colours)
        h = np.zeros((len(self), canon.num_colours))
        h[np.arange(len(self)), canon.colours] = 1.0
        return h


def canonicalize_colouring(raw) -> Colouring:
    """Relabel arbitrary hashable labels to ``0..|C|-1`` by first appearance."""
    raw = list(raw.tolist() if isinstance(raw, np.ndarray) else raw)
    if not raw:
        raise GraphError("empty graph")
    table: dict = {}
    out = [table.setdefault(label, len(table)) for label in raw]
    return Colouring(np.asarray(out, dtype=np.int64))


@dataclass(frozen=True)
class Partition:
    """Hard partition of nodes ``0..n-1`` into non-empty, disjoint groups."""

    groups: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        groups = tuple(tuple(sorted(int(v) for v in g)) for g in self.groups)
        if any(len(g) == 0 for g in groups):
            raise GraphError("partition contains an empty group")
        seen = [v for g in groups for v in g]
        if len(seen) != len(set(seen)):
            raise GraphError("groups overlap")
        if sorted(seen) != list(range(len(seen))):
            raise GraphError("groups do not cover nodes 0..n-1")
        object.__setattr__(self, "groups", groups)

    @classmethod
    def from_labels(cls, labels) -> Partition:
        """Group nodes by label, groups ordered by first appearance."""
        out: dict = {}
        for node, lab in enumerate(np.asarray(labels).tolist()):
            out.setdefault(lab, []).append(node)
        return cls(tuple(tuple(g) for g in out.values()))

    @property
    def k(self) -> int:
        return len(self.groups)

    @property
    def n(self) -> int:
        return sum(len(g) for g in self.groups)

    @cached_property
    def labels(self) -> np.ndarray:
        lab = np.empty(self.n, dtype=np.int64)
        for j, g in enumerate(self.groups):
            lab[list(g)] = j
        return lab

    def as_sets(self) -> frozenset[frozenset[int]]:
        return frozenset(frozenset(g) for g in self.groups)

    def same_groups(self, other: Partition) -> bool:
        """Equality up to group order."""
        return self.as_sets() == other.as_sets()


def assignment_of(p: Partition) -> np.ndarray:
    """Binary N x k assignment matrix S with S[i, j] = 1 iff node i is in group j."""
    s = np.zeros((p.n, p.k), dtype=np.int64)
    s[np.arange(p.n), p.labels] = 1
    return s


@dataclass(frozen=True)
class AssignmentResult:
    partition: Partition
    dropped_empty: bool


def partition_from_assignment(s) -> AssignmentResult:
    """Read a hard partition off a binary assignment matrix.

    Empty columns are dropped and flagged via ``dropped_empty``.
    """
    s = np.asarray(s)
    if s.ndim != 2 or s.shape[0] == 0:
        raise GraphError("empty graph")
    if not np.isin(s, (0, 1)).all() or not (s.sum(axis=1) == 1).all():
        raise GraphError("not a hard partition")
    used = s.sum(axis=0) > 0
    groups = tuple(tuple(np.flatnonzero(s[:, j]).tolist()) for j in np.flatnonzero(used))
    return AssignmentResult(Partition(groups), dropped_empty=not used.all())


@dataclass
class QualityReport:
    """Validity, transferability and combined quality for one pair or dataset."""

    gamma: float
    lambda_: float
    variant: str = "full"
    invalid_colours: list = field(default_factory=list)
    unmatched_groups: list = field(default_factory=list)

    @property
    def q(self) -> float:
        return min(self.gamma, self.lambda_)

    def to_dict(self) -> dict:
        return {
            "gamma": self.gamma,
            "lambda": self.lambda_,
            "q": self.q,
            "variant": self.variant,
            "invalid_colours": [int(c) if not isinstance(c, tuple) else list(c) for c in self.invalid_colours],
            "unmatched_groups": [list(g) for g in self.unmatched_groups],
        }
