"""Small hand-built instances with known scores and refinement behaviour."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graphcore import Colouring, Graph, Partition

# one alphabet for every pair fixture, so colour names map to fixed ids
_PALETTE = [
    "green", "blue", "lightblue", "pink", "lightgreen", "orange",
    "navy", "red", "fadedgreen", "lightblue2", "purple",
]
COLOUR_ID = {name: i for i, name in enumerate(_PALETTE)}


@dataclass(frozen=True)
class Side:
    graph: Graph
    colouring: Colouring
    partition: Partition


@dataclass(frozen=True)
class PairFixture:
    name: str
    seen: Side
    unseen: Side
    expected: tuple[float, float, float]  # (gamma, lambda, q)


def _side(groups: list[list[str]]) -> Side:
    """Each group is a path of its nodes; consecutive groups joined by one edge."""
    colours, parts, edges = [], [], []
    start = 0
    for names in groups:
        nodes = list(range(start, start + len(names)))
        edges += list(zip(nodes, nodes[1:]))
        if start:
            edges.append((start - 1, start))
        colours += [COLOUR_ID[c] for c in names]
        parts.append(tuple(nodes))
        start += len(names)
    return Side(Graph.from_edges(start, edges), Colouring(np.array(colours)), Partition(tuple(parts)))


# seen graph on the left, unseen graph on the right
PAIR_CASES = {
    "a": PairFixture(
        "a",
        _side([["green", "green", "green"], ["blue", "blue", "blue"]]),
        _side([["green", "green"], ["blue", "blue"]]),
        (1.0, 1.0, 1.0),
    ),
    "b": PairFixture(
        "b",
        _side([["lightblue", "pink", "lightgreen"], ["navy", "red", "fadedgreen"]]),
        _side([["lightblue", "orange", "pink", "lightgreen"], ["navy", "lightblue2", "red", "fadedgreen"]]),
        (1.0, 0.0, 0.0),
    ),
    "c": PairFixture(
        "c",
        _side([["red"], ["red"]]),
        _side([["red"], ["red"]]),
        (0.0, 1.0, 0.0),
    ),
    "d": PairFixture(
        "d",
        _side([["lightblue", "pink", "fadedgreen"], ["navy", "red", "purple"]]),
        _side([["fadedgreen"], ["navy"]]),
        (1.0, 1.0, 1.0),
    ),
}


@dataclass(frozen=True)
class RefinementFixture:
    name: str
    graph: Graph
    colouring: Colouring
    target: Partition


def _uniform(n: int) -> Colouring:
    return Colouring(np.zeros(n, dtype=np.int64))


# found by scripts/search_refinement_fixtures.py --seed 7; both use multiedges
_LATE = Graph.from_edges(9, [
    (0, 2), (0, 2), (0, 3), (0, 3), (1, 3), (2, 3), (2, 3), (4, 5), (4, 5),
    (4, 8), (4, 8), (5, 6), (5, 7), (7, 8), (7, 8), (2, 5),
])
_MIRROR = Graph.from_edges(8, [
    (0, 1), (0, 1), (0, 2), (0, 2), (1, 2), (1, 3), (4, 5), (4, 5), (4, 6),
    (4, 6), (5, 6), (5, 7), (0, 4),
])

# late-separable: needs 3 rounds; mirror: mirror-symmetric, never separable
LATE_SEPARABLE = RefinementFixture("late-separable", _LATE, _uniform(9), Partition(((0, 1, 2, 3), (4, 5, 6, 7, 8))))
MIRROR_INSEPARABLE = RefinementFixture("mirror", _MIRROR, _uniform(8), Partition(((0, 1, 2, 3), (4, 5, 6, 7))))

# two five-node communities with one doubled bridge
TWO_COMMUNITIES = Graph.from_edges(10, [
    (0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (2, 4), (3, 4), (0, 4),
    (5, 6), (5, 7), (6, 7), (6, 8), (7, 8), (7, 9), (8, 9), (5, 9),
    (4, 5), (4, 5),
])
TWO_COMMUNITIES_TARGET = Partition(((0, 1, 2, 3, 4), (5, 6, 7, 8, 9)))

PAIR_FIXTURES = {f"pair-{k}": v for k, v in PAIR_CASES.items()}
REFINEMENT_FIXTURES = {"late-separable": LATE_SEPARABLE, "mirror": MIRROR_INSEPARABLE}
