"""1-WL colour refinement on single graphs and on graph collections."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .graphcore import Colouring, Graph, GraphError, canonicalize_colouring

INF = math.inf


def parse_rounds(value) -> float:
    if isinstance(value, str) and value.strip().lower() in ("inf", "infinity", "∞"):
        return INF
    r = int(value)
    if r < 0:
        raise ValueError("rounds must be non-negative")
    return r


def format_rounds(r) -> str:
    return "inf" if r == INF else str(int(r))


def _signatures(g: Graph, colours: list[int]) -> list[tuple]:
    return [(colours[v], tuple(sorted(colours[u] for u in g.neighbours[v]))) for v in range(g.n)]


def _check(g: Graph, init: Colouring):
    if len(init) != g.n:
        raise GraphError(f"colouring has {len(init)} entries, graph has {g.n} nodes")


def refine_colours(g: Graph, init: Colouring, rounds=INF) -> Colouring:
    """Refine ``init`` for ``rounds`` rounds, or until stable when ``rounds`` is INF.

    Each round recolours a node by its current colour together with the
    sorted multiset of its neighbours' colours.
    """
    if rounds == INF:
        return refinement_trajectory(g, init, 0).fixed_point
    return refinement_trajectory(g, init, int(rounds), until_stable=False).final


@dataclass(frozen=True)
class Trajectory:
    colourings: tuple[Colouring, ...]  # after rounds 0..max_r
    fixed_point: Colouring
    stable_round: int

    @property
    def final(self) -> Colouring:
        return self.colourings[-1]


def refinement_trajectory(g: Graph, init: Colouring, max_r: int, until_stable: bool = True) -> Trajectory:
    """Colourings after rounds ``0..max_r`` plus the stable colouring.

    ``stable_round`` is the first round whose colour classes survive one more
    round unchanged.
    """
    _check(g, init)
    current = canonicalize_colouring(init.colours)
    history = [current]
    stable_round = None
    # n rounds always suffice: every effective round adds at least one class
    for r in range(g.n + 1):
        if r >= max_r and (stable_round is not None or not until_stable):
            break
        nxt = canonicalize_colouring(_signatures(g, current.colours.tolist()))
        if stable_round is None and nxt.num_colours == current.num_colours:
            stable_round = r
        current = nxt
        history.append(current)
    if stable_round is None:
        stable_round = _stable_from(history)
    fixed = history[min(stable_round, len(history) - 1)]
    return Trajectory(tuple(history[: max_r + 1]), fixed, stable_round)


def _stable_from(history: list[Colouring]) -> int:
    for r in range(len(history) - 1):
        if history[r + 1].num_colours == history[r].num_colours:
            return r
    return len(history) - 1


def refine_many(graphs: Sequence[Graph], colourings: Sequence[Colouring], rounds=INF) -> list[Colouring]:
    """Jointly refine colourings of several graphs with one shared label table per round.

    Inputs must already share an alphabet; outputs then share one too, so a
    node in graph A and a node in graph B get equal colours iff their
    unfolding trees to depth ``rounds`` agree. With INF all graphs run the
    same number of rounds, namely until no graph gains a colour class.
    """
    if len(graphs) != len(colourings):
        raise ValueError("one colouring per graph required")
    for g, c in zip(graphs, colourings):
        _check(g, c)
    current = [c.colours.tolist() for c in colourings]
    counts = [len(set(c)) for c in current]
    limit = max((g.n for g in graphs), default=0) + 1 if rounds == INF else int(rounds)
    for _ in range(limit):
        table: dict[tuple, int] = {}
        current = [[table.setdefault(s, len(table)) for s in _signatures(g, c)] for g, c in zip(graphs, current)]
        new_counts = [len(set(c)) for c in current]
        if rounds == INF and new_counts == counts:
            break
        counts = new_counts
    return [Colouring(np.asarray(c, dtype=np.int64)) for c in current]
