"""Constructive check of whether a one-layer select operator relu(HW) can realise a target partition."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graphcore import Colouring, Graph, GraphError, Partition, canonicalize_colouring
from .refine import refinement_trajectory


@dataclass(frozen=True)
class SelectOutcome:
    feasible: bool
    weights: np.ndarray | None = None  # |C| x k, rows follow first-appearance colour order
    certificate: tuple[int, int, int] | None = None  # (colour, group, other group)


def colour_matrix(zeta: Colouring) -> np.ndarray:
    """One-hot node representation H, columns in first-appearance colour order."""
    return zeta.one_hot()


def construct_select(zeta: Colouring, target: Partition) -> SelectOutcome:
    """Build W with argmax(relu(HW)) == target, or a colour that spans two groups."""
    if len(zeta) != target.n:
        raise GraphError(f"colouring covers {len(zeta)} nodes, target covers {target.n}")
    canon = canonicalize_colouring(zeta.colours).colours
    group_of = np.full(int(canon.max()) + 1, -1)
    for v, (c, g) in enumerate(zip(canon.tolist(), target.labels.tolist())):
        if group_of[c] == -1:
            group_of[c] = g
        elif group_of[c] != g:
            return SelectOutcome(False, certificate=(int(zeta.colours[v]), int(group_of[c]), int(g)))
    w = np.zeros((len(group_of), target.k))
    w[np.arange(len(group_of)), group_of] = 1.0
    return SelectOutcome(True, weights=w)


def apply_select(zeta: Colouring, weights: np.ndarray) -> np.ndarray:
    """Per-node group index argmax(relu(HW)); ties go to the lowest group."""
    return np.maximum(colour_matrix(zeta) @ weights, 0.0).argmax(axis=1)


@dataclass(frozen=True)
class RefinementFeasibility:
    first_feasible_round: int | None  # None: even the stable colouring spans groups
    stable_round: int
    certificate: tuple[int, int, int] | None = None
    reached_stable: bool = True

    @property
    def never(self) -> bool:
        """True only when the stable colouring itself was shown infeasible."""
        return self.first_feasible_round is None and self.reached_stable


def feasible_after_refinement(
    g: Graph, zeta: Colouring, target: Partition, max_rounds: int | None = None
) -> RefinementFeasibility:
    """Smallest number of refinement rounds after which the select is constructible.

    Refinement past the stable round cannot split classes further, so an
    infeasible stable colouring proves infeasibility for every depth.
    """
    traj = refinement_trajectory(g, zeta, 0)
    limit = traj.stable_round if max_rounds is None else min(max_rounds, traj.stable_round)
    traj = refinement_trajectory(g, zeta, limit)
    for r, col in enumerate(traj.colourings):
        if construct_select(col, target).feasible:
            return RefinementFeasibility(r, traj.stable_round)
    cert = construct_select(traj.colourings[-1], target).certificate
    return RefinementFeasibility(None, traj.stable_round, cert, limit == traj.stable_round)
