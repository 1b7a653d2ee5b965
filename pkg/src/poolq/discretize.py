"""Cosine-threshold discretization of continuous features into colours."""

from __future__ import annotations

from typing import Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .graphcore import Colouring, canonicalize_colouring

# slack for rows that are parallel up to rounding
_EPS = 1e-12


def cosine_similarity(x: np.ndarray) -> np.ndarray:
    """Pairwise cosine similarity; a zero row is similar (1) only to other zero rows."""
    x = np.asarray(x, dtype=np.float64)
    norms = np.linalg.norm(x, axis=1)
    zero = norms == 0
    unit = np.divide(x, norms[:, None], out=np.zeros_like(x), where=~zero[:, None])
    sim = np.clip(unit @ unit.T, -1.0, 1.0)
    if zero.any():
        sim[np.ix_(zero, zero)] = 1.0
    np.fill_diagonal(sim, 1.0)
    return sim


def component_labels(x, tau: float) -> np.ndarray:
    """Connected components of the graph joining rows with cosine >= tau."""
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 2 or x.shape[0] < 1 or x.shape[1] < 1:
        raise ValueError("feature matrix must be N x d with N, d >= 1")
    if not np.isfinite(x).all():
        raise ValueError("feature matrix contains NaN or Inf")
    adj = cosine_similarity(x) >= tau - _EPS
    _, labels = connected_components(csr_matrix(adj), directed=False)
    return labels


def colours_from_features(x, tau: float) -> Colouring:
    """Colour nodes by single-linkage closure of the cosine >= tau relation."""
    return canonicalize_colouring(component_labels(x, tau))


def colour_count_curve(x, taus: Sequence[float]) -> list[tuple[float, float]]:
    """Relative colour count k/N for each threshold on an ascending grid."""
    taus = list(taus)
    if not taus:
        raise ValueError("empty tau grid")
    if any(b < a for a, b in zip(taus, taus[1:])):
        raise ValueError("tau grid must be sorted ascending")
    x = np.asarray(x, dtype=np.float64)
    return [(float(t), colours_from_features(x, t).num_colours / x.shape[0]) for t in taus]


def parse_grid(text: str) -> list[float]:
    """Parse ``start:step:stop`` (inclusive) or a comma-separated list."""
    text = text.strip()
    if ":" in text:
        start, step, stop = (float(s) for s in text.split(":"))
        if step <= 0:
            raise ValueError("grid step must be positive")
        count = int(np.floor((stop - start) / step + 1e-9)) + 1
        return [round(start + i * step, 10) for i in range(count)]
    return sorted(float(s) for s in text.split(",") if s.strip())


class CentroidAlphabet:
    """Assigns dataset-wide colour ids to feature components.

    A component is keyed by the centroid of its rows rounded to ``decimals``
    digits, so equal representatives in different graphs share a colour.
    """

    def __init__(self, decimals: int = 9):
        self.decimals = decimals
        self.table: dict[tuple, int] = {}

    def colour(self, x: np.ndarray, labels: np.ndarray) -> Colouring:
        x = np.asarray(x, dtype=np.float64)
        out = np.empty(len(labels), dtype=np.int64)
        for comp in np.unique(labels):
            members = labels == comp
            centroid = np.round(x[members].mean(axis=0), self.decimals) + 0.0
            key = (x.shape[1], *centroid.tolist())
            out[members] = self.table.setdefault(key, len(self.table))
        return Colouring(out)


def shared_colours_from_features(
    features: Sequence[np.ndarray], tau: float, alphabet: str = "centroid"
) -> list[Colouring]:
    """Discretize each graph's features at ``tau`` into one shared alphabet.

    ``alphabet='centroid'`` keys components by rounded centroid;
    ``alphabet='index'`` reuses each graph's first-appearance component
    index as the global id, so component 0 of every graph is one colour.
    """
    if alphabet == "centroid":
        table = CentroidAlphabet()
        return [table.colour(x, component_labels(x, tau)) for x in features]
    if alphabet == "index":
        return [colours_from_features(x, tau) for x in features]
    raise ValueError(f"unknown alphabet {alphabet!r}")
