"""Random feature baselines and random colourings."""

from __future__ import annotations

import enum

import numpy as np

from .graphcore import Colouring, Graph, canonicalize_colouring


class FeatureMode(str, enum.Enum):
    SAME = "same"
    MIXED = "mixed"
    DISTINCT = "distinct"


def random_features(g: Graph | int, mode: FeatureMode | str, seed=0) -> np.ndarray:
    """One-hot random features.

    same: every node gets e_0. distinct: the identity. mixed: the first
    ceil(n/2) nodes get distinct one-hots, the rest copy rows drawn with
    replacement from that first half.
    """
    n = g if isinstance(g, int) else g.n
    mode = FeatureMode(mode)
    if mode is FeatureMode.SAME:
        return np.ones((n, 1))
    if mode is FeatureMode.DISTINCT:
        return np.eye(n)
    half = -(-n // 2)
    rng = np.random.default_rng(seed)
    rows = np.concatenate([np.arange(half), rng.integers(0, half, size=n - half)])
    return np.eye(half)[rows]


def random_colouring(g: Graph | int, k: int, seed=0, surjective: bool = False, canonical: bool = True) -> Colouring:
    """Colour each node uniformly from ``k`` colours.

    With ``surjective`` a random set of k nodes first receives the k colours
    once each, so exactly k colours are used (k = n gives all-distinct
    colours). ``canonical=False`` keeps the raw ids ``0..k-1``, which are
    then directly comparable across graphs.
    """
    n = g if isinstance(g, int) else g.n
    if not 1 <= k <= n:
        raise ValueError(f"k={k} must lie in [1, {n}]")
    rng = np.random.default_rng(seed)
    colours = rng.integers(0, k, size=n)
    if surjective:
        colours[rng.permutation(n)[:k]] = np.arange(k)
    return canonicalize_colouring(colours) if canonical else Colouring(colours)
