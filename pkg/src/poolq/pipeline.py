"""Dataset-level evaluation: feature source -> colours -> refinement -> scores.

Order of operations is fixed: features are discretized at threshold tau
first, colour refinement runs on the discretized colours, and k/N is taken
before refinement.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Sequence

import numpy as np

from .discretize import colour_count_curve, parse_grid, shared_colours_from_features
from .featuregen import random_colouring, random_features
from .graphcore import Colouring, Graph, Partition
from .ingest import DatasetBundle, DatasetSplit, split_seen_unseen
from .quality import q_bar, sweep_tau
from .refine import INF, format_rounds, refine_many
from .spectral import default_num_clusters, laplacian_pe, random_walk_pe, spectral_partition

FEATURE_SOURCES = ("empirical", "same", "mixed", "distinct", "lap-pe", "rw-pe")
CR_LEVELS = (0, 1, 2, 3, INF)
K_RULE = "max(2, round(sqrt(n/2)))"
# one-hot sources are exact at any tau in (0, 1)
_ONE_HOT_TAU = 0.5


@dataclass
class QualityConfig:
    features: str = "empirical"
    cr_rounds: tuple = CR_LEVELS
    variant: str = "full"
    clusters: str | int = "auto"
    split: float = 0.8
    seed: int = 0
    tau: float | None = None
    tau_grid: str = "0:0.01:1"
    pe_dim: int = 6
    alphabet: str = "index"
    empirical_source: str = "auto"  # auto | labels | attributes

    def resolved(self) -> dict:
        d = asdict(self)
        d["cr_rounds"] = [format_rounds(r) for r in self.cr_rounds]
        d["k_rule"] = K_RULE if self.clusters == "auto" else f"fixed k={self.clusters}"
        d["tau_grid"] = None if self.tau is not None else self.tau_grid
        return d


def graph_seed(seed: int, index: int) -> tuple[int, int]:
    return (int(seed), int(index))


def cluster_count(n: int, clusters) -> int:
    return default_num_clusters(n) if clusters == "auto" else min(int(clusters), n)


def reference_partitions(graphs: Sequence[Graph], clusters="auto", seed: int = 0) -> list[Partition]:
    """Spectral partition of each adjacency matrix, graph i seeded with (seed, i)."""
    return [spectral_partition(g, cluster_count(g.n, clusters), graph_seed(seed, i)) for i, g in enumerate(graphs)]


@dataclass(frozen=True)
class FeatureSource:
    name: str
    colourings: list[Colouring] | None = None  # already discrete, shared alphabet
    features: list[np.ndarray] | None = None  # continuous, needs a tau
    one_hot: bool = False

    @property
    def continuous(self) -> bool:
        return self.features is not None and not self.one_hot


def feature_source(bundle: DatasetBundle, name: str, seed: int = 0, pe_dim: int = 6, empirical: str = "auto") -> FeatureSource:
    graphs = bundle.graphs
    if name == "empirical":
        use_labels = empirical == "labels" or (empirical == "auto" and bundle.node_attributes is None)
        if use_labels:
            if bundle.node_label_colouring is None:
                raise ValueError(f"{bundle.name} has no node labels")
            return FeatureSource(name, colourings=list(bundle.node_label_colouring))
        if bundle.node_attributes is None:
            raise ValueError(f"{bundle.name} has no node attributes")
        return FeatureSource(name, features=list(bundle.node_attributes))
    if name in ("same", "mixed", "distinct"):
        feats = [random_features(g, name, graph_seed(seed, i)) for i, g in enumerate(graphs)]
        return FeatureSource(name, features=feats, one_hot=True)
    if name == "lap-pe":
        return FeatureSource(name, features=[laplacian_pe(g, pe_dim) for g in graphs])
    if name == "rw-pe":
        return FeatureSource(name, features=[random_walk_pe(g, pe_dim) for g in graphs])
    raise ValueError(f"unknown feature source {name!r}; choose from {', '.join(FEATURE_SOURCES)}")


def _k_over_n(colourings: Sequence[Colouring]) -> float:
    return float(np.mean([c.num_colours / len(c) for c in colourings]))


def _rounded(x: float) -> float:
    # stable text form across platforms and worker counts
    return float(round(x, 12))


def run_quality(bundle: DatasetBundle, cfg: QualityConfig, threads: int = 1) -> dict:
    """All CR levels of one feature source; returns a JSON-ready report."""
    graphs = bundle.graphs
    split = split_seen_unseen(bundle, cfg.split, cfg.seed)
    partitions = reference_partitions(graphs, cfg.clusters, cfg.seed)
    src = feature_source(bundle, cfg.features, cfg.seed, cfg.pe_dim, cfg.empirical_source)
    taus = [cfg.tau] if cfg.tau is not None else parse_grid(cfg.tau_grid)

    base = None
    if not src.continuous:
        base = src.colourings or shared_colours_from_features(src.features, _ONE_HOT_TAU, cfg.alphabet)

    reports = []
    for r in cfg.cr_rounds:
        curve = None
        tau = tau_star = None
        if base is not None:
            colourings = base if r == 0 else refine_many(graphs, base, r)
            k_over_n = _k_over_n(base)
        else:
            sweep = sweep_tau(graphs, src.features, partitions, split, taus, r, cfg.variant, cfg.alphabet, threads)
            tau = tau_star = sweep.tau_star
            pre = shared_colours_from_features(src.features, tau_star, cfg.alphabet)
            colourings = pre if r == 0 else refine_many(graphs, pre, r)
            k_over_n = _k_over_n(pre)
            curve = [{k: _rounded(v) for k, v in asdict(p).items()} for p in sweep.curve]
        rep = q_bar(colourings, partitions, split, cfg.variant, details=True)
        reports.append(
            {
                "dataset": bundle.name,
                "feature_source": cfg.features,
                "cr_rounds": format_rounds(r),
                "tau": tau,
                "tau_star": tau_star,
                "variant": cfg.variant,
                "k_rule": K_RULE if cfg.clusters == "auto" else f"fixed k={cfg.clusters}",
                "seed": cfg.seed,
                "gamma_bar": _rounded(rep.gamma_bar),
                "lambda_bar": _rounded(rep.lambda_bar),
                "q_bar": _rounded(rep.q_bar),
                "k_over_n": _rounded(k_over_n),
                "n_seen": len(split.seen),
                "n_unseen": len(split.unseen),
                "curve": curve,
                "unmatched_groups": [list(u) for u in rep.unmatched_groups],
                "per_graph": [
                    {**d, "gamma": _rounded(d["gamma"]), "k": partitions[d["graph"]].k} for d in rep.per_graph
                ],
            }
        )
    return {"config": {"dataset": bundle.name, **cfg.resolved()}, "reports": reports}


def table_row(report: dict) -> dict:
    """One CSV row in the Q / NMI / tau / k/N per CR level layout."""
    row = {"features": report["config"]["features"]}
    for rep in report["reports"]:
        level = rep["cr_rounds"]
        row[f"Q_CR-{level}"] = f"{rep['q_bar']:.4f}"
        row[f"NMI_CR-{level}"] = ""  # needs a trained GCN; not produced here
        row[f"tau_CR-{level}"] = "-" if rep["tau"] is None else f"{rep['tau']:.2f}"
        row[f"k/N_CR-{level}"] = f"{rep['k_over_n']:.4f}"
    return row


# -- colour-count curves ----------------------------------------------------


@dataclass
class CurvesConfig:
    ratios: tuple = tuple(round(0.1 * i, 1) for i in range(1, 11))
    cr_rounds: tuple = CR_LEVELS
    seeds: tuple = tuple(range(10))
    variant: str = "full"
    clusters: str | int = "auto"
    split: float = 0.8
    tau_grid: str = "0:0.01:1"
    pe_dim: int = 6
    curve_points: list = field(default_factory=list)

    def resolved(self) -> dict:
        d = asdict(self)
        d.pop("curve_points")
        d["cr_rounds"] = [format_rounds(r) for r in self.cr_rounds]
        d["k_rule"] = K_RULE if self.clusters == "auto" else f"fixed k={self.clusters}"
        return d


def random_colouring_curves(graphs: Sequence[Graph], cfg: CurvesConfig) -> list[dict]:
    """Mean Gamma-bar / Lambda-bar / Q-bar over seeds for random colourings along a k/N grid.

    Each graph gets exactly k = max(1, round(ratio * n)) colours with ids
    0..k-1, so k/N = 1 means all-distinct colours.
    """
    rows: dict[tuple, list] = {}
    for seed in cfg.seeds:
        split = split_seen_unseen(len(graphs), cfg.split, seed)
        partitions = reference_partitions(graphs, cfg.clusters, seed)
        for ratio in cfg.ratios:
            base = [
                random_colouring(g, max(1, min(g.n, int(round(ratio * g.n)))), (seed, i, int(round(ratio * 1000))), surjective=True, canonical=False)
                for i, g in enumerate(graphs)
            ]
            for r in cfg.cr_rounds:
                cols = base if r == 0 else refine_many(graphs, base, r)
                rep = q_bar(cols, partitions, split, cfg.variant)
                rows.setdefault((format_rounds(r), ratio), []).append((rep.gamma_bar, rep.lambda_bar, rep.q_bar))
    out = []
    for (level, ratio), vals in rows.items():
        g, lam, q = np.mean(vals, axis=0)
        out.append(
            {"cr_rounds": level, "k_over_n": ratio, "gamma_bar": _rounded(g), "lambda_bar": _rounded(lam), "q_bar": _rounded(q), "seeds": len(vals)}
        )
    order = {format_rounds(r): i for i, r in enumerate(cfg.cr_rounds)}
    return sorted(out, key=lambda d: (order[d["cr_rounds"]], d["k_over_n"]))


def pe_colour_count_curves(graphs: Sequence[Graph], taus: Sequence[float], pe_dim: int = 6) -> list[dict]:
    """Dataset-mean k/N against tau for each positional encoding."""
    out = []
    for name, fn in (("lap-pe", laplacian_pe), ("rw-pe", random_walk_pe)):
        per_graph = np.array([[k for _, k in colour_count_curve(fn(g, pe_dim), taus)] for g in graphs])
        out.extend({"pe": name, "tau": float(t), "k_over_n": _rounded(v)} for t, v in zip(taus, per_graph.mean(axis=0)))
    return out


def is_finite_rounds(r) -> bool:
    return not (isinstance(r, float) and math.isinf(r))
