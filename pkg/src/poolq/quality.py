"""Colouring validity (Gamma), transferability (Lambda) and combined quality (Q).

Single-pair scores follow the table-driven single-pass algorithms:
validity records, per colour, the one group it was seen in (or that it is
invalid); transferability builds one hash set of colours per seen group and
tests every unseen node's colour against them. Dataset scores average
validity over all graphs and aggregate transferability over seen x unseen
pairs in one of three variants.
"""

from __future__ import annotations

import enum
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .graphcore import Colouring, Graph, GraphError, Partition, QualityReport
from .ingest import DatasetSplit


class TransferVariant(str, enum.Enum):
    FULL = "full"
    RATIO = "ratio"
    GROUP = "group"


@dataclass
class OpMeter:
    """Counts hash-table operations, to check the linear-time contracts."""

    inserts: int = 0
    lookups: int = 0

    @property
    def total(self) -> int:
        return self.inserts + self.lookups


_INVALID = -1


def _check_sizes(zeta: Colouring, p: Partition):
    if len(zeta) != p.n:
        raise GraphError(f"colouring covers {len(zeta)} nodes, partition covers {p.n}")


@dataclass(frozen=True)
class GammaResult:
    value: float
    invalid: frozenset[int]


def gamma(zeta: Colouring, p: Partition, meter: OpMeter | None = None) -> GammaResult:
    """Fraction of colours whose nodes all lie in a single group."""
    _check_sizes(zeta, p)
    colours = zeta.colours
    owner: dict[int, int] = {}
    invalid = []
    for gi, group in enumerate(p.groups):
        for v in group:
            c = int(colours[v])
            seen = owner.get(c)
            if meter is not None:
                meter.lookups += 1
            if seen is None:
                owner[c] = gi
                if meter is not None:
                    meter.inserts += 1
            elif seen != _INVALID and seen != gi:
                owner[c] = _INVALID
                invalid.append(c)
    return GammaResult((len(owner) - len(invalid)) / len(owner), frozenset(invalid))


def group_colour_sets(zeta: Colouring, p: Partition, meter: OpMeter | None = None) -> list[frozenset[int]]:
    _check_sizes(zeta, p)
    out = []
    for group in p.groups:
        s = set()
        for v in group:
            s.add(int(zeta.colours[v]))
            if meter is not None:
                meter.inserts += 1
        out.append(frozenset(s))
    return out


def _matched_groups(seen_sets, zeta_u: Colouring, p_u: Partition, meter, early_exit: bool) -> list[bool]:
    colours = zeta_u.colours
    matched = []
    for group in p_u.groups:
        ok = False
        for s in seen_sets:
            ok = True
            for v in group:
                if meter is not None:
                    meter.lookups += 1
                if int(colours[v]) not in s:
                    ok = False
                    break
            if ok:
                break
        matched.append(ok)
        if early_exit and not ok:
            break
    return matched


@dataclass(frozen=True)
class LambdaResult:
    value: float
    unmatched: tuple[int, ...]


def lambda_full(
    zeta_s: Colouring,
    p_s: Partition,
    zeta_u: Colouring,
    p_u: Partition,
    meter: OpMeter | None = None,
    early_exit: bool = True,
) -> LambdaResult:
    """1 iff every unseen group's colours are a subset of some seen group's colours.

    With ``early_exit`` the scan stops at the first unmatched group, so
    ``unmatched`` then holds at most one index.
    """
    _check_sizes(zeta_u, p_u)
    seen_sets = group_colour_sets(zeta_s, p_s, meter)
    matched = _matched_groups(seen_sets, zeta_u, p_u, meter, early_exit)
    unmatched = tuple(i for i, m in enumerate(matched) if not m)
    return LambdaResult(0.0 if unmatched else 1.0, unmatched)


def lambda_ratio(zeta_s: Colouring, p_s: Partition, zeta_u: Colouring, p_u: Partition) -> float:
    """Fraction of unseen groups matched by some seen group."""
    _check_sizes(zeta_u, p_u)
    matched = _matched_groups(group_colour_sets(zeta_s, p_s), zeta_u, p_u, None, False)
    return sum(matched) / len(matched)


def lambda_group(seen: Sequence[tuple[Colouring, Partition]], zeta_u: Colouring, group_u: Sequence[int]) -> float:
    """1 iff some group of some seen graph contains the colours of ``group_u``."""
    need = {int(zeta_u.colours[v]) for v in group_u}
    for zeta_s, p_s in seen:
        if any(need <= s for s in group_colour_sets(zeta_s, p_s)):
            return 1.0
    return 0.0


def disjoint_union(colourings: Sequence[Colouring], partitions: Sequence[Partition]) -> tuple[Colouring, Partition]:
    """Union of several graphs as one graph; colours are kept apart per graph.

    A colour shared by two graphs becomes two colours in the union, so
    validity of the union counts each graph's colour classes separately.
    """
    colours, groups = [], []
    c_off = n_off = 0
    for zeta, p in zip(colourings, partitions):
        _check_sizes(zeta, p)
        colours.append(zeta.colours + c_off)
        groups.extend(tuple(v + n_off for v in g) for g in p.groups)
        c_off += int(zeta.colours.max()) + 1
        n_off += p.n
    return Colouring(np.concatenate(colours)), Partition(tuple(groups))


def q_single(
    zeta_s: Colouring,
    p_s: Partition,
    zeta_u: Colouring,
    p_u: Partition,
    variant: TransferVariant | str = TransferVariant.FULL,
) -> QualityReport:
    """Q = min(Gamma of the seen+unseen union, Lambda of the pair)."""
    variant = TransferVariant(variant)
    union_c, union_p = disjoint_union([zeta_s, zeta_u], [p_s, p_u])
    g = gamma(union_c, union_p)
    n_s_colours = int(zeta_s.colours.max()) + 1
    invalid = sorted(("seen", c) if c < n_s_colours else ("unseen", c - n_s_colours) for c in g.invalid)
    full = lambda_full(zeta_s, p_s, zeta_u, p_u, early_exit=False)
    if variant is TransferVariant.FULL:
        lam = full.value
    else:
        # with a single seen graph the group and ratio variants coincide
        lam = lambda_ratio(zeta_s, p_s, zeta_u, p_u)
    return QualityReport(g.value, lam, variant.value, invalid, [("unseen", i) for i in full.unmatched])


# -- datasets ---------------------------------------------------------------


def gamma_bar(colourings: Sequence[Colouring], partitions: Sequence[Partition]) -> float:
    """Mean per-graph validity."""
    if not colourings:
        raise ValueError("no graphs")
    return float(np.mean([gamma(c, p).value for c, p in zip(colourings, partitions)]))


def _graph_matches(u_sets: Sequence[frozenset], s_sets: Sequence[frozenset]) -> list[bool]:
    return [any(u <= s for s in s_sets) for u in u_sets]


def lambda_bar(
    colourings: Sequence[Colouring],
    partitions: Sequence[Partition],
    split: DatasetSplit,
    variant: TransferVariant | str = TransferVariant.FULL,
) -> float:
    """Dataset transferability over all seen x unseen pairs.

    FULL: fraction of unseen graphs fully matched by at least one seen graph.
    RATIO: mean over unseen graphs of the best per-seen-graph matched-group ratio.
    GROUP: fraction of all unseen groups matched by a group of any seen graph.
    """
    return _lambda_bar_detail(colourings, partitions, split, variant)[0]


def _lambda_bar_detail(colourings, partitions, split: DatasetSplit, variant):
    variant = TransferVariant(variant)
    if not split.seen or not split.unseen:
        raise ValueError("seen and unseen sets must be non-empty")
    sets = {i: group_colour_sets(colourings[i], partitions[i]) for i in (*split.seen, *split.unseen)}
    # graphs with identical group colour sets behave identically as seen graphs
    seen_graphs = list(dict.fromkeys(frozenset(sets[i]) for i in split.seen))
    seen_groups = frozenset().union(*seen_graphs)
    unmatched = []
    scores = []
    for u in split.unseen:
        anywhere = [any(g <= s for s in seen_groups) for g in sets[u]]
        unmatched.extend((u, j) for j, ok in enumerate(anywhere) if not ok)
        if variant is TransferVariant.GROUP:
            scores.extend(float(ok) for ok in anywhere)
        elif variant is TransferVariant.FULL:
            scores.append(float(all(anywhere) and any(all(_graph_matches(sets[u], s)) for s in seen_graphs)))
        else:
            scores.append(max(float(np.mean(_graph_matches(sets[u], s))) for s in seen_graphs))
    return float(np.mean(scores)), unmatched


@dataclass
class DatasetReport:
    gamma_bar: float
    lambda_bar: float
    variant: str
    per_graph: list[dict] = field(default_factory=list)
    unmatched_groups: list[tuple[int, int]] = field(default_factory=list)

    @property
    def q_bar(self) -> float:
        return min(self.gamma_bar, self.lambda_bar)

    def as_quality_report(self) -> QualityReport:
        invalid = [(d["graph"], c) for d in self.per_graph for c in d["invalid_colours"]]
        return QualityReport(self.gamma_bar, self.lambda_bar, self.variant, invalid, list(self.unmatched_groups))


def q_bar(
    colourings: Sequence[Colouring],
    partitions: Sequence[Partition],
    split: DatasetSplit,
    variant: TransferVariant | str = TransferVariant.FULL,
    details: bool = False,
) -> DatasetReport:
    """min(mean validity over seen and unseen graphs, dataset transferability)."""
    variant = TransferVariant(variant)
    graphs = sorted((*split.seen, *split.unseen))
    results = {i: gamma(colourings[i], partitions[i]) for i in graphs}
    lam, unmatched = _lambda_bar_detail(colourings, partitions, split, variant)
    per_graph = []
    if details:
        seen = set(split.seen)
        per_graph = [
            {
                "graph": i,
                "role": "seen" if i in seen else "unseen",
                "n": partitions[i].n,
                "groups": partitions[i].k,
                "colours": colourings[i].num_colours,
                "gamma": results[i].value,
                "invalid_colours": sorted(int(c) for c in results[i].invalid),
            }
            for i in graphs
        ]
    return DatasetReport(float(np.mean([r.value for r in results.values()])), lam, variant.value, per_graph, unmatched)


# -- threshold sweep --------------------------------------------------------


@dataclass(frozen=True)
class SweepPoint:
    tau: float
    gamma_bar: float
    lambda_bar: float
    q_bar: float
    k_over_n: float


@dataclass(frozen=True)
class SweepResult:
    tau_star: float
    q_star: float
    curve: tuple[SweepPoint, ...]

    @property
    def best(self) -> SweepPoint:
        return next(p for p in self.curve if p.tau == self.tau_star)


def evaluate_tau(
    graphs: Sequence[Graph],
    features: Sequence[np.ndarray],
    partitions: Sequence[Partition],
    split: DatasetSplit,
    tau: float,
    cr_rounds=0,
    variant: TransferVariant | str = TransferVariant.FULL,
    alphabet: str = "centroid",
) -> SweepPoint:
    from .discretize import shared_colours_from_features
    from .refine import refine_many

    base = shared_colours_from_features(features, tau, alphabet)
    k_over_n = float(np.mean([c.num_colours / len(c) for c in base]))
    colourings = base if cr_rounds == 0 else refine_many(graphs, base, cr_rounds)
    rep = q_bar(colourings, partitions, split, variant)
    return SweepPoint(float(tau), rep.gamma_bar, rep.lambda_bar, rep.q_bar, k_over_n)


def sweep_tau(
    graphs: Sequence[Graph],
    features: Sequence[np.ndarray],
    partitions: Sequence[Partition],
    split: DatasetSplit,
    taus: Sequence[float],
    cr_rounds=0,
    variant: TransferVariant | str = TransferVariant.FULL,
    alphabet: str = "centroid",
    threads: int = 1,
) -> SweepResult:
    """Evaluate Q-bar along a tau grid; the best tau wins, ties go to the smaller tau.

    ``k_over_n`` on each point is the mean colour ratio before refinement.
    """
    taus = sorted(float(t) for t in taus)
    if not taus:
        raise ValueError("empty tau grid")

    def run(t):
        return evaluate_tau(graphs, features, partitions, split, t, cr_rounds, variant, alphabet)

    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            curve = list(pool.map(run, taus))
    else:
        curve = [run(t) for t in taus]
    best = curve[0]
    for point in curve[1:]:
        if point.q_bar > best.q_bar:
            best = point
    return SweepResult(best.tau, best.q_bar, tuple(curve))
