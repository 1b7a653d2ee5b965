"""Command-line front end.

Exit codes: 0 success, 1 computation error, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from pathlib import Path

import numpy as np

from .alignment import dataset_alignment
from .discretize import parse_grid
from .graphcore import Colouring, GraphError, Partition
from .ingest import DatasetFormatError, load_tudataset
from .pipeline import (
    FEATURE_SOURCES,
    CurvesConfig,
    QualityConfig,
    pe_colour_count_curves,
    random_colouring_curves,
    run_quality,
    table_row,
)
from .fixtures import PAIR_FIXTURES, REFINEMENT_FIXTURES
from .quality import TransferVariant, q_single
from .refine import format_rounds, parse_rounds, refinement_trajectory
from .select import construct_select, feasible_after_refinement


class UsageError(Exception):
    pass


def _rounds_list(text: str) -> tuple:
    try:
        return tuple(parse_rounds(t) for t in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad --cr value {text!r}: {exc}") from None


def _clusters(text: str):
    if text == "auto":
        return text
    try:
        k = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError("--clusters must be 'auto' or an integer") from None
    if k < 1:
        raise argparse.ArgumentTypeError("--clusters must be positive")
    return k


def _fraction(text: str) -> float:
    v = float(text)
    if not 0.0 < v < 1.0:
        raise argparse.ArgumentTypeError("--split must lie strictly between 0 and 1")
    return v


def _dataset_args(p: argparse.ArgumentParser):
    p.add_argument("--dataset", help="directory holding <name>/<name>_A.txt etc. (default: $POOLQ_DATA)")
    p.add_argument("--name", default="MUTAG")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    p.add_argument("--out", help="output path stem or directory (default ./out/)")
    p.add_argument("--clusters", type=_clusters, default="auto")
    p.add_argument("--affinity", choices=("cosine", "rbf"), default="cosine")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="poolq", description="Colouring quality diagnostics for community pooling.")
    sub = ap.add_subparsers(dest="command", required=True)

    q = sub.add_parser("quality", help="Q-bar / tau / k/N per refinement depth for one feature source")
    _dataset_args(q)
    q.add_argument("--features", choices=FEATURE_SOURCES, default="empirical")
    q.add_argument("--cr", type=_rounds_list, default=(0, 1, 2, 3, float("inf")), help="comma list, 'inf' allowed")
    q.add_argument("--tau", type=float)
    q.add_argument("--tau-grid", default="0:0.01:1")
    q.add_argument("--variant", choices=[v.value for v in TransferVariant], default="full")
    q.add_argument("--split", type=_fraction, default=0.8)
    q.add_argument("--pe-dim", type=int, default=6)
    q.add_argument("--alphabet", choices=("index", "centroid"), default="index")
    q.add_argument("--empirical-source", choices=("auto", "labels", "attributes"), default="auto")

    c = sub.add_parser("curves", help="random-colouring scores along a k/N grid, plus PE colour-count curves")
    _dataset_args(c)
    c.add_argument("--cr", type=_rounds_list, default=(0, 1, 2, 3, float("inf")))
    c.add_argument("--variant", choices=[v.value for v in TransferVariant], default="full")
    c.add_argument("--split", type=_fraction, default=0.8)
    c.add_argument("--seeds", type=int, default=10, help="number of seeds, starting at --seed")
    c.add_argument("--ratios", default="0.1:0.1:1", help="k/N grid")
    c.add_argument("--tau-grid", default="0:0.01:1")
    c.add_argument("--pe-dim", type=int, default=6)

    n = sub.add_parser("nmi", help="dataset-mean NMI matrix among SC(A), SC(X) and optional extra partitions")
    _dataset_args(n)
    n.add_argument("--normalization", choices=("sqrt", "arithmetic"), default="sqrt")
    n.add_argument("--partitions", help="JSON list, one {name: node-label list} mapping per graph")

    r = sub.add_parser("refine-dump", help="per-round colourings of one graph")
    _dataset_args(r)
    r.add_argument("--graph", type=int, default=0)
    r.add_argument("--rounds", type=parse_rounds, default=float("inf"))
    r.add_argument("--init", choices=("labels", "uniform"), default="labels")

    f = sub.add_parser("feasibility", help="can a one-layer select realise the reference partition?")
    _dataset_args(f)
    f.add_argument("--fixture", choices=sorted(PAIR_FIXTURES) + sorted(REFINEMENT_FIXTURES))
    f.add_argument("--graph", type=int, default=0)
    f.add_argument("--init", choices=("labels", "uniform"), default="labels")
    f.add_argument("--max-rounds", type=int)
    return ap


# -- helpers ----------------------------------------------------------------


def _load(args):
    root = args.dataset or os.environ.get("POOLQ_DATA")
    if not root:
        raise UsageError("no dataset directory: pass --dataset or set POOLQ_DATA")
    base = Path(root)
    if not base.is_dir():
        raise UsageError(f"dataset directory not found: {base}")
    folder = base / args.name if (base / args.name).is_dir() else base
    if not (folder / f"{args.name}_A.txt").exists():
        raise UsageError(f"dataset {args.name!r} not found under {base}")
    return load_tudataset(folder, args.name)


def _out_stem(args, default_name: str) -> Path:
    if args.out is None:
        return Path("out") / default_name
    p = Path(args.out)
    if p.is_dir() or args.out.endswith(os.sep):
        return p / default_name
    return p.with_suffix("") if p.suffix in (".json", ".csv") else p


def _write_json(path: Path, obj) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(obj, indent=2, sort_keys=False) + "\n")
    return path


def _write_csv(path: Path, rows: list[dict]) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=list(rows[0]), lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
    return path


def _initial(bundle, i: int, mode: str) -> Colouring:
    if mode == "labels" and bundle.node_label_colouring is not None:
        return bundle.node_label_colouring[i]
    return Colouring(np.zeros(bundle.graphs[i].n, dtype=np.int64))


def _graph_index(bundle, i: int) -> int:
    if not 0 <= i < len(bundle.graphs):
        raise UsageError(f"--graph {i} out of range (dataset has {len(bundle.graphs)} graphs)")
    return i


# -- commands ---------------------------------------------------------------


def cmd_quality(args) -> int:
    bundle = _load(args)
    if args.tau is None:
        parse_grid(args.tau_grid)
    cfg = QualityConfig(
        features=args.features,
        cr_rounds=args.cr,
        variant=args.variant,
        clusters=args.clusters,
        split=args.split,
        seed=args.seed,
        tau=args.tau,
        tau_grid=args.tau_grid,
        pe_dim=args.pe_dim,
        alphabet=args.alphabet,
        empirical_source=args.empirical_source,
    )
    report = run_quality(bundle, cfg, threads=args.threads)
    report["config"]["affinity"] = args.affinity
    stem = _out_stem(args, f"{bundle.name}-{args.features}-{args.variant}")
    j = _write_json(stem.with_suffix(".json"), report)
    c = _write_csv(stem.with_suffix(".csv"), [table_row(report)])
    for rep in report["reports"]:
        tau = "-" if rep["tau"] is None else f"{rep['tau']:.2f}"
        print(f"CR-{rep['cr_rounds']}: Q={rep['q_bar']:.4f} gamma={rep['gamma_bar']:.4f} lambda={rep['lambda_bar']:.4f} tau={tau} k/N={rep['k_over_n']:.4f}")
    print(f"wrote {j} and {c}")
    return 0


def cmd_curves(args) -> int:
    bundle = _load(args)
    ratios = tuple(round(r, 6) for r in parse_grid(args.ratios))
    cfg = CurvesConfig(
        ratios=ratios,
        cr_rounds=args.cr,
        seeds=tuple(range(args.seed, args.seed + args.seeds)),
        variant=args.variant,
        clusters=args.clusters,
        split=args.split,
        tau_grid=args.tau_grid,
        pe_dim=args.pe_dim,
    )
    rows = random_colouring_curves(bundle.graphs, cfg)
    pe_rows = pe_colour_count_curves(bundle.graphs, parse_grid(args.tau_grid), args.pe_dim)
    stem = _out_stem(args, f"{bundle.name}-curves-{args.variant}")
    out = {"config": {"dataset": bundle.name, **cfg.resolved()}, "random_colourings": rows, "pe_colour_counts": pe_rows}
    j = _write_json(stem.with_suffix(".json"), out)
    c = _write_csv(stem.with_suffix(".csv"), rows)
    pe = _write_csv(stem.parent / f"{stem.name}-pe-tau.csv", pe_rows)
    print(f"wrote {j}, {c} and {pe}")
    return 0


def _load_partitions(path: str, bundle) -> list[dict[str, Partition]]:
    data = json.loads(Path(path).read_text())
    if not isinstance(data, list) or len(data) != len(bundle.graphs):
        raise UsageError(f"--partitions must be a JSON list with {len(bundle.graphs)} entries")
    return [{name: Partition.from_labels(labels) for name, labels in entry.items()} for entry in data]


def cmd_nmi(args) -> int:
    bundle = _load(args)
    extras = _load_partitions(args.partitions, bundle) if args.partitions else None
    k = None if args.clusters == "auto" else args.clusters
    names, m = dataset_alignment(bundle.graphs, k, args.seed, args.affinity, extras, args.normalization)
    stem = _out_stem(args, f"{bundle.name}-nmi")
    out = {
        "config": {
            "dataset": bundle.name,
            "seed": args.seed,
            "clusters": args.clusters,
            "affinity": args.affinity,
            "normalization": args.normalization,
        },
        "names": names,
        "matrix": [[float(round(v, 12)) for v in row] for row in m],
    }
    j = _write_json(stem.with_suffix(".json"), out)
    c = _write_csv(stem.with_suffix(".csv"), [{"": a, **{b: f"{m[i, jx]:.4f}" for jx, b in enumerate(names)}} for i, a in enumerate(names)])
    for a, row in zip(names, m):
        print(a, " ".join(f"{v:.3f}" for v in row))
    print(f"wrote {j} and {c}")
    return 0


def cmd_refine_dump(args) -> int:
    bundle = _load(args)
    i = _graph_index(bundle, args.graph)
    g = bundle.graphs[i]
    init = _initial(bundle, i, args.init)
    traj = refinement_trajectory(g, init, 0)
    last = traj.stable_round if args.rounds == float("inf") else int(args.rounds)
    traj = refinement_trajectory(g, init, last)
    out = {
        "config": {"dataset": bundle.name, "graph": i, "rounds": format_rounds(args.rounds), "init": args.init, "seed": args.seed},
        "n": g.n,
        "stable_round": traj.stable_round,
        "colourings": [c.colours.tolist() for c in traj.colourings],
        "num_colours": [c.num_colours for c in traj.colourings],
    }
    j = _write_json(_out_stem(args, f"{bundle.name}-refine-{i}").with_suffix(".json"), out)
    print(f"graph {i}: n={g.n} stable_round={traj.stable_round} colours per round={out['num_colours']}")
    print(f"wrote {j}")
    return 0


def _fixture_feasibility(name: str, max_rounds) -> dict:
    if name in PAIR_FIXTURES:
        fx = PAIR_FIXTURES[name]
        rep = q_single(fx.seen.colouring, fx.seen.partition, fx.unseen.colouring, fx.unseen.partition, "full")
        cert = None
        for side in (fx.seen, fx.unseen):
            o = construct_select(side.colouring, side.partition)
            if not o.feasible:
                cert = {"kind": "invalid colour", "colour_group_other": list(o.certificate)}
                break
        if cert is None and rep.unmatched_groups:
            g = rep.unmatched_groups[0][1]
            colours = sorted({int(fx.unseen.colouring.colours[v]) for v in fx.unseen.partition.groups[g]})
            cert = {"kind": "unmatched unseen group", "group": g, "colours": colours}
        # a select fitted on the seen graph reproduces both partitions iff Q = 1
        return {
            "fixture": name,
            "feasible": rep.q == 1.0,
            "gamma": rep.gamma,
            "lambda": rep.lambda_,
            "q": rep.q,
            "certificate": cert,
        }
    fx = REFINEMENT_FIXTURES[name]
    r = feasible_after_refinement(fx.graph, fx.colouring, fx.target, max_rounds)
    return {
        "fixture": name,
        "feasible": r.first_feasible_round is not None,
        "first_feasible_round": r.first_feasible_round,
        "stable_round": r.stable_round,
        "certificate": None if r.certificate is None else list(r.certificate),
    }


def cmd_feasibility(args) -> int:
    if args.fixture:
        out = _fixture_feasibility(args.fixture, args.max_rounds)
        stem = _out_stem(args, f"feasibility-{args.fixture}")
    else:
        from .pipeline import cluster_count
        from .spectral import spectral_partition

        bundle = _load(args)
        i = _graph_index(bundle, args.graph)
        g = bundle.graphs[i]
        target = spectral_partition(g, cluster_count(g.n, args.clusters), (args.seed, i))
        r = feasible_after_refinement(g, _initial(bundle, i, args.init), target, args.max_rounds)
        out = {
            "dataset": bundle.name,
            "graph": i,
            "seed": args.seed,
            "clusters": args.clusters,
            "init": args.init,
            "target": [list(grp) for grp in target.groups],
            "feasible": r.first_feasible_round is not None,
            "first_feasible_round": r.first_feasible_round,
            "stable_round": r.stable_round,
            "certificate": None if r.certificate is None else list(r.certificate),
        }
        stem = _out_stem(args, f"{bundle.name}-feasibility-{i}")
    j = _write_json(stem.with_suffix(".json"), out)
    verdict = "feasible" if out["feasible"] else "infeasible"
    cert = out.get("certificate")
    if isinstance(cert, dict):
        extra = f" certificate {cert}"
    else:
        extra = f" certificate (colour, group, other group) = {tuple(cert)}" if cert else ""
    if out.get("first_feasible_round") is not None:
        extra += f" after {out['first_feasible_round']} refinement round(s)"
    print(f"{verdict}{extra}")
    print(f"wrote {j}")
    return 0


COMMANDS = {
    "quality": cmd_quality,
    "curves": cmd_curves,
    "nmi": cmd_nmi,
    "refine-dump": cmd_refine_dump,
    "feasibility": cmd_feasibility,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"poolq: error: {exc}", file=sys.stderr)
        return 2
    except (DatasetFormatError, FileNotFoundError) as exc:
        print(f"poolq: error: {exc}", file=sys.stderr)
        return 2
    except (GraphError, ValueError, ArithmeticError) as exc:
        print(f"poolq: computation failed: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
