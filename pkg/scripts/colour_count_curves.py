"""Random-colouring score curves and PE colour-count curves, printed as tables.

    python3 scripts/colour_count_curves.py --dataset data --seeds 3
"""

import argparse
from pathlib import Path

from poolq.discretize import parse_grid
from poolq.ingest import load_tudataset
from poolq.pipeline import CurvesConfig, pe_colour_count_curves, random_colouring_curves


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--dataset", default="data")
    ap.add_argument("--name", default="MUTAG")
    ap.add_argument("--seeds", type=int, default=10)
    ap.add_argument("--pe-dim", type=int, default=6)
    ap.add_argument("--taus", default="0:0.05:1")
    args = ap.parse_args()

    base = Path(args.dataset)
    folder = base / args.name if (base / args.name).is_dir() else base
    graphs = load_tudataset(folder, args.name).graphs

    cfg = CurvesConfig(seeds=tuple(range(args.seeds)), pe_dim=args.pe_dim)
    print("cr   k/N   gamma  lambda  q")
    for row in random_colouring_curves(graphs, cfg):
        print(f"{row['cr_rounds']:<4} {row['k_over_n']:.1f}  {row['gamma_bar']:.3f}  {row['lambda_bar']:.3f}   {row['q_bar']:.3f}")

    print("\npe      tau   k/N")
    for row in pe_colour_count_curves(graphs, parse_grid(args.taus), args.pe_dim):
        print(f"{row['pe']:<7} {row['tau']:.2f}  {row['k_over_n']:.3f}")


if __name__ == "__main__":
    main()
