"""Search small two-community multigraphs for refinement-feasibility fixtures.

late-separable: uniform colours cannot separate the communities after 2 refinement
    rounds but can after 3..5 rounds.
mirror: the stable colouring still spans both communities.

In both cases the target partition must equal the k=2 spectral partition.
The results printed here are frozen into ``poolq.fixtures``.
"""

import argparse

import numpy as np

from poolq.graphcore import Colouring, Graph, Partition
from poolq.select import feasible_after_refinement
from poolq.spectral import spectral_partition


def random_two_block(rng, n_left, n_right, p_in=0.6, max_mult=2):
    edges = []
    blocks = [range(n_left), range(n_left, n_left + n_right)]
    for block in blocks:
        nodes = list(block)
        for i in nodes:
            for j in nodes:
                if i < j and rng.random() < p_in:
                    edges.extend([(i, j)] * int(rng.integers(1, max_mult + 1)))
    edges.append((int(rng.integers(n_left)), int(n_left + rng.integers(n_right))))
    return Graph.from_edges(n_left + n_right, edges)


def check(g, target):
    if not spectral_partition(g, 2, seed=0).same_groups(target):
        return None
    return feasible_after_refinement(g, Colouring(np.zeros(g.n, dtype=int)), target)


def search_late_separable(rng, tries):
    for _ in range(tries):
        nl, nr = int(rng.integers(4, 7)), int(rng.integers(4, 7))
        g = random_two_block(rng, nl, nr)
        target = Partition((tuple(range(nl)), tuple(range(nl, nl + nr))))
        res = check(g, target)
        if res is not None and res.first_feasible_round is not None and 3 <= res.first_feasible_round <= 5:
            return g, target, res
    return None


def mirrored(rng, half):
    """Two copies of one block joined node-to-mirror-node: swapping copies is an automorphism."""
    g = random_two_block(rng, half, 1)
    inner = [(u, v) for u, v in g.edges.tolist() if u < half and v < half]
    edges = inner + [(u + half, v + half) for u, v in inner] + [(0, half)]
    return Graph.from_edges(2 * half, edges)


def search_mirror(rng, tries):
    for _ in range(tries):
        half = int(rng.integers(4, 7))
        g = mirrored(rng, half)
        target = Partition((tuple(range(half)), tuple(range(half, 2 * half))))
        res = check(g, target)
        if res is not None and res.never:
            return g, target, res
    return None


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--tries", type=int, default=20000)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)
    for name, found in (("late-separable", search_late_separable(rng, args.tries)), ("mirror", search_mirror(rng, args.tries))):
        if found is None:
            print(f"{name}: nothing found")
            continue
        g, target, res = found
        print(f"{name}: n={g.n} groups={target.groups}")
        print(f"  edges={g.edges.tolist()}")
        print(f"  first_feasible_round={res.first_feasible_round} stable_round={res.stable_round}")


if __name__ == "__main__":
    main()
