"""Brute-force reference implementations, written from the definitions only.

Nothing here imports the scoring code under test.
"""

import itertools
import math
from collections import Counter

import numpy as np


def _labels(p):
    lab = {}
    for j, g in enumerate(p.groups):
        for v in g:
            lab[v] = j
    return [lab[v] for v in range(len(lab))]


def gamma_oracle(colours, p):
    """Pairwise check: a colour is valid iff no two of its nodes sit in different groups."""
    colours = [int(c) for c in colours.colours]
    lab = _labels(p)
    present = sorted(set(colours))
    valid = 0
    for c in present:
        nodes = [v for v in range(len(colours)) if colours[v] == c]
        if all(lab[a] == lab[b] for a, b in itertools.combinations(nodes, 2)):
            valid += 1
    return valid / len(present)


def group_covered(zu, group, zs, seen_group):
    """Every node in ``group`` finds a node of the same colour in ``seen_group``."""
    return all(any(zu.colours[v] == zs.colours[w] for w in seen_group) for v in group)


def matched(zs, ps, zu, pu):
    return [any(group_covered(zu, gu, zs, gs) for gs in ps.groups) for gu in pu.groups]


def lambda_full_oracle(zs, ps, zu, pu):
    return float(all(matched(zs, ps, zu, pu)))


def lambda_ratio_oracle(zs, ps, zu, pu):
    m = matched(zs, ps, zu, pu)
    return sum(m) / len(m)


def lambda_group_oracle(seen, zu, group):
    return float(any(group_covered(zu, group, zs, gs) for zs, ps in seen for gs in ps.groups))


def union_gamma_oracle(zs, ps, zu, pu):
    """Validity of the pair with each graph's colours tagged by graph."""
    tagged = [("s", int(c)) for c in zs.colours] + [("u", int(c)) for c in zu.colours]
    groups = [("s", _labels(ps)[v]) for v in range(ps.n)] + [("u", _labels(pu)[v]) for v in range(pu.n)]
    present = set(tagged)
    valid = sum(
        all(groups[a] == groups[b] for a, b in itertools.combinations([i for i, t in enumerate(tagged) if t == c], 2))
        for c in present
    )
    return valid / len(present)


def lambda_bar_oracle(colourings, partitions, seen, unseen, variant):
    if variant == "full":
        return float(np.mean([
            float(any(lambda_full_oracle(colourings[s], partitions[s], colourings[u], partitions[u]) == 1.0 for s in seen))
            for u in unseen
        ]))
    if variant == "ratio":
        return float(np.mean([
            max(lambda_ratio_oracle(colourings[s], partitions[s], colourings[u], partitions[u]) for s in seen)
            for u in unseen
        ]))
    pool = [(colourings[s], partitions[s]) for s in seen]
    scores = [lambda_group_oracle(pool, colourings[u], g) for u in unseen for g in partitions[u].groups]
    return float(np.mean(scores))


def nmi_oracle(a, b, normalization="sqrt"):
    """Entropies and mutual information from counts, no contingency matrix."""
    la, lb = _labels(a), _labels(b)
    n = len(la)
    ca, cb, cab = Counter(la), Counter(lb), Counter(zip(la, lb))
    ha = -sum(c / n * math.log(c / n) for c in ca.values())
    hb = -sum(c / n * math.log(c / n) for c in cb.values())
    if ha == 0 or hb == 0:
        return 1.0 if len(ca) == 1 and len(cb) == 1 else 0.0
    mi = sum(c / n * math.log((c / n) / ((ca[x] / n) * (cb[y] / n))) for (x, y), c in cab.items())
    denom = math.sqrt(ha * hb) if normalization == "sqrt" else (ha + hb) / 2
    return min(1.0, max(0.0, mi / denom))


def wl_oracle(g, colours, rounds):
    """Colour refinement with nested-tuple colours: classes are exact unfolding-tree classes."""
    col = [int(c) for c in colours]
    nbrs = [[] for _ in range(g.n)]
    for u, v in g.edges.tolist():
        nbrs[u].append(v)
        if u != v:
            nbrs[v].append(u)
    for _ in range(rounds):
        col = [(col[v], tuple(sorted(col[u] for u in nbrs[v]))) for v in range(g.n)]
    return col


def same_classes(a, b):
    """Two label sequences induce the same partition of positions."""
    return len(set(a)) == len(set(b)) == len(set(zip(a, b)))


def components_oracle(n, edges):
    """Connected components by repeated depth-first search."""
    adj = [set() for _ in range(n)]
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    comp = [-1] * n
    c = 0
    for s in range(n):
        if comp[s] >= 0:
            continue
        stack = [s]
        comp[s] = c
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if comp[w] < 0:
                    comp[w] = c
                    stack.append(w)
        c += 1
    return comp


def threshold_components_oracle(x, tau):
    """Cosine similarity entry by entry, zero rows similar only to zero rows."""
    x = np.asarray(x, dtype=float)
    n = len(x)
    norms = [math.sqrt(sum(t * t for t in row)) for row in x]
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            if norms[i] == 0 or norms[j] == 0:
                s = 1.0 if norms[i] == norms[j] == 0 else 0.0
            else:
                s = sum(a * b for a, b in zip(x[i], x[j])) / (norms[i] * norms[j])
            if s >= tau - 1e-12:
                edges.append((i, j))
    return components_oracle(n, edges)


def walk_return_oracle(g, t):
    """Return probabilities by enumerating every walk of length t."""
    a = g.adjacency
    deg = a.sum(axis=1)
    out = np.zeros(g.n)
    for s in range(g.n):
        if deg[s] == 0:
            continue
        frontier = {s: 1.0}
        for _ in range(t):
            nxt = {}
            for u, p in frontier.items():
                for w in range(g.n):
                    if a[u, w]:
                        nxt[w] = nxt.get(w, 0.0) + p * a[u, w] / deg[u]
            frontier = nxt
        out[s] = frontier.get(s, 0.0)
    return out
