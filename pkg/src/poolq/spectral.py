"""Symmetric eigensolvers, k-means, spectral reference partitions and positional encodings."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .discretize import cosine_similarity
from .graphcore import Graph, Partition

SYMMETRY_TOL = 1e-10
RESIDUAL_TOL = 1e-8


class NumericalError(ArithmeticError):
    pass


@dataclass(frozen=True)
class EigenDecomposition:
    values: np.ndarray  # ascending
    vectors: np.ndarray  # orthonormal columns

    def residual(self, m: np.ndarray) -> float:
        return float(np.abs(m @ self.vectors - self.vectors * self.values).max(initial=0.0))

    def orthonormality_error(self) -> float:
        v = self.vectors
        return float(np.abs(v.T @ v - np.eye(v.shape[1])).max(initial=0.0))


def _check_symmetric(m) -> np.ndarray:
    m = np.asarray(m, dtype=np.float64)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError("matrix must be square")
    if np.abs(m - m.T).max(initial=0.0) > SYMMETRY_TOL * max(1.0, np.abs(m).max(initial=0.0)):
        raise ValueError("matrix is not symmetric")
    return (m + m.T) / 2


def sym_eigen(m, method: str = "lapack", check: bool = True) -> EigenDecomposition:
    """Full eigendecomposition of a real symmetric matrix, eigenvalues ascending.

    ``method='lapack'`` uses ``numpy.linalg.eigh``; ``method='jacobi'`` the
    cyclic Jacobi sweep in :func:`jacobi_eigen`. With ``check`` the residual
    and orthonormality bounds are verified before returning.
    """
    m = _check_symmetric(m)
    if method == "lapack":
        values, vectors = np.linalg.eigh(m)
    elif method == "jacobi":
        values, vectors = jacobi_eigen(m)
    else:
        raise ValueError(f"unknown eigen method {method!r}")
    order = np.argsort(values, kind="stable")
    dec = EigenDecomposition(values[order], vectors[:, order])
    if check:
        scale = max(1.0, np.abs(m).sum(axis=1).max(initial=0.0))
        if dec.residual(m) > RESIDUAL_TOL * scale or dec.orthonormality_error() > RESIDUAL_TOL:
            raise NumericalError("eigendecomposition failed its residual bound")
    return dec


def jacobi_eigen(m, tol: float = 1e-14, max_sweeps: int = 100) -> tuple[np.ndarray, np.ndarray]:
    """Cyclic Jacobi rotations until the off-diagonal mass is negligible."""
    a = np.array(m, dtype=np.float64)
    n = a.shape[0]
    v = np.eye(n)
    scale = max(np.abs(a).max(initial=0.0), 1e-300)
    mask = ~np.eye(n, dtype=bool)
    for _ in range(max_sweeps):
        off = np.sqrt(np.sum(a[mask] ** 2))
        if off <= tol * scale * n:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                g = 100.0 * abs(apq)
                # negligible next to both diagonal entries: drop it instead of rotating
                if abs(a[p, p]) + g == abs(a[p, p]) and abs(a[q, q]) + g == abs(a[q, q]):
                    a[p, q] = a[q, p] = 0.0
                    continue
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                if abs(theta) > 1e150:
                    t = 1.0 / (2.0 * theta)
                else:
                    t = np.sign(theta) / (abs(theta) + np.sqrt(theta * theta + 1.0)) if theta != 0 else 1.0
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                ap, aq = a[:, p].copy(), a[:, q].copy()
                a[:, p], a[:, q] = c * ap - s * aq, s * ap + c * aq
                ap, aq = a[p, :].copy(), a[q, :].copy()
                a[p, :], a[q, :] = c * ap - s * aq, s * ap + c * aq
                vp, vq = v[:, p].copy(), v[:, q].copy()
                v[:, p], v[:, q] = c * vp - s * vq, s * vp + c * vq
    else:
        raise NumericalError("Jacobi iteration did not converge")
    return np.diag(a).copy(), v


def normalized_laplacian(w: np.ndarray) -> np.ndarray:
    """I - D^-1/2 W D^-1/2 over nodes of positive degree.

    Zero-degree rows and columns are left at zero, so every isolated node
    contributes its own eigenvalue-0 indicator just like any other component.
    """
    w = np.asarray(w, dtype=np.float64)
    deg = w.sum(axis=1)
    active = deg > 0
    inv = np.zeros_like(deg)
    inv[active] = 1.0 / np.sqrt(deg[active])
    lap = -(inv[:, None] * w * inv[None, :])
    lap[np.diag_indices_from(lap)] += active.astype(float)
    return lap


def fix_signs(vectors: np.ndarray) -> np.ndarray:
    """Flip each column so its largest-magnitude entry (lowest index on ties) is positive."""
    out = np.array(vectors, dtype=np.float64)
    for j in range(out.shape[1]):
        col = np.abs(out[:, j])
        if col.size == 0 or col.max() == 0:
            continue
        i = int(np.flatnonzero(col >= col.max() - 1e-9 * max(1.0, col.max()))[0])
        if out[i, j] < 0:
            out[:, j] = -out[:, j]
    return out


@dataclass(frozen=True)
class KMeansResult:
    labels: np.ndarray
    centroids: np.ndarray
    inertia: float
    restart_inertias: tuple[float, ...]


def _kmeanspp(x: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    n = len(x)
    centres = [x[rng.integers(n)]]
    d2 = ((x - centres[0]) ** 2).sum(axis=1)
    for _ in range(1, k):
        total = d2.sum()
        idx = rng.integers(n) if total <= 0 else rng.choice(n, p=d2 / total)
        centres.append(x[idx])
        d2 = np.minimum(d2, ((x - x[idx]) ** 2).sum(axis=1))
    return np.array(centres)


def _lloyd(x: np.ndarray, centres: np.ndarray, max_iter: int) -> tuple[np.ndarray, np.ndarray, float]:
    k = len(centres)
    labels = None
    for _ in range(max_iter):
        dist = ((x[:, None, :] - centres[None, :, :]) ** 2).sum(axis=2)
        new = dist.argmin(axis=1)
        counts = np.bincount(new, minlength=k)
        for j in np.flatnonzero(counts == 0):
            # reseed an empty cluster at the point farthest from its centre
            far = int(dist[np.arange(len(x)), new].argmax())
            centres[j] = x[far]
            new[far] = j
            dist[far] = 0.0
            counts = np.bincount(new, minlength=k)
        if labels is not None and np.array_equal(new, labels):
            break
        labels = new
        for j in range(k):
            members = labels == j
            if members.any():
                centres[j] = x[members].mean(axis=0)
    dist = ((x - centres[labels]) ** 2).sum(axis=1)
    return labels, centres, float(dist.sum())


def kmeans(x, k: int, seed=0, restarts: int = 20, max_iter: int = 300) -> KMeansResult:
    """Lloyd's algorithm with k-means++ seeding; best of ``restarts`` runs."""
    x = np.asarray(x, dtype=np.float64)
    if not 1 <= k <= len(x):
        raise ValueError(f"k={k} must lie in [1, {len(x)}]")
    rng = np.random.default_rng(seed)
    best = None
    inertias = []
    for _ in range(restarts):
        labels, centres, inertia = _lloyd(x, _kmeanspp(x, k, rng), max_iter)
        inertias.append(inertia)
        if best is None or inertia < best[2]:
            best = (labels, centres, inertia)
    return KMeansResult(best[0], best[1], best[2], tuple(inertias))


def spectral_embedding(w: np.ndarray, k: int) -> np.ndarray:
    """Row-normalized eigenvectors for the k smallest eigenvalues of L_sym."""
    dec = sym_eigen(normalized_laplacian(w))
    emb = dec.vectors[:, :k]
    norms = np.linalg.norm(emb, axis=1, keepdims=True)
    return np.divide(emb, norms, out=np.zeros_like(emb), where=norms > 0)


def _cluster(w: np.ndarray, k: int, seed) -> Partition:
    n = w.shape[0]
    if not 1 <= k <= n:
        raise ValueError(f"number of clusters k={k} must lie in [1, {n}]")
    if k == 1:
        return Partition((tuple(range(n)),))
    return Partition.from_labels(kmeans(spectral_embedding(w, k), k, seed).labels)


def spectral_partition(g: Graph, k: int, seed=0) -> Partition:
    """Spectral clustering of the adjacency matrix (multiedges weighted by multiplicity)."""
    return _cluster(g.adjacency, k, seed)


def feature_affinity(x, affinity: str = "cosine") -> np.ndarray:
    """Node affinity from feature rows.

    ``cosine`` clips negative similarities to 0, ``rbf`` uses a Gaussian
    kernel with the median pairwise distance as bandwidth.
    """
    x = np.asarray(x, dtype=np.float64)
    if affinity == "cosine":
        return np.clip(cosine_similarity(x), 0.0, 1.0)
    if affinity == "rbf":
        sq = ((x[:, None, :] - x[None, :, :]) ** 2).sum(axis=2)
        off = sq[~np.eye(len(x), dtype=bool)]
        sigma2 = np.median(off) if off.size and np.median(off) > 0 else 1.0
        return np.exp(-sq / (2.0 * sigma2))
    raise ValueError(f"unknown affinity {affinity!r}")


def feature_spectral_partition(x, k: int, seed=0, affinity: str = "cosine") -> Partition:
    return _cluster(feature_affinity(x, affinity), k, seed)


def default_num_clusters(n: int) -> int:
    """max(2, round(sqrt(n / 2))), never more than n."""
    return min(n, max(2, int(round(np.sqrt(n / 2)))))


def laplacian_pe(g: Graph, d: int) -> np.ndarray:
    """Eigenvectors 2..d+1 of L_sym, sign-fixed; zero columns pad small graphs."""
    dec = sym_eigen(normalized_laplacian(g.adjacency))
    vecs = fix_signs(dec.vectors[:, 1 : d + 1])
    out = np.zeros((g.n, d))
    out[:, : vecs.shape[1]] = vecs
    return out


def random_walk_pe(g: Graph, d: int) -> np.ndarray:
    """Column t holds the t-step return probabilities diag((D^-1 A)^t), t = 1..d."""
    a = g.adjacency
    deg = a.sum(axis=1)
    p = np.divide(a, deg[:, None], out=np.zeros_like(a), where=deg[:, None] > 0)
    out = np.zeros((g.n, d))
    step = np.eye(g.n)
    for t in range(d):
        step = step @ p
        out[:, t] = np.diag(step)
    return out
