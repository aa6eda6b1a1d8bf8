"""Independent reference implementations used as test oracles.

Everything here is written as plain double loops over dense arrays, kept
deliberately separate from the library's vectorized/sparse code paths.
"""

from __future__ import annotations

import numpy as np

from warpmedian.graph import SparseLaplacian


def naive_sq_distances(data: np.ndarray) -> np.ndarray:
    n = len(data)
    d = np.zeros((n, n))
    for i in range(n):
        for j in range(n):
            total = 0.0
            for a, b in zip(data[i], data[j]):
                total += (a - b) ** 2
            d[i, j] = total
    return d


def dense_laplacian_reference(data: np.ndarray, m: int) -> np.ndarray:
    """Straight-line dense transcription of the Laplacian construction."""
    n = len(data)
    d = np.zeros((n, n))
    for i in range(n):
        for j in range(n):
            diff = np.asarray(data[i], dtype=float) - np.asarray(data[j], dtype=float)
            d[i, j] = float(np.sum(diff * diff))

    tau = np.zeros(n)
    for i in range(n):
        others = sorted(d[i, j] for j in range(n) if j != i)
        tau[i] = others[m - 1]

    eps = float(np.median(tau)) / 3.0

    lap = np.zeros((n, n))
    for i in range(n):
        for j in range(n):
            if i != j:
                lap[i, j] = -np.exp(-d[i, j] / eps)

    for i in range(n):
        for j in range(i + 1):
            if d[i, j] > tau[i]:
                lap[i, j] = 0.0
                lap[j, i] = 0.0

    deg = np.zeros(n)
    for i in range(n):
        deg[i] = sum(lap[i, j] for j in range(n) if j != i)

    for i in range(n):
        for j in range(n):
            if i != j:
                lap[i, j] = lap[i, j] / (deg[i] * deg[j])

    for i in range(n):
        lap[i, i] = -sum(lap[j, i] for j in range(n) if j != i)
    return lap


def dense_dirichlet_solve(lap_dense: np.ndarray, i0: int, i1: int) -> np.ndarray:
    """Direct dense solve of the clamped steady-state system."""
    n = lap_dense.shape[0]
    a = np.asarray(lap_dense, dtype=float).copy()
    b = np.zeros(n)
    a[i0, :] = 0.0
    a[i0, i0] = 1.0
    a[i1, :] = 0.0
    a[i1, i1] = 1.0
    b[i1] = 1.0
    return np.linalg.solve(a, b)


def direct_convolution_edge_replicated(
    samples: np.ndarray, kernel: np.ndarray
) -> np.ndarray:
    """Dense convolution with edge replication, index by index."""
    half = (len(kernel) - 1) // 2
    n = len(samples)
    out = np.zeros(n)
    for i in range(n):
        acc = 0.0
        for m_idx, q in enumerate(kernel):
            src = i + m_idx - half
            src = min(max(src, 0), n - 1)
            acc += q * samples[src]
        out[i] = acc
    return out


def random_connected_laplacian(
    n: int, rng: np.random.Generator, extra_edges: int | None = None
) -> SparseLaplacian:
    """Random-spanning-tree graph with extra edges and weights in [0.5, 2]."""
    w = np.zeros((n, n))
    order = rng.permutation(n)
    for a, b in zip(order[:-1], order[1:]):
        weight = rng.uniform(0.5, 2.0)
        w[a, b] = w[b, a] = weight
    if extra_edges is None:
        extra_edges = n
    for _ in range(extra_edges):
        a, b = rng.integers(n, size=2)
        if a != b:
            weight = rng.uniform(0.5, 2.0)
            w[a, b] = w[b, a] = weight
    lap = -w
    np.fill_diagonal(lap, w.sum(axis=1))
    return SparseLaplacian.from_dense(lap)
