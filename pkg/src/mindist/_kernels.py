"""Low-level distance kernels over CSR adjacency in topological-position space.

Every kernel assumes vertices are relabeled so that vertex ``p`` sits at
position ``p`` of a topological order, i.e. every edge goes from a lower
index to a higher one.  Distances are int64 with ``INF64`` as the
unreachable sentinel; relaxation skips sentinel sources, so no overflow is
possible as long as ``n * max(w, 1) < INF64`` (checked at graph build time).
"""

from __future__ import annotations

import numpy as np
from numba import njit

INF64 = np.int64(2**62)


@njit(cache=True)
def sweep_forward(indptr, targets, weights, dist):
    """Relax all edges once in ascending position order (in place).

    With dist pre-seeded (0 at sources, INF64 elsewhere) this computes
    min_{s in sources} d(s, x) for every x: on a topologically ordered DAG a
    single ascending pass settles every vertex, which is exactly what
    Dijkstra would produce.
    """
    n = dist.shape[0]
    for p in range(n):
        dp = dist[p]
        if dp >= INF64:
            continue
        for e in range(indptr[p], indptr[p + 1]):
            q = targets[e]
            nd = dp + weights[e]
            if nd < dist[q]:
                dist[q] = nd


@njit(cache=True)
def sweep_backward(indptr, targets, weights, dist):
    """Descending-order pass computing min_{t in seeds} d(x, t) for every x.

    Uses the same out-CSR as sweep_forward: dist[p] is improved through each
    out-edge p->q after q has settled.
    """
    n = dist.shape[0]
    for p in range(n - 1, -1, -1):
        best = dist[p]
        for e in range(indptr[p], indptr[p + 1]):
            q = targets[e]
            dq = dist[q]
            if dq < INF64:
                nd = dq + weights[e]
                if nd < best:
                    best = nd
        dist[p] = best


@njit(cache=True)
def interval_min_dist(indptr, targets, weights, a, b):
    """d_min(x, W) for every x, where W is the position interval [a, b)."""
    n = indptr.shape[0] - 1
    fwd = np.full(n, INF64, dtype=np.int64)
    bwd = np.full(n, INF64, dtype=np.int64)
    for p in range(a, b):
        fwd[p] = 0
        bwd[p] = 0
    sweep_forward(indptr, targets, weights, fwd)
    sweep_backward(indptr, targets, weights, bwd)
    for p in range(n):
        if bwd[p] < fwd[p]:
            fwd[p] = bwd[p]
    return fwd


@njit(cache=True)
def interval_eccentricity(indptr, targets, weights, a, b):
    """max_x d_min(x, [a, b)) as int64 (INF64 when some x is unreachable)."""
    dmin = interval_min_dist(indptr, targets, weights, a, b)
    worst = np.int64(0)
    for p in range(dmin.shape[0]):
        if dmin[p] > worst:
            worst = dmin[p]
    return worst


@njit(cache=True)
def interval_subgraph(indptr, targets, weights, a, b):
    """Extract the induced subgraph of the interval [a, b), shifted to 0-base.

    Because the interval is topologically consecutive, keeping edges whose
    endpoints both lie in [a, b) preserves all pairwise distances inside it.
    """
    cnt = 0
    for p in range(a, b):
        for e in range(indptr[p], indptr[p + 1]):
            if targets[e] < b:
                cnt += 1
    sub_indptr = np.empty(b - a + 1, dtype=np.int64)
    sub_targets = np.empty(cnt, dtype=np.int64)
    sub_weights = np.empty(cnt, dtype=np.int64)
    k = 0
    sub_indptr[0] = 0
    for p in range(a, b):
        for e in range(indptr[p], indptr[p + 1]):
            q = targets[e]
            if q < b:
                sub_targets[k] = q - a
                sub_weights[k] = weights[e]
                k += 1
        sub_indptr[p - a + 1] = k
    return sub_indptr, sub_targets, sub_weights


@njit(cache=True)
def apsp_fill(indptr, targets, weights, out):
    """Fill the n-by-n matrix out with d(u, v); out must be preallocated."""
    n = out.shape[0]
    for s in range(n):
        row = out[s]
        for p in range(n):
            row[p] = INF64
        row[s] = 0
        for p in range(s, n):
            dp = row[p]
            if dp >= INF64:
                continue
            for e in range(indptr[p], indptr[p + 1]):
                q = targets[e]
                nd = dp + weights[e]
                if nd < row[q]:
                    row[q] = nd


@njit(cache=True)
def ecc_from_apsp(dist):
    """Per-vertex min-eccentricity from an APSP matrix (position space)."""
    n = dist.shape[0]
    ecc = np.zeros(n, dtype=np.int64)
    for u in range(n):
        worst = np.int64(0)
        for v in range(n):
            duv = dist[u, v]
            dvu = dist[v, u]
            m = duv if duv < dvu else dvu
            if m > worst:
                worst = m
        ecc[u] = worst
    return ecc
