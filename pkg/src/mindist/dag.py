"""Directed acyclic graphs with a stored topological order and DAG shortest paths.

The central type is :class:`Dag`: dense integer vertex ids, nonnegative
integer edge weights, and adjacency kept as CSR arrays indexed by
*topological position* so that every edge goes left-to-right.  On top of it
this module provides single-source and set-source shortest-path sweeps and
the two-sided min-distance ``d_min(u, v) = min(d(u, v), d(v, u))`` helpers
that the approximation algorithms are built from.

Distances returned by the public functions are Python ints, with
``math.inf`` for unreachable.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Sequence

import numpy as np

from ._kernels import INF64, sweep_backward, sweep_forward

INF = math.inf

# Finite distances must stay below the int64 sentinel: a path has at most
# n-1 edges of weight <= w_max.
_MAX_SCALE = int(INF64)


class CycleError(ValueError):
    """Raised when an edge list does not describe a DAG."""


class Direction(Enum):
    """Orientation of a single-source query."""

    OUT = "out"  # d(source, x)
    IN = "in"  # d(x, source)


class SetDirection(Enum):
    """Orientation of a set-source query for a vertex set W."""

    INTO_SET = "into"  # x -> min over w in W of d(x, w)
    OUT_OF_SET = "out_of"  # x -> min over w in W of d(w, x)


def _check_weight(w) -> int:
    if isinstance(w, bool) or not isinstance(w, (int, np.integer)):
        raise ValueError(f"edge weights must be integers, got {w!r}")
    w = int(w)
    if w < 0:
        raise ValueError(f"negative edge weight {w}")
    return w


def _toposort_min_id(n: int, out_adj: list[list[int]], indeg: list[int]) -> np.ndarray:
    # Kahn's algorithm with a min-id heap.  The tie-break matters: when the
    # vertex ids themselves form a valid topological order the result is the
    # identity, which generators rely on to keep layered ids in layer order.
    heap = [v for v in range(n) if indeg[v] == 0]
    heapq.heapify(heap)
    order = np.empty(n, dtype=np.int64)
    filled = 0
    while heap:
        v = heapq.heappop(heap)
        order[filled] = v
        filled += 1
        for q in out_adj[v]:
            indeg[q] -= 1
            if indeg[q] == 0:
                heapq.heappush(heap, q)
    if filled != n:
        raise CycleError(f"graph contains a cycle ({n - filled} vertices unsorted)")
    return order


@dataclass
class Dag:
    """A DAG frozen together with one topological order of its vertices.

    ``order[i]`` is the vertex at position ``i`` and ``pos[v]`` its inverse.
    ``out_*``/``in_*`` are CSR adjacency in position space (row p holds the
    edges of the vertex at position p, neighbor columns sorted ascending);
    the in-CSR is the exact transpose of the out-CSR.
    """

    n: int
    m: int
    order: np.ndarray
    pos: np.ndarray
    out_indptr: np.ndarray
    out_targets: np.ndarray
    out_weights: np.ndarray
    in_indptr: np.ndarray
    in_sources: np.ndarray
    in_weights: np.ndarray
    w_max: int
    w_min_pos: int | None
    unit_weights: bool
    _edges_pos: np.ndarray = field(repr=False)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple]) -> "Dag":
        """Build a Dag from ``(u, v)`` or ``(u, v, w)`` tuples (default w=1).

        Raises CycleError if the edges admit no topological order and
        ValueError for out-of-range endpoints or bad weights.
        """
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        us, vs, ws = [], [], []
        for e in edges:
            if len(e) == 2:
                u, v = e
                w = 1
            else:
                u, v, w = e
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise CycleError(f"self-loop at vertex {u}")
            us.append(int(u))
            vs.append(int(v))
            ws.append(_check_weight(w))
        m = len(us)

        out_adj: list[list[int]] = [[] for _ in range(n)]
        indeg = [0] * n
        for u, v in zip(us, vs):
            out_adj[u].append(v)
            indeg[v] += 1
        order = _toposort_min_id(n, out_adj, indeg)
        pos = np.empty(n, dtype=np.int64)
        pos[order] = np.arange(n, dtype=np.int64)

        w_max = max(ws) if ws else 0
        positive = [w for w in ws if w > 0]
        w_min_pos = min(positive) if positive else None
        if n * max(w_max, 1) >= _MAX_SCALE:
            raise ValueError("n * w_max too large for exact 64-bit distances")

        if m:
            pu = pos[np.array(us, dtype=np.int64)]
            pv = pos[np.array(vs, dtype=np.int64)]
            wa = np.array(ws, dtype=np.int64)
        else:
            pu = pv = np.empty(0, dtype=np.int64)
            wa = np.empty(0, dtype=np.int64)

        def csr(rows, cols, vals):
            perm = np.lexsort((cols, rows))
            indptr = np.zeros(n + 1, dtype=np.int64)
            np.add.at(indptr, rows + 1, 1)
            np.cumsum(indptr, out=indptr)
            return indptr, cols[perm], vals[perm]

        out_indptr, out_targets, out_weights = csr(pu, pv, wa)
        in_indptr, in_sources, in_weights = csr(pv, pu, wa)
        edges_pos = np.stack([pu, pv, wa], axis=1) if m else np.empty((0, 3), dtype=np.int64)

        return cls(
            n=n,
            m=m,
            order=order,
            pos=pos,
            out_indptr=out_indptr,
            out_targets=out_targets,
            out_weights=out_weights,
            in_indptr=in_indptr,
            in_sources=in_sources,
            in_weights=in_weights,
            w_max=w_max,
            w_min_pos=w_min_pos,
            unit_weights=bool(np.all(wa == 1)) if m else True,
            _edges_pos=edges_pos,
        )

    @property
    def weight_scale(self) -> int:
        """M = max(w_max, 1); with integer weights M*n bounds every finite distance."""
        return max(self.w_max, 1)

    def csr(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Out-CSR triple (indptr, targets, weights) in position space."""
        return self.out_indptr, self.out_targets, self.out_weights

    def edges(self) -> list[tuple[int, int, int]]:
        """Edges as (u, v, w) with original ids, sorted by topological position."""
        o = self.order
        return [(int(o[pu]), int(o[pv]), int(w)) for pu, pv, w in self._edges_pos[np.lexsort((self._edges_pos[:, 1], self._edges_pos[:, 0]))]]

    def check_invariants(self) -> None:
        """Assert order consistency and the out/in transpose relation."""
        assert len(self.order) == self.n
        assert sorted(self.order.tolist()) == list(range(self.n))
        for p in range(self.n):
            for e in range(self.out_indptr[p], self.out_indptr[p + 1]):
                assert self.out_targets[e] > p, "edge goes against the stored order"
        out_pairs = sorted(
            (p, int(self.out_targets[e]), int(self.out_weights[e]))
            for p in range(self.n)
            for e in range(self.out_indptr[p], self.out_indptr[p + 1])
        )
        in_pairs = sorted(
            (int(self.in_sources[e]), q, int(self.in_weights[e]))
            for q in range(self.n)
            for e in range(self.in_indptr[q], self.in_indptr[q + 1])
        )
        assert out_pairs == in_pairs, "in-CSR is not the transpose of out-CSR"


@dataclass(frozen=True)
class VertexInterval:
    """A topologically consecutive vertex set, as the half-open position range [start, stop)."""

    dag: Dag
    start: int
    stop: int

    def __post_init__(self):
        if not (0 <= self.start <= self.stop <= self.dag.n):
            raise ValueError(f"interval [{self.start}, {self.stop}) out of range")

    def __len__(self) -> int:
        return self.stop - self.start

    def positions(self) -> range:
        return range(self.start, self.stop)

    def vertices(self) -> list[int]:
        """Members as original vertex ids, left to right."""
        return [int(self.dag.order[p]) for p in self.positions()]


def _seed_positions(dag: Dag, vertices: Iterable[int]) -> np.ndarray:
    ps = [int(dag.pos[v]) for v in vertices]
    if not ps:
        raise ValueError("vertex set is empty")
    return np.array(ps, dtype=np.int64)


def _dist_by_vertex(dag: Dag, dist_pos: np.ndarray) -> list:
    out: list = [0] * dag.n
    order = dag.order
    for p in range(dag.n):
        d = dist_pos[p]
        out[int(order[p])] = INF if d >= INF64 else int(d)
    return out


def _multi_source_dist(dag: Dag, seeds: np.ndarray, forward: bool) -> np.ndarray:
    dist = np.full(dag.n, INF64, dtype=np.int64)
    dist[seeds] = 0
    if forward:
        sweep_forward(dag.out_indptr, dag.out_targets, dag.out_weights, dist)
    else:
        sweep_backward(dag.out_indptr, dag.out_targets, dag.out_weights, dist)
    return dist


def sssp(dag: Dag, source: int, direction: Direction = Direction.OUT) -> list:
    """Shortest path distances from (OUT) or to (IN) a single vertex.

    One relaxation sweep along the stored order; agrees with Dijkstra on
    every DAG and costs O(n + m).
    """
    if not (0 <= source < dag.n):
        raise ValueError(f"source {source} out of range")
    seeds = np.array([dag.pos[source]], dtype=np.int64)
    dist = _multi_source_dist(dag, seeds, forward=(direction == Direction.OUT))
    return _dist_by_vertex(dag, dist)


def sssp_set(dag: Dag, vertices: Iterable[int], direction: SetDirection) -> list:
    """Distances between every vertex and a whole set W in one sweep.

    INTO_SET gives x -> min_w d(x, w); OUT_OF_SET gives x -> min_w d(w, x).
    Equivalent to Dijkstra from a virtual vertex joined to W with weight-0
    edges, at the cost of a single SSSP.
    """
    seeds = _seed_positions(dag, vertices)
    dist = _multi_source_dist(dag, seeds, forward=(direction == SetDirection.OUT_OF_SET))
    return _dist_by_vertex(dag, dist)


def min_dist_to_set(dag: Dag, vertices: Iterable[int]) -> list:
    """x -> d_min(x, W) = min(min_w d(x, w), min_w d(w, x))."""
    seeds = _seed_positions(dag, vertices)
    fwd = _multi_source_dist(dag, seeds, forward=True)
    bwd = _multi_source_dist(dag, seeds, forward=False)
    return _dist_by_vertex(dag, np.minimum(fwd, bwd))


def set_eccentricity(dag: Dag, vertices: Iterable[int]):
    """max_x d_min(x, W): how far the worst vertex sits from the set W."""
    dmin = min_dist_to_set(dag, vertices)
    return max(dmin) if dmin else 0
