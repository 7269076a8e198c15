"""Exact all-pairs baseline: APSP by n forward sweeps plus summary statistics.

Runs in O(n(n + m)) and is intended as the ground-truth oracle for the
approximation algorithms, so it favors clarity and exactness over scale.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._kernels import INF64, apsp_fill, ecc_from_apsp
from .dag import INF, Dag


class ApspMatrix:
    """All-pairs distance matrix indexed by original vertex ids."""

    def __init__(self, dag: Dag, dist_by_id: np.ndarray):
        self.dag = dag
        self.n = dag.n
        # int64 with INF64 sentinel; use dist()/row() for Python values.
        self.raw = dist_by_id

    def dist(self, u: int, v: int):
        d = self.raw[u, v]
        return INF if d >= INF64 else int(d)

    def min_dist(self, u: int, v: int):
        """d_min(u, v) = min of the two directed distances."""
        return min(self.dist(u, v), self.dist(v, u))

    def row(self, u: int) -> list:
        return [INF if d >= INF64 else int(d) for d in self.raw[u]]


def apsp(dag: Dag) -> ApspMatrix:
    """Exact all-pairs shortest paths: one forward sweep per source."""
    n = dag.n
    dist = np.empty((n, n), dtype=np.int64)
    apsp_fill(dag.out_indptr, dag.out_targets, dag.out_weights, dist)
    # kernel works in position space; re-index both axes by vertex id
    inv = np.empty(n, dtype=np.int64)
    inv[dag.order] = np.arange(n, dtype=np.int64)
    by_id = dist[np.ix_(inv, inv)] if n else dist
    return ApspMatrix(dag, by_id)


@dataclass(frozen=True)
class ExactSummary:
    """Per-vertex min-eccentricities with the derived radius/diameter/center."""

    eccentricities: list
    min_radius: object  # int or math.inf
    min_diameter: object
    center: int


def eccentricities_from_apsp(matrix: ApspMatrix) -> list:
    """min-eccentricity of every vertex: ecc(v) = max_w d_min(v, w)."""
    ecc = ecc_from_apsp(matrix.raw)
    return [INF if e >= INF64 else int(e) for e in ecc]


def exact_summary(dag: Dag) -> ExactSummary:
    """Ground-truth min-radius, min-diameter and a center vertex.

    min_diameter equals the max of d(u, v) over ordered pairs with u left of
    v in the topological order; for such pairs the reverse distance is
    infinite, so this is the same as the max of d_min over all pairs.
    """
    if dag.n < 1:
        raise ValueError("summary requires at least one vertex")
    matrix = apsp(dag)
    ecc = eccentricities_from_apsp(matrix)
    min_radius = min(ecc)
    min_diameter = max(ecc)
    center = ecc.index(min_radius)
    return ExactSummary(
        eccentricities=ecc,
        min_radius=min_radius,
        min_diameter=min_diameter,
        center=center,
    )
