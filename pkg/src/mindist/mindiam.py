"""Near-3/2 approximation of the min-diameter of an unweighted DAG.

The core is a threshold certifier: given a probe value it reports either
that the min-diameter exceeds the probe or that it is at most 1.5x the
probe (rounded up).  Instead of all-pairs BFS it runs BFS only from a
small covering set and settles every remaining ordered pair with a sparse
boolean product over per-vertex "near sets"; unmarked pairs witness a
large min-distance.  A binary search over the probe turns the certifier
into an estimate D0 with D <= D0 <= ceil(3D/2).
"""

import heapq
import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from ._kernels import interval_eccentricity
from .dag import INF, Dag

# exponent constants for the sparse boolean-product cost model: ALPHA is
# the largest aspect ratio still multiplying in quadratic time, BETA the
# resulting tradeoff slope
ALPHA = 0.31389
BETA = 0.5435


class WeightedInput(ValueError):
    """Raised when a weighted graph reaches the unweighted-only pipeline."""


class DiamVerdict(Enum):
    D_GT_DPRIME = "gt"
    D_LE_CEIL_3DPRIME_HALF = "le"


class EpsilonMode(Enum):
    FORMULA = "formula"
    PRAGMATIC = "pragmatic"


@dataclass(frozen=True)
class NearSetFamily:
    """Per-vertex near sets: x[u] is the left-most slice of the out-ball.

    x[u] holds the min(cap, ball size) left-most members of the radius
    floor(dprime/2) out-ball of u, as vertex ids in topological order;
    y[w] symmetrically holds the right-most members of the ceil(dprime/2)
    in-ball.  A set is saturated when it hit the size cap.
    """

    dag: Dag = field(repr=False)
    dprime: int
    epsilon: float
    cap: int
    x: list[list[int]]
    y: list[list[int]]
    saturated_out: list[bool]
    saturated_in: list[bool]


@dataclass(frozen=True)
class CoveringSet:
    """Vertices hitting every set of the family they were built for."""

    vertices: frozenset[int]
    family: tuple[frozenset[int], ...]


@dataclass
class PairMarks:
    """Bitset rows over ordered position pairs: bit q of rows[p] marks (p, q).

    Rows and bits are topological positions; only pairs with p < q are ever
    marked, so the diagonal and wrong-order pairs stay clear.
    """

    n: int
    rows: list[int]

    def marked(self, p: int, q: int) -> bool:
        return bool(self.rows[p] >> q & 1)

    def count(self) -> int:
        return sum(row.bit_count() for row in self.rows)


def _hop_ball(indptr: np.ndarray, nbrs: np.ndarray, start: int, hops: int) -> list[int]:
    # positions within <= hops edges of start, following the given adjacency
    seen = {start}
    frontier = [start]
    for _ in range(hops):
        nxt = []
        for p in frontier:
            for q in nbrs[indptr[p] : indptr[p + 1]]:
                q = int(q)
                if q not in seen:
                    seen.add(q)
                    nxt.append(q)
        if not nxt:
            break
        frontier = nxt
    return sorted(seen)


def build_near_sets(dag: Dag, dprime: int, epsilon: float) -> NearSetFamily:
    """Compute the capped extremal ball slices X_u and Y_w for every vertex.

    The cap is ceil(n**epsilon).  X_u is exactly the cap left-most members
    of the floor(dprime/2) out-ball of u (topological order); Y_w is the
    cap right-most members of the ceil(dprime/2) in-ball.
    """
    if not isinstance(dprime, int) or isinstance(dprime, bool) or dprime < 0:
        raise ValueError("dprime must be a nonnegative integer")
    if not 0.0 <= epsilon <= 1.0:
        raise ValueError("epsilon must lie in [0, 1]")
    if not dag.unit_weights:
        raise WeightedInput("near sets are defined for unweighted graphs only")
    n = dag.n
    cap = max(1, math.ceil(n**epsilon - 1e-12)) if n else 1
    out_hops = dprime // 2
    in_hops = (dprime + 1) // 2
    order = dag.order
    x: list[list[int]] = [[] for _ in range(n)]
    y: list[list[int]] = [[] for _ in range(n)]
    sat_out = [False] * n
    sat_in = [False] * n
    for p in range(n):
        ball = _hop_ball(dag.out_indptr, dag.out_targets, p, out_hops)
        members = ball[:cap]
        v = int(order[p])
        x[v] = [int(order[q]) for q in members]
        sat_out[v] = len(members) == cap
        ball = _hop_ball(dag.in_indptr, dag.in_sources, p, in_hops)
        members = ball[-cap:]
        y[v] = [int(order[q]) for q in members]
        sat_in[v] = len(members) == cap
    return NearSetFamily(
        dag=dag,
        dprime=dprime,
        epsilon=epsilon,
        cap=cap,
        x=x,
        y=y,
        saturated_out=sat_out,
        saturated_in=sat_in,
    )


def greedy_hitting_set(sets: list, n: int) -> CoveringSet:
    """Pick vertices covering the most still-unhit sets until all are hit.

    Output size is at most ceil(n/s_min) * (ln(len(sets)) + 1) where s_min
    is the smallest set size.  Raises ValueError on an empty input set.
    """
    family = tuple(frozenset(s) for s in sets)
    for i, s in enumerate(family):
        if not s:
            raise ValueError(f"set {i} is empty and can never be hit")
        if any(not 0 <= v < n for v in s):
            raise ValueError(f"set {i} has members outside range({n})")
    member_of: dict[int, list[int]] = {}
    for i, s in enumerate(family):
        for v in s:
            member_of.setdefault(v, []).append(i)
    # lazy-deletion heap: stale counts are re-checked on pop
    alive = [True] * len(family)
    remaining = len(family)
    counts = {v: len(ids) for v, ids in member_of.items()}
    heap = [(-c, v) for v, c in counts.items()]
    heapq.heapify(heap)
    chosen = []
    while remaining:
        c, v = heapq.heappop(heap)
        fresh = sum(alive[i] for i in member_of[v])
        if fresh != -c:
            if fresh:
                heapq.heappush(heap, (-fresh, v))
            continue
        chosen.append(v)
        for i in member_of[v]:
            if alive[i]:
                alive[i] = False
                remaining -= 1
    return CoveringSet(vertices=frozenset(chosen), family=family)


def sparse_pair_product(family: NearSetFamily) -> PairMarks:
    """Mark the ordered pairs (u, w) whose near sets share a witness.

    For each witness t the cross product {u : t in X_u} x {w : t in Y_w}
    is ORed into the bitset rows; a mark certifies a u->w path through t
    of length at most floor(dprime/2) + ceil(dprime/2) = dprime.
    """
    dag = family.dag
    n = dag.n
    pos = dag.pos
    users: dict[int, list[int]] = {}
    wit_mask: dict[int, int] = {}
    for u, members in enumerate(family.x):
        pu = int(pos[u])
        for t in members:
            users.setdefault(t, []).append(pu)
    for w, members in enumerate(family.y):
        bit = 1 << int(pos[w])
        for t in members:
            wit_mask[t] = wit_mask.get(t, 0) | bit
    rows = [0] * n
    for t, mask in wit_mask.items():
        for pu in users.get(t, ()):
            rows[pu] |= mask
    full = (1 << n) - 1
    for p in range(n):
        rows[p] &= full ^ ((1 << (p + 1)) - 1)  # keep strictly-right bits only
    return PairMarks(n=n, rows=rows)


def certify_min_diameter(
    dag: Dag, dprime: int, epsilon: float, stats: dict | None = None
) -> DiamVerdict:
    """Decide whether the min-diameter D exceeds dprime.

    Returns D_GT_DPRIME only when some pair provably has min-distance above
    dprime, and D_LE_CEIL_3DPRIME_HALF only when every ordered pair carries
    a certified path of length at most ceil(3*dprime/2).  Pipeline: near
    sets, a greedy covering set over the saturated ones, BFS from each
    cover vertex (any min-distance above dprime settles it), then the
    sparse pair product plus relay marks through cover members; a leftover
    unmarked pair settles it the other way.

    Raises WeightedInput unless all edge weights are 1.
    """
    family = build_near_sets(dag, dprime, epsilon)  # validates arguments
    n = dag.n
    if stats is not None:
        stats["saturated_out"] = sum(family.saturated_out)
        stats["saturated_in"] = sum(family.saturated_in)
        stats["cover_size"] = 0
        stats["marked_pairs"] = 0
    if n <= 1:
        return DiamVerdict.D_LE_CEIL_3DPRIME_HALF

    sat_sets = [frozenset(family.x[u]) for u in range(n) if family.saturated_out[u]]
    sat_sets += [frozenset(family.y[w]) for w in range(n) if family.saturated_in[w]]
    cover = greedy_hitting_set(sat_sets, n)
    if stats is not None:
        stats["cover_size"] = len(cover.vertices)

    pos = dag.pos
    indptr, targets, weights = dag.csr()
    for s in sorted(cover.vertices):
        p = int(pos[s])
        if interval_eccentricity(indptr, targets, weights, p, p + 1) > dprime:
            return DiamVerdict.D_GT_DPRIME

    # extremal cover members inside each near set decide zone membership:
    # the left-most of X_u cap S is the left-most of the whole ball cap S
    lo = [n + 1] * n  # by position of u: min position in X_u cap S
    hi = [-1] * n  # by position of w: max position in Y_w cap S
    for u in range(n):
        in_cover = [int(pos[t]) for t in family.x[u] if t in cover.vertices]
        if in_cover:
            lo[int(pos[u])] = min(in_cover)
    for w in range(n):
        in_cover = [int(pos[t]) for t in family.y[w] if t in cover.vertices]
        if in_cover:
            hi[int(pos[w])] = max(in_cover)

    marks = sparse_pair_product(family)
    rows = list(marks.rows)
    full = (1 << n) - 1
    # relay rule, row side: a cover vertex inside the out-ball of u at or
    # left of w certifies d(u, w) <= dprime/2 + dprime
    for p in range(n):
        if lo[p] <= n - 1:
            start = max(p + 1, lo[p])
            rows[p] |= (full >> start << start) & full
    # relay rule, column side: w is marked for every u at or left of the
    # right-most cover vertex in its in-ball; kept as one shrinking bitmask
    by_hi: list[list[int]] = [[] for _ in range(n + 1)]
    colmask = 0
    for q in range(n):
        if hi[q] >= 0:
            colmask |= 1 << q
            by_hi[hi[q]].append(q)
    verdict = DiamVerdict.D_LE_CEIL_3DPRIME_HALF
    marked_total = 0
    for p in range(n):
        if p > 0:
            for q in by_hi[p - 1]:
                colmask &= ~(1 << q)
        want = (full >> (p + 1) << (p + 1)) & full
        row = (rows[p] | colmask) & want
        marked_total += row.bit_count()
        if row != want:
            verdict = DiamVerdict.D_GT_DPRIME
            break
    if stats is not None:
        stats["marked_pairs"] = marked_total
    return verdict


def approx_min_diameter(
    dag: Dag,
    epsilon: float | None = None,
    mode: EpsilonMode = EpsilonMode.FORMULA,
    stats: dict | None = None,
):
    """Estimate the min-diameter D within [D, ceil(3D/2)], or inf.

    Binary searches the certifier threshold over [0, n-1]; the smallest
    probe C certified on the low side yields ceil(3C/2).  A graph whose
    certifier rejects n-1 has a pair of mutually unreachable vertices, so
    the min-diameter is reported as inf.
    """
    n = dag.n
    if n == 0:
        raise ValueError("min-diameter is undefined for an empty graph")
    if not dag.unit_weights:
        raise WeightedInput("approx_min_diameter handles unweighted graphs only")
    if n == 1:
        return 0
    if epsilon is None:
        epsilon = choose_epsilon(n, max(dag.m, 1), mode)
    calls = 0

    def probe(d: int) -> DiamVerdict:
        nonlocal calls
        calls += 1
        return certify_min_diameter(dag, d, epsilon, stats)

    if stats is not None:
        stats["epsilon"] = epsilon
    if probe(n - 1) is DiamVerdict.D_GT_DPRIME:
        if stats is not None:
            stats["certify_calls"] = calls
        return INF
    lo, hi = -1, n - 1  # verdict at lo is GT (vacuous at -1), at hi LE
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if probe(mid) is DiamVerdict.D_LE_CEIL_3DPRIME_HALF:
            hi = mid
        else:
            lo = mid
    if stats is not None:
        stats["certify_calls"] = calls
    return (3 * hi + 1) // 2


def choose_epsilon(n: int, m: int, mode: EpsilonMode = EpsilonMode.FORMULA) -> float:
    """Pick the near-set size exponent for an (n, m) instance.

    FORMULA evaluates (ALPHA*BETA + (BETA+1)*(gamma-1)) / (3*BETA+1) with
    gamma = log(m)/log(n), the value balancing BFS cost n^(1-eps)*m against
    the product cost under the model constants; PRAGMATIC instead grid-
    searches eps against a concrete cost model with a bitset-word divisor.
    Either way the result is clamped to [0, 1].
    """
    if n < 2:
        raise ValueError("need at least two vertices to pick an exponent")
    if m < 1:
        raise ValueError("need at least one edge to pick an exponent")
    if mode is EpsilonMode.FORMULA:
        gamma = math.log(m) / math.log(n)
        eps = (ALPHA * BETA + (BETA + 1) * (gamma - 1)) / (3 * BETA + 1)
        return min(1.0, max(0.0, eps))

    def cost(eps: float) -> float:
        return n ** (1 - eps) * m + n ** (1 + 2 * eps) + n ** (2 + eps) / 64

    grid = [i / 50 for i in range(51)]
    return min(grid, key=cost)
