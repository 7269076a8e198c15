"""Instance generators: random DAGs, structural gadgets, and the hardness
reduction from triangle detection to min-radius approximation.

The reduction builds, from a tripartite triangle instance, an unweighted
DAG whose min-radius lands in one of two separated bands: low when a
triangle exists, high (at least 2t) when none does.  Its two building
blocks are a recursive-hub DAG gadget keeping every ordered pair within
distance 2 and a bit-complement connectivity gadget realizing the
"2 if i != j, unreachable if i == j" distance pattern between two copies
of a vertex set.
"""

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .dag import Dag


@dataclass(frozen=True)
class DagFragment:
    """A gadget as labelled nodes in topological order plus unit edges."""

    nodes: list
    edges: list
    base: list
    t: int


@dataclass(frozen=True)
class ConnectivityGadget:
    """Hub layer connecting X to a copy X' with the 2-vs-unreachable pattern.

    u_nodes are ('u', p, val) labels; source_edges go v_i -> u, target_edges
    go u -> v'_j.  Every i != j pair composes to a 2-step path while the
    diagonal i == i stays disconnected.
    """

    n: int
    b: int
    u_nodes: list
    source_edges: list
    target_edges: list


@dataclass(frozen=True)
class TriangleInstance:
    """Tripartite undirected graph with edges only between distinct parts."""

    na: int
    nb: int
    nc: int
    ab: list
    bc: list
    ca: list
    planted: bool
    seed: int


@dataclass(frozen=True)
class ReductionInstance:
    """The reduction output: a DAG plus a role tag for every vertex."""

    dag: Dag
    t: int
    roles: list
    source: TriangleInstance = field(repr=False)


def gen_random_dag(n: int, m: int, w_max: int = 1, seed: int = 0) -> Dag:
    """Uniform random DAG: a random vertex order and m distinct forward pairs.

    Weights are uniform integers in [1, w_max].  Deterministic per seed.
    """
    total = n * (n - 1) // 2
    if not 0 <= m <= total:
        raise ValueError(f"m={m} outside [0, {total}] for n={n}")
    if w_max < 1:
        raise ValueError("w_max must be at least 1")
    rng = random.Random(seed)
    perm = list(range(n))
    rng.shuffle(perm)
    edges = []
    for code in rng.sample(range(total), m):
        i = _unrank_row(code, n)
        j = code - (i * n - i * (i + 1) // 2) + i + 1
        w = rng.randint(1, w_max)
        edges.append((perm[i], perm[j], w))
    return Dag.from_edges(n, edges)


def _unrank_row(code: int, n: int) -> int:
    # largest i with i*n - i*(i+1)/2 <= code, i.e. the row of the code-th
    # lexicographic pair (i < j); isqrt seed plus a safety adjustment
    i = (2 * n - 1 - math.isqrt((2 * n - 1) ** 2 - 8 * code)) // 2
    while i * n - i * (i + 1) // 2 > code:
        i -= 1
    while (i + 1) * n - (i + 1) * (i + 2) // 2 <= code:
        i += 1
    return i


def gen_dag_gadget(base: list, t: int) -> DagFragment:
    """A DAG over base plus hub paths where every ordered pair is close but
    base vertices stay at least t-2 apart.

    Recurses on the two halves of base, then routes a path of max(1, t-3)
    hubs between them: every left-half node (base and nested hubs) feeds
    the path head, the tail feeds every right-half node.  Crossing any
    split costs exactly the path length + 1, so every ordered pair in the
    fragment order is at distance <= max(2, t-2) <= t+1, while a base
    vertex cannot reach a later base vertex in fewer than max(2, t-2)
    steps: path heads are the only entries and tails the only exits.  The
    floor is what downstream hardness constructions rely on -- a cheap
    base-to-base hop would shortcut their distance accounting.  For
    t <= 4 this is the single-midpoint-hub gadget (len(base)-1 hubs);
    larger t adds (t-3)(len(base)-1) hubs, which is unavoidable: the
    delay paths between consecutive base vertices cannot share vertices
    without creating a back edge.
    """
    if t < 2:
        raise ValueError("gadget parameter t must be at least 2")
    if not base:
        raise ValueError("gadget needs at least one base vertex")
    h_len = max(1, t - 3)
    counter = [0]

    def rec(lo: int, hi: int) -> tuple[list, list]:
        if hi - lo == 1:
            return [base[lo]], []
        mid = (lo + hi) // 2
        left, e_left = rec(lo, mid)
        right, e_right = rec(mid, hi)
        path = [("h", counter[0] + k) for k in range(h_len)]
        counter[0] += h_len
        edges = e_left + e_right
        edges += [(x, path[0]) for x in left]
        edges += list(zip(path, path[1:]))
        edges += [(path[-1], y) for y in right]
        return left + path + right, edges

    nodes, edges = rec(0, len(base))
    return DagFragment(nodes=nodes, edges=edges, base=list(base), t=t)


def gen_connectivity_gadget(n: int) -> ConnectivityGadget:
    """Bit-complement hub layer: d(v_i, v'_j) = 2 iff i != j, else no path.

    Uses b = ceil(log2 n) bit positions with a hub per (position, value);
    v_i enters the hubs matching its bits, and each hub exits to exactly
    the copies disagreeing with it at that position.
    """
    if n < 2:
        raise ValueError("connectivity gadget needs at least two vertices")
    b = (n - 1).bit_length()
    u_nodes = [("u", p, val) for p in range(b) for val in (0, 1)]
    source_edges = [(i, ("u", p, (i >> p) & 1)) for i in range(n) for p in range(b)]
    target_edges = [
        (("u", p, val), j)
        for p in range(b)
        for val in (0, 1)
        for j in range(n)
        if (j >> p) & 1 != val
    ]
    return ConnectivityGadget(
        n=n, b=b, u_nodes=u_nodes, source_edges=source_edges, target_edges=target_edges
    )


def gen_triangle_instance(
    na: int,
    nb: int,
    nc: int,
    density: float = 0.5,
    mode: str = "random",
    seed: int = 0,
) -> TriangleInstance:
    """Random tripartite instance; mode picks the triangle guarantee.

    "random" samples each cross-part pair independently; "planted" does the
    same then embeds one triangle (verified before returning); "free"
    rejection-samples small instances and falls back to a parity-constrained
    edge pattern (pair allowed only when part parities align so the three
    constraints can never close a cycle), which is triangle-free by
    construction at any scale.
    """
    if min(na, nb, nc) < 1:
        raise ValueError("all three parts need at least one vertex")
    if mode not in ("random", "planted", "free"):
        raise ValueError(f"unknown mode {mode!r}")
    rng = random.Random(seed)

    def sample(rows: int, cols: int, keep=None) -> list:
        pairs = []
        for i in range(rows):
            for j in range(cols):
                if keep is not None and not keep(i, j):
                    continue
                if rng.random() < density:
                    pairs.append((i, j))
        return pairs

    if mode == "free":
        if na * nb * nc <= 4096:
            for _ in range(60):
                inst = TriangleInstance(
                    na, nb, nc, sample(na, nb), sample(nb, nc), sample(nc, na), False, seed
                )
                if not has_triangle_bruteforce(inst):
                    return inst
        # parity fallback: ab wants equal parity, bc equal, ca different,
        # so a closing triple would need pa==pb==pc!=pa
        ab = sample(na, nb, keep=lambda i, j: i % 2 == j % 2)
        bc = sample(nb, nc, keep=lambda j, k: j % 2 == k % 2)
        ca = sample(nc, na, keep=lambda k, i: k % 2 != i % 2)
        return TriangleInstance(na, nb, nc, ab, bc, ca, False, seed)

    ab, bc, ca = sample(na, nb), sample(nb, nc), sample(nc, na)
    planted = mode == "planted"
    if planted:
        i, j, k = rng.randrange(na), rng.randrange(nb), rng.randrange(nc)
        for pair, lst in (((i, j), ab), ((j, k), bc), ((k, i), ca)):
            if pair not in lst:
                lst.append(pair)
        inst = TriangleInstance(na, nb, nc, sorted(ab), sorted(bc), sorted(ca), True, seed)
        assert has_triangle_bruteforce(inst)
        return inst
    return TriangleInstance(na, nb, nc, ab, bc, ca, False, seed)


def has_triangle_bruteforce(inst: TriangleInstance) -> bool:
    """Does any (a, b, c) triple close all three cross-part edges?"""
    bc_by_b: dict[int, set[int]] = {}
    for j, k in inst.bc:
        bc_by_b.setdefault(j, set()).add(k)
    ca_set = set(inst.ca)
    for i, j in inst.ab:
        for k in bc_by_b.get(j, ()):
            if (k, i) in ca_set:
                return True
    return False


def chain_length_for_gap(delta) -> int:
    """Smallest t >= 2 with 2 - delta/2 < 2t/(t+1).

    An algorithm distinguishing radius bands t+2 versus 2t must beat the
    ratio 2t/(t+2); this helper sizes t so a (2-delta)-approximation does.
    """
    d = Fraction(str(delta)) if isinstance(delta, float) else Fraction(delta)
    if not 0 < d <= 2:
        raise ValueError("delta must lie in (0, 2]")
    # 2 - d/2 < 2t/(t+1)  <=>  t + 1 > 4/d, and floor(4/d) + 1 > 4/d always
    bound = Fraction(4) / d
    return max(2, bound.numerator // bound.denominator)


def _merge_orders(nodes1: list, nodes2: list, anchors: set) -> list:
    """Interleave two topological orders sharing the same anchor sequence."""
    merged = []
    i = j = 0
    while i < len(nodes1) or j < len(nodes2):
        while i < len(nodes1) and nodes1[i] not in anchors:
            merged.append(nodes1[i])
            i += 1
        while j < len(nodes2) and nodes2[j] not in anchors:
            merged.append(nodes2[j])
            j += 1
        if i < len(nodes1):
            assert nodes1[i] == nodes2[j], "anchor sequences diverge"
            merged.append(nodes1[i])
            i += 1
            j += 1
    return merged


def reduce_triangle_to_minradius(inst: TriangleInstance, t: int) -> ReductionInstance:
    """Build the min-radius hardness DAG for a triangle instance.

    Layer order: the doubled hub gadget over A, sink y, relay path
    x_1..x_t, B, C, hub-layer chain U_1..U_t, then the copy chain
    A'_1..A'_{t+1}.  A triangle lets some a in A reach everything within
    t+2 steps; with no triangle every vertex has min-eccentricity at least
    2t, and the bands stay disjoint for t >= 3.
    """
    if t < 2:
        raise ValueError("reduction parameter t must be at least 2")
    na, nb, nc = inst.na, inst.nb, inst.nc
    if na < 2:
        raise ValueError("reduction needs at least two A-vertices")

    a_labels = [("a", i) for i in range(na)]
    frag1 = gen_dag_gadget(a_labels, t)
    frag2 = gen_dag_gadget(a_labels, t)
    relabel = {("h", i): ("h2", i) for i, _ in enumerate(frag1.nodes)}
    nodes2 = [relabel.get(v, v) for v in frag2.nodes]
    edges2 = [(relabel.get(u, u), relabel.get(v, v)) for u, v in frag2.edges]
    dag_a_order = _merge_orders(frag1.nodes, nodes2, set(a_labels))

    conn = gen_connectivity_gadget(na)

    labels = list(dag_a_order)
    labels.append(("y",))
    labels += [("x", i) for i in range(1, t + 1)]
    labels += [("b", j) for j in range(nb)]
    labels += [("c", k) for k in range(nc)]
    for lvl in range(1, t + 1):  # U_t is the gadget layer feeding A'_1
        labels += [("u", lvl, p, val) for (_, p, val) in conn.u_nodes]
    for lvl in range(1, t + 2):
        labels += [("ap", lvl, i) for i in range(na)]

    ids = {lab: idx for idx, lab in enumerate(labels)}
    edges = []

    def link(u_lab, v_lab):
        edges.append((ids[u_lab], ids[v_lab], 1))

    for u, v in frag1.edges + edges2:
        link(u, v)
    for i in range(na):
        link(("a", i), ("y",))
        link(("a", i), ("x", 1))
    for i in range(1, t):
        link(("x", i), ("x", i + 1))
    for j in range(nb):
        link(("x", t), ("b", j))
    for k in range(nc):
        link(("x", t), ("c", k))
    for i, j in inst.ab:
        link(("a", i), ("b", j))
    for j, k in inst.bc:
        link(("b", j), ("c", k))
    for k, i in inst.ca:
        link(("c", k), ("ap", 2, i))
    # every source-part vertex floods the first hub layer
    first_u = [("u", 1, p, val) for (_, p, val) in conn.u_nodes]
    for part, size in (("a", na), ("b", nb), ("c", nc)):
        for i in range(size):
            for u in first_u:
                link((part, i), u)
    for lvl in range(1, t):
        for _, p, val in conn.u_nodes:
            link(("u", lvl, p, val), ("u", lvl + 1, p, val))
    for i, (_, p, val) in conn.source_edges:
        link(("a", i), ("u", t, p, val))
    for (_, p, val), j in conn.target_edges:
        link(("u", t, p, val), ("ap", 1, j))
    for lvl in range(1, t + 1):
        for i in range(na):
            link(("ap", lvl, i), ("ap", lvl + 1, i))

    dag = Dag.from_edges(len(labels), edges)
    return ReductionInstance(dag=dag, t=t, roles=labels, source=inst)
