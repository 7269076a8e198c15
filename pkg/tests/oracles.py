"""Independent reference implementations used to check the package.

Everything here is deliberately written the slow, obvious way (heaps,
path enumeration, brute-force set intersections) and never calls into the
code under test beyond plain data types.
"""

from __future__ import annotations

import heapq
import itertools
import math
import random

INF = math.inf


def make_random_edges(n, m, w_max=1, seed=0):
    """Random DAG edge list: random order, m distinct forward pairs."""
    rng = random.Random(seed)
    perm = list(range(n))
    rng.shuffle(perm)
    total = n * (n - 1) // 2
    m = min(m, total)
    picks = rng.sample(range(total), m)
    edges = []
    for idx in picks:
        # unrank idx -> (i, j), i < j
        i = 0
        rem = idx
        row = n - 1
        while rem >= row:
            rem -= row
            row -= 1
            i += 1
        j = i + 1 + rem
        w = 1 if w_max <= 1 else rng.randint(1, w_max)
        edges.append((perm[i], perm[j], w))
    return edges


def dijkstra(n, edges, source, reverse=False):
    """Plain binary-heap Dijkstra; distances from source (or to it if reverse)."""
    adj = [[] for _ in range(n)]
    for u, v, w in edges:
        if reverse:
            adj[v].append((u, w))
        else:
            adj[u].append((v, w))
    dist = [INF] * n
    dist[source] = 0
    heap = [(0, source)]
    while heap:
        d, u = heapq.heappop(heap)
        if d > dist[u]:
            continue
        for v, w in adj[u]:
            nd = d + w
            if nd < dist[v]:
                dist[v] = nd
                heapq.heappush(heap, (nd, v))
    return dist


def all_pairs_dijkstra(n, edges):
    return [dijkstra(n, edges, s) for s in range(n)]


def enumerate_paths_dist(n, edges, source, target):
    """Min path weight by exhaustive DFS over all simple paths (tiny graphs only)."""
    adj = [[] for _ in range(n)]
    for u, v, w in edges:
        adj[u].append((v, w))
    best = [INF]

    def go(u, acc):
        if u == target:
            best[0] = min(best[0], acc)
            return
        for v, w in adj[u]:
            go(v, acc + w)

    go(source, 0)
    return best[0]


def min_dist_matrix(n, edges):
    """d_min(u, v) for all pairs via double Dijkstra."""
    d = all_pairs_dijkstra(n, edges)
    return [[min(d[u][v], d[v][u]) for v in range(n)] for u in range(n)]


def min_eccentricities(n, edges):
    md = min_dist_matrix(n, edges)
    return [max(md[u]) for u in range(n)]


def set_min_dist(n, edges, vertices):
    """x -> min over w in W of d_min(x, w)."""
    md = min_dist_matrix(n, edges)
    return [min(md[x][w] for w in vertices) for x in range(n)]


def set_ecc(n, edges, vertices):
    return max(set_min_dist(n, edges, vertices))


def ball_out(n, edges, u, radius):
    """{t : d(u, t) <= radius}."""
    d = dijkstra(n, edges, u)
    return {t for t in range(n) if d[t] <= radius}


def ball_in(n, edges, w, radius):
    d = dijkstra(n, edges, w, reverse=True)
    return {t for t in range(n) if d[t] <= radius}


def brute_pair_product(x_sets, y_sets):
    """All (u, w) with X_u and Y_w intersecting, by direct set intersection."""
    marked = set()
    for u, xs in x_sets.items():
        for w, ys in y_sets.items():
            if set(xs) & set(ys):
                marked.add((u, w))
    return marked


def has_triangle(ab, bc, ca):
    """Any (a, b, c) with a-b, b-c, c-a all present (index-pair edge sets)."""
    bc_by_b = {}
    for b, c in bc:
        bc_by_b.setdefault(b, set()).add(c)
    ca_pairs = set(ca)
    for a, b in ab:
        for c in bc_by_b.get(b, ()):
            if (c, a) in ca_pairs:
                return True
    return False


def check_topological(order, edges):
    rank = {v: i for i, v in enumerate(order)}
    return all(rank[u] < rank[v] for u, v, *_ in edges)


def iter_ordered_pairs(order):
    return itertools.combinations(order, 2)
