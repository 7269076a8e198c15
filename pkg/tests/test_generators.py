import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mindist.dag import Dag
from mindist.exact import exact_summary
from mindist.generators import (
    TriangleInstance,
    chain_length_for_gap,
    gen_connectivity_gadget,
    gen_dag_gadget,
    gen_random_dag,
    gen_triangle_instance,
    has_triangle_bruteforce,
    reduce_triangle_to_minradius,
)

import oracles


def fragment_to_dag(frag):
    ids = {lab: i for i, lab in enumerate(frag.nodes)}
    edges = [(ids[u], ids[v], 1) for u, v in frag.edges]
    return Dag.from_edges(len(frag.nodes), edges), ids, edges


# --- random DAGs -------------------------------------------------------------


def test_random_dag_tournament():
    dag = gen_random_dag(3, 3, seed=5)
    assert dag.m == 3
    # m = C(3,2): every pair is connected in exactly one direction
    pairs = {frozenset((u, v)) for u, v, _ in dag.edges()}
    assert pairs == {frozenset((0, 1)), frozenset((0, 2)), frozenset((1, 2))}


def test_random_dag_deterministic():
    a = gen_random_dag(20, 50, w_max=9, seed=3)
    b = gen_random_dag(20, 50, w_max=9, seed=3)
    assert sorted(a.edges()) == sorted(b.edges())
    c = gen_random_dag(20, 50, w_max=9, seed=4)
    assert sorted(a.edges()) != sorted(c.edges())


def test_random_dag_rejects_bad_args():
    with pytest.raises(ValueError):
        gen_random_dag(4, 7)  # only 6 pairs exist
    with pytest.raises(ValueError):
        gen_random_dag(4, -1)
    with pytest.raises(ValueError):
        gen_random_dag(4, 2, w_max=0)


@pytest.mark.parametrize("w_max", [1, 10])
def test_random_dag_invariant_sweep(w_max):
    for seed in range(25):
        n, m = 24, 60
        dag = gen_random_dag(n, m, w_max=w_max, seed=seed)
        dag.check_invariants()
        edges = dag.edges()
        assert dag.n == n and dag.m == m == len(edges)
        assert len({(u, v) for u, v, _ in edges}) == m
        assert all(1 <= w <= w_max for _, _, w in edges)
        assert oracles.check_topological(list(dag.order), edges)
        assert dag.unit_weights == (w_max == 1)


def test_random_dag_edge_extremes():
    assert gen_random_dag(5, 0, seed=1).m == 0
    full = gen_random_dag(6, 15, seed=2)
    assert full.m == 15
    assert gen_random_dag(1, 0, seed=0).n == 1


# --- recursive hub gadget ----------------------------------------------------


def test_gadget_singleton_has_no_hubs():
    frag = gen_dag_gadget([("a", 0)], 3)
    assert frag.nodes == [("a", 0)]
    assert frag.edges == []


def test_gadget_four_vertices():
    base = list(range(4))
    frag = gen_dag_gadget(base, 3)
    hubs = [v for v in frag.nodes if v not in base]
    assert len(hubs) == 3
    dag, ids, edges = fragment_to_dag(frag)
    dist = oracles.all_pairs_dijkstra(dag.n, edges)
    for i in range(dag.n):
        for j in range(i + 1, dag.n):
            assert dist[i][j] <= 2  # hub between any split keeps pairs close


@pytest.mark.parametrize("size", [2, 3, 5, 8, 11, 16, 17])
@pytest.mark.parametrize("t", [2, 4, 5, 6])
def test_gadget_bounds_and_distances(size, t):
    base = [("v", i) for i in range(size)]
    frag = gen_dag_gadget(base, t)
    h_len = max(1, t - 3)
    extra = [v for v in frag.nodes if v not in base]
    assert len(extra) == h_len * (size - 1)
    logn = math.ceil(math.log2(size))
    assert len(frag.edges) <= (h_len + 1) * size * logn + h_len * size
    if t <= 4:
        assert len(extra) <= size
        assert len(frag.edges) <= 2 * size * logn + size
    # base order is preserved inside the fragment order
    assert [v for v in frag.nodes if v in set(base)] == base
    dag, ids, edges = fragment_to_dag(frag)
    assert list(dag.order) == list(range(dag.n))  # fragment order is topological
    dist = oracles.all_pairs_dijkstra(dag.n, edges)
    for i in range(dag.n):
        for j in range(i + 1, dag.n):
            assert dist[i][j] <= max(2, t - 2) <= t + 1
    # base pairs pay for the full hub path: no early entry or exit
    for i in range(size):
        for j in range(i + 1, size):
            assert dist[ids[base[i]]][ids[base[j]]] == max(2, t - 2)


def test_gadget_rejects_bad_args():
    with pytest.raises(ValueError):
        gen_dag_gadget([], 3)
    with pytest.raises(ValueError):
        gen_dag_gadget([1, 2], 1)


# --- bit-complement connectivity gadget --------------------------------------


def conn_to_edges(g):
    # ids: originals 0..n-1, hubs n..n+2b-1, copies n+2b..n+2b+n-1
    hub = {u: g.n + i for i, u in enumerate(g.u_nodes)}
    copy = {j: g.n + 2 * g.b + j for j in range(g.n)}
    edges = [(i, hub[u], 1) for i, u in g.source_edges]
    edges += [(hub[u], copy[j], 1) for u, j in g.target_edges]
    return edges, copy


@pytest.mark.parametrize("n", [2, 3, 8])
def test_connectivity_dichotomy(n):
    g = gen_connectivity_gadget(n)
    edges, copy = conn_to_edges(g)
    total = n + 2 * g.b + n
    for i in range(n):
        dist = oracles.dijkstra(total, edges, i)
        for j in range(n):
            assert dist[copy[j]] == (2 if i != j else math.inf)


@pytest.mark.parametrize("n,b", [(2, 1), (3, 2), (8, 3), (100, 7)])
def test_connectivity_size(n, b):
    g = gen_connectivity_gadget(n)
    assert g.b == b == math.ceil(math.log2(n))
    assert len(g.u_nodes) == 2 * b


def test_connectivity_rejects_small():
    with pytest.raises(ValueError):
        gen_connectivity_gadget(1)


# --- chain length helper ------------------------------------------------------


def test_chain_length_examples():
    assert chain_length_for_gap(1) == 4
    assert chain_length_for_gap(0.5) == 8
    assert chain_length_for_gap(2) == 2
    assert chain_length_for_gap(1.5) == 2


def test_chain_length_minimal():
    for num in range(1, 41):
        delta = Fraction(num, 20)
        t = chain_length_for_gap(delta)
        assert 2 - delta / 2 < Fraction(2 * t, t + 1)
        if t > 2:
            assert not 2 - delta / 2 < Fraction(2 * (t - 1), t)


def test_chain_length_rejects_bad_delta():
    with pytest.raises(ValueError):
        chain_length_for_gap(0)
    with pytest.raises(ValueError):
        chain_length_for_gap(2.5)


# --- triangle instances -------------------------------------------------------


def test_planted_mode_always_has_triangle():
    for seed in range(30):
        inst = gen_triangle_instance(4, 3, 5, density=0.2, mode="planted", seed=seed)
        assert inst.planted
        assert has_triangle_bruteforce(inst)


def test_bruteforce_matches_oracle():
    for seed in range(50):
        inst = gen_triangle_instance(4, 4, 4, density=0.35, mode="random", seed=seed)
        assert has_triangle_bruteforce(inst) == oracles.has_triangle(
            inst.ab, inst.bc, inst.ca
        )


def test_free_mode_small_scale():
    for seed in range(30):
        inst = gen_triangle_instance(5, 5, 5, density=0.4, mode="free", seed=seed)
        assert not has_triangle_bruteforce(inst)
        assert not oracles.has_triangle(inst.ab, inst.bc, inst.ca)


def test_free_mode_large_scale_parity_construction():
    # big and dense enough that rejection would be hopeless
    inst = gen_triangle_instance(20, 20, 20, density=0.9, mode="free", seed=7)
    assert not oracles.has_triangle(inst.ab, inst.bc, inst.ca)
    assert len(inst.ab) > 100  # the fallback is not the empty graph


def test_triangle_instance_ranges():
    inst = gen_triangle_instance(3, 4, 5, density=0.8, mode="random", seed=1)
    assert all(0 <= i < 3 and 0 <= j < 4 for i, j in inst.ab)
    assert all(0 <= j < 4 and 0 <= k < 5 for j, k in inst.bc)
    assert all(0 <= k < 5 and 0 <= i < 3 for k, i in inst.ca)
    assert len(set(inst.ab)) == len(inst.ab)


def test_triangle_instance_rejects_bad_args():
    with pytest.raises(ValueError):
        gen_triangle_instance(0, 2, 2)
    with pytest.raises(ValueError):
        gen_triangle_instance(2, 2, 2, mode="sideways")


# --- the reduction ------------------------------------------------------------

LAYER_RANK = {"a": 0, "h": 0, "h2": 0, "y": 1, "x": 2, "b": 3, "c": 4}


def role_rank(role, t):
    kind = role[0]
    if kind == "u":
        return 5 + role[1]
    if kind == "ap":
        return 5 + t + role[1]
    return LAYER_RANK[kind]


def single_triangle(seed=0):
    # one triangle plus a second isolated A-vertex (the hub layers need |A| >= 2)
    return TriangleInstance(2, 1, 1, [(0, 0)], [(0, 0)], [(0, 0)], True, seed)


def test_reduction_layer_order_and_counts():
    inst = gen_triangle_instance(3, 2, 2, density=0.5, mode="random", seed=2)
    red = reduce_triangle_to_minradius(inst, 3)
    dag, t = red.dag, red.t
    assert dag.unit_weights
    assert list(dag.order) == list(range(dag.n))
    ranks = [role_rank(r, t) for r in red.roles]
    assert ranks == sorted(ranks)
    b = math.ceil(math.log2(inst.na))
    kinds = {}
    for r in red.roles:
        kinds[r[0]] = kinds.get(r[0], 0) + 1
    assert kinds["a"] == inst.na
    assert kinds["h"] == kinds["h2"] == max(1, t - 3) * (inst.na - 1)
    assert kinds["y"] == 1
    assert kinds["x"] == t
    assert kinds["b"] == inst.nb and kinds["c"] == inst.nc
    assert kinds["u"] == t * 2 * b
    assert kinds["ap"] == (t + 1) * inst.na
    assert dag.n == sum(kinds.values())


def test_reduction_size_stays_linear():
    inst = gen_triangle_instance(16, 16, 16, density=0.3, mode="random", seed=3)
    red = reduce_triangle_to_minradius(inst, 3)
    n = inst.na + inst.nb + inst.nc
    m = len(inst.ab) + len(inst.bc) + len(inst.ca)
    assert red.dag.n <= 10 * n * (red.t + 2) // 3
    assert red.dag.m <= m + 40 * n * (math.ceil(math.log2(n)) + 1)


def test_reduction_single_triangle_band():
    red = reduce_triangle_to_minradius(single_triangle(), 3)
    summary = exact_summary(red.dag)
    assert summary.min_radius <= red.t + 2
    assert red.roles[summary.center][0] == "a"


def test_reduction_no_triangle_band():
    inst = TriangleInstance(2, 1, 1, [(0, 0)], [(0, 0)], [], False, 0)
    red = reduce_triangle_to_minradius(inst, 3)
    assert exact_summary(red.dag).min_radius >= 2 * red.t


@pytest.mark.parametrize("t", [3, 5])
def test_reduction_band_separation_sweep(t):
    for seed in range(12):
        inst = gen_triangle_instance(3, 3, 3, density=0.45, mode="random", seed=seed)
        red = reduce_triangle_to_minradius(inst, t)
        radius = exact_summary(red.dag).min_radius
        if has_triangle_bruteforce(inst):
            assert radius <= t + 2
        else:
            assert radius >= 2 * t
        assert not t + 2 < radius < 2 * t  # never lands between the bands


def test_reduction_infinite_outside_core():
    inst = gen_triangle_instance(3, 2, 2, density=0.5, mode="free", seed=5)
    red = reduce_triangle_to_minradius(inst, 3)
    ecc = exact_summary(red.dag).eccentricities
    for v, role in enumerate(red.roles):
        if role[0] not in ("a", "h", "h2"):
            assert ecc[v] == math.inf


def test_reduction_matches_oracle_eccentricities():
    inst = gen_triangle_instance(3, 2, 2, density=0.6, mode="planted", seed=9)
    red = reduce_triangle_to_minradius(inst, 3)
    got = exact_summary(red.dag).eccentricities
    want = oracles.min_eccentricities(red.dag.n, red.dag.edges())
    assert got == want


def test_reduction_deterministic():
    inst = gen_triangle_instance(3, 3, 3, density=0.5, mode="random", seed=4)
    e1 = reduce_triangle_to_minradius(inst, 3).dag.edges()
    e2 = reduce_triangle_to_minradius(inst, 3).dag.edges()
    assert e1 == e2


def test_reduction_rejects_bad_args():
    inst = gen_triangle_instance(3, 3, 3, mode="random", seed=0)
    with pytest.raises(ValueError):
        reduce_triangle_to_minradius(inst, 1)
    small = gen_triangle_instance(1, 2, 2, mode="random", seed=0)
    with pytest.raises(ValueError):
        reduce_triangle_to_minradius(small, 3)


@settings(deadline=None, max_examples=20)
@given(
    na=st.integers(2, 4),
    nb=st.integers(1, 3),
    nc=st.integers(1, 3),
    seed=st.integers(0, 10_000),
)
def test_reduction_detects_triangles(na, nb, nc, seed):
    inst = gen_triangle_instance(na, nb, nc, density=0.5, mode="random", seed=seed)
    red = reduce_triangle_to_minradius(inst, 3)
    radius = exact_summary(red.dag).min_radius
    assert has_triangle_bruteforce(inst) == (radius <= red.t + 2)
