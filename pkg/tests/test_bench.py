"""Benchmark records: contract checks, aggregates, CSV/JSON round-trips."""

import io
import math
from fractions import Fraction

import pytest

from mindist import bench
from mindist.exact import exact_summary
from mindist.generators import gen_random_dag


def rec(algo="radius", estimate=3, exact=2, k=2, delta=None, **kw):
    return bench.RunRecord(
        algo=algo,
        n=10,
        m=20,
        k=k,
        delta=delta,
        epsilon=kw.get("epsilon"),
        estimate=estimate,
        exact=exact,
        ratio=bench.ratio_of(estimate, exact),
        sssp_calls=0,
        ms=0.0,
    )


def test_ratio_exact_fraction():
    assert bench.ratio_of(40, 27) == Fraction(40, 27)
    assert bench.ratio_of(3, None) is None
    assert bench.ratio_of(math.inf, 5) is None
    assert bench.ratio_of(3, 0) is None


@pytest.mark.parametrize(
    "kwargs,violated",
    [
        # radius: R <= R' < k*R
        (dict(algo="radius", estimate=3, exact=2, k=2), False),
        (dict(algo="radius", estimate=4, exact=2, k=2), True),  # boundary is strict
        (dict(algo="radius", estimate=1, exact=2, k=2), True),
        (dict(algo="radius", estimate=0, exact=0, k=2), False),
        (dict(algo="radius", estimate=1, exact=0, k=2), True),
        (dict(algo="radius", estimate=math.inf, exact=math.inf, k=2), False),
        (dict(algo="radius", estimate=math.inf, exact=2, k=2), True),
        (dict(algo="radius", estimate=2, exact=math.inf, k=2), True),
        (dict(algo="radius", estimate=5, exact=None, k=2), False),  # nothing to check
        # ecc rows carry the largest estimate vs the min-diameter, bound (k+delta)
        (dict(algo="ecc", estimate=4, exact=2, k=2, delta=Fraction(1)), False),
        (dict(algo="ecc", estimate=6, exact=2, k=2, delta=Fraction(1)), True),
        (dict(algo="ecc", estimate=2, exact=1, k=2, delta=Fraction(1, 2)), False),
        (dict(algo="ecc", estimate=3, exact=1, k=2, delta=Fraction(1, 2)), True),
        # diam: D <= D' <= floor(3D/2) + parity slack
        (dict(algo="diam", estimate=3, exact=2, k=None), False),
        (dict(algo="diam", estimate=4, exact=2, k=None), True),
        (dict(algo="diam", estimate=1, exact=2, k=None), True),
    ],
)
def test_contract_violated(kwargs, violated):
    assert bench.contract_violated(rec(**kwargs)) is violated


def test_run_once_against_oracle():
    dag = gen_random_dag(48, 512, 1, seed=3)
    summary = exact_summary(dag)
    r = bench.run_once(dag, "radius", k=2, with_exact=True)
    assert r.exact == summary.min_radius
    assert not bench.contract_violated(r)
    e = bench.run_once(dag, "ecc", k=2, delta=Fraction(1, 2), with_exact=True)
    assert e.exact == summary.min_diameter
    assert not bench.contract_violated(e)
    d = bench.run_once(dag, "diam", with_exact=True)
    assert d.epsilon is not None and d.k is None
    assert not bench.contract_violated(d)


def test_run_once_rejects_unknown_algo():
    with pytest.raises(ValueError):
        bench.run_once(gen_random_dag(4, 3, 1, seed=0), "girth")


def sample_records():
    out = []
    for s in range(4):
        dag = gen_random_dag(32, 256, 1, seed=s)
        out.append(bench.run_once(dag, "radius", with_exact=True, instance=f"s{s}"))
    return out


def test_csv_round_trip_is_byte_identical():
    recs = sample_records()
    first = io.StringIO()
    bench.write_csv(recs, first)
    assert first.getvalue().splitlines()[0] == ",".join(bench.COLUMNS)
    back = bench.read_csv(io.StringIO(first.getvalue()))
    second = io.StringIO()
    bench.write_csv(back, second)
    assert first.getvalue() == second.getvalue()


def test_json_carries_the_same_cells():
    recs = sample_records()
    csv_buf = io.StringIO()
    bench.write_csv(recs, csv_buf)
    js = io.StringIO()
    bench.write_json_records(recs, js)
    back = bench.read_json_records(io.StringIO(js.getvalue()))
    again = io.StringIO()
    bench.write_csv(back, again)
    assert csv_buf.getvalue() == again.getvalue()


def test_read_csv_rejects_foreign_header():
    with pytest.raises(ValueError):
        bench.read_csv(io.StringIO("a,b,c\n1,2,3\n"))


def test_aggregates_recomputable_from_rows():
    recs = sample_records()
    table = bench.BenchTable(recs)
    groups = table.aggregates()
    assert sum(g["runs"] for g in groups) == len(recs)
    for g in groups:
        members = [r for r in recs if (r.algo, r.n, r.m) == (g["algo"], g["n"], g["m"])]
        ratios = [r.ratio for r in members if r.ratio is not None]
        if ratios:
            assert g["mean_ratio"] == pytest.approx(float(sum(ratios) / len(ratios)))
            assert g["max_ratio"] == pytest.approx(float(max(ratios)))
        else:
            assert g["mean_ratio"] is None
        assert g["mean_sssp_calls"] == pytest.approx(
            sum(r.sssp_calls for r in members) / len(members)
        )
