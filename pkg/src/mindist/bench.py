"""Benchmark records: one row per (instance, algorithm) run.

CSV is the canonical output; the JSON emitter carries the same formatted
cells so a table round-trips byte-identically.  Wall time is the only
non-deterministic column.
"""

import csv
import json
import math
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .dag import Dag
from .eccradius import PartitionStrategy, SearchCounters, approx_min_eccentricities, approx_min_radius
from .exact import exact_summary
from .io import format_value, parse_value
from .mindiam import EpsilonMode, approx_min_diameter

INF = math.inf

COLUMNS = [
    "algo",
    "n",
    "m",
    "k",
    "delta",
    "epsilon",
    "estimate",
    "exact",
    "ratio",
    "sssp_calls",
    "ms",
]


@dataclass
class RunRecord:
    algo: str
    n: int
    m: int
    k: int | None
    delta: Fraction | None
    epsilon: float | None
    estimate: object
    exact: object
    ratio: object
    sssp_calls: int
    ms: float
    instance: str = ""  # descriptor for replay; not a canonical CSV column

    def row(self) -> list[str]:
        return [
            self.algo,
            str(self.n),
            str(self.m),
            format_value(self.k),
            format_value(self.delta),
            format_value(self.epsilon),
            format_value(self.estimate),
            format_value(self.exact),
            format_value(self.ratio),
            str(self.sssp_calls),
            format_value(self.ms),
        ]


def ratio_of(estimate, exact):
    """estimate/exact as an exact Fraction; None when not a finite positive pair."""
    if estimate is None or exact is None:
        return None
    if isinstance(exact, float) and math.isinf(exact):
        return None
    if isinstance(estimate, float) and math.isinf(estimate):
        return None
    if exact == 0:
        return None
    return Fraction(estimate) / Fraction(exact)


def contract_violated(rec: RunRecord) -> bool:
    """Does the record break its algorithm's approximation guarantee?"""
    if rec.exact is None:
        return False
    est, exact = rec.estimate, rec.exact
    est_inf = isinstance(est, float) and math.isinf(est)
    exact_inf = isinstance(exact, float) and math.isinf(exact)
    if est_inf or exact_inf:
        return est_inf != exact_inf
    if est < exact:
        return True
    if rec.algo == "radius":
        if exact == 0:
            return est != 0
        return not Fraction(est) < rec.k * Fraction(exact)
    if rec.algo == "ecc":
        if exact == 0:
            return est != 0
        return not Fraction(est) < (Fraction(rec.k) + Fraction(rec.delta)) * Fraction(exact)
    if rec.algo == "diam":
        return est > (3 * exact + 1) // 2
    raise ValueError(f"unknown algo {rec.algo!r}")


@dataclass
class BenchTable:
    records: list = field(default_factory=list)

    def aggregates(self) -> list[dict]:
        """Per (algo, n, m): run count, mean/max ratio, mean counters."""
        groups: dict[tuple, list[RunRecord]] = {}
        for r in self.records:
            groups.setdefault((r.algo, r.n, r.m), []).append(r)
        out = []
        for (algo, n, m), recs in sorted(groups.items()):
            ratios = [r.ratio for r in recs if r.ratio is not None]
            out.append(
                {
                    "algo": algo,
                    "n": n,
                    "m": m,
                    "runs": len(recs),
                    "mean_ratio": float(sum(ratios) / len(ratios)) if ratios else None,
                    "max_ratio": float(max(ratios)) if ratios else None,
                    "mean_sssp_calls": sum(r.sssp_calls for r in recs) / len(recs),
                    "mean_ms": sum(r.ms for r in recs) / len(recs),
                }
            )
        return out


def run_once(
    dag: Dag,
    algo: str,
    k: int = 2,
    delta=None,
    epsilon: float | None = None,
    epsilon_mode: EpsilonMode = EpsilonMode.FORMULA,
    strategy: PartitionStrategy = PartitionStrategy.AUTO,
    with_exact: bool = False,
    instance: str = "",
) -> RunRecord:
    """Time one approximation; the "ecc" row reports the largest estimate,
    whose exact counterpart is the min-diameter."""
    counters = SearchCounters()
    start = time.perf_counter()
    if algo == "radius":
        estimate = approx_min_radius(dag, k, strategy, counters)
    elif algo == "ecc":
        if delta is None:
            delta = Fraction(1)
        ests = approx_min_eccentricities(dag, k, delta, strategy, counters)
        estimate = max(ests) if ests else 0
    elif algo == "diam":
        stats: dict = {}
        estimate = approx_min_diameter(dag, epsilon=epsilon, mode=epsilon_mode, stats=stats)
        epsilon = stats["epsilon"]
    else:
        raise ValueError(f"unknown algo {algo!r}")
    ms = (time.perf_counter() - start) * 1000.0
    exact = None
    if with_exact:
        summary = exact_summary(dag)
        exact = summary.min_radius if algo == "radius" else summary.min_diameter
    return RunRecord(
        algo=algo,
        n=dag.n,
        m=dag.m,
        k=k if algo in ("radius", "ecc") else None,
        delta=Fraction(str(delta)) if algo == "ecc" and delta is not None else None,
        epsilon=epsilon if algo == "diam" else None,
        estimate=estimate,
        exact=exact,
        ratio=ratio_of(estimate, exact),
        sssp_calls=counters.sssp_calls,
        ms=ms,
        instance=instance,
    )


def write_csv(records: list, fh) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(COLUMNS)
    for rec in records:
        writer.writerow(rec.row())


def read_csv(fh) -> list:
    reader = csv.reader(fh)
    header = next(reader)
    if header != COLUMNS:
        raise ValueError(f"unexpected CSV header: {header}")
    return [_record_from_row(row) for row in reader]


def write_json_records(records: list, fh) -> None:
    json.dump({"columns": COLUMNS, "rows": [rec.row() for rec in records]}, fh)
    fh.write("\n")


def read_json_records(fh) -> list:
    obj = json.load(fh)
    if obj.get("columns") != COLUMNS:
        raise ValueError("unexpected JSON columns")
    return [_record_from_row(row) for row in obj["rows"]]


def _record_from_row(row: list) -> RunRecord:
    if len(row) != len(COLUMNS):
        raise ValueError(f"bad row length: {row}")
    algo, n, m, k, delta, epsilon, estimate, exact, ratio, sssp_calls, ms = row
    return RunRecord(
        algo=algo,
        n=int(n),
        m=int(m),
        k=parse_value(k),
        delta=parse_value(delta),
        epsilon=parse_value(epsilon),
        estimate=parse_value(estimate),
        exact=parse_value(exact),
        ratio=parse_value(ratio),
        sssp_calls=int(sssp_calls),
        ms=parse_value(ms),
    )
