"""Verification harness: every approximation against the exact oracle.

The default corpus is 600 seeded random DAGs — 200 per vertex count in
{16, 64, 128}, cycling density {1.5, 4, n/4} crossed with unit / <=10
weights — small enough for the exact all-pairs oracle, varied enough to
exercise sparse, dense, weighted and disconnected shapes.  Violations are
reported with the instance name so a failure replays from its seed.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .dag import Dag
from .eccradius import Verdict, approx_min_eccentricities, approx_min_radius, certify_eccentricities
from .exact import exact_summary
from .generators import gen_random_dag
from .mindiam import DiamVerdict, approx_min_diameter, certify_min_diameter

INF = math.inf


class OracleCapExceeded(ValueError):
    """An instance is too large for the exact all-pairs oracle."""


@dataclass(frozen=True)
class CorpusItem:
    name: str
    n: int
    m: int
    w_max: int
    seed: int

    def build(self) -> Dag:
        return gen_random_dag(self.n, self.m, self.w_max, self.seed)


def default_corpus(size: int = 600) -> list[CorpusItem]:
    ns = (16, 64, 128)
    items = []
    for i in range(size):
        n = ns[i % len(ns)]
        cell = (i // len(ns)) % 6
        density = (1.5, 4.0, n / 4)[cell % 3]
        w_max = (1, 10)[cell // 3]
        m = min(round(density * n), n * (n - 1) // 2)
        items.append(CorpusItem(f"n{n}-d{density:g}-w{w_max}-s{i}", n, m, w_max, i))
    return items


@dataclass(frozen=True)
class Violation:
    instance: str
    check: str
    detail: str


@dataclass
class VerifyReport:
    instances: int = 0
    checks: int = 0
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def lines(self) -> list[str]:
        out = [f"{self.instances} instances, {self.checks} checks, "
               f"{len(self.violations)} violations"]
        if self.instances == 0:
            out.append("warning: 0 instances")
        for v in self.violations:
            out.append(f"VIOLATION {v.instance} [{v.check}] {v.detail}")
        return out


def _is_inf(x) -> bool:
    return isinstance(x, float) and math.isinf(x)


def _ecc_ok(exact, est, bound: Fraction) -> bool:
    if _is_inf(exact) or _is_inf(est):
        return _is_inf(exact) and _is_inf(est)
    if exact == 0:
        return est == 0
    return exact <= est and Fraction(est) < bound * exact


def verify_corpus(
    items: list,
    ks: tuple = (2, 3),
    deltas: tuple = (Fraction(1, 10), Fraction(1)),
    oracle_cap: int = 256,
    fault=None,
    progress=None,
) -> VerifyReport:
    """Check the per-vertex eccentricity, radius, and diameter contracts plus
    both certification soundness directions on every instance.

    fault, when given, is a test hook (instance, check, value) -> value that
    may corrupt an estimate before checking; the harness must then flag it.
    """
    report = VerifyReport()
    for item in items:
        if item.n > oracle_cap:
            raise OracleCapExceeded(f"{item.name}: n={item.n} exceeds oracle cap {oracle_cap}")
        dag = item.build()
        summary = exact_summary(dag)
        ecc = summary.eccentricities
        radius, diameter = summary.min_radius, summary.min_diameter

        def flag(check: str, detail: str):
            report.violations.append(Violation(item.name, check, detail))

        for k in ks:
            for delta in deltas:
                est = approx_min_eccentricities(dag, k, delta)
                if fault is not None:
                    est = fault(item, f"ecc-k{k}", est)
                report.checks += 1
                bound = Fraction(k) + Fraction(delta)
                for v in range(dag.n):
                    if not _ecc_ok(ecc[v], est[v], bound):
                        flag(f"ecc-k{k}-d{delta}", f"v={v} eps={ecc[v]} est={est[v]}")
            rp = approx_min_radius(dag, k)
            if fault is not None:
                rp = fault(item, f"radius-k{k}", rp)
            report.checks += 1
            if not _ecc_ok(radius, rp, Fraction(k)):
                flag(f"radius-k{k}", f"R={radius} R'={rp}")
            for r in _cert_grid(radius):
                cert = certify_eccentricities(dag, r, k)
                report.checks += 1
                for v, verdict in enumerate(cert.verdicts):
                    if verdict is Verdict.GREATER_THAN_R and ecc[v] <= r:
                        flag(f"cert-k{k}", f"r={r} v={v}: claimed > r but eps={ecc[v]}")
                    if verdict is Verdict.AT_MOST_KR and not ecc[v] <= k * r:
                        flag(f"cert-k{k}", f"r={r} v={v}: claimed <= kr but eps={ecc[v]}")

        if dag.unit_weights:
            d0 = approx_min_diameter(dag)
            if fault is not None:
                d0 = fault(item, "diam", d0)
            report.checks += 1
            if not _diam_ok(diameter, d0):
                flag("diam", f"D={diameter} D0={d0}")
            if not _is_inf(diameter):
                for dp in sorted({max(0, diameter - 1), diameter, 2 * diameter}):
                    verdict = certify_min_diameter(dag, dp, 0.5)
                    report.checks += 1
                    if verdict is DiamVerdict.D_GT_DPRIME and diameter <= dp:
                        flag("diam-cert", f"D'={dp}: claimed D > D' but D={diameter}")
                    if verdict is DiamVerdict.D_LE_CEIL_3DPRIME_HALF and diameter > (3 * dp + 1) // 2:
                        flag("diam-cert", f"D'={dp}: claimed D <= ceil(3D'/2) but D={diameter}")

        report.instances += 1
        if progress is not None:
            progress(item, report)
    return report


def _cert_grid(radius) -> list:
    if _is_inf(radius):
        return [1]
    return sorted({1, max(radius, 0), 2 * radius})


def _diam_ok(exact, est) -> bool:
    if _is_inf(exact) or _is_inf(est):
        return _is_inf(exact) and _is_inf(est)
    return exact <= est <= (3 * exact + 1) // 2
