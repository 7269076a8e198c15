"""Command-line front end.

Subcommands: gen, exact, approx (ecc|radius|diam), verify, bench.
Exit codes: 0 ok, 1 contract violation, 2 usage error, 3 I/O error.
Results print to stdout; with --stats a JSON counter object follows as the
final stdout line.
"""

import argparse
import json
import sys
from fractions import Fraction

from . import bench as bench_mod
from . import io as gio
from .dag import Dag
from .eccradius import (
    PartitionStrategy,
    SearchCounters,
    approx_min_eccentricities,
    approx_min_radius,
)
from .exact import apsp, eccentricities_from_apsp, exact_summary
from .generators import (
    gen_dag_gadget,
    gen_random_dag,
    gen_triangle_instance,
    reduce_triangle_to_minradius,
)
from .harness import default_corpus, verify_corpus
from .mindiam import EpsilonMode, approx_min_diameter

STRATEGIES = {
    "sqrt": PartitionStrategy.SQRT,
    "balanced": PartitionStrategy.BALANCED,
    "auto": PartitionStrategy.AUTO,
}
EPSILON_MODES = {"formula": EpsilonMode.FORMULA, "pragmatic": EpsilonMode.PRAGMATIC}


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="mindist", description=__doc__)
    sub = top.add_subparsers(dest="cmd", required=True)

    def add_io(p, output=True):
        p.add_argument("--input", required=True, help="graph file")
        p.add_argument("--format", choices=["edgelist", "json"], default=None)
        if output:
            p.add_argument("--out", default=None, help="write results here instead of stdout")
        p.add_argument("--stats", action="store_true", help="emit a JSON counter line")

    gen = sub.add_parser("gen", help="generate instances").add_subparsers(
        dest="what", required=True
    )
    g = gen.add_parser("random-dag")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--m", type=int, required=True)
    g.add_argument("--w-max", type=int, default=1)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", default=None)
    g.add_argument("--format", choices=["edgelist", "json"], default=None)

    g = gen.add_parser("triangle")
    g.add_argument("--na", type=int, required=True)
    g.add_argument("--nb", type=int, required=True)
    g.add_argument("--nc", type=int, required=True)
    g.add_argument("--density", type=float, default=0.5)
    g.add_argument("--mode", choices=["random", "planted", "free"], default="random")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", default=None)

    g = gen.add_parser("reduction")
    g.add_argument("--na", type=int, required=True)
    g.add_argument("--nb", type=int, required=True)
    g.add_argument("--nc", type=int, required=True)
    g.add_argument("--density", type=float, default=0.5)
    g.add_argument("--mode", choices=["random", "planted", "free"], default="random")
    g.add_argument("--t", type=int, required=True)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", required=True, help="edge list; layer map goes to OUT.layers.json")
    g.add_argument("--format", choices=["edgelist", "json"], default=None)

    g = gen.add_parser("gadget")
    g.add_argument("--size", type=int, required=True)
    g.add_argument("--t", type=int, required=True)
    g.add_argument("--out", default=None)
    g.add_argument("--format", choices=["edgelist", "json"], default=None)

    p = sub.add_parser("exact", help="exact oracle summary")
    add_io(p)
    p.add_argument("--matrix", default=None, help="write the directed APSP matrix CSV here")

    ap = sub.add_parser("approx", help="approximation algorithms").add_subparsers(
        dest="what", required=True
    )
    p = ap.add_parser("ecc")
    add_io(p)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--delta", default="1")
    p.add_argument("--strategy", choices=sorted(STRATEGIES), default="auto")

    p = ap.add_parser("radius")
    add_io(p)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--strategy", choices=sorted(STRATEGIES), default="auto")

    p = ap.add_parser("diam")
    add_io(p)
    eps = p.add_mutually_exclusive_group()
    eps.add_argument("--epsilon", type=float, default=None)
    eps.add_argument("--auto-epsilon", choices=sorted(EPSILON_MODES), default=None)

    p = sub.add_parser("verify", help="run approximations against the exact oracle")
    p.add_argument("--size", type=int, default=600, help="corpus size")
    p.add_argument("--oracle-cap", type=int, default=256)
    p.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)

    p = sub.add_parser("bench", help="timed runs, CSV output")
    p.add_argument("--algo", choices=["ecc", "radius", "diam"], required=True)
    p.add_argument("--sizes", required=True, help="comma-separated vertex counts")
    p.add_argument("--density", type=float, default=4.0, help="edges per vertex")
    p.add_argument("--w-max", type=int, default=1)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--delta", default="1")
    p.add_argument("--reps", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--strategy", choices=sorted(STRATEGIES), default="auto")
    p.add_argument("--exact", action="store_true", help="also run the exact oracle")
    p.add_argument("--force", action="store_true", help="allow --exact over the oracle cap")
    p.add_argument("--oracle-cap", type=int, default=256)
    p.add_argument("--out", default=None)
    p.add_argument("--json", action="store_true", help="emit JSON instead of CSV")
    return top


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w") as fh:
            fh.write(text)


def _save_dag(dag: Dag, out: str | None, fmt: str | None) -> None:
    if out is not None:
        gio.save_dag(dag, out, fmt)
    elif fmt == "json":
        gio.write_json_graph(dag, sys.stdout)
    else:
        gio.write_edgelist(dag, sys.stdout)


def _cmd_gen(args) -> int:
    if args.what == "random-dag":
        dag = gen_random_dag(args.n, args.m, args.w_max, args.seed)
        _save_dag(dag, args.out, args.format)
        return 0
    if args.what == "gadget":
        frag = gen_dag_gadget(list(range(args.size)), args.t)
        ids = {lab: i for i, lab in enumerate(frag.nodes)}
        dag = Dag.from_edges(len(frag.nodes), [(ids[u], ids[v], 1) for u, v in frag.edges])
        _save_dag(dag, args.out, args.format)
        return 0
    inst = gen_triangle_instance(
        args.na, args.nb, args.nc, density=args.density, mode=args.mode, seed=args.seed
    )
    if args.what == "triangle":
        payload = json.dumps(
            {
                "na": inst.na,
                "nb": inst.nb,
                "nc": inst.nc,
                "ab": inst.ab,
                "bc": inst.bc,
                "ca": inst.ca,
                "planted": inst.planted,
                "seed": inst.seed,
            }
        )
        _emit(payload + "\n", args.out)
        return 0
    red = reduce_triangle_to_minradius(inst, args.t)
    gio.save_dag(red.dag, args.out, args.format)
    layers = {str(v): ":".join(str(part) for part in role) for v, role in enumerate(red.roles)}
    with open(args.out + ".layers.json", "w") as fh:
        json.dump({"t": red.t, "roles": layers}, fh)
        fh.write("\n")
    return 0


def _cmd_exact(args) -> int:
    dag = gio.load_dag(args.input, args.format)
    summary = exact_summary(dag)
    lines = [
        f"min_radius={gio.format_value(summary.min_radius)}",
        f"min_diameter={gio.format_value(summary.min_diameter)}",
        f"center={summary.center}",
    ]
    _emit("".join(ln + "\n" for ln in lines), args.out)
    if args.matrix is not None:
        matrix = apsp(dag)
        ecc = eccentricities_from_apsp(matrix)
        assert min(ecc) == summary.min_radius
        with open(args.matrix, "w") as fh:
            gio.write_matrix_csv([matrix.row(u) for u in range(dag.n)], fh)
    if args.stats:
        print(json.dumps({"n": dag.n, "m": dag.m}))
    return 0


def _cmd_approx(args) -> int:
    dag = gio.load_dag(args.input, args.format)
    counters = SearchCounters()
    stats: dict = {}
    if args.what == "ecc":
        est = approx_min_eccentricities(
            dag, args.k, Fraction(args.delta), STRATEGIES[args.strategy], counters
        )
        _emit("".join(gio.format_value(e) + "\n" for e in est), args.out)
        stats = counters.as_dict()
    elif args.what == "radius":
        est = approx_min_radius(dag, args.k, STRATEGIES[args.strategy], counters)
        _emit(gio.format_value(est) + "\n", args.out)
        stats = counters.as_dict()
    else:
        mode = EPSILON_MODES[args.auto_epsilon or "formula"]
        est = approx_min_diameter(dag, epsilon=args.epsilon, mode=mode, stats=stats)
        _emit(gio.format_value(est) + "\n", args.out)
    if args.stats:
        print(json.dumps(stats))
    return 0


def _cmd_verify(args) -> int:
    corpus = default_corpus(args.size)
    fault = None
    if args.inject_fault and corpus:
        victim = corpus[len(corpus) // 2].name

        def fault(item, check, value):  # deliberately corrupt one radius estimate
            if item.name == victim and check.startswith("radius"):
                return 0 if value != 0 else 1
            return value

    report = verify_corpus(corpus, oracle_cap=args.oracle_cap, fault=fault)
    for line in report.lines():
        print(line)
    return 0 if report.ok else 1


def _cmd_bench(args) -> int:
    sizes = [int(s) for s in args.sizes.split(",") if s]
    if args.exact and not args.force:
        too_big = [n for n in sizes if n > args.oracle_cap]
        if too_big:
            print(
                f"--exact refused for n={too_big} over oracle cap {args.oracle_cap}"
                " (pass --force to override)",
                file=sys.stderr,
            )
            return 2
    records = []
    for n in sizes:
        m = min(round(args.density * n), n * (n - 1) // 2)
        for rep in range(args.reps):
            seed = args.seed + rep
            dag = gen_random_dag(n, m, args.w_max, seed)
            records.append(
                bench_mod.run_once(
                    dag,
                    args.algo,
                    k=args.k,
                    delta=Fraction(args.delta),
                    strategy=STRATEGIES[args.strategy],
                    with_exact=args.exact,
                    instance=f"n{n}-d{args.density:g}-w{args.w_max}-s{seed}",
                )
            )
    out_fh = open(args.out, "w") if args.out else sys.stdout
    try:
        if args.json:
            bench_mod.write_json_records(records, out_fh)
        else:
            bench_mod.write_csv(records, out_fh)
    finally:
        if args.out:
            out_fh.close()
    bad = [r for r in records if bench_mod.contract_violated(r)]
    for r in bad:
        print(f"contract violation: {r.instance} {r.algo} est={r.estimate} exact={r.exact}",
              file=sys.stderr)
    return 1 if bad else 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handler = {
        "gen": _cmd_gen,
        "exact": _cmd_exact,
        "approx": _cmd_approx,
        "verify": _cmd_verify,
        "bench": _cmd_bench,
    }[args.cmd]
    try:
        return handler(args)
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
