"""Reading and writing graphs and result values.

Two graph formats: a plain edge list ("n m" header, then "u v w" lines)
and a JSON object {"n": ..., "edges": [[u, v, w], ...]}.  Scalar results
(estimates, ratios) serialize losslessly: integers bare, rationals as
"p/q", infinity as "inf".
"""

import json
import math
import os
from fractions import Fraction

from .dag import Dag

INF = math.inf


def format_value(x) -> str:
    """Lossless text form for a result value; empty string for None."""
    if x is None:
        return ""
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return str(x.numerator)
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, float):
        if math.isinf(x):
            return "inf"
        return repr(x)
    return str(x)


def parse_value(s: str):
    """Inverse of format_value."""
    if s == "":
        return None
    if s == "inf":
        return INF
    if "/" in s:
        num, den = s.split("/", 1)
        return Fraction(int(num), int(den))
    try:
        return int(s)
    except ValueError:
        return float(s)


def write_edgelist(dag: Dag, fh) -> None:
    fh.write(f"{dag.n} {dag.m}\n")
    for u, v, w in dag.edges():
        fh.write(f"{u} {v} {w}\n")


def read_edgelist(fh) -> Dag:
    rows = [ln.split() for ln in fh if ln.strip() and not ln.lstrip().startswith("#")]
    if not rows:
        raise ValueError("empty edge list")
    if len(rows[0]) != 2:
        raise ValueError("edge list must start with a 'n m' header line")
    n, m = int(rows[0][0]), int(rows[0][1])
    if len(rows) - 1 != m:
        raise ValueError(f"header says {m} edges, found {len(rows) - 1}")
    edges = []
    for row in rows[1:]:
        if len(row) == 2:
            u, v, w = int(row[0]), int(row[1]), 1
        elif len(row) == 3:
            u, v, w = int(row[0]), int(row[1]), int(row[2])
        else:
            raise ValueError(f"bad edge line: {' '.join(row)}")
        edges.append((u, v, w))
    return Dag.from_edges(n, edges)


def write_json_graph(dag: Dag, fh) -> None:
    json.dump({"n": dag.n, "edges": [list(e) for e in dag.edges()]}, fh)
    fh.write("\n")


def read_json_graph(fh) -> Dag:
    obj = json.load(fh)
    edges = [(int(u), int(v), int(w)) for u, v, w in obj["edges"]]
    return Dag.from_edges(int(obj["n"]), edges)


def sniff_format(path: str) -> str:
    return "json" if os.path.splitext(path)[1].lower() == ".json" else "edgelist"


def load_dag(path: str, fmt: str | None = None) -> Dag:
    fmt = fmt or sniff_format(path)
    with open(path) as fh:
        return read_json_graph(fh) if fmt == "json" else read_edgelist(fh)


def save_dag(dag: Dag, path: str, fmt: str | None = None) -> None:
    fmt = fmt or sniff_format(path)
    with open(path, "w") as fh:
        if fmt == "json":
            write_json_graph(dag, fh)
        else:
            write_edgelist(dag, fh)


def write_matrix_csv(rows: list, fh) -> None:
    """Distance matrix as CSV with "inf" for unreachable entries."""
    for row in rows:
        fh.write(",".join("inf" if d == INF else str(d) for d in row))
        fh.write("\n")
