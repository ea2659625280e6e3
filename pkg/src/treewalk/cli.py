"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage or I/O error,
3 growth cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import io as tio
from .derive import (
    DEFAULT_MAX_VERTICES,
    DerivedGraph,
    derive_iterated,
    enumerate_k_trees,
    k_tree_graph,
)
from .errors import DerivationTooLarge, TreewalkError
from .graph import PrimitiveGraph
from .partition import is_equitable, quotient_matrix, tree_partition
from .spectral import char_poly_exact, periodicity_classify
from .verify import TABLE1_V, format_report, run_checks
from .walk import infinitesimal_table, periodic_return_scan, pst_scan, transition_operator

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _max_vertices(args) -> int:
    if args.max_vertices is not None:
        return args.max_vertices
    env = os.environ.get("TREEWALK_MAX_VERTICES")
    return int(env) if env else DEFAULT_MAX_VERTICES


def _resolve(path: str | None, default: str | None = None) -> Path:
    if path is None:
        if default is None:
            raise UsageError("an input graph file is required")
        return tio.fixture_path(default)
    p = Path(path)
    if p.exists():
        return p
    bundled = tio.fixture_path(p.name)
    if bundled.exists():
        return bundled
    raise FileNotFoundError(f"no such graph file or bundled fixture: {path}")


def _load(args, default: str | None = None) -> PrimitiveGraph:
    return tio.read_graph(_resolve(args.input, default))


def _graph_for(args, g: PrimitiveGraph):
    """The graph a command operates on: the input itself or a derived level."""
    kind = getattr(args, "kind", None)
    if kind is None:
        return g
    if kind == "ktree":
        return k_tree_graph(g, args.k or args.level or 1)
    return derive_iterated(g, kind, args.level or 1, max_vertices=_max_vertices(args))


def _matrix(obj) -> np.ndarray:
    return obj.adjacency_matrix()


def _emit(args, text: str) -> None:
    if args.output in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(args.output).write_text(text)


def _fmt(args, default: str) -> str:
    return args.format or default


def cmd_derive(args) -> int:
    g = _load(args)
    if args.kind is None:
        raise UsageError("derive needs --kind")
    d = _graph_for(args, g)
    fmt = _fmt(args, "text")
    if fmt == "json":
        body = json.dumps(tio.derived_to_json(d)) + "\n"
    elif fmt == "dot":
        body = tio.derived_to_dot(d)
    elif fmt == "text":
        lines = [f"{d.kind} level {d.level}: {d.n_vertices} vertices, {len(d.edges)} edges"]
        for i, v in enumerate(d.vertices):
            name = d.label(i) if d.kind != "ktree" else f"#{i}"
            lines.append(f"  {name}  {v.tree.describe(g)}  degree {d.degree(i)}")
        body = "\n".join(lines) + "\n"
    else:
        raise UsageError(f"derive does not support --format {fmt}")
    _emit(args, body)
    counts = f"vertices: {d.n_vertices}\nedges: {len(d.edges)}\n"
    if args.output in (None, "-"):
        sys.stderr.write(counts)
    else:
        sys.stdout.write(counts)
    return EXIT_OK


def cmd_trees(args) -> int:
    g = _load(args)
    trees = enumerate_k_trees(g, args.k)
    fmt = _fmt(args, "text")
    if fmt == "json":
        body = json.dumps([{"vt": t.vertices(), "et": [list(e) for e in t.edges(g)]} for t in trees]) + "\n"
    else:
        body = "".join(f"{t.describe(g)}\n" for t in trees) + f"{len(trees)} {args.k}-trees\n"
    _emit(args, body)
    return EXIT_OK


def _derived(args, g) -> DerivedGraph:
    if args.kind not in ("tl", "btl"):
        raise UsageError("this command needs --kind tl or --kind btl")
    return _graph_for(args, g)


def cmd_partition(args) -> int:
    g = _load(args)
    d = _derived(args, g)
    p = tree_partition(d)
    verdict = is_equitable(d, p)
    fmt = _fmt(args, "text")
    if fmt == "json":
        body = json.dumps(
            {
                "classes": [list(c) for c in p.classes],
                "trees": [{"vt": t.vertices(), "et": [list(e) for e in t.edges(g)]} for t in p.class_tree],
                "equitable": verdict.equitable,
                "witness": list(verdict.witness) if verdict.witness else None,
            }
        ) + "\n"
    else:
        lines = [f"{len(p)} classes over {d.n_vertices} vertices; equitable: {verdict.equitable}"]
        if verdict.witness:
            lines.append(f"  witness: {verdict.witness}")
        for t, members in zip(p.class_tree, p.classes):
            lines.append(f"  {t.describe(g)}  size {len(members)}")
        body = "\n".join(lines) + "\n"
    _emit(args, body)
    return EXIT_OK


def cmd_quotient(args) -> int:
    g = _load(args)
    d = _derived(args, g)
    q = quotient_matrix(d, tree_partition(d))
    fmt = _fmt(args, "csv")
    if fmt == "csv":
        body = tio.quotient_to_csv(q)
    elif fmt == "json":
        body = json.dumps(tio.quotient_to_json(q, g)) + "\n"
    else:
        body = "\n".join(" ".join(f"{int(x):3d}" for x in row) for row in q.b) + "\n"
    _emit(args, body)
    return EXIT_OK


def cmd_charpoly(args) -> int:
    g = _load(args)
    obj = _graph_for(args, g)
    p = char_poly_exact(_matrix(obj))
    if _fmt(args, "text") == "json":
        body = json.dumps({"coeffs": list(p.coeffs), "factored": p.factored()}) + "\n"
    else:
        body = f"{list(p.coeffs)}\n{p}\n{p.factored()}\n"
    _emit(args, body)
    return EXIT_OK


def cmd_periodic(args) -> int:
    g = _load(args)
    obj = _graph_for(args, g)
    if args.quotient:
        d = _derived(args, g)
        a = quotient_matrix(d, tree_partition(d)).b
        verdict = periodicity_classify(a, quotient=True)
        scan = None
    else:
        a = _matrix(obj)
        verdict = periodicity_classify(a)
        scan = periodic_return_scan(a, args.t_max, args.step)
    if _fmt(args, "text") == "json":
        body = {"verdict": str(verdict), "delta": verdict.delta, "bipartite": verdict.bipartite}
        if scan is not None:
            body["return_time"] = scan.time
            body["fidelity"] = scan.fidelity
        text = json.dumps(body) + "\n"
    else:
        text = f"{verdict}\n"
        if verdict.bipartite is not None:
            text += f"bipartite: {verdict.bipartite}\n"
        if scan is not None:
            text += (
                f"return at t = {scan.time:.9f}\n" if scan.found else f"no return found <= {args.t_max:g}\n"
            )
    _emit(args, text)
    return EXIT_OK


def _vertex(obj, label: str) -> int:
    if isinstance(obj, PrimitiveGraph):
        v = int(label)
        if not 1 <= v <= obj.n:
            raise KeyError(f"vertex {v} outside 1..{obj.n}")
        return v - 1
    return obj.find(label)


def cmd_walk(args) -> int:
    if args.table1:
        return cmd_table1(args)
    g = _load(args)
    obj = _graph_for(args, g)
    a = _matrix(obj)
    fmt = _fmt(args, "text")
    if args.pst:
        if args.source is None or args.target is None:
            raise UsageError("--pst needs --from and --to")
        u, v = _vertex(obj, args.source), _vertex(obj, args.target)
        res = pst_scan(a, u, v, args.t_max, args.step)
        data = {"time": res.time, "fidelity": res.fidelity}
        text = (
            f"perfect state transfer at t = {res.time:.9f} (t/pi = {res.time / math.pi:.9f}), fidelity {res.fidelity:.12f}\n"
            if res.found
            else f"no transfer found <= {args.t_max:g}; best fidelity {res.fidelity:.9f}\n"
        )
    elif args.period:
        res = periodic_return_scan(a, args.t_max, args.step)
        data = {"time": res.time, "fidelity": res.fidelity}
        text = (
            f"periodic return at t = {res.time:.9f} (t/pi = {res.time / math.pi:.9f})\n"
            if res.found
            else f"no return found <= {args.t_max:g}\n"
        )
    else:
        if args.source is None:
            raise UsageError("give --pst, --period, --table1 or --from with --time")
        u = _vertex(obj, args.source)
        column = transition_operator(a, args.time)[:, u]
        data = {"time": args.time, "amplitudes": [[c.real, c.imag] for c in column]}
        names = [str(i + 1) for i in range(len(column))] if isinstance(obj, PrimitiveGraph) else [obj.label(i) for i in range(len(column))]
        text = "".join(f"{n}  {c.real:+.12f} {c.imag:+.12f}i  |{abs(c):.12f}|\n" for n, c in zip(names, column))
    _emit(args, json.dumps(data) + "\n" if fmt == "json" else text)
    return EXIT_OK


def cmd_table1(args) -> int:
    g = _load(args, default="gamma8.edges")
    kind = args.kind or "tl"
    d = derive_iterated(g, kind, args.level or 3, max_vertices=_max_vertices(args))
    table = infinitesimal_table(d, args.initial or TABLE1_V, args.epsilon)
    fmt = _fmt(args, "text")
    if fmt == "csv":
        body = tio.amplitude_table_to_csv(table)
    elif fmt == "json":
        body = json.dumps(tio.amplitude_table_to_json(table)) + "\n"
    else:
        lines = [f"H({table.epsilon:g}) applied to {table.initial_label}"]
        for r in table.rows:
            if r.kind != "non-neighbor":
                lines.append(f"  {r.kind:<9} {r.label}  |amp| = {r.magnitude:.6e}")
        lines.append(f"neighbor rows: {len(table.of_kind('neighbor'))}")
        body = "\n".join(lines) + "\n"
    _emit(args, body)
    return EXIT_OK


def cmd_verify_paper(args) -> int:
    if args.fixtures:
        root = Path(args.fixtures)

        def load(name):
            return tio.read_graph(root / f"{name}.edges")
    else:
        load = tio.load_fixture
    results = run_checks(load)
    if args.format == "json":
        body = json.dumps([r.__dict__ for r in results], indent=2) + "\n"
    else:
        body = format_report(results) + "\n"
    _emit(args, body)
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="treewalk", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, input_required=True, kinds=("tl", "btl", "ktree")):
        p.add_argument("input", nargs=None if input_required else "?", help="edge-list or JSON graph file")
        p.add_argument("--kind", choices=kinds)
        p.add_argument("--level", type=int)
        p.add_argument("--k", type=int)
        p.add_argument("--max-vertices", type=int, help="growth cap (env TREEWALK_MAX_VERTICES)")
        p.add_argument("--output", "-o", default="-", help="output path, '-' for stdout")
        fmt = p.add_mutually_exclusive_group()
        fmt.add_argument("--format", choices=("json", "csv", "dot", "text"))
        for name in ("json", "csv", "dot", "text"):
            fmt.add_argument(f"--{name}", dest="format", action="store_const", const=name)
        return p

    def times(p):
        p.add_argument("--t-max", type=float, default=100.0)
        p.add_argument("--step", type=float, default=0.01)

    common(sub.add_parser("derive", help="build a tl, btl or k-tree derived graph")).set_defaults(func=cmd_derive)
    p = common(sub.add_parser("trees", help="list the k-trees of a graph"))
    p.set_defaults(func=cmd_trees, k=1)
    common(sub.add_parser("partition", help="tree partition of a derived graph")).set_defaults(func=cmd_partition)
    common(sub.add_parser("quotient", help="quotient matrix of the tree partition")).set_defaults(func=cmd_quotient)
    common(sub.add_parser("charpoly", help="exact characteristic polynomial")).set_defaults(func=cmd_charpoly)
    p = common(sub.add_parser("periodic", help="periodicity verdict and return-time scan"))
    p.add_argument("--quotient", action="store_true", help="classify the tree-partition quotient")
    times(p)
    p.set_defaults(func=cmd_periodic)

    for name, func in (("walk", cmd_walk), ("table1", cmd_table1)):
        p = common(sub.add_parser(name, help="quantum walk amplitudes and scans"), input_required=False)
        times(p)
        p.add_argument("--table1", action="store_true", help="first-order amplitude table")
        p.add_argument("--epsilon", type=float, default=1e-3)
        p.add_argument("--initial", help="initial vertex (brace notation or #index)")
        p.add_argument("--pst", action="store_true", help="scan for perfect state transfer")
        p.add_argument("--period", action="store_true", help="scan for a periodic return")
        p.add_argument("--from", dest="source")
        p.add_argument("--to", dest="target")
        p.add_argument("--time", type=float, default=1.0)
        p.set_defaults(func=func)

    p = sub.add_parser("verify-paper", help="run the reference checks on the bundled fixtures")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="format", action="store_const", const="json")
    fmt.add_argument("--text", dest="format", action="store_const", const="text")
    p.add_argument("--fixtures", help="directory holding gamma8.edges, c8.edges, ...")
    p.add_argument("--output", "-o", default="-")
    p.set_defaults(func=cmd_verify_paper)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DerivationTooLarge as exc:
        print(f"error: {exc} (projected {exc.projected})", file=sys.stderr)
        return EXIT_CAP
    except (OSError, UsageError, KeyError, ValueError, TreewalkError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
