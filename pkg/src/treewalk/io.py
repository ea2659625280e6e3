"""Readers and writers for graphs, derived graphs, quotients and amplitude tables."""

from __future__ import annotations

import csv
import io
import json
from importlib import resources
from pathlib import Path
from typing import Union

from .derive import DerivedGraph
from .graph import PrimitiveGraph, from_edge_list
from .partition import QuotientMatrix
from .walk import AmplitudeTable


def parse_edge_list(text: str) -> PrimitiveGraph:
    """``n m`` on the first line, then ``m`` lines of ``u v``."""
    lines = [ln.split("#", 1)[0].split() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines or len(lines[0]) != 2:
        raise ValueError("edge list must start with a 'n m' header")
    n, m = (int(x) for x in lines[0])
    pairs = [tuple(int(x) for x in ln) for ln in lines[1:]]
    if len(pairs) != m or any(len(p) != 2 for p in pairs):
        raise ValueError(f"header announces {m} edges, found {len(pairs)} lines")
    return from_edge_list(n, pairs)


def parse_json_graph(text: str) -> PrimitiveGraph:
    data = json.loads(text)
    return from_edge_list(int(data["n"]), data["edges"])


def read_graph(path: Union[str, Path]) -> PrimitiveGraph:
    """Read an edge-list or JSON graph; JSON is detected by a leading ``{``."""
    text = Path(path).read_text()
    if text.lstrip().startswith("{"):
        return parse_json_graph(text)
    return parse_edge_list(text)


def format_edge_list(g: PrimitiveGraph) -> str:
    return "\n".join([f"{g.n} {g.m}"] + [f"{u} {v}" for u, v in g.edges]) + "\n"


def graph_to_json(g: PrimitiveGraph) -> dict:
    return {"n": g.n, "edges": [list(e) for e in g.edges]}


def fixture_path(name: str) -> Path:
    """Path of a bundled fixture such as ``gamma8.edges``."""
    return Path(str(resources.files("treewalk") / "fixtures" / name))


def load_fixture(name: str) -> PrimitiveGraph:
    if "." not in name:
        name += ".edges"
    return read_graph(fixture_path(name))


def derived_to_json(d: DerivedGraph) -> dict:
    return {
        "kind": d.kind,
        "level": d.level,
        "n_vertices": d.n_vertices,
        "edges": [list(e) for e in d.edges],
        "vertices": [
            {
                "vt": v.tree.vertices(),
                "et": [list(e) for e in v.tree.edges(d.base)],
                **({"label": d.label(i)} if d.kind != "ktree" else {}),
            }
            for i, v in enumerate(d.vertices)
        ],
    }


def derived_to_dot(d: DerivedGraph) -> str:
    out = [f'graph "{d.kind}{d.level}" {{']
    for i, v in enumerate(d.vertices):
        out.append(f'  {i} [label="{v.tree.describe(d.base)}"];')
    out += [f"  {a} -- {b};" for a, b in d.edges]
    out.append("}")
    return "\n".join(out) + "\n"


def quotient_to_csv(q: QuotientMatrix) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    for row in q.b:
        w.writerow(int(x) for x in row)
    return buf.getvalue()


def quotient_to_json(q: QuotientMatrix, base: PrimitiveGraph | None = None) -> dict:
    out = {"b": [[int(x) for x in row] for row in q.b], "sizes": [int(s) for s in q.sizes]}
    if q.class_tree is not None:
        out["classes"] = [
            {"vt": t.vertices(), "et": [list(e) for e in t.edges(base)] if base else t.edge_indices()}
            for t in q.class_tree
        ]
    return out


def amplitude_table_to_csv(table: AmplitudeTable) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["label", "re", "im", "abs", "class"])
    for r in table.rows:
        w.writerow([r.label, repr(r.amplitude.real), repr(r.amplitude.imag), repr(r.magnitude), r.kind])
    return buf.getvalue()


def amplitude_table_to_json(table: AmplitudeTable) -> dict:
    return {
        "epsilon": table.epsilon,
        "initial": table.initial_label,
        "rows": [
            {
                "label": r.label,
                "tree": r.tree,
                "re": r.amplitude.real,
                "im": r.amplitude.imag,
                "abs": r.magnitude,
                "class": r.kind,
            }
            for r in table.rows
        ],
    }
