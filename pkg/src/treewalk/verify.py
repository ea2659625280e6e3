"""Named reference checks on the bundled fixtures, reporting measured values.

Each check compares a computed quantity against the value quoted for the
worked examples (the two-square graph ``gamma8`` and the cycles).  A check
that disagrees fails and shows what was measured instead.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .derive import derive_iterated, enumerate_k_trees, k_tree_graph
from .errors import TreewalkError
from .graph import PrimitiveGraph, tree_from_edges
from .partition import btl_quotient, is_equitable, quotient_matrix, tree_partition
from .spectral import CharPoly, blowup_char_poly, char_poly_exact, eigenvalues_numeric
from .walk import infinitesimal_table

TABLE1_V = "{{{1,2},{2,3}},{{2,3},{2,4}}}"
TABLE1_W = "{{{2,4},{1,2}},{{1,2},{2,3}}}"
C8_POLY = CharPoly([1, 0, -8, 0, 20, 0, -16, 0, 0])
# x^20 (x+6)^3 (x-24), as quoted for the level-6 btl graph
BTL6_POLY = CharPoly.from_roots({0: 20, -6: 3, 24: 1})


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    expected: str
    measured: str


def _check(name: str, expected: str, fn: Callable[[], tuple[bool, str]]) -> CheckResult:
    try:
        ok, measured = fn()
    except TreewalkError as exc:
        ok, measured = False, f"{type(exc).__name__}: {exc}"
    return CheckResult(name, bool(ok), expected, measured)


def _is_complete(d) -> bool:
    n = d.n_vertices
    return len(d.edges) == n * (n - 1) // 2


def run_checks(load: Callable[[str], PrimitiveGraph]) -> list[CheckResult]:
    """Run every reference check; ``load`` maps a fixture name to a graph."""
    results = []

    def c8_poly():
        p = char_poly_exact(load("c8").adjacency_matrix())
        return p == C8_POLY, str(p)

    results.append(_check("C8 characteristic polynomial", str(C8_POLY), c8_poly))

    def six_trees():
        n = len(enumerate_k_trees(load("gamma8"), 6))
        return n == 4, str(n)

    results.append(_check("gamma8 6-tree count", "4", six_trees))

    def k4():
        d = k_tree_graph(load("gamma8"), 6)
        ok = d.n_vertices == 4 and _is_complete(d)
        return ok, f"{d.n_vertices} vertices, {len(d.edges)} edges"

    results.append(_check("gamma8 derived 6-tree graph is K4", "4 vertices, 6 edges", k4))

    def btl6_quotient():
        q = btl_quotient(load("gamma8"), 6)
        target = 6 * (np.ones((4, 4), dtype=np.int64) - np.eye(4, dtype=np.int64))
        ok = q.b.shape == (4, 4) and np.array_equal(np.asarray(q.b, dtype=np.int64), target)
        return ok, f"{len(q.sizes)} classes, sizes {sorted(set(q.sizes))}, total {sum(q.sizes)}"

    results.append(_check("btl6 tree-partition quotient is 6(J-I)", "4 classes of 6", btl6_quotient))

    def btl6_poly():
        q = btl_quotient(load("gamma8"), 6)
        p = blowup_char_poly(q.b, q.sizes)
        return p == BTL6_POLY, f"degree {p.degree}: {p.factored()}"

    results.append(_check("btl6 characteristic polynomial", BTL6_POLY.factored(), btl6_poly))

    def btl3_classes():
        p = tree_partition(derive_iterated(load("gamma8"), "btl", 3))
        return len(p) == 16, str(len(p))

    results.append(_check("btl3 tree partition class count", "16", btl3_classes))

    def btl3_spectrum():
        d = derive_iterated(load("gamma8"), "btl", 3)
        q = quotient_matrix(d, tree_partition(d))
        ev = eigenvalues_numeric(q.b)
        wanted = [-2.0, -np.sqrt(2), np.sqrt(2)]
        hits = [bool(np.any(np.abs(ev - w) < 1e-9)) for w in wanted]
        return all(hits), "contains " + ", ".join(
            f"{w:+.6f}:{'yes' if h else 'no'}" for w, h in zip(wanted, hits)
        )

    results.append(_check("btl3 quotient spectrum contains -2, ±sqrt2", "all present", btl3_spectrum))

    def star_class():
        g = load("gamma8")
        p = tree_partition(derive_iterated(g, "btl", 3))
        star = tree_from_edges(g, [(1, 2), (2, 3), (2, 4)])
        size = len(p.classes[p.find(star)])
        return size == 3, str(size)

    results.append(_check("btl3 class of star {12,23,24} has 3 elements", "3", star_class))

    def table1():
        d = derive_iterated(load("gamma8"), "tl", 3)
        counts = []
        for label in (TABLE1_V, TABLE1_W):
            t = infinitesimal_table(d, label, 1e-3)
            counts.append(len(t.of_kind("neighbor")))
        return counts == [6, 5], f"v: {counts[0]}, w: {counts[1]}"

    results.append(_check("Table 1 neighbour rows at eps=1e-3", "v: 6, w: 5", table1))

    def equitability():
        g = load("gamma8")
        bad = []
        for level in (1, 2, 3, 4):
            d = derive_iterated(g, "btl", level)
            if not is_equitable(d, tree_partition(d)):
                bad.append(level)
        return not bad, "levels 1-4 equitable" if not bad else f"not equitable at {bad}"

    results.append(_check("btl tree partitions of gamma8 are equitable", "levels 1-4 equitable", equitability))
    return results


def format_report(results: list[CheckResult]) -> str:
    width = max(len(r.name) for r in results)
    lines = []
    for r in results:
        mark = "PASS" if r.passed else "FAIL"
        lines.append(f"{mark}  {r.name:<{width}}  expected: {r.expected}  measured: {r.measured}")
    lines.append(f"{sum(r.passed for r in results)}/{len(results)} checks passed")
    return "\n".join(lines)
