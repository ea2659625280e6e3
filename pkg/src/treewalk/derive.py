"""Iterated tree-line (tl), bipartite tree-line (btl) and k-tree derived graphs.

A vertex at level ``n`` is an edge of level ``n - 1``; its identity is the
pair of parent vertices.  Each vertex also carries the subgraph of the base
graph it flattens to (its :class:`~treewalk.graph.TreeData`), built by
uniting the parents' trees.  At level 1 the parents are the two endpoints of
a primitive edge (1-based primitive labels).

Adjacency at every level uses the count condition on those trees::

    |VT(a) ∪ VT(b)| = |VT(a)| + 1 = |VT(b)| + 1 = |ET(a) ∪ ET(b)| + 1

tl additionally requires the two vertices to share a parent; btl does not.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Literal, Optional, Union

import numpy as np

from .errors import DerivationTooLarge, NotConnected
from .graph import (
    PrimitiveGraph,
    TreeData,
    _reach,
    bits,
    popcount,
    subgraph_intersection,
    subgraph_is_connected,
    subgraph_union,
)

Kind = Literal["tl", "btl", "ktree"]

DEFAULT_MAX_VERTICES = 200_000
DEFAULT_MAX_EDGES = 5_000_000


@dataclass(frozen=True)
class DerivedVertex:
    level: int
    parents: tuple[int, ...]
    tree: TreeData


@dataclass(frozen=True)
class DerivedGraph:
    kind: str
    level: int
    base: PrimitiveGraph
    vertices: tuple[DerivedVertex, ...]
    edges: tuple[tuple[int, int], ...]
    adj: tuple[int, ...] = field(repr=False, compare=False)
    parent: Optional["DerivedGraph"] = field(default=None, repr=False, compare=False)

    def __len__(self) -> int:
        return len(self.vertices)

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def trees(self) -> list[TreeData]:
        return [v.tree for v in self.vertices]

    def neighbors(self, i: int) -> list[int]:
        return bits(self.adj[i])

    def degree(self, i: int) -> int:
        return popcount(self.adj[i])

    def adjacency_matrix(self) -> np.ndarray:
        n = len(self.vertices)
        a = np.zeros((n, n), dtype=np.int64)
        if self.edges:
            e = np.asarray(self.edges)
            a[e[:, 0], e[:, 1]] = 1
            a[e[:, 1], e[:, 0]] = 1
        return a

    def is_connected(self) -> bool:
        n = len(self.vertices)
        if n == 0:
            return False
        full = (1 << n) - 1
        # _reach takes 1-based start
        return _reach(self.adj, 1, full) == full

    @property
    def parent_count(self) -> int:
        """Number of vertices one level down (primitive vertices at level 1)."""
        if self.kind == "ktree":
            raise ValueError("k-tree graphs have no parent level")
        return self.base.n if self.level == 1 else len(self.parent.vertices)

    def nested(self, i: int):
        """The vertex as nested frozensets of primitive labels."""
        return self._nested[i]

    @cached_property
    def _nested(self) -> list:
        if self.kind == "ktree":
            raise ValueError("k-tree vertices have no nested-pair form")
        if self.level == 1:
            return [frozenset(v.parents) for v in self.vertices]
        below = self.parent._nested
        return [frozenset(below[p] for p in v.parents) for v in self.vertices]

    @cached_property
    def _labels(self) -> list[str]:
        if self.kind == "ktree":
            return [f"#{i}" for i in range(len(self.vertices))]
        if self.level == 1:
            return ["{%d,%d}" % v.parents for v in self.vertices]
        below = self.parent._labels
        return ["{%s,%s}" % (below[v.parents[0]], below[v.parents[1]]) for v in self.vertices]

    def label(self, i: int) -> str:
        """Brace notation, e.g. ``{{{1,2},{2,3}},{{2,3},{2,4}}}``."""
        return self._labels[i]

    @cached_property
    def _by_nested(self) -> dict:
        return {x: i for i, x in enumerate(self._nested)}

    def find(self, label: str) -> int:
        """Index of the vertex named by ``label`` (brace notation or ``#index``)."""
        text = label.strip()
        if text.startswith("#"):
            i = int(text[1:])
            if not 0 <= i < len(self.vertices):
                raise KeyError(f"no vertex {text}")
            return i
        key = parse_label(text)
        try:
            return self._by_nested[key]
        except KeyError:
            raise KeyError(f"no vertex {label!r} at level {self.level}") from None


def parse_label(text: str):
    """Parse whitespace-insensitive brace notation into nested frozensets."""
    s = "".join(text.split())
    pos = 0

    def item():
        nonlocal pos
        if pos < len(s) and s[pos] == "{":
            pos += 1
            members = [item()]
            while s[pos] == ",":
                pos += 1
                members.append(item())
            if s[pos] != "}":
                raise ValueError(f"expected '}}' at {pos} in {text!r}")
            pos += 1
            return frozenset(members)
        start = pos
        while pos < len(s) and s[pos].isdigit():
            pos += 1
        if start == pos:
            raise ValueError(f"unexpected character at {pos} in {text!r}")
        return int(s[start:pos])

    try:
        out = item()
    except IndexError:
        raise ValueError(f"unbalanced braces in {text!r}") from None
    if pos != len(s):
        raise ValueError(f"trailing characters in {text!r}")
    return out


def adjacency_oracle(t1: TreeData, t2: TreeData, shared_parent: bool, kind: str) -> bool:
    """Definitional adjacency test computed from the two flattened trees."""
    union_v = popcount(t1.vt | t2.vt)
    union_e = popcount(t1.et | t2.et)
    counts = union_v == t1.n_vertices + 1 == t2.n_vertices + 1 and union_v == union_e + 1
    if kind == "tl":
        return counts and shared_parent
    if kind == "btl":
        return counts
    raise ValueError(f"unknown kind {kind!r}")


def _build(kind, level, base, vertices, edges, parent) -> DerivedGraph:
    adj = [0] * len(vertices)
    for a, b in edges:
        adj[a] |= 1 << b
        adj[b] |= 1 << a
    return DerivedGraph(kind, level, base, tuple(vertices), tuple(edges), tuple(adj), parent)


def _connect(kind: str, vertices: list[DerivedVertex], max_edges: int) -> list[tuple[int, int]]:
    edges = []
    if kind == "tl":
        by_parent = defaultdict(list)
        for i, v in enumerate(vertices):
            for p in v.parents:
                by_parent[p].append(i)
        for members in by_parent.values():
            for a, b in combinations(members, 2):
                if adjacency_oracle(vertices[a].tree, vertices[b].tree, True, "tl"):
                    edges.append((a, b))
            if len(edges) > max_edges:
                raise DerivationTooLarge(f"more than {max_edges} edges", projected=len(edges))
        # two distinct edges of a simple graph share at most one endpoint
        edges.sort()
        return edges
    if kind != "btl":
        raise ValueError(f"unknown kind {kind!r}")
    # btl adjacency depends on the trees alone, so test once per class pair
    classes = defaultdict(list)
    for i, v in enumerate(vertices):
        classes[v.tree].append(i)
    keys = list(classes)
    joined = [
        (s, t)
        for s, t in combinations(keys, 2)
        if adjacency_oracle(s, t, False, "btl")
    ]
    projected = sum(len(classes[s]) * len(classes[t]) for s, t in joined)
    if projected > max_edges:
        raise DerivationTooLarge(
            f"derived graph would have {projected} edges (cap {max_edges})", projected=projected
        )
    for s, t in joined:
        for a in classes[s]:
            for b in classes[t]:
                edges.append((a, b) if a < b else (b, a))
    edges.sort()
    return edges


def _canonical(vertices: list[DerivedVertex]) -> list[DerivedVertex]:
    return sorted(vertices, key=lambda v: (v.tree.sort_key(), v.parents))


def _check_level(vertices: Iterable[DerivedVertex], level: int) -> None:
    for v in vertices:
        if v.tree.n_vertices != level + 1 or v.tree.n_edges != level:
            raise RuntimeError(f"vertex {v} is not a {level}-tree")


def derive_step(
    g: Union[PrimitiveGraph, DerivedGraph],
    kind: str,
    max_vertices: int = DEFAULT_MAX_VERTICES,
    max_edges: int = DEFAULT_MAX_EDGES,
) -> DerivedGraph:
    """Build the next tl or btl level above ``g``."""
    if kind not in ("tl", "btl"):
        raise ValueError(f"kind must be 'tl' or 'btl', got {kind!r}")
    if not g.is_connected():
        raise NotConnected("derivation needs a connected input graph")
    if isinstance(g, PrimitiveGraph):
        level, base, parent = 1, g, None
        if g.m > max_vertices:
            raise DerivationTooLarge(f"{g.m} vertices exceed cap {max_vertices}", projected=g.m)
        vertices = [DerivedVertex(1, e, g.edge_tree(j)) for j, e in enumerate(g.edges)]
    else:
        if g.kind != kind:
            raise ValueError(f"cannot apply {kind} to a {g.kind} graph")
        level, base, parent = g.level + 1, g.base, g
        if len(g.edges) > max_vertices:
            raise DerivationTooLarge(
                f"{len(g.edges)} vertices exceed cap {max_vertices}", projected=len(g.edges)
            )
        trees = g.trees
        vertices = [DerivedVertex(level, (a, b), subgraph_union(trees[a], trees[b])) for a, b in g.edges]
    vertices = _canonical(vertices)
    _check_level(vertices, level)
    edges = _connect(kind, vertices, max_edges)
    return _build(kind, level, base, vertices, edges, parent)


def derive_iterated(
    g: Union[PrimitiveGraph, DerivedGraph],
    kind: str,
    n: int,
    max_vertices: int = DEFAULT_MAX_VERTICES,
    max_edges: int = DEFAULT_MAX_EDGES,
) -> DerivedGraph:
    """Apply :func:`derive_step` ``n`` times."""
    if n < 1:
        raise ValueError("level must be >= 1")
    for _ in range(n):
        g = derive_step(g, kind, max_vertices=max_vertices, max_edges=max_edges)
    return g


def tree_map(v: DerivedVertex) -> TreeData:
    return v.tree


def enumerate_k_trees(g: PrimitiveGraph, k: int) -> list[TreeData]:
    """All subtrees of ``g`` with ``k`` edges, in canonical order.

    Grows trees one pendant edge at a time from single edges, so each
    ``k``-tree is reached through every leaf-deletion order but stored once.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    if k == 0:
        return [g.vertex_tree(v) for v in range(1, g.n + 1)]
    current = {g.edge_tree(j) for j in range(g.m)}
    for _ in range(k - 1):
        grown = set()
        for t in current:
            for j, (u, v) in enumerate(g.edges):
                if (t.et >> j) & 1:
                    continue
                inside = ((t.vt >> (u - 1)) & 1) + ((t.vt >> (v - 1)) & 1)
                if inside == 1:
                    grown.add(TreeData(t.vt | (1 << (u - 1)) | (1 << (v - 1)), t.et | (1 << j)))
        current = grown
    return sorted(current, key=TreeData.sort_key)


def k_tree_graph(g: PrimitiveGraph, k: int) -> DerivedGraph:
    """Graph on the ``k``-trees of ``g``; two are adjacent when they meet in a (k-1)-tree.

    For ``k = 1`` a single shared vertex counts as a 0-tree, so the result is
    the line graph.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    trees = enumerate_k_trees(g, k)
    vertices = [DerivedVertex(k, (), t) for t in trees]
    edges = []
    for a, b in combinations(range(len(trees)), 2):
        common = subgraph_intersection(trees[a], trees[b])
        if (
            common.n_vertices == k
            and common.n_edges == k - 1
            and subgraph_is_connected(g, common)
        ):
            edges.append((a, b))
    return _build("ktree", k, g, vertices, edges, None)


def incidence_matrix(d: DerivedGraph) -> np.ndarray:
    """0/1 matrix of derived vertices (rows) against parent-level vertices."""
    x = np.zeros((len(d.vertices), d.parent_count), dtype=np.int64)
    shift = 1 if d.level == 1 else 0
    for i, v in enumerate(d.vertices):
        for p in v.parents:
            x[i, p - shift] = 1
    return x


def incidence_factorization_check(d: DerivedGraph, incidence: Optional[np.ndarray] = None) -> bool:
    """Whether ``X Xᵀ - 2I`` equals the adjacency matrix of ``d``.

    ``incidence`` defaults to :func:`incidence_matrix`; pass another matrix to
    test an arbitrary factorization.
    """
    x = incidence_matrix(d) if incidence is None else np.asarray(incidence, dtype=np.int64)
    a = d.adjacency_matrix()
    if x.shape[0] != a.shape[0]:
        return False
    return bool(np.array_equal(x @ x.T - 2 * np.eye(a.shape[0], dtype=np.int64), a))


def btl_tree_classes(g: PrimitiveGraph, n: int) -> dict[TreeData, int]:
    """Class sizes of the tree partition of the level-``n`` btl graph.

    btl adjacency depends only on the trees, and classes that are joined are
    completely joined, so each level can be counted class by class without
    materialising any vertices.  Sizes are exact Python integers.
    """
    if n < 1:
        raise ValueError("level must be >= 1")
    if not g.is_connected():
        raise NotConnected("derivation needs a connected input graph")
    sizes = {g.edge_tree(j): 1 for j in range(g.m)}
    for _ in range(n - 1):
        nxt: dict[TreeData, int] = defaultdict(int)
        for s, t in combinations(list(sizes), 2):
            if adjacency_oracle(s, t, False, "btl"):
                nxt[subgraph_union(s, t)] += sizes[s] * sizes[t]
        sizes = dict(nxt)
    return dict(sorted(sizes.items(), key=lambda kv: kv[0].sort_key()))
