"""Simple graphs and their subgraphs, stored as bitsets.

Vertices of a :class:`PrimitiveGraph` are the labels ``1..n``.  Vertex ``v``
occupies bit ``v - 1`` of a vertex bitset; edge ``j`` (an index into the
canonical sorted edge list) occupies bit ``j`` of an edge bitset.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    DuplicateEdge,
    InvalidEdge,
    MalformedSubgraph,
    VertexOutOfRange,
)


def bits(mask: int) -> list[int]:
    """Positions of the set bits of ``mask``, ascending."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def popcount(mask: int) -> int:
    return bin(mask).count("1")


@dataclass(frozen=True)
class PrimitiveGraph:
    n: int
    edges: tuple[tuple[int, int], ...]
    adj: tuple[int, ...] = field(repr=False, compare=False)

    @property
    def m(self) -> int:
        return len(self.edges)

    def neighbors(self, v: int) -> list[int]:
        return [b + 1 for b in bits(self.adj[v - 1])]

    def degree(self, v: int) -> int:
        return popcount(self.adj[v - 1])

    def edge_index(self, u: int, v: int) -> int:
        key = (u, v) if u < v else (v, u)
        try:
            return self._index[key]
        except KeyError:
            raise KeyError(f"{{{u},{v}}} is not an edge") from None

    @property
    def _index(self) -> dict[tuple[int, int], int]:
        idx = self.__dict__.get("_edge_index")
        if idx is None:
            idx = {e: i for i, e in enumerate(self.edges)}
            object.__setattr__(self, "_edge_index", idx)
        return idx

    def adjacency_matrix(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=np.int64)
        for u, v in self.edges:
            a[u - 1, v - 1] = a[v - 1, u - 1] = 1
        return a

    def is_connected(self) -> bool:
        full = (1 << self.n) - 1
        return _reach(self.adj, 1, full) == full

    def edge_tree(self, j: int) -> "TreeData":
        """The 1-tree formed by edge ``j`` and its endpoints."""
        u, v = self.edges[j]
        return TreeData((1 << (u - 1)) | (1 << (v - 1)), 1 << j)

    def vertex_tree(self, v: int) -> "TreeData":
        return TreeData(1 << (v - 1), 0)


def _reach(adj: Sequence[int], start: int, allowed: int) -> int:
    """Bitset of vertices reachable from ``start`` (1-based) inside ``allowed``."""
    seen = 1 << (start - 1)
    frontier = seen
    while frontier:
        nxt = 0
        for b in bits(frontier):
            nxt |= adj[b]
        nxt &= allowed & ~seen
        seen |= nxt
        frontier = nxt
    return seen


def from_edge_list(n: int, pairs: Iterable[Sequence[int]]) -> PrimitiveGraph:
    """Build a canonical simple graph on vertices ``1..n``.

    Edge order in ``pairs`` does not matter; the result stores edges as
    ``(u, v)`` with ``u < v``, sorted lexicographically.

    >>> g = from_edge_list(4, [(1, 2), (2, 3), (3, 4), (4, 1)])
    >>> g.edges
    ((1, 2), (1, 4), (2, 3), (3, 4))
    """
    if n < 1:
        raise VertexOutOfRange(f"vertex count must be >= 1, got {n}")
    seen: set[tuple[int, int]] = set()
    for pair in pairs:
        u, v = (int(x) for x in pair)
        for x in (u, v):
            if not 1 <= x <= n:
                raise VertexOutOfRange(f"vertex {x} outside 1..{n}")
        if u == v:
            raise InvalidEdge(f"loop at vertex {u}")
        key = (u, v) if u < v else (v, u)
        if key in seen:
            raise DuplicateEdge(f"edge {{{key[0]},{key[1]}}} given twice")
        seen.add(key)
    edges = tuple(sorted(seen))
    adj = [0] * n
    for u, v in edges:
        adj[u - 1] |= 1 << (v - 1)
        adj[v - 1] |= 1 << (u - 1)
    return PrimitiveGraph(n, edges, tuple(adj))


@dataclass(frozen=True, order=True)
class TreeData:
    """A subgraph of a primitive graph as a (vertex bitset, edge bitset) pair."""

    vt: int
    et: int

    @property
    def n_vertices(self) -> int:
        return popcount(self.vt)

    @property
    def n_edges(self) -> int:
        return popcount(self.et)

    def vertices(self) -> list[int]:
        return [b + 1 for b in bits(self.vt)]

    def edge_indices(self) -> list[int]:
        return bits(self.et)

    def edges(self, g: PrimitiveGraph) -> list[tuple[int, int]]:
        return [g.edges[j] for j in bits(self.et)]

    def sort_key(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """Lexicographic key on sorted member lists, used for canonical ordering."""
        return tuple(self.vertices()), tuple(self.edge_indices())

    def describe(self, g: PrimitiveGraph) -> str:
        vs = ",".join(map(str, self.vertices()))
        es = ",".join(f"{u}{v}" if g.n < 10 else f"{u}-{v}" for u, v in self.edges(g))
        return f"V={{{vs}}} E={{{es}}}"


EMPTY = TreeData(0, 0)


def tree_from_edges(g: PrimitiveGraph, pairs: Iterable[Sequence[int]], extra_vertices: Iterable[int] = ()) -> TreeData:
    """TreeData spanned by the given edges (plus any isolated ``extra_vertices``)."""
    vt = et = 0
    for u, v in pairs:
        et |= 1 << g.edge_index(u, v)
        vt |= (1 << (u - 1)) | (1 << (v - 1))
    for x in extra_vertices:
        vt |= 1 << (x - 1)
    return TreeData(vt, et)


def _check_subgraph(g: PrimitiveGraph, s: TreeData) -> None:
    for j in bits(s.et):
        if j >= g.m:
            raise MalformedSubgraph(f"edge index {j} not in graph")
        u, v = g.edges[j]
        if not (s.vt >> (u - 1)) & 1 or not (s.vt >> (v - 1)) & 1:
            raise MalformedSubgraph(f"edge {{{u},{v}}} has an endpoint outside the vertex set")
    if s.vt >> g.n:
        raise MalformedSubgraph("vertex bitset has bits beyond n")


def subgraph_is_connected(g: PrimitiveGraph, s: TreeData) -> bool:
    if s.vt == 0:
        return False
    adj = [0] * g.n
    for j in bits(s.et):
        u, v = g.edges[j]
        adj[u - 1] |= 1 << (v - 1)
        adj[v - 1] |= 1 << (u - 1)
    start = (s.vt & -s.vt).bit_length()
    return _reach(adj, start, s.vt) == s.vt


def is_tree(g: PrimitiveGraph, s: TreeData) -> bool:
    """True iff ``s`` is connected with exactly one more vertex than edges."""
    _check_subgraph(g, s)
    if s.n_vertices != s.n_edges + 1:
        return False
    return subgraph_is_connected(g, s)


def subgraph_union(a: TreeData, b: TreeData) -> TreeData:
    return TreeData(a.vt | b.vt, a.et | b.et)


def subgraph_intersection(a: TreeData, b: TreeData) -> TreeData:
    return TreeData(a.vt & b.vt, a.et & b.et)


# -- standard families -------------------------------------------------------

def cycle_graph(n: int) -> PrimitiveGraph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return from_edge_list(n, [(i, i % n + 1) for i in range(1, n + 1)])


def path_graph(n: int) -> PrimitiveGraph:
    return from_edge_list(n, [(i, i + 1) for i in range(1, n)])


def complete_graph(n: int) -> PrimitiveGraph:
    return from_edge_list(n, combinations(range(1, n + 1), 2))


def star_graph(leaves: int) -> PrimitiveGraph:
    """K_{1,leaves} with centre 1."""
    return from_edge_list(leaves + 1, [(1, i) for i in range(2, leaves + 2)])


def complete_multipartite(parts: Sequence[int]) -> PrimitiveGraph:
    label = []
    for i, size in enumerate(parts):
        label += [i] * size
    n = len(label)
    pairs = [(u + 1, v + 1) for u, v in combinations(range(n), 2) if label[u] != label[v]]
    return from_edge_list(n, pairs)


# The two-square graph of the worked example: squares 1-2-4-5 and 3-6-8-7
# joined by the bridge 2-3.
GAMMA8_EDGES = ((1, 2), (2, 3), (2, 4), (1, 5), (4, 5), (3, 6), (3, 7), (6, 8), (7, 8))


def gamma8() -> PrimitiveGraph:
    return from_edge_list(8, GAMMA8_EDGES)
