"""Tree partitions, equitability and quotient matrices."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from itertools import combinations
from typing import NamedTuple, Optional, Sequence

import numpy as np

from .derive import DerivedGraph, adjacency_oracle, btl_tree_classes
from .errors import NotEquitable
from .graph import PrimitiveGraph, TreeData, popcount


@dataclass(frozen=True)
class TreePartition:
    classes: tuple[tuple[int, ...], ...]
    class_tree: Optional[tuple[TreeData, ...]] = None

    def __len__(self) -> int:
        return len(self.classes)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.classes)

    def class_of(self) -> dict[int, int]:
        return {v: i for i, members in enumerate(self.classes) for v in members}

    def find(self, tree: TreeData) -> int:
        if self.class_tree is None:
            raise ValueError("partition carries no class trees")
        return self.class_tree.index(tree)

    @classmethod
    def from_classes(cls, classes: Sequence[Sequence[int]]) -> "TreePartition":
        """An explicit partition; checks that the classes are disjoint."""
        seen = set()
        for members in classes:
            for v in members:
                if v in seen:
                    raise ValueError(f"vertex {v} appears in two classes")
                seen.add(v)
        return cls(tuple(tuple(sorted(c)) for c in classes))

    @classmethod
    def singletons(cls, n: int) -> "TreePartition":
        return cls(tuple((i,) for i in range(n)))


@dataclass(frozen=True)
class QuotientMatrix:
    """``b[i, j]`` is the number of neighbours in class ``j`` of any vertex of class ``i``."""

    b: np.ndarray
    sizes: tuple[int, ...]
    class_tree: Optional[tuple[TreeData, ...]] = None

    def __eq__(self, other):
        if not isinstance(other, QuotientMatrix):
            return NotImplemented
        return self.sizes == other.sizes and np.array_equal(self.b, other.b)

    __hash__ = None


class Witness(NamedTuple):
    source: int
    target: int
    vertex_a: int
    vertex_b: int
    count_a: int
    count_b: int


class Equitability(NamedTuple):
    equitable: bool
    witness: Optional[Witness]

    def __bool__(self) -> bool:
        return self.equitable


def tree_partition(d: DerivedGraph) -> TreePartition:
    """Group the vertices of a tl/btl graph by identical tree."""
    if d.kind not in ("tl", "btl"):
        raise ValueError("tree partitions are defined for tl and btl graphs")
    groups = defaultdict(list)
    for i, v in enumerate(d.vertices):
        groups[v.tree].append(i)
    keys = sorted(groups, key=TreeData.sort_key)
    return TreePartition(tuple(tuple(groups[k]) for k in keys), tuple(keys))


def _neighbor_counts(d: DerivedGraph, p: TreePartition) -> np.ndarray:
    """Row ``v``, column ``j``: neighbours of ``v`` inside class ``j``."""
    masks = []
    for members in p.classes:
        m = 0
        for v in members:
            m |= 1 << v
        masks.append(m)
    counts = np.zeros((len(d.vertices), len(p.classes)), dtype=np.int64)
    for v, row in enumerate(d.adj):
        for j, m in enumerate(masks):
            counts[v, j] = popcount(row & m)
    return counts


def _check_covering(d: DerivedGraph, p: TreePartition) -> None:
    flat = sorted(v for c in p.classes for v in c)
    if flat != list(range(len(d.vertices))):
        raise ValueError("partition does not cover the vertex set exactly once")


def is_equitable(d: DerivedGraph, p: TreePartition) -> Equitability:
    """Check every ordered class pair; on failure name two disagreeing vertices."""
    _check_covering(d, p)
    counts = _neighbor_counts(d, p)
    for i, members in enumerate(p.classes):
        first = members[0]
        for v in members[1:]:
            diff = np.nonzero(counts[v] != counts[first])[0]
            if diff.size:
                j = int(diff[0])
                return Equitability(
                    False, Witness(i, j, first, v, int(counts[first, j]), int(counts[v, j]))
                )
    return Equitability(True, None)


def quotient_matrix(d: DerivedGraph, p: TreePartition) -> QuotientMatrix:
    verdict = is_equitable(d, p)
    if not verdict:
        raise NotEquitable(f"partition is not equitable: {verdict.witness}")
    counts = _neighbor_counts(d, p)
    b = np.array([counts[members[0]] for members in p.classes], dtype=np.int64).reshape(
        len(p.classes), len(p.classes)
    )
    return QuotientMatrix(b, p.sizes, p.class_tree)


def btl_quotient(g: PrimitiveGraph, n: int) -> QuotientMatrix:
    """Quotient of the level-``n`` btl tree partition, computed class by class.

    Matches ``quotient_matrix(d, tree_partition(d))`` for ``d =
    derive_iterated(g, "btl", n)`` but never builds ``d``, so it also works
    at levels whose edge count is out of reach.  Entries may exceed int64 and
    are stored as Python integers (object dtype) when they do.
    """
    sizes = btl_tree_classes(g, n)
    trees = list(sizes)
    k = len(trees)
    rows = [[0] * k for _ in range(k)]
    for i, j in combinations(range(k), 2):
        if adjacency_oracle(trees[i], trees[j], False, "btl"):
            rows[i][j] = sizes[trees[j]]
            rows[j][i] = sizes[trees[i]]
    big = max(sizes.values(), default=0) >= 2**62
    b = np.array(rows, dtype=object if big else np.int64).reshape(k, k)
    return QuotientMatrix(b, tuple(sizes[t] for t in trees), tuple(trees))
