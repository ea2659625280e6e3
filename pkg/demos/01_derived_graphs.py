#!/usr/bin/env python3
# Build tree-line graphs of the two-square graph and look at their trees.
import numpy as np

from treewalk import derive_iterated, gamma8

g = gamma8()
print("base graph:", g.n, "vertices,", g.m, "edges")
print("degree-3 vertices:", [v for v in range(1, g.n + 1) if g.degree(v) == 3])

# each level's vertices are the previous level's edges
for kind in ("tl", "btl"):
    for level in (1, 2, 3):
        d = derive_iterated(g, kind, level)
        print(f"{kind}{level}: {d.n_vertices:4d} vertices {len(d.edges):5d} edges")

# every level-3 vertex flattens to a 3-tree of the base graph
d = derive_iterated(g, "tl", 3)
v = d.find("{{{1,2},{2,3}},{{2,3},{2,4}}}")
print("vertex", d.label(v), "->", d.vertices[v].tree.describe(g))
print("its neighbours:")
for w in d.neighbors(v):
    print("   ", d.label(w), d.vertices[w].tree.describe(g))

a = d.adjacency_matrix()
print("adjacency symmetric:", np.array_equal(a, a.T))
