#!/usr/bin/env python3
# k-trees of the two-square graph and the graph they form.
from treewalk import enumerate_k_trees, gamma8, k_tree_graph

g = gamma8()
for k in range(0, 8):
    print(f"{k}-trees:", len(enumerate_k_trees(g, k)))

trees = enumerate_k_trees(g, 6)
both_stars = [t for t in trees if {1, 2, 3, 4, 6, 7} <= set(t.vertices()) and all(
    e in t.edges(g) for e in [(1, 2), (2, 3), (2, 4), (3, 6), (3, 7)])]
print("6-trees containing both degree-3 stars:", len(both_stars))
for t in both_stars:
    print("   ", t.describe(g))

d = k_tree_graph(g, 6)
print("derived 6-tree graph:", d.n_vertices, "vertices,", len(d.edges), "edges")

# among the trees holding both stars, pairs that reach vertex 5 (or 8) by
# different edges meet in 7 vertices, so they are not adjacent
idx = [trees.index(t) for t in both_stars]
sub = [(a, b) for a, b in d.edges if a in idx and b in idx]
print("edges among those four:", len(sub), "(K4 has 6)")
