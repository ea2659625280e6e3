#!/usr/bin/env python3
# Exact characteristic polynomials and the periodicity verdicts.
from treewalk import (
    char_poly_exact,
    complete_graph,
    cycle_graph,
    multipartite_char_poly,
    path_graph,
    periodicity_classify,
    star_graph,
)

for name, g in [("C4", cycle_graph(4)), ("C5", cycle_graph(5)), ("C8", cycle_graph(8)),
                ("K4", complete_graph(4)), ("P3", path_graph(3)), ("K1,3", star_graph(3))]:
    a = g.adjacency_matrix()
    p = char_poly_exact(a)
    print(f"{name:5s} {str(p):30s} = {p.factored():30s} {periodicity_classify(a)}")

# closed form for complete multipartite graphs
p = multipartite_char_poly([6, 6, 6, 6])
print("K6,6,6,6:", p.factored())
