#!/usr/bin/env python3
# Continuous-time walks: return scans, state transfer and the small-time table.
import numpy as np

from treewalk import (
    complete_graph,
    cycle_graph,
    derive_iterated,
    gamma8,
    infinitesimal_table,
    path_graph,
    periodic_return_scan,
    pst_scan,
    transition_operator,
)

for name, g in [("C4", cycle_graph(4)), ("K4", complete_graph(4)), ("P3", path_graph(3)), ("C8", cycle_graph(8))]:
    r = periodic_return_scan(g.adjacency_matrix(), t_max=100)
    print(name, "return at t =", r.time if r.found else f"none (best {r.fidelity:.6f})")

r = pst_scan(complete_graph(2).adjacency_matrix(), 0, 1)
print("K2 transfer at t =", r.time, "vs pi/2 =", np.pi / 2)

h = transition_operator(gamma8().adjacency_matrix(), 3.0)
print("unitarity residual:", np.abs(h.conj().T @ h - np.eye(8)).max())

d = derive_iterated(gamma8(), "tl", 3)
for start in ("{{{1,2},{2,3}},{{2,3},{2,4}}}", "{{{2,4},{1,2}},{{1,2},{2,3}}}"):
    t = infinitesimal_table(d, start, 1e-3)
    print("start", start)
    for row in t.of_kind("neighbor"):
        print(f"    {row.label:34s} |amp| = {row.magnitude:.6e}")
