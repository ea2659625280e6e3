#!/usr/bin/env python3
# Iterating the tl construction on cycles.  A cycle on n vertices stays a
# cycle while the trees are short enough to leave a vertex uncovered.
from treewalk import NotConnected, cycle_graph, derive_iterated

for n in range(3, 9):
    row = []
    for k in range(1, 6):
        try:
            d = derive_iterated(cycle_graph(n), "tl", k)
        except NotConnected:
            row.append("   --")
            continue
        degrees = {d.degree(i) for i in range(d.n_vertices)}
        cyc = d.n_vertices == n and degrees == {2} and d.is_connected()
        row.append(f"{d.n_vertices:3d}{'c' if cyc else ' '} ")
    print(f"C{n:<2d}", " ".join(row))
print("(c marks a cycle on n vertices; -- means the previous level was disconnected)")
