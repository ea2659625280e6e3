#!/usr/bin/env python3
# Tree partitions of btl graphs are equitable; the quotient carries part of the spectrum.
import numpy as np

from treewalk import (
    btl_quotient,
    char_poly_exact,
    derive_iterated,
    eigenvalues_numeric,
    gamma8,
    is_equitable,
    periodicity_classify,
    quotient_matrix,
    tree_partition,
)

g = gamma8()
d = derive_iterated(g, "btl", 3)
p = tree_partition(d)
print(len(p), "classes, sizes", p.sizes)
print("equitable:", bool(is_equitable(d, p)))

q = quotient_matrix(d, p)
print(q.b)
print("quotient charpoly:", char_poly_exact(q.b).factored())

sub = eigenvalues_numeric(q.b)
full = np.linalg.eigvalsh(d.adjacency_matrix().astype(float))
print("quotient eigenvalues:", np.round(sub, 6))
print("all found in full spectrum:", all(np.min(np.abs(full - x)) < 1e-8 for x in sub))
print("quotient verdict:", periodicity_classify(q.b, quotient=True))

# at level 6 the graph is too big to build, but the classes can be counted
q6 = btl_quotient(g, 6)
print("level 6:", len(q6.sizes), "classes,", sum(q6.sizes), "vertices, sizes", sorted(set(q6.sizes)))
