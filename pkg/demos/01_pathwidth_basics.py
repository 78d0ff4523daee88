"""
Path-width basics
=================

Connectivity profiles and exact path-width for a few classic matroids.
Run:  python3 demos/01_pathwidth_basics.py
"""

from __future__ import annotations

from matroidpw import lambda_, named, pathwidth_exact, width_of_order

# The connectivity function lambda(X) = r(X) + r(E \ X) - r(E) measures how
# strongly a prefix interacts with the rest of the ground set.  The width of
# an ordering is the maximum lambda over its proper prefixes; path-width is
# the minimum width over all orderings.

for name in ("i3", "c4", "u24", "k4", "fano", "nonfano", "u36"):
    m = named(name)
    value, dec = pathwidth_exact(m)
    print(f"{name:8s} n={m.size}  r={m.full_rank()}  pw={value}")
    print(f"         optimal order: {list(dec.order)}")
    print(f"         lambda profile: {list(dec.lambdas)}")

# A bad ordering can be wider than the optimum.  The direct sum of two
# triangles has path-width 1, but interleaving the triangles keeps both
# open at once:
from matroidpw.generators import graphic_matroid

two_triangles = graphic_matroid(6, [(1, 2), (2, 3), (1, 3), (4, 5), (5, 6), (4, 6)])
for order in ([1, 2, 3, 4, 5, 6], [1, 4, 2, 5, 3, 6]):
    w, lams = width_of_order(two_triangles, order)
    print(f"two triangles, order {order} -> width {w}, profile {list(lams)}")

# lambda is symmetric: a prefix and its complement separate identically.
m = named("k4")
print("lambda({1,2}) =", lambda_(m, [1, 2]), "= lambda({3,4,5,6}) =", lambda_(m, [3, 4, 5, 6]))
