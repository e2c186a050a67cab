"""Catalog every gluing type of small polygons.

The structured convex enumerator and the general zip search are
independent; on a grid they are both checked against brute force over
noncrossing chord matchings.
"""
import time
from collections import Counter

from foldtope import build_polygon, rectangle, regular_ngon
from foldtope.enumerate import (EnumerationConfig, brute_force_oracle, enumerate_convex,
                                enumerate_general, grid_restricted)

for n in (3, 4, 5, 6):
    p = regular_ngon(n)
    t0 = time.perf_counter()
    cat = enumerate_convex(p)
    dih = enumerate_general(p, EnumerationConfig("dihedral"))
    oracle = brute_force_oracle(p, 0.5)
    same = grid_restricted(cat, 0.5).types == oracle.types
    shapes = Counter(e.structure["shape"] for e in cat)
    print(f"regular {n}-gon: {len(cat):3d} types ({len(dih)} up to symmetry) "
          f"{dict(shapes)}  grid oracle agrees: {same}  [{time.perf_counter() - t0:.2f}s]")

L = build_polygon([[0, 0], [2, 0], [2, 1], [1, 1], [1, 2], [0, 2]])
cat = enumerate_general(L)
print(f"L-shaped hexagon (nonconvex): {len(cat)} types")
print("first catalog line:", cat.to_jsonl().splitlines()[0][:120], "...")

r = rectangle(2, 1)
print(f"2 x 1 rectangle: {len(enumerate_convex(r))} types, "
      f"{len(brute_force_oracle(r, 0.5))} on the half grid")
