"""Explicit polytopes from gluings.

1. A rectangle twisted into a one-parameter family of tetrahedra.
2. Star polygons whose contraction bits give exponentially many gluings.
3. A zigzag band with many four-fold gluings.
"""
import itertools
import math

from foldtope import combinatorial_type, gluing_tree, validate_aleksandrov
from foldtope.reconstruct import (balanced_bit_pairs, make_star_polygon, rectangle_twist_tetrahedron,
                                  star_contraction_gluing, zigzag_gluing)

print("rectangle 2 x 2, twist x")
for x in (0, 0.25, 0.5, 0.75, 1):
    tet, p, g = rectangle_twist_tetrahedron(2, 2, x)
    edges = ", ".join(f"{v:.4f}" for v in tet.edge_multiset())
    print(f"  x={x:4.2f} volume={tet.volume:.5f} edges [{edges}]")

for m in (4, 6, 8):
    p, spec = make_star_polygon(m)
    types = set()
    for top, bot in balanced_bit_pairs(spec):
        g = star_contraction_gluing(p, spec, top, bot)
        assert validate_aleksandrov(p, g).valid
        types.add(combinatorial_type(p, g))
    print(f"star m={m}: tip angle {math.degrees(spec.alpha):.2f} deg, "
          f"{len(types)} distinct contraction gluings (bound {2 ** (m // 2 - 1)})")

for k in (2, 3):
    ok = 0
    for i, j in itertools.product(range(1, 2 * k), repeat=2):
        if k in (i, j):
            continue
        p, g = zigzag_gluing(k, i, j)
        ok += validate_aleksandrov(p, g).valid
    print(f"zigzag k={k}: {ok} valid four-fold gluings on a {p.n}-gon")
