"""Fold a rectangle by perimeter halving and look at the gluing tree.

Walks the fold point x along the boundary.  At a generic x the two fold
points roll along a belt; when x or its antipode lands on a corner the
tree changes type and the polytope loses vertices.
"""
import math
import sys

from foldtope import combinatorial_type, gluing_tree, perimeter_halving, rectangle, validate_aleksandrov
from foldtope.gluing import classify_structure
from foldtope.svg import tree_svg

p = rectangle(3, 1)
print(f"rectangle 3 x 1, perimeter {p.perimeter}")

for x in (0.0, 0.4, 1.5, 3.0, 3.5):
    g = perimeter_halving(p, x)
    rep = validate_aleksandrov(p, g)
    t = gluing_tree(p, g)
    s = classify_structure(t)
    print(f"x={x:4.1f}  {rep.verdict:7s} N={t.polytope_vertex_count()}  shape={s['shape']:4s} "
          f"fold leaves={s['foldPointLeaves']} rolling belts={s['rollingBelts']}  "
          f"curvature sum/pi={t.curvature_sum() / math.pi:.6f}")
    print("        type", combinatorial_type(p, g))

# the tree as a picture
if len(sys.argv) > 1:
    with open(sys.argv[1], "w") as fh:
        fh.write(tree_svg(gluing_tree(p, perimeter_halving(p, 0.4))))
    print("wrote", sys.argv[1])
