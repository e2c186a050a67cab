"""Cut polytopes open along trees and compare the resulting polygons.

Volcano: 2^(m/2-1) spoke trees, all simple, all noncongruent once one
top edge is lengthened.  Slab: ternary path trees that stay simple
because a line separates the head of the unfolding from its tail.
"""
import sys
import tempfile

from foldtope import regular_ngon
from foldtope import unfold as U
from foldtope.svg import layout_svg

for s in U.PLATONIC:
    q = U.platonic_model(s)
    sharp, ok = U.sharp_vertices(q)
    print(f"{s:7s} curvature {U.platonic_curvatures(s):.4f}  sharp {len(sharp):2d}  "
          f"convex unfolding possible: {ok}")

m = U.make_volcano(12, asym=0.01)
sigs = {}
for b in U.volcano_bit_strings(12):
    lay = U.unfold(m, U.volcano_cut_tree(m, b), root="bottom")
    sigs[b] = (lay.simple, lay.signature())
print(f"volcano m=12: {sum(s for s, _ in sigs.values())} simple of {len(sigs)}, "
      f"{len({g for _, g in sigs.values()})} distinct shapes")

slab = U.make_slab(6)
shapes = set()
for d in U.slab_digit_strings(6):
    lay = U.unfold(slab, U.slab_cut_tree(slab, d), root="strip")
    tail, body = U.slab_separation(slab, lay)
    assert lay.simple and tail > 0 > body
    shapes.add(lay.signature())
print(f"slab n=6: 243 path unfoldings, {len(shapes)} distinct shapes")

P = U.unfold_flat_doubled_polygon(regular_ngon(3), regular_ngon(3).vertices.mean(axis=0))
print("star unfolding of a doubled equilateral triangle:", P.n, "corners, angles",
      sorted(set(round(float(a), 6) for a in P.angles)))

out = sys.argv[1] if len(sys.argv) > 1 else tempfile.mktemp(suffix=".svg")
with open(out, "w") as fh:
    fh.write(layout_svg(U.unfold(m, U.volcano_cut_tree(m, "10011"), root="bottom")))
print("volcano T_10011 drawn to", out)
