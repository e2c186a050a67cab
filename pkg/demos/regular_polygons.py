"""Fold classes of regular polygons and the pita polytopes.

Curvatures are exact multiples of pi, so each class is a curvature
budget summing to 4pi.  Past n = 6 only path trees survive.
"""
from foldtope.regular import (check_distance_relations, classify_regular_foldings,
                              format_curvatures, pita_mouth_strip)

for n in range(3, 11):
    print(f"n = {n}")
    for r in classify_regular_foldings(n):
        note = f"   [{r.discrepancy}]" if r.discrepancy else ""
        print(f"   {r.shape:5s} {format_curvatures(r.curvatures):28s} N={r.N:<3d} {r.polytope}{note}")

print()
for n in (8, 12):
    for a in (0.1, 0.3):
        m = pita_mouth_strip(n, a)
        rep = check_distance_relations(n, a)
        kinds = sorted({t[3] for t in m.teeth})
        print(f"pita n={n} a={a}: {len(m.teeth)} teeth {kinds}, simple mouth {m.is_simple()}, "
              f"distance checks ok {rep.ok}, adjacent shrink {rep.adjacent_ratio:.4f}")
