"""Acceptance criteria 1-11; each prints one PASS/FAIL line.

Run standalone with `python tests/test_acceptance.py` or under pytest.
"""
import math
import sys
import time
from collections import Counter

from foldtope import gluing_tree, regular_ngon, validate_aleksandrov
from foldtope.enumerate import (brute_force_oracle, enumerate_convex, enumerate_path_gluings,
                                grid_restricted, path_candidates)
from foldtope.gluing import classify_structure
from foldtope.reconstruct import (balanced_bit_pairs, make_belt_polygon, make_star_polygon,
                                  rectangle_twist_tetrahedron, star_contraction_gluing,
                                  star_contraction_type)
from foldtope.regular import (check_distance_relations, classify_regular_foldings,
                              pita_gluing, pita_mouth_strip, tabulated_rows)
from foldtope import unfold as U

RESULTS = {}


def _report(num, limit, fn):
    t0 = time.perf_counter()
    ok, detail = fn()
    dt = time.perf_counter() - t0
    if dt >= limit:
        ok, detail = False, f"{detail}; took {dt:.2f}s (limit {limit}s)"
    line = f"criterion {num:2d}: {'PASS' if ok else 'FAIL'}  {detail} [{dt:.2f}s]"
    RESULTS[num] = line
    print(line)
    return ok, detail


def crit1(corpus):
    worst = max(abs(t.curvature_sum() - 4 * math.pi) for _, _, t in corpus)
    return len(corpus) >= 500 and worst <= 1e-7, f"{len(corpus)} gluings, max |sum - 4pi| = {worst:.1e}"


def crit2():
    bad = []
    for n in range(3, 21):
        got = Counter(r.key() for r in classify_regular_foldings(n))
        if got != Counter(tabulated_rows(n)):
            bad.append(n)
    Ns = {n: {r.N for r in classify_regular_foldings(n)} for n in (7, 8)}
    plus = any(r.shape == "+" and r.polytope == "flat square" for r in classify_regular_foldings(4))
    ok = not bad and Ns[7] == {9, 5} and Ns[8] == {10, 6, 5} and plus
    return ok, f"rows differ from the reference tables for n in {bad}" if bad else "all rows match"


def crit3():
    sizes = []
    for n in (3, 4, 5, 6):
        p = regular_ngon(n)
        o = brute_force_oracle(p, 0.5)
        s = grid_restricted(enumerate_convex(p), 0.5)
        if o.types != s.types:
            return False, f"n={n}: oracle {len(o)} vs structured {len(s)}"
        sizes.append(len(o))
    return True, f"type sets equal, sizes {sizes}"


def crit4():
    counts = []
    for m in (4, 6, 8):
        p, spec = make_star_polygon(m)
        types = set()
        for top, bot in balanced_bit_pairs(spec):
            g = star_contraction_gluing(p, spec, top, bot)
            if not validate_aleksandrov(p, g).valid:
                return False, f"m={m} {top}/{bot} invalid"
            types.add(star_contraction_type(p, spec, top, bot))
        if len(types) < 2 ** (m // 2 - 1):
            return False, f"m={m}: {len(types)} types"
        counts.append(len(types))
    return True, f"distinct types {counts} (need 2, 4, 8)"


def crit5(corpus):
    counts = []
    for n in (8, 12, 16):
        p = make_belt_polygon(n)
        c = len(enumerate_path_gluings(p))
        if c < n * n / 4:
            return False, f"n={n}: {c} path types"
        counts.append(c)
    polys = {id(p): p for p, _, _ in corpus if p.is_convex}
    polys.update({n: make_belt_polygon(n) for n in (8, 12, 16)})
    for p in polys.values():
        if len(path_candidates(p)) > p.n * (p.n - 1) + 2 * p.n:
            return False, f"candidate bound exceeded for n={p.n}"
    return True, f"path counts {counts}; candidate bound holds on {len(polys)} polygons"


def crit6():
    for x in (0, 0.25, 0.5, 0.75, 1):
        tet, _, _ = rectangle_twist_tetrahedron(2, 2, x)
        u, v = math.sqrt(x * x + 4), math.sqrt((1 - x) ** 2 + 4)
        want = sorted([1, 1, u, u, v, v])
        if any(abs(a - b) > 1e-9 for a, b in zip(tet.edge_multiset(), want)):
            return False, f"x={x}: edge multiset {tet.edge_multiset()}"
        if (tet.volume == 0) != (x in (0, 1)):
            return False, f"x={x}: volume {tet.volume}"
        real = tet.realized_lengths()
        if any(abs(real[k] - d) > 1e-9 for k, d in tet.lengths.items()):
            return False, f"x={x}: realized distances off"
    return True, "edge multisets, volumes and distances match"


def crit7():
    want = {"tetra": math.pi, "cube": math.pi / 2, "octa": 2 * math.pi / 3,
            "dodeca": math.pi / 5, "icosa": math.pi / 3}
    passing = []
    for s, g in want.items():
        if abs(U.platonic_curvatures(s) - g) > 1e-12:
            return False, f"{s} curvature {U.platonic_curvatures(s)}"
        if U.sharp_vertices(U.platonic_model(s))[1]:
            passing.append(s)
    return passing == ["tetra"], f"sharp condition holds for {passing}"


def _volcano_sigs(asym):
    m = U.make_volcano(12, asym=asym)
    out = {}
    for b in U.volcano_bit_strings(12):
        lay = U.unfold(m, U.volcano_cut_tree(m, b), root="bottom")
        if not lay.simple:
            return None, b
        out[b] = lay.signature()
    return out, None


def crit8():
    sigs, bad = _volcano_sigs(0.01)
    if sigs is None:
        return False, f"asym=0.01 bits {bad} not simple"
    if len(set(sigs.values())) != 32:
        return False, f"asym=0.01: {len(set(sigs.values()))} distinct signatures"
    sym, bad = _volcano_sigs(0.0)
    if sym is None:
        return False, f"asym=0 bits {bad} not simple"
    pairs = [(b, b[::-1]) for b in sym if b < b[::-1]]
    miss = [b for b, r in pairs if sym[b] != sym[r]]
    if miss:
        return False, (f"asym=0.01: 32 simple, 32 distinct; asym=0: {len(miss)}/{len(pairs)} "
                       f"bit/reversed pairs do not collide (e.g. {miss[0]})")
    return True, "32 simple, 32 distinct; reversed bits collide at asym=0"


def crit9():
    m = U.make_slab(6, w=0.1)
    sigs = set()
    strings = U.slab_digit_strings(6)
    for d in strings:
        lay = U.unfold(m, U.slab_cut_tree(m, d), root="strip")
        if not lay.simple:
            return False, f"{d} not simple"
        tail, body = U.slab_separation(m, lay)
        if not (tail > 0 > body):
            return False, f"{d}: separation fails ({tail:.3g}, {body:.3g})"
        sigs.add(lay.signature())
    return len(strings) == 243 and len(sigs) >= 32, f"243 simple, {len(sigs)} signatures"


def crit10():
    for n in (8, 12):
        for a in (0.1, 0.2, 0.3):
            p, g = pita_gluing(n, a)
            if not validate_aleksandrov(p, g).valid:
                return False, f"n={n} a={a} invalid"
            t = gluing_tree(p, g)
            prof = Counter(("b" if d["edges"] else "a", len(d["vertices"]))
                           for _, d in t.graph.nodes(data=True))
            if prof[("b", 0)] != 2 or prof[("b", 1)] != n or t.polytope_vertex_count() != n + 2:
                return False, f"n={n} a={a}: profile {dict(prof)}"
            mouth = pita_mouth_strip(n, a)
            teeth = Counter(x[3] for x in mouth.teeth)
            if teeth != {"T1": n - 2, "T2": 2} or not mouth.is_simple():
                return False, f"n={n} a={a}: mouth {dict(teeth)}"
            rep = check_distance_relations(n, a)
            if not rep.ok:
                return False, f"n={n} a={a}: {len(rep.violations)} distance violations"
    return True, "6 pita cases"


def crit11(corpus):
    four = 0
    for p, g, t in corpus:
        s = classify_structure(t)
        if s["foldPointLeaves"] == 4:
            four += 1
            if s["shape"] not in ("+", "I"):
                return False, f"four fold leaves on a {s['shape']} tree"
        if s["rollingBelts"] > 2:
            return False, f"{s['rollingBelts']} rolling belts"
        if s["rollingBelts"] == 2 and s["shape"] != "I":
            return False, f"two rolling belts on a {s['shape']} tree"
    return True, f"{four} four-fold trees, all + or I"


def test_criterion_01(corpus):
    assert _report(1, 5, lambda: crit1(corpus))[0]


def test_criterion_02():
    ok, detail = _report(2, 1, crit2)
    assert ok, detail


def test_criterion_03():
    assert _report(3, 30, crit3)[0]


def test_criterion_04():
    assert _report(4, 10, crit4)[0]


def test_criterion_05(corpus):
    assert _report(5, 5, lambda: crit5(corpus))[0]


def test_criterion_06():
    assert _report(6, 1, crit6)[0]


def test_criterion_07():
    assert _report(7, 1, crit7)[0]


def test_criterion_08():
    ok, detail = _report(8, 10, crit8)
    assert ok, detail


def test_criterion_09():
    assert _report(9, 20, crit9)[0]


def test_criterion_10():
    assert _report(10, 2, crit10)[0]


def test_criterion_11(corpus):
    assert _report(11, 10, lambda: crit11(corpus))[0]


if __name__ == "__main__":
    sys.path.insert(0, __file__.rsplit("/", 1)[0])
    from conftest import _corpus
    c = _corpus()
    fns = [lambda: crit1(c), crit2, crit3, crit4, lambda: crit5(c), crit6, crit7, crit8,
           crit9, crit10, lambda: crit11(c)]
    limits = [5, 1, 30, 10, 5, 1, 1, 10, 20, 2, 10]
    results = [_report(i + 1, lim, f)[0] for i, (f, lim) in enumerate(zip(fns, limits))]
    sys.exit(0 if all(results) else 1)
