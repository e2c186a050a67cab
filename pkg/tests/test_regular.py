import math
from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from foldtope import gluing_tree, validate_aleksandrov
from foldtope.errors import MidpointOffset
from foldtope.gluing import classify_structure
from foldtope.regular import (ERRATA, EXTRA, CurvatureBudget, Infeasible, alpha_k, beta_k,
                              check_distance_relations, classify_regular_foldings,
                              derive_regular_classes, format_curvatures, path_budget_rows,
                              pita_gluing, pita_mouth_strip, tabulated_rows)


def test_small_curvature_values():
    assert alpha_k(3, 3) == 1
    assert alpha_k(4, 4) == 0
    assert alpha_k(5, 3) == Fraction(1, 5)
    assert alpha_k(6, 3) == 0
    assert beta_k(3, 3) == 0
    assert beta_k(4, 2) == 0
    assert beta_k(7, 0) == 1
    assert alpha_k(7, 3) is Infeasible
    assert beta_k(5, 2) is Infeasible
    with pytest.raises(ValueError):
        alpha_k(2, 1)


@given(st.integers(3, 60))
def test_curvature_formulas_match_angles(n):
    theta = Fraction(n - 2, n)  # interior angle in units of pi
    assert alpha_k(n, 1) == 2 - theta
    assert alpha_k(n, 2) == 2 - 2 * theta
    assert beta_k(n, 0) == 1
    assert beta_k(n, 1) == 1 - theta


@given(st.integers(3, 60))
def test_path_rows_are_balanced(n):
    for a1, b0, a2, b1, counts, N in path_budget_rows(n):
        bud = CurvatureBudget(n, counts)
        assert bud.total() == 4
        assert bud.index_sum() == n
        assert a1 + b0 == 2


@pytest.mark.parametrize("n,Ns", [(7, {9, 5}), (8, {10, 6, 5})])
def test_vertex_counts(n, Ns):
    assert {r.N for r in classify_regular_foldings(n)} == Ns


def test_flat_square_plus():
    rows = classify_regular_foldings(4)
    plus = [r for r in rows if r.shape == "+"]
    assert len(plus) == 1
    assert plus[0].polytope == "flat square"
    assert plus[0].N == 4


@pytest.mark.parametrize("n", range(3, 21))
def test_every_class_is_balanced(n):
    for r in classify_regular_foldings(n):
        assert r.budget().balanced(), r
        assert r.budget().vertex_count() == r.N


@pytest.mark.parametrize("n", range(5, 21))
def test_tables_reproduced_without_errata(n):
    got = Counter(r.key() for r in classify_regular_foldings(n))
    assert got == Counter(tabulated_rows(n))


@pytest.mark.parametrize("n", [3, 4])
def test_errata_are_the_only_differences(n):
    rows = classify_regular_foldings(n)
    fixed = [r for r in rows if r.discrepancy]
    assert {r.description for r in fixed} == \
        {d for (m, d) in ERRATA if m == n} | {d for _, d, *_ in EXTRA.get(n, [])}
    # each corrected printed row is unbalanced or is reproduced elsewhere
    for r in fixed:
        if r.printed is not None:
            bad = CurvatureBudget(n, r.printed)
            assert not bad.balanced() or any(
                q.curvatures == r.printed and q.shape != r.printed_shape for q in rows)


@pytest.mark.parametrize("n", [3, 4, 5, 6, 7, 8])
def test_classes_match_exhaustive_enumeration(n):
    derived = Counter((s, c, N, cont) for s, c, N, cont, _ in derive_regular_classes(n))
    assert derived == Counter(r.key() for r in classify_regular_foldings(n))


def test_format_curvatures():
    r = [q for q in classify_regular_foldings(3) if q.description == "3 v"][0]
    assert format_curvatures(r.curvatures) == "α3 + 3β0"


@pytest.mark.parametrize("n", [8, 12])
@pytest.mark.parametrize("a", [0.1, 0.2, 0.3])
def test_pita_structure(n, a):
    p, g = pita_gluing(n, a)
    assert validate_aleksandrov(p, g).valid
    t = gluing_tree(p, g)
    prof = Counter(("beta" if d["edges"] else "alpha", len(d["vertices"]))
                   for _, d in t.graph.nodes(data=True))
    assert prof[("beta", 0)] == 2
    assert prof[("beta", 1)] == n
    assert t.polytope_vertex_count() == n + 2
    assert classify_structure(t)["shape"] == "path"


@pytest.mark.parametrize("n", [8, 12])
@pytest.mark.parametrize("a", [0.1, 0.2, 0.3])
def test_pita_mouth(n, a):
    m = pita_mouth_strip(n, a)
    shapes = Counter(t[3] for t in m.teeth)
    assert shapes == {"T1": n - 2, "T2": 2}
    assert m.is_simple()
    b = 1 - 2 * a
    for t in m.teeth:
        s = m.tooth_sides(t)
        if t[3] == "T1":
            assert sorted(s[:2]) == pytest.approx(sorted([b, 2 * a]))
        else:
            assert sorted(s[:2]) == pytest.approx(sorted([a, b]))


@pytest.mark.parametrize("n", [8, 12])
@pytest.mark.parametrize("a", [0.1, 0.2, 0.3])
def test_pita_distances(n, a):
    rep = check_distance_relations(n, a)
    assert rep.ok, rep.violations
    assert rep.adjacent_ratio < 1


def test_pita_midpoint_rejected():
    with pytest.raises(MidpointOffset):
        pita_gluing(8, 0.5)
    with pytest.raises(ValueError):
        pita_gluing(8, 1.2)
