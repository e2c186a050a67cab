import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from foldtope import combinatorial_type, gluing_tree, validate_aleksandrov
from foldtope.enumerate import brute_force_oracle, enumerate_general, grid_restricted
from foldtope.errors import NegativeCayleyMenger, Unbalanced, ViolatedTriangleInequality
from foldtope.gluing import classify_structure
from foldtope.reconstruct import (PAIRS, balanced_bit_pairs, cayley_menger, make_belt_polygon,
                                  make_star_polygon, make_zigzag_polygon, rectangle_I_gluing,
                                  rectangle_twist_tetrahedron, star_contracted_vertices,
                                  star_contraction_gluing, star_contraction_type,
                                  surface_twist_lengths, tetrahedron_from_edge_lengths,
                                  twist_lengths, zigzag_gluing)


def _lengths(P):
    return [float(np.linalg.norm(P[i - 1] - P[j - 1])) for i, j in PAIRS]


def test_regular_tetrahedron():
    t = tetrahedron_from_edge_lengths([1] * 6)
    assert t.volume == pytest.approx(1 / (6 * math.sqrt(2)))
    assert all(c == pytest.approx(math.pi) for c in t.vertex_curvatures())


def test_corner_tetrahedron():
    r2 = math.sqrt(2)
    t = tetrahedron_from_edge_lengths({(1, 2): 1, (1, 3): 1, (1, 4): 1,
                                       (2, 3): r2, (2, 4): r2, (3, 4): r2})
    assert t.volume == pytest.approx(1 / 6)
    assert cayley_menger(t.lengths) == pytest.approx(288 / 36)


def test_flat_tetrahedron():
    # unit square with its diagonals
    r2 = math.sqrt(2)
    t = tetrahedron_from_edge_lengths([1, r2, 1, 1, r2, 1])
    assert t.is_flat()
    assert sum(t.vertex_curvatures()) == pytest.approx(4 * math.pi)


def test_triangle_violation():
    with pytest.raises(ViolatedTriangleInequality):
        tetrahedron_from_edge_lengths([1, 1, 1, 3, 1, 1])


def test_negative_cayley_menger():
    # every face is a valid triangle, but the faces cannot close up
    with pytest.raises(NegativeCayleyMenger):
        tetrahedron_from_edge_lengths([1, 1, 1, 1.9, 1.9, 1.9])


def test_obj_output():
    obj = tetrahedron_from_edge_lengths([1] * 6).to_obj()
    assert obj.count("\nv ") + obj.startswith("v ") == 4
    assert obj.count("f ") == 4


@settings(max_examples=80, deadline=None)
@given(st.lists(st.floats(-3, 3, allow_nan=False), min_size=12, max_size=12))
def test_embedding_round_trip(xs):
    P = np.array(xs).reshape(4, 3)
    vol = abs(np.linalg.det(P[1:] - P[0])) / 6
    d = _lengths(P)
    if min(d) < 0.05 or vol < 1e-3:
        return
    t = tetrahedron_from_edge_lengths(d)
    assert t.volume == pytest.approx(vol, rel=1e-6)
    assert list(t.realized_lengths().values()) == pytest.approx(d, abs=1e-8)


@pytest.mark.parametrize("x", [0, 0.25, 0.5, 0.75, 1])
def test_rectangle_twist(x):
    tet, p, g = rectangle_twist_tetrahedron(2, 2, x)
    u, v = math.sqrt(x * x + 4), math.sqrt((1 - x) ** 2 + 4)
    assert tet.edge_multiset() == pytest.approx(sorted([1, 1, u, u, v, v]), abs=1e-9)
    if x in (0, 1):
        assert tet.volume == 0
    else:
        assert tet.volume > 0
    real = tet.realized_lengths()
    for k, want in tet.lengths.items():
        assert abs(real[k] - want) <= 1e-9
    assert validate_aleksandrov(p, g).valid


@pytest.mark.parametrize("x", [0.25, 0.5, 0.75])
def test_twist_gluing_structure(x):
    tet, p, g = rectangle_twist_tetrahedron(2, 2, x)
    t = gluing_tree(p, g)
    s = classify_structure(t)
    assert s["shape"] == "I"
    assert s["foldPointLeaves"] == 4
    assert s["rollingBelts"] == 2


@settings(max_examples=60, deadline=None)
@given(st.floats(0.5, 4), st.floats(0.1, 3), st.floats(0, 1))
def test_twist_metric_matches_surface(L, W, frac):
    x = frac * L / 2
    from foldtope.reconstruct import _twist_base
    x1, x2 = _twist_base(L, x)
    surf = surface_twist_lengths(L, W, x1, x2)
    want = twist_lengths(L, W, x)
    if W >= L / 4:
        for k in PAIRS:
            assert surf[k] == pytest.approx(want[k], abs=1e-9)
    # the exact surface metric always embeds
    tet = tetrahedron_from_edge_lengths(surf)
    real = tet.realized_lengths()
    assert all(abs(real[k] - surf[k]) < 1e-8 for k in PAIRS)


def test_flat_rectangle_shortcut():
    # for W < L/4 the bottom creases are closer over the top rim
    from foldtope.reconstruct import _twist_base
    x1, x2 = _twist_base(3, 0.75)
    surf = surface_twist_lengths(3, 0.5, x1, x2)
    assert surf[(1, 2)] == pytest.approx(1.0)
    assert twist_lengths(3, 0.5, 0.75)[(1, 2)] == 1.5


def test_twist_crease_on_corner_rejected():
    with pytest.raises(ValueError):
        rectangle_I_gluing(2, 1, 0.0, 0.5)


@pytest.mark.parametrize("m,types", [(4, 2), (6, 6), (8, 20)])
def test_star_contractions(m, types):
    p, spec = make_star_polygon(m)
    assert p.n == 2 * m
    seen = set()
    for top, bot in balanced_bit_pairs(spec):
        g = star_contraction_gluing(p, spec, top, bot)
        assert validate_aleksandrov(p, g).valid
        assert abs(gluing_tree(p, g).curvature_sum() - 4 * math.pi) < 1e-7
        seen.add(combinatorial_type(p, g))
    assert len(seen) == types
    assert len(seen) >= 2 ** (m // 2 - 1)


def test_star_geometry():
    p, spec = make_star_polygon(6)
    assert p.angles[0] == pytest.approx(spec.alpha)
    assert p.angles[1] == pytest.approx(spec.beta)
    assert spec.y.arc(p) - spec.x.arc(p) == pytest.approx(p.perimeter / 2)
    assert spec.alpha + spec.beta < 2 * math.pi


def test_star_contracted_leaves_are_zipped():
    p, spec = make_star_polygon(6)
    leaves = star_contracted_vertices(spec, "10", "01")
    g = star_contraction_gluing(p, spec, "10", "01")
    t = combinatorial_type(p, g).as_dict()
    for k in leaves:
        assert t[k] == ("v", k)


def test_star_unbalanced():
    p, spec = make_star_polygon(6)
    with pytest.raises(Unbalanced):
        star_contraction_type(p, spec, "11", "00")


def test_star_contractions_in_general_catalog():
    p, spec = make_star_polygon(4)
    cat = enumerate_general(p)
    for top, bot in balanced_bit_pairs(spec):
        assert star_contraction_type(p, spec, top, bot) in cat


@pytest.mark.parametrize("k,count", [(2, 4), (3, 16)])
def test_zigzag_gluings(k, count):
    valid = 0
    for i, j in itertools.product(range(1, 2 * k), repeat=2):
        if k in (i, j):
            continue
        p, g = zigzag_gluing(k, i, j)
        assert validate_aleksandrov(p, g).valid
        s = classify_structure(gluing_tree(p, g))
        assert s["shape"] == "I" and s["foldPointLeaves"] == 4
        valid += 1
    assert valid == count


def test_zigzag_polygon_shape():
    p = make_zigzag_polygon(2)
    assert p.n == 12
    angs = sorted(np.round(p.angles / (math.pi / 4)).astype(int))
    assert angs == [1, 1, 2, 2, 2, 2, 3, 3, 6, 6, 6, 6]


def test_zigzag_oracle():
    p = make_zigzag_polygon(2)
    o = brute_force_oracle(p, 0.5)
    assert len(o) == 20
    assert grid_restricted(enumerate_general(p), 0.5).types == o.types


def test_belt_polygon():
    p = make_belt_polygon(12)
    assert p.is_convex and p.n == 12
    with pytest.raises(ValueError):
        make_belt_polygon(7)
