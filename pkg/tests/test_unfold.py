import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from foldtope import build_polygon, rectangle, regular_ngon
from foldtope.errors import CutTreeInvalid, InvalidDigits
from foldtope.unfold import (PLATONIC, CutTree, angle_multiset, congruence_signature,
                             convex_unfolding_leaf_bound, doubled_rectangle_I,
                             doubled_rectangle_path, make_doubled_polygon, make_slab,
                             make_sliver_tetrahedron, make_volcano, perimeter_halving_layout,
                             platonic_curvatures, platonic_model, sharp_vertices,
                             slab_binary_class, slab_cut_tree, slab_digit_strings, slab_paths,
                             slab_separation, unfold, unfold_flat_doubled_polygon,
                             volcano_bit_strings, volcano_cut_tree)

PI = math.pi


@pytest.mark.parametrize("solid,g", [("tetra", PI), ("cube", PI / 2), ("octa", 2 * PI / 3),
                                     ("dodeca", PI / 5), ("icosa", PI / 3)])
def test_platonic_curvature(solid, g):
    assert abs(platonic_curvatures(solid) - g) <= 1e-12
    q = platonic_model(solid)
    assert q.total_curvature == pytest.approx(4 * PI)
    _, ok = sharp_vertices(q)
    assert ok == (solid == "tetra")


def test_leaf_bound():
    assert convex_unfolding_leaf_bound(platonic_model("tetra")) == {"path", "Y", "+", "I"}
    assert convex_unfolding_leaf_bound(platonic_model("cube")) == set()
    sliver = make_sliver_tetrahedron()
    sharp, ok = sharp_vertices(sliver)
    assert [sliver.labels[i] for i in sharp] == ["v4"]
    assert not ok


def test_doubled_polygon_curvature():
    q = make_doubled_polygon(rectangle(2, 1))
    assert list(q.curvatures) == pytest.approx([PI] * 4)
    assert convex_unfolding_leaf_bound(q) == {"path", "Y", "+", "I"}


def test_volcano_model():
    m = make_volcano(12, asym=0.01)
    assert len(m.vertex_ids) == 24
    assert m.total_curvature == pytest.approx(4 * PI)
    with pytest.raises(ValueError):
        make_volcano(7)


@pytest.mark.parametrize("asym", [0.01, 0.0])
def test_volcano_unfoldings(asym):
    m = make_volcano(12, asym=asym)
    bits = volcano_bit_strings(12)
    assert len(bits) == 32
    sigs = set()
    for b in bits:
        t = volcano_cut_tree(m, b)
        t.validate(m)
        lay = unfold(m, t, root="bottom")
        assert lay.simple, b
        assert lay.area_gap < 1e-9
        sigs.add(lay.signature())
    assert len(sigs) == 32


def test_volcano_bits_validation():
    m = make_volcano(12)
    with pytest.raises(InvalidDigits):
        volcano_cut_tree(m, "0101")
    with pytest.raises(InvalidDigits):
        volcano_cut_tree(m, "01201")


def test_unfolding_preserves_area_and_perimeter():
    m = make_volcano(8, asym=0.01)
    lay = unfold(m, volcano_cut_tree(m, "010"), root="bottom")
    P = lay.polygon
    from foldtope.unfold import _newell
    area = sum(0.5 * np.linalg.norm(_newell(m.points[list(f)])) for f in m.faces)
    from foldtope.geometry import signed_area
    assert signed_area(P.vertices) == pytest.approx(area)
    # every cut edge appears twice on the boundary
    cut_len = sum(np.linalg.norm(m.points[u] - m.points[v])
                  for u, v, *_ in volcano_cut_tree(m, "010").arcs)
    assert P.perimeter == pytest.approx(2 * cut_len)


def test_slab_paths_example():
    a, b = slab_paths(10, "0022020100")
    lab = lambda seq: [f"{s}{i}" for s, i in seq]
    assert lab(a) == ["a0", "a1", "a2", "b3", "a3", "a4", "a6", "a9", "a10", "a11"]
    assert lab(b) == ["b0", "b1", "b2", "b4", "a5", "b5", "b6", "a7", "b7", "a8", "b8",
                      "b9", "b10", "b11"]


def test_slab_digit_validation():
    with pytest.raises(InvalidDigits):
        slab_paths(4, "0101")
    with pytest.raises(InvalidDigits):
        slab_paths(4, "013")
    assert len(slab_digit_strings(6)) == 3 ** 5
    assert slab_binary_class("0212") == "0111"


def test_slab_unfoldings():
    m = make_slab(6)
    assert m.total_curvature == pytest.approx(4 * PI)
    sigs = set()
    for d in slab_digit_strings(6):
        t = slab_cut_tree(m, d)
        t.validate(m)
        assert t.shape(m) == "path"
        lay = unfold(m, t, root="strip")
        assert lay.simple, d
        tail, body = slab_separation(m, lay)
        assert tail > 0 > body, d
        sigs.add(lay.signature())
    assert len(sigs) == 122


def test_cut_tree_validation():
    q = platonic_model("tetra")
    with pytest.raises(CutTreeInvalid):
        CutTree([(0, 1), (1, 2)]).validate(q)  # misses a vertex
    with pytest.raises(CutTreeInvalid):
        CutTree([(0, 1), (1, 2), (2, 0), (0, 3)]).validate(q)  # cycle
    t = CutTree([(0, 1), (1, 2), (2, 3)])
    t.validate(q)
    lay = unfold(q, t)
    assert lay.simple
    assert lay.polygon.n == 4  # path unfolding of a regular tetrahedron: parallelogram


def test_tetra_star_unfolding_is_triangle():
    q = platonic_model("tetra")
    lay = unfold(q, CutTree([(0, 1), (0, 2), (0, 3)]))
    assert lay.simple
    assert lay.polygon.n == 3
    assert angle_multiset(lay.polygon, 6) == [round(PI / 3, 6)] * 3


def test_doubled_rectangle_path_is_convex():
    model, tree = doubled_rectangle_path()
    lay = unfold(model, tree, root="bottom")
    assert lay.simple
    assert lay.polygon.is_convex
    assert tree.shape(model) == "path"


def test_doubled_rectangle_I():
    model, tree = doubled_rectangle_I()
    tree.validate(model)
    assert tree.shape(model) == "I"
    lay = unfold(model, tree, root="bottom")
    assert lay.simple
    assert lay.polygon.is_convex


def test_equilateral_star_unfolding_is_regular_hexagon():
    p = regular_ngon(3)
    c = p.vertices.mean(axis=0)
    P = unfold_flat_doubled_polygon(p, c)
    assert P.n == 6
    assert np.allclose(P.angles, 2 * PI / 3)


def test_flat_doubled_rejects_outside_point():
    with pytest.raises(ValueError):
        unfold_flat_doubled_polygon(rectangle(2, 1), [3, 3])


def test_signature_invariance():
    p = build_polygon([[0, 0], [4, 0], [5, 2], [2, 4], [-1, 2]])
    s = congruence_signature(p)
    th = 0.7
    R = np.array([[math.cos(th), -math.sin(th)], [math.sin(th), math.cos(th)]])
    moved = p.vertices @ R.T + np.array([3.0, -2.0])
    assert congruence_signature(moved) == s
    assert congruence_signature(np.roll(moved, 2, axis=0)) == s
    mirrored = p.vertices * np.array([-1, 1])
    assert congruence_signature(mirrored) == s
    # subdividing an edge does not change the shape
    sub = np.insert(p.vertices, 1, [2, 0], axis=0)
    assert congruence_signature(sub) == s
    assert congruence_signature(rectangle(2, 1)) != congruence_signature(rectangle(3, 1))


@settings(max_examples=50, deadline=None)
@given(st.floats(-PI, PI), st.floats(-5, 5), st.floats(-5, 5), st.booleans(), st.integers(0, 4))
def test_signature_rigid_motion_property(th, dx, dy, mirror, roll):
    p = build_polygon([[0, 0], [4, 0], [5, 2], [2, 4], [-1, 2]])
    R = np.array([[math.cos(th), -math.sin(th)], [math.sin(th), math.cos(th)]])
    V = p.vertices * (np.array([-1, 1]) if mirror else 1)
    V = np.roll(V @ R.T + [dx, dy], roll, axis=0)
    assert congruence_signature(V) == congruence_signature(p)


def test_perimeter_halving_layout():
    p = regular_ngon(5)
    lay = perimeter_halving_layout(p, 0.3)
    assert len(lay.copies) == 2 * p.n
    for c in lay.copies:
        a, b = c["segment"]
        # the copy reproduces the polygon's edge lengths
        V = c["vertices"]
        e = np.linalg.norm(np.roll(V, -1, axis=0) - V, axis=1)
        assert e == pytest.approx(p.edge_lengths)
    assert any(g["valid"] for g in lay.geodesics)
    assert perimeter_halving_layout(p, 0.3, levels=0).copies == []
    with pytest.raises(ValueError):
        perimeter_halving_layout(p, 0.3, levels=2)
