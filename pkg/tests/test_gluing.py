import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from foldtope import (Gluing, build_polygon, GluingType, combinatorial_type, gluing_tree, perimeter_halving,
                      rectangle, regular_ngon, validate_aleksandrov)
from foldtope.errors import LengthMismatch
from foldtope.gluing import (classify_structure, contract_degree2, gluing_from_corners,
                             gluing_tree_from_type, realize_type, realization_dimension,
                             shape_name, spider_gluing)

FOUR_PI = 4 * math.pi


def test_perimeter_halving_square_at_vertex():
    p = regular_ngon(4)
    g = perimeter_halving(p, 0.0)
    assert validate_aleksandrov(p, g).valid
    t = gluing_tree(p, g)
    assert t.curvature_sum() == pytest.approx(FOUR_PI)
    # v0 and v2 zip, v1 meets v3: a flat doubled triangle
    assert t.polytope_vertex_count() == 3
    assert classify_structure(t)["shape"] == "path"


def test_perimeter_halving_generic_point_has_rolling_belt():
    p = rectangle(3, 1)
    g = perimeter_halving(p, 0.37)
    t = gluing_tree(p, g)
    s = classify_structure(t)
    assert s["foldPointLeaves"] == 2
    assert s["rollingBelts"] == 1
    assert t.polytope_vertex_count() == 6


def test_gluing_image_pairs_symmetric_points():
    p = rectangle(2, 1)
    g = perimeter_halving(p, 0.5)
    img = g.image(1.0)
    assert sorted(img) == pytest.approx([0.0, 1.0])
    # 0.5 is a fold point: glued only to itself
    assert g.image(0.5) == pytest.approx([0.5])


def test_json_round_trip():
    p = regular_ngon(5)
    g = perimeter_halving(p, 0.3)
    h = Gluing.from_json(p, g.to_json())
    assert np.allclose(np.array(h.pairs), np.array(g.pairs))


def test_from_intervals_rejects_length_mismatch():
    p = rectangle(2, 1)
    with pytest.raises(LengthMismatch):
        Gluing.from_intervals(p, [((0, 1), (2, 2.5))])


def test_angle_excess_detected():
    # all four square corners in one node: 2pi total is allowed ...
    p = regular_ngon(4)
    g = spider_gluing(p, [0, 1, 2, 3])
    assert validate_aleksandrov(p, g).valid
    # ... but five right angles are not possible; glue a pentagon's corners
    q = regular_ngon(5)
    h = spider_gluing(q, [0, 1, 2, 3, 4])
    rep = validate_aleksandrov(q, h)
    assert not rep.valid
    assert "AngleExcess" in rep.kinds()


def test_coverage_gap_detected():
    p = rectangle(2, 1)
    g = Gluing(p, [(0.0, 2.0, 1.0)], refine=False)
    rep = validate_aleksandrov(p, g)
    assert "LengthMismatch" in rep.kinds()


def test_crossing_chords_detected():
    p = regular_ngon(4)
    # [0,1]~[2,1] reversed and [1,2]~[3,2] reversed interleave
    g = Gluing(p, [(0.0, 2.0, 1.0), (1.0, 3.0, 1.0)], refine=False)
    assert not validate_aleksandrov(p, g).valid


def test_combinatorial_type_of_tetrahedron_fold():
    # equilateral triangle folded at edge midpoints: every vertex zips to itself
    p = regular_ngon(3)
    g = gluing_from_corners(p, [0.5, 1.5, 2.5], ["c", "c", "c"])
    t = combinatorial_type(p, g)
    assert t == GluingType.from_pairs([(0, "v", 0), (1, "v", 1), (2, "v", 2)])
    tree = gluing_tree(p, g)
    assert tree.polytope_vertex_count() == 4
    assert classify_structure(tree)["shape"] == "Y"
    assert GluingType.from_json(t.to_json()) == t


def test_tree_from_type_matches_tree_from_gluing(corpus):
    for p, g, tree in corpus[:80]:
        t = combinatorial_type(p, g)
        t2 = gluing_tree_from_type(p, t)
        assert sorted(d["vertices"] for _, d in t2.graph.nodes(data=True) if d["vertices"]) == \
            sorted(d["vertices"] for _, d in tree.graph.nodes(data=True) if d["vertices"])


def test_realize_type_round_trip():
    p = rectangle(3, 1)
    g = perimeter_halving(p, 0.4)
    t = combinatorial_type(p, g)
    g2 = realize_type(p, t)
    assert validate_aleksandrov(p, g2).valid
    assert combinatorial_type(p, g2) == t
    assert realization_dimension(p, t) == 1


def test_shape_names():
    import networkx as nx
    assert shape_name(nx.path_graph(5)) == "path"
    assert shape_name(nx.star_graph(3)) == "Y"
    assert shape_name(nx.star_graph(4)) == "+"
    G = nx.Graph([(0, 1), (0, 2), (0, 3), (3, 4), (3, 5)])
    assert shape_name(G) == "I"


def test_contract_degree2_keeps_leaves():
    p = regular_ngon(6)
    t = gluing_tree(p, perimeter_halving(p, 0.2))
    G = contract_degree2(t)
    assert all(G.degree(v) != 2 for v in G.nodes)
    assert len([v for v in G.nodes if G.degree(v) == 1]) == len(t.leaves())


@settings(max_examples=60, deadline=None)
@given(st.integers(3, 9), st.floats(0, 1, allow_nan=False, exclude_max=True))
def test_perimeter_halving_always_valid(n, frac):
    p = regular_ngon(n)
    g = perimeter_halving(p, frac * p.perimeter)
    assert validate_aleksandrov(p, g).valid
    t = gluing_tree(p, g)
    assert abs(t.curvature_sum() - FOUR_PI) < 1e-7
    assert all(d["curvature"] >= -1e-9 for _, d in t.graph.nodes(data=True))
    assert len(t.leaves()) == 2


@settings(max_examples=60, deadline=None)
@given(st.lists(st.floats(0, 2 * math.pi, allow_nan=False), min_size=3, max_size=9, unique=True),
       st.floats(0, 1, exclude_max=True))
def test_halving_random_convex(angles, frac):
    a = np.sort(angles)
    gaps = np.diff(np.r_[a, a[0] + 2 * math.pi])
    if gaps.min() < 0.05 or gaps.max() > math.pi - 0.05:
        return
    p = build_polygon(np.column_stack([np.cos(a), np.sin(a)]))
    g = perimeter_halving(p, frac * p.perimeter)
    assert validate_aleksandrov(p, g).valid
    t = gluing_tree(p, g)
    assert abs(t.curvature_sum() - FOUR_PI) < 1e-7


@pytest.mark.parametrize("off", [0.0, 1e-12, 3e-9, 1e-8, 1e-6])
def test_halving_near_vertex(off):
    p = regular_ngon(3)
    for x in (off, p.perimeter - off, 1.5 + off):
        t = gluing_tree(p, perimeter_halving(p, x))
        assert abs(t.curvature_sum() - FOUR_PI) < 1e-7


def test_gauss_bonnet_on_corpus(corpus):
    assert len(corpus) >= 500
    for p, g, t in corpus:
        assert abs(t.curvature_sum() - FOUR_PI) < 1e-7


def test_corpus_validates(corpus):
    for p, g, t in corpus[::7]:
        assert validate_aleksandrov(p, g).valid
