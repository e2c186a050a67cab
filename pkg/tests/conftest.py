import sys

import pytest

from foldtope import rectangle, regular_ngon, build_polygon
from foldtope.enumerate import EnumerationConfig, enumerate_convex, enumerate_general
from foldtope.gluing import gluing_tree, perimeter_halving
from foldtope.reconstruct import (balanced_bit_pairs, make_belt_polygon, make_star_polygon,
                                  make_zigzag_polygon, star_contraction_gluing)


def _corpus():
    """(polygon, gluing, tree) triples from every generator in the package."""
    out = []

    def add_cat(cat):
        for e in cat:
            out.append((cat.polygon, e.gluing, e.tree))

    for n in range(3, 9):
        add_cat(enumerate_general(regular_ngon(n)))
    for p in (rectangle(2, 1), rectangle(3, 1),
              build_polygon([[0, 0], [2, 0], [2, 1], [1, 1], [1, 2], [0, 2]]),
              build_polygon([[0, 0], [4, 0], [5, 2], [2, 4], [-1, 2]]),
              make_zigzag_polygon(2)):
        add_cat(enumerate_general(p, EnumerationConfig(max_results=20000)))
    add_cat(enumerate_convex(make_belt_polygon(12)))
    for m in (4, 6):
        p, spec = make_star_polygon(m)
        for t, b in balanced_bit_pairs(spec):
            g = star_contraction_gluing(p, spec, t, b)
            out.append((p, g, gluing_tree(p, g)))
    p = regular_ngon(8)
    for k in range(40):
        g = perimeter_halving(p, 0.1 * k + 0.013)
        out.append((p, g, gluing_tree(p, g)))
    return out


@pytest.fixture(scope="session")
def corpus():
    return _corpus()


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[k])
