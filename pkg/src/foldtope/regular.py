"""Foldings of regular polygons: curvature values, fold classes, pita polytopes.

Curvatures of regular n-gon foldings are exact rationals in units of pi:
a node gluing k polygon vertices together has curvature alpha_k, and a node
gluing k vertices to one edge-interior point has curvature beta_k.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import config
from .errors import MidpointOffset
from .geometry import regular_ngon, segments_intersect
from .gluing import perimeter_halving


class _Infeasible:
    def __repr__(self):
        return "Infeasible"

    def __bool__(self):
        return False


Infeasible = _Infeasible()

# explicit small-n cells (units of pi); k = 1, 2 follow the general formulas
ALPHA_TABLE = {
    (3, 1): Fraction(5, 3), (3, 2): Fraction(4, 3), (3, 3): Fraction(1),
    (4, 1): Fraction(3, 2), (4, 2): Fraction(1), (4, 3): Fraction(1, 2), (4, 4): Fraction(0),
    (5, 1): Fraction(7, 5), (5, 2): Fraction(4, 5), (5, 3): Fraction(1, 5),
    (6, 1): Fraction(4, 3), (6, 2): Fraction(2, 3), (6, 3): Fraction(0),
}
BETA_TABLE = {
    (3, 0): Fraction(1), (3, 1): Fraction(2, 3), (3, 2): Fraction(1, 3), (3, 3): Fraction(0),
    (4, 0): Fraction(1), (4, 1): Fraction(1, 2), (4, 2): Fraction(0),
}


def _alpha_formula(n, k):
    return 2 - Fraction(k * (n - 2), n)


def _beta_formula(n, k):
    return 1 - Fraction(k * (n - 2), n)


def _check_tables():
    for (n, k), v in ALPHA_TABLE.items():
        assert v == _alpha_formula(n, k), (n, k)
    for (n, k), v in BETA_TABLE.items():
        assert v == _beta_formula(n, k), (n, k)


_check_tables()


def alpha_k(n, k):
    """Curvature (units of pi) of k glued vertices, or Infeasible."""
    if n < 3 or k < 1:
        raise ValueError("alpha_k needs n >= 3 and k >= 1")
    if k <= 2 or (n, k) in ALPHA_TABLE:
        return _alpha_formula(n, k)
    return Infeasible


def beta_k(n, k):
    """Curvature (units of pi) of k vertices glued to an edge point, or Infeasible."""
    if n < 3 or k < 0:
        raise ValueError("beta_k needs n >= 3 and k >= 0")
    if k <= 1 or (n, k) in BETA_TABLE:
        return _beta_formula(n, k)
    return Infeasible


def curvature(n, kind, k):
    return alpha_k(n, k) if kind == "alpha" else beta_k(n, k)


@dataclass(frozen=True)
class CurvatureBudget:
    n: int
    counts: tuple  # sorted ((kind, k), count)

    @classmethod
    def of(cls, n, counts):
        return cls(n, tuple(sorted(dict(counts).items())))

    def total(self):
        """Total curvature in units of pi, or Infeasible."""
        s = Fraction(0)
        for (kind, k), c in self.counts:
            v = curvature(self.n, kind, k)
            if v is Infeasible:
                return Infeasible
            s += c * v
        return s

    def index_sum(self):
        return sum(c * k for (_, k), c in self.counts)

    def balanced(self):
        return self.total() == 4 and self.index_sum() == self.n

    def vertex_count(self):
        return sum(c for (kind, k), c in self.counts if curvature(self.n, kind, k) != 0)


def format_curvatures(counts):
    parts = []
    for (kind, k), c in sorted(dict(counts).items()):
        sym = "α" if kind == "alpha" else "β"
        parts.append(f"{c if c > 1 else ''}{sym}{k}")
    return " + ".join(parts)


@dataclass(frozen=True)
class RegularFoldClass:
    n: int
    shape: str
    description: str
    curvatures: tuple  # sorted ((kind, k), count)
    N: int
    polytope: str
    continuum: bool
    printed: tuple = None  # tabulated curvatures when they differ
    printed_shape: str = None
    discrepancy: str = None

    def budget(self):
        return CurvatureBudget(self.n, self.curvatures)

    def key(self):
        return (self.shape, self.curvatures, self.N, self.continuum)

    def to_json(self):
        return {"n": self.n, "shape": self.shape, "description": self.description,
                "curvatures": format_curvatures(self.curvatures), "N": self.N,
                "polytope": self.polytope, "continuum": self.continuum,
                "discrepancy": self.discrepancy}


def _c(**kw):
    out = {}
    for name, c in kw.items():
        out[("alpha" if name[0] == "a" else "beta", int(name[1:]))] = c
    return tuple(sorted(out.items()))


# Small-n table as tabulated: (n, shape, description, curvatures, N, polytope)
SMALL_N_TABLE = [
    (3, "Y", "3 v", _c(a3=1, b0=3), 4, "tetrahedron"),
    (3, "Y", "2 v + inc e", _c(a1=1, b0=2, b2=1), 4, "∞ tetrahedra"),
    (3, "Y", "2 v + adj e", _c(b0=3, b1=3), 4, "∞ 5v polytopes"),
    (3, "+", "3 v + e", _c(b0=4, b3=1), 4, "∞ tetrahedra"),
    (4, "Y", "3 v", _c(a1=1, b0=2, a3=1), 4, "tetrahedron"),
    (4, "Y", "2 adj v + opp e", _c(b0=3, b1=2, b2=1), 5, "∞ 5v polytopes"),
    (4, "Y", "2 adj v + inc e", _c(b0=4, b2=2), 4, "∞ tetrahedra"),
    (4, "Y", "2 adj v + adj e", _c(b0=3, b1=2, b2=1), 5, "∞ 5v polytopes"),
    (4, "Y", "2 opp v", _c(b0=2, b1=2, b2=1), 4, "∞ tetrahedra"),
    (4, "+", "4 v", _c(a4=1, b0=4), 4, "flat square"),
    (5, "Y", "2 adj v + 1 opp v", _c(a1=2, a3=1, b0=1), 4, "tetrahedron"),
    (5, "Y", "3 adj v", _c(a2=1, a3=1, b0=3), 5, "5v polytope"),
    (6, "Y", "3 alt v", _c(a1=3, a3=1), 3, "flat triangle"),
    (6, "Y", "3 adj v", _c(a1=1, a2=1, a3=1, b0=2), 4, "tetrahedron"),
    (6, "Y", "2 adj v + v", _c(a1=1, a2=1, a3=1, b0=2), 4, "tetrahedron"),
    (6, "I", "3 adj v, 3 adj v", _c(a3=2, b0=4), 4, "flat rectangle"),
]

# Rows whose tabulated entry disagrees with exhaustive enumeration of the
# polygon's gluings.  Values are (shape, curvatures, N).
ERRATA = {
    (3, "2 v + adj e"): ("Y", _c(b0=3, b1=1, b2=1), 5,
                         "tabulated curvatures sum to 5π"),
    (4, "2 opp v"): ("Y", _c(a1=1, b0=2, b1=1, b2=1), 4,
                     "tabulated curvatures sum to 3π"),
    (4, "2 adj v + inc e"): ("Y", _c(a2=1, b0=3, b2=1), 4,
                             "tabulated entry is the I-tree class below"),
}

# Classes found by enumeration that have no tabulated row
EXTRA = {
    4: [("I", "2 adj v + inc e, 2 adj v + inc e", _c(b0=4, b2=2), 4, "∞ tetrahedra"),
        ("I", "2 adj v + adj e, 2 adj v + adj e", _c(b0=4, b2=2), 4, "∞ 4v polytopes")],
}


def path_budget_rows(n):
    """Integer sweep for path trees: leaves a1 + b0 = 2, indices summing to n.

    A fold axis through a vertex or edge midpoint is a symmetry axis, so
    any vertex/vertex match forces all vertices to pair up, and a vertex
    glued to an edge interior forbids both (b1 > 0 => a1 = a2 = 0).
    """
    rows = []
    for a1 in range(3):
        b0 = 2 - a1
        for a2 in range(n // 2 + 1):
            b1 = n - a1 - 2 * a2
            if b1 < 0 or (b1 > 0 and (a1 or a2)):
                continue
            bud = CurvatureBudget.of(n, {("alpha", 1): a1, ("beta", 0): b0,
                                         ("alpha", 2): a2, ("beta", 1): b1})
            assert bud.total() == 4
            counts = tuple((k, c) for k, c in bud.counts if c)
            rows.append((a1, b0, a2, b1, counts, bud.vertex_count()))
    return rows


def flat_case_classes(n):
    out = []
    for a1, b0, a2, b1, counts, N in path_budget_rows(n):
        if b1:
            desc, poly, cont = "pita", "pita polyhedra", True
        else:
            desc, poly, cont = f"a1={a1}, b0={b0}", f"flat half-{n}-gon", False
        out.append(RegularFoldClass(n, "path", desc, counts, N, poly, cont))
    return out


def classify_regular_foldings(n):
    """All fold classes of the regular n-gon (dihedral symmetry, continua as one class)."""
    if n < 3:
        raise ValueError("n must be at least 3")
    out = flat_case_classes(n)
    for m, shape, desc, counts, N, poly in SMALL_N_TABLE:
        if m != n:
            continue
        cont = poly.startswith("∞")
        fix = ERRATA.get((n, desc))
        if fix is None:
            assert CurvatureBudget(n, counts).balanced(), (n, desc)
            out.append(RegularFoldClass(n, shape, desc, counts, N, poly, cont))
        else:
            s2, c2, n2, why = fix
            out.append(RegularFoldClass(n, s2, desc, c2, n2, poly, cont,
                                        printed=counts, printed_shape=shape, discrepancy=why))
    for shape, desc, counts, N, poly in EXTRA.get(n, []):
        out.append(RegularFoldClass(n, shape, desc, counts, N, poly, poly.startswith("∞"),
                                    discrepancy="not tabulated"))
    return out


def tabulated_rows(n):
    """The tabulated rows for n as (shape, curvatures, N, continuum) keys."""
    rows = [(c.shape, c.curvatures, c.N, c.continuum) for c in flat_case_classes(n)]
    for m, shape, desc, counts, N, poly in SMALL_N_TABLE:
        if m == n:
            rows.append((shape, counts, N, poly.startswith("∞")))
    return rows


def derive_regular_classes(n, cfg=None):
    """Fold classes from exhaustive enumeration (slow; used to verify the tables)."""
    from .enumerate import EnumerationConfig, enumerate_convex
    from .gluing import realization_dimension
    p = regular_ngon(n)
    cat = enumerate_convex(p, cfg or EnumerationConfig("dihedral"))
    out = []
    for e in cat:
        counts = tuple(sorted(e.profile().items()))
        dim = realization_dimension(p, e.type)
        out.append((e.structure["shape"], counts, e.tree.polytope_vertex_count(), dim > 0, e))
    return out


# -- pita polytopes --------------------------------------------------------

def pita_gluing(n, a):
    """Perimeter halving of the unit regular n-gon at offset a on e0."""
    if not 0 < a < 1:
        raise ValueError("offset must lie strictly inside the edge")
    if abs(a - 0.5) <= config.TOL.eps_len:
        raise MidpointOffset("midpoint offset gives a flat folding")
    p = regular_ngon(n)
    return p, perimeter_halving(p, a)


def _sas(s1, s2, ang):
    return math.sqrt(s1 * s1 + s2 * s2 - 2 * s1 * s2 * math.cos(ang))


@dataclass
class PitaMouth:
    n: int
    a: float
    b: float
    alpha: float
    labels: list  # polytope vertex label of each strip point
    points: np.ndarray  # planar layout of the strip
    teeth: list = field(default_factory=list)  # (i, j, k, shape) point indices
    diagonals: list = field(default_factory=list)  # certified polytope edges (labels)

    def tooth_sides(self, t):
        i, j, k, _ = t
        P = self.points
        return (float(np.linalg.norm(P[j] - P[i])), float(np.linalg.norm(P[k] - P[j])),
                float(np.linalg.norm(P[k] - P[i])))

    def outline(self):
        """Mouth boundary x, v1, ..., v_{n/2}, y, v_{n/2+1}, ..., v0 as a ring."""
        return self.points[_mouth_ring(len(self.points))]

    def is_simple(self):
        """Outline is a simple polygon and teeth have disjoint interiors."""
        P = self.points
        pts = self.outline()
        eps = config.TOL.length(float(np.sum(np.linalg.norm(np.diff(P, axis=0), axis=1))))
        k = len(pts)
        for i in range(k):
            for j in range(i + 1, k):
                if j == i + 1 or (i == 0 and j == k - 1):
                    continue
                if segments_intersect(pts[i], pts[(i + 1) % k], pts[j], pts[(j + 1) % k], eps * eps):
                    return False
        areas = [_tri_area(P[i], P[j], P[k]) for i, j, k, _ in self.teeth]
        ring_area = 0.5 * abs(float(np.sum(pts[:, 0] * np.roll(pts[:, 1], -1) -
                                          pts[:, 1] * np.roll(pts[:, 0], -1))))
        return abs(sum(areas) - ring_area) <= 1e-9 * max(ring_area, 1.0) and all(x > 0 for x in areas)


def _mouth_ring(m):
    """Outline order: even points forward, odd points backward."""
    return list(range(0, m, 2)) + [i for i in range(m - 1, 0, -1) if i % 2]


def _tri_area(p, q, r):
    return 0.5 * abs((q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0]))


def pita_mouth_strip(n, a):
    """Planar strip of mouth teeth for even n.

    Strip points run x, v0, v1, v_{n-1}, v2, v_{n-2}, ..., v_{n/2}, y; each
    tooth is three consecutive points with angle alpha = 2pi/n at the middle.
    """
    if n % 2 or n < 4:
        raise ValueError("pita mouth needs even n >= 4")
    if not 0 < a < 0.5:
        raise ValueError("offset a must lie in (0, 1/2)")
    b = 1 - 2 * a
    alpha = 2 * math.pi / n
    labels = ["x", "v0"]
    for j in range(1, n // 2 + 1):
        labels.append(f"v{j}")
        if j < n // 2:
            labels.append(f"v{n - j}")
    labels.append("y")
    m = len(labels)  # n + 2
    seg = [a] + [b if i % 2 == 0 else 2 * a for i in range(n - 1)] + [a]
    pts = [np.array([0.0, 0.0]), np.array([seg[0], 0.0])]
    heading = 0.0
    for i in range(1, m - 1):
        # interior angle alpha at pts[i], alternating turn direction
        turn = (math.pi - alpha) * (1 if i % 2 else -1)
        heading += turn
        pts.append(pts[-1] + seg[i] * np.array([math.cos(heading), math.sin(heading)]))
    P = np.array(pts)
    teeth = []
    for i in range(m - 2):
        shape = "T2" if i in (0, m - 3) else "T1"
        teeth.append((i, i + 1, i + 2, shape))
    diagonals = [(labels[i + 1], labels[i + 2]) for i in range(m - 3)]
    return PitaMouth(n, a, b, alpha, labels, P, teeth, diagonals)


@dataclass
class DistanceReport:
    n: int
    a: float
    violations: list
    adjacent_ratio: float  # |v'_i - v'_{i+1}| / |v_i - v_{i+1}|

    @property
    def ok(self):
        return not self.violations


def check_distance_relations(n, a):
    """Chord relations between polygon vertices v_i and their glued images v'_i."""
    p, _ = pita_gluing(n, a)
    L = p.perimeter
    eps = p.eps_len
    v = np.array([p.point(i) for i in range(n)])
    vp = np.array([p.point((2 * a - i) % L) for i in range(n)])
    x = p.point(a)
    y = p.point(a + L / 2)
    d = lambda u, w: float(np.linalg.norm(u - w))
    bad = []
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            if abs(d(v[i], vp[j]) - d(vp[i], v[j])) > eps:
                bad.append(("1", i, j))
            if min((i - j) % n, (j - i) % n) > 1 and not d(vp[i], vp[j]) < d(v[i], v[j]) - eps:
                bad.append(("2", i, j))
        if i != 0 and not d(vp[i], x) < d(v[i], x) - eps:
            bad.append(("3", i))
        if i != n // 2 and not d(vp[i], y) < d(v[i], y) - eps:
            bad.append(("4", i))
    if abs(d(v[0], x) - a) > eps or abs(d(vp[0], x) - a) > eps:
        bad.append(("3", 0))
    return DistanceReport(n, a, bad, d(vp[0], vp[1]) / d(v[0], v[1]))
