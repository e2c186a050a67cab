"""Explicit constructions: tetrahedra from edge lengths, rectangle twists,
star polygons with exponentially many gluings, zigzag belt polygons.
"""

import itertools
import math
from dataclasses import dataclass

import numpy as np

from . import config
from .errors import NegativeCayleyMenger, Unbalanced, ViolatedTriangleInequality
from .geometry import BoundaryPoint, build_polygon, rectangle
from .gluing import combinatorial_type, gluing_from_corners

PAIRS = ((1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4))


# -- tetrahedra ------------------------------------------------------------

def cayley_menger(d):
    """288 V^2 for a tetrahedron with pairwise distances d[(i, j)], 1-based."""
    M = np.ones((5, 5))
    M[0, 0] = 0.0
    for i in range(1, 5):
        M[i, i] = 0.0
    for (i, j), v in d.items():
        M[i, j] = M[j, i] = v * v
    return float(np.linalg.det(M))


@dataclass
class TetrahedronMetric:
    lengths: dict  # {(i, j): length}, 1-based pairs
    volume: float
    coords: np.ndarray  # 4 x 3

    def edge_multiset(self):
        return sorted(self.lengths.values())

    def realized_lengths(self):
        c = self.coords
        return {(i, j): float(np.linalg.norm(c[i - 1] - c[j - 1])) for i, j in PAIRS}

    def is_flat(self):
        return self.volume == 0.0

    def vertex_curvatures(self):
        """2pi minus the face angles at each vertex."""
        out = []
        c = self.coords
        for i in range(4):
            others = [j for j in range(4) if j != i]
            tot = 0.0
            for j, k in itertools.combinations(others, 2):
                a, b = c[j] - c[i], c[k] - c[i]
                tot += math.acos(np.clip(a @ b / (np.linalg.norm(a) * np.linalg.norm(b)), -1, 1))
            out.append(2 * math.pi - tot)
        return out

    def to_json(self):
        return {"lengths": {f"{i}{j}": v for (i, j), v in self.lengths.items()},
                "volume": self.volume, "coords": self.coords.tolist()}

    def to_obj(self):
        lines = [f"v {x:.12g} {y:.12g} {z:.12g}" for x, y, z in self.coords]
        lines += ["f 1 3 2", "f 1 2 4", "f 2 3 4", "f 1 4 3"]
        return "\n".join(lines) + "\n"


def tetrahedron_from_edge_lengths(lengths):
    """Embed a tetrahedron given its six edge lengths.

    lengths: dict keyed by 1-based pairs (1,2),...,(3,4), or a sequence in
    the order 12, 13, 14, 23, 24, 34.  v1 is placed at the origin, v2 on
    +x, v3 in the upper xy half plane and v4 at z >= 0.
    """
    if not isinstance(lengths, dict):
        lengths = dict(zip(PAIRS, lengths))
    d = {tuple(sorted(k)): float(v) for k, v in lengths.items()}
    if set(d) != set(PAIRS):
        raise ValueError("need all six pairwise lengths")
    if any(v <= 0 for v in d.values()):
        raise ViolatedTriangleInequality("edge lengths must be positive")
    scale = max(d.values())
    eps = config.TOL.length(scale)
    for tri in itertools.combinations(range(1, 5), 3):
        a, b, c = (d[tuple(sorted(e))] for e in itertools.combinations(tri, 2))
        if a + b < c - eps or a + c < b - eps or b + c < a - eps:
            raise ViolatedTriangleInequality(f"face {tri} violates the triangle inequality")
    cm = cayley_menger(d)
    rel = cm / scale ** 6
    if rel < -config.TOL.eps_vol * 288:
        raise NegativeCayleyMenger(f"Cayley-Menger determinant {cm:.3g} < 0")
    vol = math.sqrt(max(cm, 0.0) / 288.0) if rel > config.TOL.eps_vol * 288 else 0.0
    d12, d13, d14 = d[(1, 2)], d[(1, 3)], d[(1, 4)]
    d23, d24, d34 = d[(2, 3)], d[(2, 4)], d[(3, 4)]
    x3 = (d13 ** 2 - d23 ** 2 + d12 ** 2) / (2 * d12)
    y3 = math.sqrt(max(d13 ** 2 - x3 ** 2, 0.0))
    x4 = (d14 ** 2 - d24 ** 2 + d12 ** 2) / (2 * d12)
    if y3 > eps:
        y4 = (d14 ** 2 - d34 ** 2 + x3 ** 2 + y3 ** 2 - 2 * x3 * x4) / (2 * y3)
    else:
        y4 = math.sqrt(max(d14 ** 2 - x4 ** 2, 0.0))
    z4 = 6 * vol / (d12 * y3) if vol > 0 and y3 > eps else 0.0
    coords = np.array([[0, 0, 0], [d12, 0, 0], [x3, y3, 0], [x4, y4, z4]], dtype=float)
    return TetrahedronMetric(d, vol, coords)


# -- rectangle twist -------------------------------------------------------

def rectangle_I_gluing(L, W, x1, x2):
    """I gluing of the L x W rectangle: side edges glued into a cylinder,
    bottom rim creased at x1 (and x1 + L/2), top rim at planar abscissa x2.
    """
    p = rectangle(L, W)
    eps = p.eps_len
    pb = (2 * x1) % L
    rt = (2 * (L - x2)) % L  # offset from C along the top rim
    if min(pb, L - pb) <= eps or min(rt, L - rt) <= eps:
        raise ValueError("crease lands on a rectangle corner")
    pos = [0.0, pb, L, L + W, L + W + rt, 2 * L + W]
    nodes = ["U", "U", "U", "W", "W", "W"]
    return p, gluing_from_corners(p, pos, nodes)


def _twist_base(L, x):
    # choose the bottom crease so neither rim crease hits a corner
    for frac in (1 / 8, 1 / 5, 1 / 7, 1 / 11, 1 / 13):
        x1 = frac * L
        x2 = x1 + x
        ok = all(min(v % (L / 2), L / 2 - v % (L / 2)) > 0.01 * L for v in (x1, x2))
        if ok:
            return x1, x2
    raise ValueError("no admissible crease position")


def twist_lengths(L, W, x):
    """Closed-form twist metric; equals the surface metric when W >= L/4."""
    u = math.hypot(x, W)
    v = math.hypot(L / 2 - x, W)
    return {(1, 2): L / 2, (3, 4): L / 2, (1, 3): u, (2, 4): u, (1, 4): v, (2, 3): v}


def rectangle_twist_tetrahedron(L, W, x):
    """Tetrahedron folded from the L x W rectangle with twist x in [0, L/2].

    Vertices: 1, 2 are the bottom creases, 3, 4 the top creases.  Edge
    lengths are the surface distances, which reduce to twist_lengths for
    W >= L/4 (for flatter rectangles d12 can run over the top rim).
    """
    if L <= 0 or W <= 0:
        raise ValueError("rectangle sides must be positive")
    if not -1e-12 <= x <= L / 2 + 1e-12:
        raise ValueError("twist must lie in [0, L/2]")
    x1, x2 = _twist_base(L, x)
    p, g = rectangle_I_gluing(L, W, x1, x2)
    tet = tetrahedron_from_edge_lengths(surface_twist_lengths(L, W, x1, x2))
    return tet, p, g


def surface_twist_lengths(L, W, x1, x2, reach=3):
    """Exact fold-point distances on the creased cylinder.

    The surface is the plane modulo translations (L, 0), (2(x2 - x1), 2W)
    and the half turn about (x1, 0); distances are minima over lifts.
    """
    pts = np.array([[x1, 0.0], [x1 + L / 2, 0.0], [x2, W], [x2 + L / 2, W]])
    e1, e2 = np.array([L, 0.0]), np.array([2 * (x2 - x1), 2 * W])
    lat = np.array([a * e1 + b * e2 for a in range(-reach, reach + 1)
                    for b in range(-reach, reach + 1)])
    out = {}
    for i, j in PAIRS:
        p, q = pts[i - 1], pts[j - 1]
        imgs = np.vstack([q + lat, np.array([2 * x1, 0.0]) - q + lat])
        out[(i, j)] = float(np.min(np.linalg.norm(imgs - p, axis=1)))
    return out


# -- star polygons ---------------------------------------------------------

@dataclass
class StarPolygonSpec:
    m: int
    alpha: float
    beta: float
    x: BoundaryPoint
    y: BoundaryPoint

    @property
    def n(self):
        return 2 * self.m + 2

    @property
    def chain_bits(self):
        return self.m // 2 - 1


def make_star_polygon(m, delta=None):
    """Centrally symmetric unit-edge m-star with tip angle alpha.

    Vertex v_{2i} is a tip (angle alpha), v_{2i+1} a reflex vertex (beta).
    The fold points x, y are edge midpoints on e_0 and e_m, half the
    perimeter apart; they are carried as marked boundary points.
    """
    if m % 2 or m < 4:
        raise ValueError("m must be even and at least 4")
    delta = config.STAR_DELTA if delta is None else delta
    alpha = (1 - delta) * 2 * math.pi / (m * (m - 1))
    beta = (1 - 1 / m) * 2 * math.pi - alpha
    heading = 0.0
    pts = [np.zeros(2)]
    for i in range(2 * m - 1):
        pts.append(pts[-1] + np.array([math.cos(heading), math.sin(heading)]))
        ang = alpha if (i + 1) % 2 == 0 else beta
        heading += math.pi - ang
    p = build_polygon(np.array(pts))
    spec = StarPolygonSpec(m, alpha, beta, BoundaryPoint(0, 0.5), BoundaryPoint(m, 0.5))
    return p, spec


def star_contracted_vertices(spec, top, bottom):
    """Reflex vertices made into leaves by the given contraction bits."""
    m = spec.m
    h = spec.chain_bits
    top, bottom = _bits(top, h), _bits(bottom, h)
    if sum(top) != sum(bottom):
        raise Unbalanced(f"{sum(top)} top contractions vs {sum(bottom)} bottom")
    out = [3 + 2 * i for i in range(h) if top[i]]
    out += [2 * m - 1 - 2 * i for i in range(h) if bottom[i]]
    return sorted(out)


def _bits(b, h):
    if isinstance(b, str):
        b = [int(c) for c in b]
    b = [int(c) for c in b]
    if len(b) != h or any(c not in (0, 1) for c in b):
        raise ValueError(f"need {h} binary digits")
    return b


def star_contraction_gluing(p, spec, top, bottom):
    """Gluing T_{top,bottom}: the base perimeter halving with contractions.

    A contracted reflex vertex v_k is zipped shut by gluing v_{k-1} to
    v_{k+1}; the boundary loop that remains is then halved at x.
    """
    n = 2 * spec.m
    leaves = star_contracted_vertices(spec, top, bottom)
    x0 = spec.x.arc(p)
    ell = n - 2 * len(leaves)
    ends = sorted((k + 1 - x0) % n for k in leaves)
    corners, nodes = [], []
    for v in range(n):
        if v in leaves:
            corners.append(float(p.starts[v]))
            nodes.append(("leaf", v))
            continue
        d = (p.starts[v] - x0) % n
        t = d - 2 * sum(1 for e in ends if e <= d + 1e-9)
        key = frozenset((round(t % ell, 9), round(-t % ell, 9)))
        corners.append(float(p.starts[v]))
        nodes.append(key)
    return gluing_from_corners(p, corners, nodes)


def star_contraction_type(p, spec, top, bottom):
    return combinatorial_type(p, star_contraction_gluing(p, spec, top, bottom))


def balanced_bit_pairs(spec):
    h = spec.chain_bits
    for top in itertools.product((0, 1), repeat=h):
        for bot in itertools.product((0, 1), repeat=h):
            if sum(top) == sum(bot):
                yield "".join(map(str, top)), "".join(map(str, bot))


# -- zigzag belts ----------------------------------------------------------

def make_zigzag_polygon(k, s=1.0, W=None):
    """Band polygon whose two long sides are right-angle zigzags.

    Each long side runs from a corner with a half segment, then 2k - 1 unit
    segments turning alternately by 90 degrees, then a closing half segment;
    its 2k interior vertices alternate between angles pi/2 and 3pi/2.
    """
    if k < 2:
        raise ValueError("need at least two teeth")
    W = s if W is None else W
    r2 = math.sqrt(0.5)
    up = np.array([r2, r2])
    dn = np.array([r2, -r2])
    segs = [0.5 * s * up] + [s * (dn if i % 2 == 0 else up) for i in range(2 * k - 1)] + [0.5 * s * up]
    bottom = [np.zeros(2)]
    for d in segs:
        bottom.append(bottom[-1] + d)
    lift = np.array([0.0, W])
    top = [q + lift for q in reversed(bottom)]
    return build_polygon(np.array(bottom + top))


def zigzag_rim_length(k, s=1.0):
    return 2 * k * s


def zigzag_gluing(k, i, j, s=1.0, W=None):
    """Four-fold I gluing of the zigzag band, creased at rim edge midpoints.

    i, j in 1..2k-1 (i, j != k) pick the crease positions i*s and j*s along
    the bottom and top rims.
    """
    W = s if W is None else W
    p = make_zigzag_polygon(k, s, W)
    R = zigzag_rim_length(k, s)
    for c in (i, j):
        if not 1 <= c <= 2 * k - 1 or c == k:
            raise ValueError(f"crease index {c} out of range")
    pb = (2 * i * s) % R
    pt = (2 * j * s) % R
    pos = [0.0, pb, R, R + W, R + W + pt, 2 * R + W]
    return p, gluing_from_corners(p, pos, ["U", "U", "U", "W", "W", "W"])


# -- clustered belt ----------------------------------------------------------

def make_belt_polygon(n, spread=0.25):
    """Near-circular convex n-gon: n/2 vertices bunched in a short arc, n/2 spread.

    The spread vertices sit more than the cluster's arc length apart, so as
    the perimeter-halving belt rolls each of them passes between every
    adjacent pair of clustered vertices.
    """
    if n % 2 or n < 4:
        raise ValueError("n must be even and at least 4")
    h = n // 2
    cl = spread * np.arange(h) / h
    sp = math.pi + np.linspace(-math.pi / 2, math.pi / 2, h)
    th = np.concatenate([cl, sp])
    return build_polygon(np.column_stack([np.cos(th), np.sin(th)]))
