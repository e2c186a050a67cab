"""Planar polygons and the arc-length boundary coordinate.

A polygon is stored counterclockwise with vertex v_i at arc coordinate
s_i and edge e_i running from v_i to v_{i+1}.  Every other module talks
about boundary points either as a BoundaryPoint (edge, offset) or as a
plain float arc coordinate in [0, L).
"""

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import config
from .errors import DegenerateEdge, InessentialVertex, NonSimple


def _cross(a, b):
    return a[..., 0] * b[..., 1] - a[..., 1] * b[..., 0]


def signed_area(pts):
    pts = np.asarray(pts, dtype=float)
    return 0.5 * float(np.sum(_cross(pts, np.roll(pts, -1, axis=0))))


def segments_intersect(p1, p2, q1, q2, eps=0.0):
    """Closed-segment intersection test with an absolute slack eps."""
    d1 = _orient(q1, q2, p1)
    d2 = _orient(q1, q2, p2)
    d3 = _orient(p1, p2, q1)
    d4 = _orient(p1, p2, q2)
    if ((d1 > eps and d2 < -eps) or (d1 < -eps and d2 > eps)) and \
            ((d3 > eps and d4 < -eps) or (d3 < -eps and d4 > eps)):
        return True
    # near-collinear touching cases
    for o, a, b, c in ((d1, q1, q2, p1), (d2, q1, q2, p2), (d3, p1, p2, q1), (d4, p1, p2, q2)):
        if abs(o) <= eps and _on_segment(a, b, c, eps):
            return True
    return False


def _orient(a, b, c):
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def _on_segment(a, b, c, eps):
    return (min(a[0], b[0]) - eps <= c[0] <= max(a[0], b[0]) + eps and
            min(a[1], b[1]) - eps <= c[1] <= max(a[1], b[1]) + eps)


@dataclass(frozen=True)
class BoundaryPoint:
    """A point on edge e_i at distance `offset` from v_i."""
    edge: int
    offset: float = 0.0

    @property
    def is_vertex(self):
        return self.offset == 0.0

    def arc(self, p):
        return float(p.starts[self.edge] + self.offset)

    def to_json(self):
        return {"edge": int(self.edge), "offset": float(self.offset)}

    @classmethod
    def from_json(cls, d):
        return cls(int(d["edge"]), float(d["offset"]))


class Polygon:
    """Simple counterclockwise polygon. Immutable after construction.

    Use build_polygon() to construct; it validates and reorients.
    """

    def __init__(self, vertices):
        v = np.array(vertices, dtype=float)
        v.setflags(write=False)
        self._v = v

    @property
    def vertices(self):
        return self._v

    @property
    def n(self):
        return len(self._v)

    @cached_property
    def edge_vectors(self):
        return np.roll(self._v, -1, axis=0) - self._v

    @cached_property
    def edge_lengths(self):
        e = np.hypot(self.edge_vectors[:, 0], self.edge_vectors[:, 1])
        e.setflags(write=False)
        return e

    @cached_property
    def perimeter(self):
        return float(self.edge_lengths.sum())

    @cached_property
    def starts(self):
        """Arc coordinate s_i of each vertex."""
        s = np.concatenate([[0.0], np.cumsum(self.edge_lengths)[:-1]])
        s.setflags(write=False)
        return s

    @cached_property
    def turn_angles(self):
        e = self.edge_vectors
        prev = np.roll(e, 1, axis=0)
        t = np.arctan2(_cross(prev, e), np.sum(prev * e, axis=1))
        t.setflags(write=False)
        return t

    @cached_property
    def angles(self):
        """Interior angles theta_i = pi - tau_i."""
        a = np.pi - self.turn_angles
        a.setflags(write=False)
        return a

    @property
    def is_convex(self):
        return bool(np.all(self.turn_angles > config.TOL.eps_angle))

    @property
    def eps_len(self):
        return config.TOL.length(self.perimeter)

    # boundary coordinate helpers
    def locate(self, s):
        """Arc coordinate -> BoundaryPoint, snapping onto vertices within eps_len."""
        L = self.perimeter
        s = float(s) % L
        i = int(np.searchsorted(self.starts, s, side="right") - 1)
        i = max(0, min(i, self.n - 1))
        off = s - self.starts[i]
        eps = self.eps_len
        if abs(off) <= eps:
            return BoundaryPoint(i, 0.0)
        if abs(off - self.edge_lengths[i]) <= eps:
            return BoundaryPoint((i + 1) % self.n, 0.0)
        if L - s <= eps:
            return BoundaryPoint(0, 0.0)
        return BoundaryPoint(i, float(off))

    def vertex_at(self, s):
        """Index of the vertex at arc coordinate s, or None."""
        bp = self.locate(s)
        return bp.edge if bp.is_vertex else None

    def edge_at(self, s):
        """Index of the edge whose half-open span [s_i, s_{i+1}) contains s."""
        return self.locate(s).edge

    def point(self, s):
        """Planar coordinates of the boundary point at arc coordinate s."""
        bp = self.locate(s)
        i = bp.edge
        t = bp.offset / self.edge_lengths[i]
        return self._v[i] + t * self.edge_vectors[i]

    def to_json(self):
        return {"vertices": [[float(x), float(y)] for x, y in self._v]}

    def __repr__(self):
        return f"Polygon(n={self.n}, L={self.perimeter:.6g})"


def _check_simple(v, eps):
    n = len(v)
    nxt = np.roll(v, -1, axis=0)
    for i in range(n):
        for j in range(i + 1, n):
            if j == i + 1 or (i == 0 and j == n - 1):
                continue
            if segments_intersect(v[i], nxt[i], v[j], nxt[j], eps * eps):
                raise NonSimple(f"edges {i} and {j} intersect")


def build_polygon(points):
    """Validate points as a simple polygon with essential vertices.

    Clockwise input is reversed (keeping the first vertex first).
    """
    v = np.array(points, dtype=float)
    if v.ndim != 2 or v.shape[1] != 2 or len(v) < 3:
        raise NonSimple("need at least three 2D points")
    if signed_area(v) < 0:
        v = np.concatenate([v[:1], v[:0:-1]])
    e = np.roll(v, -1, axis=0) - v
    lens = np.hypot(e[:, 0], e[:, 1])
    L = float(lens.sum())
    eps_len = config.TOL.length(L)
    if np.any(lens <= eps_len):
        raise DegenerateEdge(f"zero-length edge at index {int(np.argmin(lens))}")
    p = Polygon(v)
    th = p.angles
    ea = config.TOL.eps_angle
    if np.any(th <= ea) or np.any(th >= 2 * np.pi - ea):
        raise NonSimple("boundary folds back on itself")
    bad = np.nonzero(np.abs(th - np.pi) <= ea)[0]
    if len(bad):
        raise InessentialVertex(f"vertex {int(bad[0])} has angle pi")
    # adjacent edges can only touch at their shared vertex once angles are
    # in (0, 2pi); remaining overlaps are caught by the pairwise test
    _check_simple(v, eps_len)
    if abs(p.turn_angles.sum() - 2 * np.pi) > 10 * ea * p.n:
        raise NonSimple("turn angles do not sum to 2pi")
    return p


def regular_ngon(n, edge=1.0):
    """Regular n-gon with v_0 at the origin and e_0 along +x."""
    if n < 3:
        raise ValueError("regular_ngon needs n >= 3")
    if edge <= 0:
        raise ValueError("edge length must be positive")
    k = np.arange(n)
    dirs = np.stack([np.cos(2 * np.pi * k / n), np.sin(2 * np.pi * k / n)], axis=1)
    pts = np.concatenate([[[0.0, 0.0]], np.cumsum(edge * dirs, axis=0)[:-1]])
    return build_polygon(pts)


def rectangle(L, W):
    return build_polygon([[0, 0], [L, 0], [L, W], [0, W]])


def boundary_distance(p, a, b):
    """Counterclockwise arc length from a to b, in [0, L)."""
    sa = a.arc(p) if isinstance(a, BoundaryPoint) else float(a)
    sb = b.arc(p) if isinstance(b, BoundaryPoint) else float(b)
    d = (sb - sa) % p.perimeter
    if p.perimeter - d <= p.eps_len:
        d = 0.0
    return float(d)


def angle_at(p, b):
    """Face angle contributed by boundary point b: theta_i at v_i, pi elsewhere."""
    if not isinstance(b, BoundaryPoint):
        b = p.locate(b)
    if b.is_vertex:
        return float(p.angles[b.edge])
    return float(np.pi)


def reflect(p):
    """Mirror image across the y axis, as a valid ccw polygon."""
    v = p.vertices * np.array([-1.0, 1.0])
    return build_polygon(v)
