"""Polytope surfaces, cut trees and their unfoldings.

A PolytopeModel is a list of planar faces over 3D points.  Faces are
listed counterclockwise as seen from outside; flat doubly covered
polygons are modelled as a top and a bottom face sharing the rim.  A cut
tree is a set of arcs, each a straight segment inside one face (a face
edge or a diagonal).  Paths that cross an edge are expressed with Steiner
points inserted on that edge.
"""

import hashlib
import itertools
import math
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property

import networkx as nx
import numpy as np
from scipy.spatial import ConvexHull

from . import config
from .errors import CutTreeInvalid, FoldtopeError, InvalidDigits
from .geometry import build_polygon, segments_intersect, signed_area

TWO_PI = 2 * math.pi


def _newell(P):
    n = np.zeros(3)
    for a, b in zip(P, np.roll(P, -1, axis=0)):
        n += np.array([(a[1] - b[1]) * (a[2] + b[2]),
                       (a[2] - b[2]) * (a[0] + b[0]),
                       (a[0] - b[0]) * (a[1] + b[1])])
    return n


def _corner_angle(a, b, c):
    u, v = a - b, c - b
    return math.atan2(np.linalg.norm(np.cross(u, v)), float(u @ v))


class PolytopeModel:
    """Faces over 3D points; `marked` ids are helper points, not vertices."""

    def __init__(self, family, points, faces, labels=None, marked=(), face_names=None,
                 orient=False):
        self.family = family
        self.points = np.asarray(points, dtype=float)
        if self.points.shape[1] == 2:
            self.points = np.column_stack([self.points, np.zeros(len(self.points))])
        faces = [tuple(int(i) for i in f) for f in faces]
        if orient:
            c = self.points.mean(axis=0)
            out = []
            for f in faces:
                P = self.points[list(f)]
                if _newell(P) @ (P.mean(axis=0) - c) < 0:
                    f = tuple(reversed(f))
                out.append(f)
            faces = out
        self.faces = faces
        self.labels = list(labels) if labels is not None else [f"v{i}" for i in range(len(self.points))]
        self.marked = frozenset(marked)
        self.face_names = list(face_names) if face_names else [f"f{i}" for i in range(len(faces))]
        self._check_planar()

    def _check_planar(self):
        scale = max(1.0, float(np.ptp(self.points, axis=0).max()))
        for f in self.faces:
            P = self.points[list(f)]
            n = _newell(P)
            if np.linalg.norm(n) <= 1e-15:
                raise FoldtopeError("degenerate face")
            n = n / np.linalg.norm(n)
            if np.abs((P - P[0]) @ n).max() > 1e-7 * scale:
                raise FoldtopeError("nonplanar face")

    def face_index(self, name):
        return self.face_names.index(name) if isinstance(name, str) else int(name)

    @cached_property
    def curvatures(self):
        tot = np.zeros(len(self.points))
        for f in self.faces:
            k = len(f)
            for j in range(k):
                a, b, c = f[j - 1], f[j], f[(j + 1) % k]
                tot[b] += _corner_angle(self.points[a], self.points[b], self.points[c])
        g = TWO_PI - tot
        g.setflags(write=False)
        return g

    @property
    def vertex_ids(self):
        eps = 10 * config.TOL.eps_angle
        return [i for i in range(len(self.points))
                if i not in self.marked and abs(self.curvatures[i]) > eps]

    @property
    def total_curvature(self):
        return float(sum(self.curvatures[i] for i in self.vertex_ids))

    def faces_with(self, u, v):
        return [fi for fi, f in enumerate(self.faces) if u in f and v in f]

    def is_edge(self, u, v):
        for f in self.faces:
            k = len(f)
            for j in range(k):
                if {f[j], f[(j + 1) % k]} == {u, v}:
                    return True
        return False

    def with_points(self, steiner):
        """Insert points on edges: steiner = {id: (u, v, t)}, t in (0, 1) from u."""
        if not steiner:
            return self
        pts = list(self.points)
        labels = list(self.labels)
        ids = sorted(steiner)
        if ids != list(range(len(pts), len(pts) + len(ids))):
            raise CutTreeInvalid("Steiner ids must extend the point list")
        by_edge = {}
        for pid in ids:
            u, v, t = steiner[pid]
            if not self.is_edge(u, v) or not 0 < t < 1:
                raise CutTreeInvalid(f"Steiner point {pid} not inside an edge")
            pts.append((1 - t) * self.points[u] + t * self.points[v])
            labels.append(f"s{pid}")
            by_edge.setdefault(frozenset((u, v)), []).append((pid, u, t))
        faces = []
        for f in self.faces:
            out = []
            k = len(f)
            for j in range(k):
                a, b = f[j], f[(j + 1) % k]
                out.append(a)
                extra = by_edge.get(frozenset((a, b)), [])
                # order along a -> b
                keyed = sorted(extra, key=lambda e: e[2] if e[1] == a else 1 - e[2])
                out.extend(e[0] for e in keyed)
            faces.append(tuple(out))
        return PolytopeModel(self.family, pts, faces, labels, self.marked | set(ids),
                             self.face_names)

    def face_frame(self, fi):
        """Orthonormal in-plane basis with the face counterclockwise."""
        P = self.points[list(self.faces[fi])]
        n = _newell(P)
        n /= np.linalg.norm(n)
        e1 = P[1] - P[0]
        e1 /= np.linalg.norm(e1)
        e2 = np.cross(n, e1)
        return P[0], e1, e2

    def local_coords(self, fi):
        o, e1, e2 = self.face_frame(fi)
        P = self.points[list(self.faces[fi])] - o
        return {v: complex(p @ e1, p @ e2) for v, p in zip(self.faces[fi], P)}

    def __repr__(self):
        return f"PolytopeModel({self.family}, {len(self.vertex_ids)} vertices, {len(self.faces)} faces)"


# -- curvature facts -------------------------------------------------------

def sharp_vertices(q):
    """Vertices with curvature >= pi, and whether there are at least two."""
    eps = config.TOL.eps_angle
    out = [i for i in q.vertex_ids if q.curvatures[i] >= math.pi - eps]
    return out, len(out) >= 2


def convex_unfolding_leaf_bound(q):
    """Cut-tree shapes a convex unfolding of q could have.

    Leaves must be sharp, and four leaves of curvature pi use up the whole
    4pi budget, so + and I need exactly four vertices of curvature pi.
    """
    eps = config.TOL.eps_angle
    sharp, ok = sharp_vertices(q)
    shapes = set()
    if not ok:
        return shapes
    shapes.add("path")
    if len(sharp) >= 3:
        shapes.add("Y")
    verts = q.vertex_ids
    if len(verts) == 4 and all(abs(q.curvatures[i] - math.pi) <= 10 * eps for i in verts):
        shapes |= {"+", "I"}
    return shapes


_PHI = (1 + 5 ** 0.5) / 2


def _platonic_points(solid):
    if solid == "tetra":
        return np.array([[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]], float)
    if solid == "cube":
        return np.array(list(itertools.product((-1, 1), repeat=3)), float)
    if solid == "octa":
        return np.vstack([np.eye(3), -np.eye(3)])
    cyc = lambda a, b, c: [(a, b, c), (b, c, a), (c, a, b)]
    pts = []
    if solid == "icosa":
        for s1, s2 in itertools.product((-1, 1), repeat=2):
            pts += cyc(0, s1, s2 * _PHI)
        return np.array(pts, float)
    if solid == "dodeca":
        pts = list(itertools.product((-1, 1), repeat=3))
        for s1, s2 in itertools.product((-1, 1), repeat=2):
            pts += cyc(0, s1 / _PHI, s2 * _PHI)
        return np.array(pts, float)
    raise ValueError(f"unknown solid {solid!r}")


PLATONIC = ("tetra", "cube", "octa", "dodeca", "icosa")


def platonic_model(solid):
    """Regular solid as a triangulated convex hull."""
    P = _platonic_points(solid)
    hull = ConvexHull(P)
    return PolytopeModel("platonic", P, hull.simplices, orient=True)


def platonic_curvatures(solid):
    """Per-vertex curvature of a regular solid (all vertices agree)."""
    g = platonic_model(solid).curvatures
    if np.ptp(g) > 1e-9:
        raise FoldtopeError("nonuniform curvature")
    return float(g.mean())


def make_sliver_tetrahedron(height=20.0):
    """Equilateral base with a tall centred apex: only the apex is sharp."""
    base = np.array([[1, 0, 0], [-0.5, 3 ** 0.5 / 2, 0], [-0.5, -(3 ** 0.5) / 2, 0]])
    P = np.vstack([base, [[0, 0, height]]])
    return PolytopeModel("abstract", P, [(0, 1, 2), (0, 1, 3), (1, 2, 3), (2, 0, 3)],
                         labels=["v1", "v2", "v3", "v4"], orient=True)


def make_doubled_polygon(p, marks=()):
    """Doubly covered polygon; marks are arc coordinates of rim helper points."""
    n = p.n
    pts = list(p.vertices)
    labels = [f"v{i}" for i in range(n)]
    arcs = [float(s) for s in p.starts]
    for k, s in enumerate(marks):
        s = float(s) % p.perimeter
        if p.locate(s).is_vertex:
            raise ValueError("mark lands on a vertex")
        pts.append(p.point(s))
        labels.append(f"x{k}")
        arcs.append(s)
    rim = tuple(sorted(range(len(pts)), key=lambda i: arcs[i]))
    return PolytopeModel("doubled-polygon", np.array(pts), [rim, rim[::-1]],
                         labels, marked=range(n, len(pts)), face_names=["top", "bottom"])


# -- cut trees -------------------------------------------------------------

@dataclass
class CutTree:
    """Arcs (u, v, face) with face None when the pair determines it."""
    arcs: list
    steiner: dict = field(default_factory=dict)
    name: str = ""

    def graph(self):
        G = nx.Graph()
        for u, v, *_ in self.arcs:
            G.add_edge(u, v)
        return G

    def combinatorial(self, model):
        """Tree on polytope vertices: degree-2 helper nodes suppressed."""
        G = self.graph()
        keep = set(model.vertex_ids)
        for v in list(G.nodes):
            if v not in keep and G.degree(v) == 2:
                a, b = list(G.neighbors(v))
                G.remove_node(v)
                G.add_edge(a, b)
        return G

    def shape(self, model):
        from .gluing import shape_name
        return shape_name(self.combinatorial(model))

    def validate(self, model):
        G = self.graph()
        if G.number_of_nodes() == 0:
            raise CutTreeInvalid("empty cut tree")
        if not nx.is_tree(G):
            raise CutTreeInvalid("cut arcs contain a cycle or are disconnected")
        missing = set(model.vertex_ids) - set(G.nodes)
        if missing:
            raise CutTreeInvalid(f"vertices not spanned: {sorted(model.labels[i] for i in missing)}")
        verts = set(model.vertex_ids)
        for v in G.nodes:
            if G.degree(v) == 1 and v not in verts:
                raise CutTreeInvalid(f"leaf {model.labels[v]} is not a polytope vertex")

    def to_json(self, model=None):
        def lab(i):
            if model is None:
                return int(i)
            return model.labels[i] if i < len(model.labels) else f"s{i}"
        return {"name": self.name,
                "arcs": [[lab(a[0]), lab(a[1])] for a in self.arcs],
                "steiner": {str(k): [int(u), int(v), float(t)] for k, (u, v, t) in self.steiner.items()}}


def _split_face(cycle, chords):
    """Split a convex face cycle by noncrossing chords."""
    pieces = [tuple(cycle)]
    for a, b in chords:
        for k, P in enumerate(pieces):
            if a in P and b in P:
                i, j = sorted((P.index(a), P.index(b)))
                if j - i in (1, len(P) - 1):
                    continue
                pieces[k:k + 1] = [P[i:j + 1], P[j:] + P[:i + 1]]
                break
        else:
            raise CutTreeInvalid(f"chord {a}-{b} crosses another cut")
    return pieces


@dataclass
class UnfoldingLayout:
    faces: list  # (face index, vertex ids, complex coords)
    boundary_ids: list
    boundary: np.ndarray
    simple: bool
    overlaps: list
    area_gap: float
    dual: object = None
    placement: dict = None

    @cached_property
    def polygon(self):
        pts = _drop_straight(self.boundary)
        try:
            return build_polygon(pts)
        except FoldtopeError:
            return None

    def signature(self):
        return congruence_signature(self.boundary)

    def to_json(self):
        return {"simple": self.simple,
                "boundary": [[float(x), float(y)] for x, y in self.boundary],
                "faces": [[[float(z.real), float(z.imag)] for z in zs] for _, _, zs in self.faces],
                "overlaps": self.overlaps}


def _drop_straight(pts, eps=None):
    eps = config.TOL.eps_angle if eps is None else eps
    P = np.asarray(pts, float)
    keep = []
    n = len(P)
    for i in range(n):
        a, b, c = P[i - 1], P[i], P[(i + 1) % n]
        u, v = b - a, c - b
        cr = u[0] * v[1] - u[1] * v[0]
        if abs(math.atan2(cr, u @ v)) > 10 * eps and np.linalg.norm(u) > 0:
            keep.append(b)
    return np.array(keep)


def _align(qu, qv, pu, pv):
    r = (pv - pu) / (qv - qu)
    r /= abs(r)
    return lambda z: pu + r * (z - qu)


def unfold(model, tree, root=None):
    """Unroll the surface cut along tree into the plane.

    root: face index or name to keep in its own frame (default face 0).
    """
    m = model.with_points(tree.steiner)
    tree.validate(m)
    # sort arcs into face edges and diagonals
    edge_cuts, chords = set(), {}
    for arc in tree.arcs:
        u, v = arc[0], arc[1]
        hint = arc[2] if len(arc) > 2 else None
        if m.is_edge(u, v):
            edge_cuts.add(frozenset((u, v)))
            continue
        fs = m.faces_with(u, v) if hint is None else [m.face_index(hint)]
        if len(fs) != 1:
            raise CutTreeInvalid(f"arc {m.labels[u]}-{m.labels[v]} is not inside a unique face")
        if u not in m.faces[fs[0]] or v not in m.faces[fs[0]]:
            raise CutTreeInvalid("arc endpoints not on the hinted face")
        chords.setdefault(fs[0], []).append((u, v))
    subs = []  # (face, cycle)
    for fi, f in enumerate(m.faces):
        for piece in _split_face(f, chords.get(fi, [])):
            subs.append((fi, piece))
    face_edges = [{frozenset((f[j], f[(j + 1) % len(f)])) for j in range(len(f))} for f in m.faces]

    def ident(fi, a, b):
        k = frozenset((a, b))
        return ("E", k) if k in face_edges[fi] else ("D", fi, k)

    cut_ids = {("E", k) for k in edge_cuts}
    cut_ids |= {("D", fi, frozenset(c)) for fi, cs in chords.items() for c in cs}
    occ = {}
    for si, (fi, cyc) in enumerate(subs):
        for j in range(len(cyc)):
            occ.setdefault(ident(fi, cyc[j], cyc[(j + 1) % len(cyc)]), []).append((si, j))
    D = nx.Graph()
    D.add_nodes_from(range(len(subs)))
    for key, os_ in occ.items():
        if len(os_) != 2:
            raise CutTreeInvalid("surface is not closed along an edge")
        if key not in cut_ids:
            D.add_edge(os_[0][0], os_[1][0], key=key)
    if not nx.is_tree(D):
        raise CutTreeInvalid("cut tree does not open the surface to a disk")
    # place faces breadth first
    local = [m.local_coords(fi) for fi in range(len(m.faces))]
    root_face = 0 if root is None else m.face_index(root)
    r0 = next(si for si, (fi, _) in enumerate(subs) if fi == root_face)
    place = {r0: {v: local[subs[r0][0]][v] for v in subs[r0][1]}}
    for parent, child in nx.bfs_edges(D, r0):
        key = D.edges[parent, child]["key"]
        a, b = tuple(key[-1])
        fi = subs[child][0]
        T = _align(local[fi][a], local[fi][b], place[parent][a], place[parent][b])
        place[child] = {v: T(local[fi][v]) for v in subs[child][1]}
    # walk the boundary
    start = next((si, j) for key, os_ in occ.items() if key in cut_ids for si, j in os_)
    bids, bpts = [], []
    si, j = start
    guard = 4 * sum(len(c) for _, c in subs) + 8
    while True:
        cyc = subs[si][1]
        v = cyc[(j + 1) % len(cyc)]
        bids.append(v)
        bpts.append(place[si][v])
        # rotate around v to the next cut edge
        si2, j2 = si, (j + 1) % len(cyc)
        while True:
            c2 = subs[si2][1]
            key = ident(subs[si2][0], c2[j2], c2[(j2 + 1) % len(c2)])
            if key in cut_ids:
                break
            o = [x for x in occ[key] if x != (si2, j2)][0]
            si2 = o[0]
            j2 = (o[1] + 1) % len(subs[si2][1])
        si, j = si2, j2
        if (si, j) == start:
            break
        guard -= 1
        if guard < 0:
            raise CutTreeInvalid("boundary walk did not close")
    B = np.array([[z.real, z.imag] for z in bpts])
    faces = [(subs[s][0], subs[s][1], [place[s][v] for v in subs[s][1]]) for s in range(len(subs))]
    area = sum(abs(signed_area([[z.real, z.imag] for z in zs])) for _, _, zs in faces)
    gap = abs(abs(signed_area(B)) - area)
    overlaps = _crossings(B)
    tol = 1e-7 * max(1.0, area)
    simple = not overlaps and gap <= tol and signed_area(B) > 0
    return UnfoldingLayout(faces, bids, B, simple, overlaps, gap, D, place)


def _crossings(B):
    n = len(B)
    scale = max(1.0, float(np.ptp(B, axis=0).max()))
    eps = 1e-9 * scale
    out = []
    nxt = np.roll(B, -1, axis=0)
    lo = np.minimum(B, nxt)
    hi = np.maximum(B, nxt)
    for i in range(n):
        cand = np.nonzero(np.all(lo <= hi[i] + eps, axis=1) & np.all(hi >= lo[i] - eps, axis=1))[0]
        for j in cand:
            if j <= i or j == i + 1 or (i == 0 and j == n - 1):
                continue
            if segments_intersect(B[i], nxt[i], B[j], nxt[j], eps * eps):
                out.append((int(i), int(j)))
    # repeated points also break simplicity
    for i in range(n):
        if np.linalg.norm(B[i] - nxt[i]) <= eps:
            out.append((int(i), int((i + 1) % n)))
    return out


# -- signatures ------------------------------------------------------------

def congruence_signature(p, q_len=1e-6, q_ang=1e-6):
    """Hex digest of the minimal cyclic (angle, length) word over both orientations.

    Straight (angle pi) vertices are dropped first so subdivided edges
    compare equal.  Quantization steps are relative to the perimeter.
    """
    pts = p.vertices if hasattr(p, "vertices") else np.asarray(p, float)
    pts = _drop_straight(pts)
    if signed_area(pts) < 0:
        pts = pts[::-1]
    e = np.roll(pts, -1, axis=0) - pts
    lens = np.hypot(e[:, 0], e[:, 1])
    L = lens.sum()
    prev = np.roll(e, 1, axis=0)
    ang = np.arctan2(prev[:, 0] * e[:, 1] - prev[:, 1] * e[:, 0], np.sum(prev * e, axis=1))
    lq = np.rint(lens / (q_len * L)).astype(np.int64)
    aq = np.rint(ang / q_ang).astype(np.int64)
    n = len(pts)
    fwd = [(int(aq[i]), int(lq[i])) for i in range(n)]
    # mirror: reverse traversal, vertex i keeps its turn, edge before it follows
    rev = [(int(aq[i]), int(lq[i - 1])) for i in range(n - 1, -1, -1)]
    best = min(min(w[k:] + w[:k] for k in range(n)) for w in (fwd, rev))
    return hashlib.sha1(repr(best).encode()).hexdigest()[:16]


# -- volcano ---------------------------------------------------------------

def make_volcano(m, r_top=1.0, r_bottom=2.0, h=1.0, asym=0.0):
    """Truncated cone over two similarly oriented regular m-gons.

    asym > 0 turns a_0 and b_0 forward by asym * 2pi/m, lengthening edge
    a_{m-1} a_0; faces stay planar because every lateral edge is radial.
    """
    if m % 2 or m < 4:
        raise ValueError("m must be even and at least 4")
    if not 0 < r_top < r_bottom or h <= 0:
        raise ValueError("need 0 < r_top < r_bottom and h > 0")
    if not 0 <= asym < 0.5:
        raise ValueError("asym must lie in [0, 0.5)")
    th = 2 * np.pi * np.arange(m) / m
    th[0] += asym * 2 * np.pi / m
    a = np.column_stack([r_top * np.cos(th), r_top * np.sin(th), np.full(m, h)])
    b = np.column_stack([r_bottom * np.cos(th), r_bottom * np.sin(th), np.zeros(m)])
    faces = [tuple(range(m)), tuple(range(2 * m - 1, m - 1, -1))]
    names = ["top", "bottom"]
    for i in range(m):
        j = (i + 1) % m
        faces.append((i, m + i, m + j, j))
        names.append(f"side{i}")
    labels = [f"a{i}" for i in range(m)] + [f"b{i}" for i in range(m)]
    return PolytopeModel("volcano", np.vstack([a, b]), faces, labels, face_names=names, orient=True)


def _volcano_m(model):
    return len(model.points) // 2


def volcano_cut_tree(model, bits):
    """Top rim path plus spokes; bit m_i = 1 swaps spoke a_{2i+1}b_{2i+1} for a_{2i}b_{2i+1}.

    bits is written most significant first, m_{k} ... m_1 m_0.
    """
    m = _volcano_m(model)
    k = m // 2 - 1
    if len(bits) != k or set(bits) - {"0", "1"}:
        raise InvalidDigits(f"need {k} binary digits")
    digits = [int(c) for c in reversed(bits)]  # digits[i] = m_i
    arcs = [(i, i + 1) for i in range(m - 1)]
    for i in range(m):
        arcs.append((i, m + i))
    for i, d in enumerate(digits):
        if d:
            arcs.remove((2 * i + 1, m + 2 * i + 1))
            arcs.append((2 * i, m + 2 * i + 1))
    return CutTree(arcs, name=f"T_{bits}")


def volcano_bit_strings(m):
    k = m // 2 - 1
    return ["".join(b) for b in itertools.product("01", repeat=k)]


# -- slab ------------------------------------------------------------------

def make_slab(n, w=None, h=1.0):
    """Prism of thickness w over a regular 2n-gon arc a_0 .. a_{n+1}.

    The arc carries one rectangle beyond the half polygon so that every
    digit m_2 .. m_n can deviate while the closing rectangle stays plain.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    w = 0.1 * h if w is None else w
    if not 0 < w < h:
        raise ValueError("need 0 < w < h")
    N = n + 1
    R = h / (2 * math.sin(math.pi / (2 * n)))
    th = math.pi * np.arange(N + 1) / n
    a = np.column_stack([R * np.cos(th), R * np.sin(th), np.zeros(N + 1)])
    b = a + np.array([0, 0, -w])
    A = lambda j: j
    Bi = lambda j: N + 1 + j
    faces = [tuple(A(j) for j in range(N + 1)), tuple(Bi(j) for j in range(N, -1, -1))]
    names = ["front", "back"]
    for j in range(1, N + 1):
        faces.append((A(j - 1), A(j), Bi(j), Bi(j - 1)))
        names.append(f"R{j}")
    faces.append((A(0), A(N), Bi(N), Bi(0)))
    names.append("strip")
    labels = [f"a{j}" for j in range(N + 1)] + [f"b{j}" for j in range(N + 1)]
    model = PolytopeModel("slab", np.vstack([a, b]), faces, labels, face_names=names, orient=True)
    model.slab = {"n": n, "w": w, "h": h, "N": N}
    return model


def slab_paths(n, digits):
    """a-path and b-path as label lists, with 'c' entries for edge crossings.

    digits is written m_n ... m_1 (most significant first) and m_1 must be 0.
    """
    if len(digits) != n or set(digits) - set("012"):
        raise InvalidDigits(f"need {n} base-3 digits")
    if digits[-1] != "0":
        raise InvalidDigits("m_1 must be 0")
    d = [0] + [int(c) for c in reversed(digits)] + [0]  # d[i] = m_i, i = 1..n+1
    N = n + 1

    def side(me, other, dev, skip):
        seq = [(me, 0)]
        last = 0
        for i in range(1, N + 1):
            if d[i] == skip:
                continue
            if d[i] == dev:
                if last != i - 1:
                    seq.append(("c", me, i))  # crossing on edge me_{i-1} me_i
                seq += [(other, i), (me, i)]
            else:
                seq.append((me, i))
            last = i
        return seq

    return side("a", "b", 1, 2), side("b", "a", 2, 1)


def slab_cut_tree(model, digits):
    n, N = model.slab["n"], model.slab["N"]
    a_seq, b_seq = slab_paths(n, digits)
    idx = lambda s, j: j if s == "a" else N + 1 + j
    steiner = {}
    nid = len(model.points)

    def resolve(seq):
        nonlocal nid
        out = []
        for e in seq:
            if e[0] == "c":
                _, s, i = e
                steiner[nid] = (idx(s, i - 1), idx(s, i), 0.5)
                out.append(nid)
                nid += 1
            else:
                out.append(idx(*e))
        return out

    pa, pb = resolve(a_seq), resolve(b_seq)
    path = pa + pb[::-1]
    arcs = [(u, v) for u, v in zip(path, path[1:])]
    return CutTree(arcs, steiner, name=f"T_{digits}")


def slab_digit_strings(n):
    return ["".join(t) + "0" for t in itertools.product("012", repeat=n - 1)]


def slab_binary_class(digits):
    return digits.replace("2", "1")


def slab_separation(model, layout):
    """Margins of the line through a_1 b_1: (tail min height, body max height).

    Heights are measured perpendicular to a_1 b_1, positive away from a_0.
    The line separates strictly when tail > 0 and body < 0 (hinge points
    a_1, b_1 excluded).
    """
    N = model.slab["N"]
    a0, b0, a1, b1 = 0, N + 1, 1, N + 2
    D = layout.dual
    r1 = next(si for si, (fi, ids, _) in enumerate(layout.faces)
              if model.face_names[fi] == "R1")
    place = layout.placement
    key = ("E", frozenset((a1, b1)))
    tail_root = next(nb for nb in D.neighbors(r1) if D.edges[r1, nb]["key"] == key)
    H = D.copy()
    H.remove_edge(r1, tail_root)
    tail = nx.node_connected_component(H, tail_root)
    p, q = place[r1][a1], place[r1][b1]
    d = (q - p) / abs(q - p)
    side = lambda z: ((z - p) / d).imag
    if side(place[r1][a0]) > 0:
        side = lambda z, f=side: -f(z)
    tail_h, body_h = math.inf, -math.inf
    tol = 1e-9
    for si, zs in place.items():
        for v, z in zs.items():
            s = side(z)
            if abs(z - p) < tol or abs(z - q) < tol:
                continue
            if si in tail:
                tail_h = min(tail_h, s)
            else:
                body_h = max(body_h, s)
    return tail_h, body_h


# -- doubled polygons ------------------------------------------------------

def doubled_rectangle_path(L=2.0, W=1.0):
    """Doubly covered rectangle with the geodesic cut path (v1, v2, x, v3, v4).

    x is the midpoint of edge v4 v1; v2 -> x runs on the top face and
    x -> v3 on the bottom face.
    """
    from .geometry import rectangle
    p = rectangle(L, W)
    model = make_doubled_polygon(p, [p.perimeter - W / 2])
    x = 4
    tree = CutTree([(0, 1), (1, x, "top"), (x, 2, "bottom"), (2, 3)], name="v1 v2 x v3 v4")
    return model, tree


def doubled_rectangle_I(L=2.0, W=1.0):
    """I cut tree on a doubled rectangle: two Y junctions at interior points."""
    from .geometry import rectangle
    p = rectangle(L, W)
    pts = np.vstack([p.vertices, [[W / 2, W / 2], [L - W / 2, W / 2]]])
    s, t = 4, 5
    top = [(0, 1, t, s), (1, 2, t), (2, 3, s, t), (3, 0, s)]
    bottom = [(3, 2, 1, 0)]
    model = PolytopeModel("doubled-polygon", pts, top + bottom, marked=(s, t),
                          labels=["v1", "v2", "v3", "v4", "s", "t"],
                          face_names=["top0", "top1", "top2", "top3", "bottom"])
    tree = CutTree([(0, s), (3, s), (s, t), (1, t), (2, t)], name="I")
    return model, tree


def unfold_flat_doubled_polygon(p, x):
    """Star-cut the top face of a doubly covered convex polygon from x.

    Returns the unfolded polygon: the bottom face with the top triangles
    flipped out over every rim edge.
    """
    x = np.asarray(x, float)
    V = p.vertices
    n = p.n
    e = np.roll(V, -1, axis=0) - V
    cr = e[:, 0] * (x - V)[:, 1] - e[:, 1] * (x - V)[:, 0]
    if np.any(cr <= p.eps_len * np.linalg.norm(e, axis=1)):
        raise ValueError("x must lie strictly inside the polygon")
    pts = np.vstack([V, x])
    faces = [(n, i, (i + 1) % n) for i in range(n)] + [tuple(range(n - 1, -1, -1))]
    names = [f"top{i}" for i in range(n)] + ["bottom"]
    model = PolytopeModel("doubled-polygon", pts, faces, marked=(n,), face_names=names)
    tree = CutTree([(n, i) for i in range(n)], name="star")
    lay = unfold(model, tree, root="bottom")
    if not lay.simple:
        raise FoldtopeError("star unfolding overlaps")
    return lay.polygon


def angle_multiset(p, digits=9):
    return sorted(round(float(a), digits) for a in p.angles)


# -- perimeter halving layouts --------------------------------------------

@dataclass
class PerimeterLayout:
    polygon: object
    x: float
    copies: list  # dicts: segment, vertices (n x 2)
    geodesics: list  # dicts: copy, vertex, end, length, valid

    def to_json(self):
        return {"x": self.x,
                "copies": [{"segment": c["segment"], "vertices": c["vertices"].tolist()}
                           for c in self.copies],
                "geodesics": [{k: (v.tolist() if isinstance(v, np.ndarray) else v)
                               for k, v in g.items()} for g in self.geodesics]}


def perimeter_halving_layout(p, x, levels=1):
    """Level-0 polygon plus one copy of P across each glued boundary piece.

    Pieces are cut at the vertices and at the images of the vertices under
    the halving map s -> 2x - s; there are 2n of them in general position.
    """
    if levels not in (0, 1):
        raise ValueError("only levels 0 and 1 are supported")
    L = p.perimeter
    x = float(x) % L
    if levels == 0:
        return PerimeterLayout(p, x, [], [])
    eps = p.eps_len
    bps = sorted(set(round(v, 12) for v in list(p.starts) + [(2 * x - s) % L for s in p.starts]))
    bps = [b for i, b in enumerate(bps) if i == 0 or b - bps[i - 1] > eps]
    if L - bps[-1] + bps[0] <= eps and len(bps) > 1:
        bps.pop()
    cz = lambda s: complex(*p.point(s))
    V = p.vertices[:, 0] + 1j * p.vertices[:, 1]
    X = cz(x)
    copies, geos = [], []
    for k, a in enumerate(bps):
        b = bps[(k + 1) % len(bps)] + (L if k + 1 == len(bps) else 0)
        T = _align(cz(2 * x - a), cz(2 * x - b), cz(a), cz(b))
        img = np.array([T(z) for z in V])
        copies.append({"segment": (float(a), float(b % L)),
                       "vertices": np.column_stack([img.real, img.imag])})
        A, B = cz(a), cz(b)
        for i, z in enumerate(img):
            valid = _through(X, z, A, B)
            geos.append({"copy": k, "vertex": i, "end": np.array([z.real, z.imag]),
                         "length": float(abs(z - X)), "valid": bool(valid)})
    return PerimeterLayout(p, x, copies, geos)


def _through(X, Z, A, B):
    """Does segment XZ leave through segment AB (or start on it)?"""
    P = lambda z: np.array([z.real, z.imag])
    if abs(Z - X) < 1e-12:
        return False
    if abs(abs(A - X) + abs(X - B) - abs(A - B)) < 1e-12:
        return True
    return segments_intersect(P(X), P(Z), P(A), P(B), 1e-18)
