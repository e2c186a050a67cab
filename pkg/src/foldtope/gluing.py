"""Boundary self-gluings, Aleksandrov validation, gluing trees.

A Gluing is a finite set of interval pairs on the boundary circle.  A pair
(a, b, w) identifies [a, a+w] with [b, b+w] reversing orientation, so that
a+u is glued to b+w-u.  Positions are arc coordinates mod L.

Gluing trees are nx.Graph objects wrapped in GluingTree; node attributes
carry the vertex / edge labels, the glued angle and the curvature.
"""

import itertools
import math
from dataclasses import dataclass, field
from functools import cached_property

import networkx as nx
import numpy as np
from scipy.cluster.hierarchy import DisjointSet
from scipy.optimize import linprog

from . import config
from .errors import AngleExcess, LengthMismatch
from .geometry import BoundaryPoint

TWO_PI = 2 * math.pi


def _circ_offset(x, start, L):
    """Offset of x from start going counterclockwise, in [0, L)."""
    return (x - start) % L


class Gluing:
    """Breakpoint-partitioned interval identification of a polygon boundary."""

    def __init__(self, polygon, pairs, refine=True):
        self.polygon = polygon
        L = polygon.perimeter
        raw = []
        for a, b, w in pairs:
            if w <= polygon.eps_len:
                continue
            raw.append((float(a) % L, float(b) % L, float(w)))
        if refine:
            raw = _refine(polygon, raw)
        self.pairs = tuple(sorted(raw))

    @classmethod
    def from_intervals(cls, polygon, intervals):
        """Build from ((a0, a1), (b0, b1)) interval pairs, checking lengths."""
        L = polygon.perimeter
        pairs = []
        for (a0, a1), (b0, b1) in intervals:
            wa = (a1 - a0) % L or L
            wb = (b1 - b0) % L or L
            if abs(wa - wb) > polygon.eps_len:
                raise LengthMismatch(f"interval lengths {wa:.6g} and {wb:.6g} differ")
            pairs.append((a0, b0, wa))
        return cls(polygon, pairs)

    def to_json(self):
        L = self.polygon.perimeter
        return {"pairs": [[[a, (a + w) % L], [b, (b + w) % L]] for a, b, w in self.pairs]}

    @classmethod
    def from_json(cls, polygon, d):
        return cls.from_intervals(polygon, [tuple(map(tuple, q)) for q in d["pairs"]])

    def image(self, s):
        """All boundary points glued to arc coordinate s (including s)."""
        st = self.structure
        k = st.breakpoint_index(s)
        if k is not None:
            cls = st.classes[st.class_of[k]]
            return [st.bp[j] for j in cls]
        L = self.polygon.perimeter
        for a, b, w in self.pairs:
            u = _circ_offset(s, a, L)
            if 0 < u < w:
                return [s % L, (b + w - u) % L]
            u = _circ_offset(s, b, L)
            if 0 < u < w:
                return [s % L, (a + w - u) % L]
        return [s % L]

    @cached_property
    def structure(self):
        return _Structure(self)

    def __repr__(self):
        return f"Gluing({len(self.pairs)} pairs on {self.polygon!r})"


def _refine(p, pairs):
    """Split pairs so that every vertex and every image of a vertex is a breakpoint."""
    L = p.perimeter
    eps = p.eps_len
    starts = list(p.starts)
    out = []
    for a, b, w in pairs:
        cuts = set()
        for s in starts:
            u = _circ_offset(s, a, L)
            if eps < u < w - eps:
                cuts.add(u)
            u = _circ_offset(s, b, L)
            if eps < u < w - eps:
                cuts.add(w - u)
        cuts = sorted(cuts)
        merged = []
        for u in cuts:
            if not merged or u - merged[-1] > eps:
                merged.append(u)
        knots = [0.0] + merged + [w]
        for u0, u1 in zip(knots[:-1], knots[1:]):
            out.append((_snap(p, (a + u0) % L), _snap(p, (b + w - u1) % L), u1 - u0))
    return out


def _snap(p, s):
    v = p.vertex_at(s)
    if v is not None:
        return float(p.starts[v])
    return s


class _Structure:
    """Breakpoints, identification classes and the raw class graph."""

    def __init__(self, g):
        p = g.polygon
        L = p.perimeter
        eps = p.eps_len
        self.L = L
        self.eps = eps
        ends = []
        for a, b, w in g.pairs:
            ends += [a, (a + w) % L, b, (b + w) % L]
        ends = sorted(e % L for e in ends)
        bp = []
        for e in ends:
            if bp and e - bp[-1] <= eps:
                continue
            bp.append(e)
        if len(bp) > 1 and bp[0] + L - bp[-1] <= eps:
            bp.pop()
        self.bp = np.array(bp)
        self.vertex = [p.vertex_at(s) for s in bp]
        self.edge = [p.edge_at(s) for s in bp]
        self.angle = [float(p.angles[v]) if v is not None else math.pi for v in self.vertex]
        ds = DisjointSet(range(len(bp)))
        self.arcs = []
        for a, b, w in g.pairs:
            i0, i1 = self.breakpoint_index(a), self.breakpoint_index(a + w)
            j0, j1 = self.breakpoint_index(b), self.breakpoint_index(b + w)
            ds.merge(i0, j1)
            ds.merge(i1, j0)
            self.arcs.append((i0, i1))
        roots = {}
        self.class_of = [0] * len(bp)
        self.classes = []
        for k in range(len(bp)):
            r = ds[k]
            if r not in roots:
                roots[r] = len(self.classes)
                self.classes.append([])
            self.class_of[k] = roots[r]
            self.classes[roots[r]].append(k)
        self.class_angle = [sum(self.angle[k] for k in c) for c in self.classes]

    def breakpoint_index(self, s):
        if len(self.bp) == 0:
            return None
        d = np.abs(self.bp - s % self.L)
        d = np.minimum(d, self.L - d)
        j = int(np.argmin(d))
        return j if d[j] <= self.eps else None

    def class_graph(self):
        G = nx.MultiGraph()
        G.add_nodes_from(range(len(self.classes)))
        for i0, i1 in self.arcs:
            G.add_edge(self.class_of[i0], self.class_of[i1])
        return G


# -- validation ------------------------------------------------------------

@dataclass
class ValidationReport:
    violations: list = field(default_factory=list)

    @property
    def valid(self):
        return not self.violations

    @property
    def verdict(self):
        return "valid" if self.valid else "invalid"

    def kinds(self):
        return sorted({k for k, _ in self.violations})

    def to_json(self):
        return {"verdict": self.verdict,
                "violations": [{"kind": k, "location": loc} for k, loc in self.violations]}


def validate_aleksandrov(p, g):
    """Check the two Aleksandrov conditions plus coverage and connectivity."""
    rep = ValidationReport()
    L = p.perimeter
    eps = p.eps_len
    # coverage: the intervals tile the circle
    ivs = sorted([(a, w) for a, b, w in g.pairs] + [(b, w) for a, b, w in g.pairs])
    total = sum(w for _, w in ivs)
    if abs(total - L) > 10 * eps * max(1, len(ivs)):
        rep.violations.append(("LengthMismatch", f"intervals cover {total:.9g} of {L:.9g}"))
    else:
        for (s0, w0), (s1, _) in zip(ivs, ivs[1:] + [(ivs[0][0] + L, 0)]):
            if abs(s0 + w0 - s1) > 10 * eps:
                rep.violations.append(("LengthMismatch", f"gap or overlap at {s0 + w0:.9g}"))
                break
    # chords between interval midpoints must not interleave
    ends = []
    for k, (a, b, w) in enumerate(g.pairs):
        ends.append(((a + w / 2) % L, k))
        ends.append(((b + w / 2) % L, k))
    ends.sort()
    stack = []
    crossing = None
    for _, k in ends:
        if stack and stack[-1] == k:
            stack.pop()
        elif k in stack:
            crossing = k
            break
        else:
            stack.append(k)
    if crossing is not None:
        a, b, w = g.pairs[crossing]
        rep.violations.append(("ChordCrossing", f"pair at {a:.9g}<->{b:.9g}"))
    st = g.structure
    for c, ang in zip(st.classes, st.class_angle):
        if ang > TWO_PI + config.TOL.eps_angle:
            where = [float(st.bp[k]) for k in c]
            rep.violations.append(("AngleExcess", f"angle {ang:.9g} at {where}"))
    G = st.class_graph()
    if G.number_of_nodes() and (not nx.is_connected(G) or
                                G.number_of_edges() != G.number_of_nodes() - 1):
        rep.violations.append(("NotConnected", "identification graph is not a tree"))
    return rep


def perimeter_halving(p, x):
    """Glue (x, y) to (y, x) where y is the antipode of x."""
    L = p.perimeter
    s = (x.arc(p) if isinstance(x, BoundaryPoint) else float(x)) % L
    # a fold point closer than a few eps to a vertex is numerically the vertex
    for t in (s, (s + L / 2) % L):
        d = np.abs((np.asarray(p.starts) - t + L / 2) % L - L / 2)
        k = int(np.argmin(d))
        if d[k] <= 100 * p.eps_len:
            s = (p.starts[k] - (t - s)) % L
            break
    g = Gluing(p, [(s, s + L / 2, L / 2)])
    g.unvalidated = not p.is_convex
    return g


def spider_gluing(p, corners):
    """Gluing with one central node at the given arc positions.

    Each boundary arc between consecutive corners is folded in half.
    """
    L = p.perimeter
    cs = sorted(float(c) % L for c in corners)
    pairs = []
    for c0, c1 in zip(cs, cs[1:] + [cs[0] + L]):
        h = (c1 - c0) / 2
        pairs.append((c0, c0 + h, h))
    return Gluing(p, pairs)


def gluing_from_corners(p, positions, nodes):
    """Gluing from a plane-tree corner structure.

    positions: arc coordinates of the corners (any order); nodes: node id per
    corner.  Corners of a node are visited in counterclockwise order; folds
    are inserted wherever a corner is immediately followed by its own
    successor.  Raises LengthMismatch if paired steps differ in length.
    """
    L = p.perimeter
    order = sorted(range(len(positions)), key=lambda k: positions[k] % L)
    pos = [positions[k] % L for k in order]
    nid = [nodes[k] for k in order]
    m = len(pos)
    members = {}
    for i, v in enumerate(nid):
        members.setdefault(v, []).append(i)
    sigma = [0] * m
    for v, idx in members.items():
        for a, b in zip(idx, idx[1:] + idx[:1]):
            sigma[a] = b
    # insert folds
    new_pos, new_sigma_target, is_fold = [], [], []
    remap = {}
    for i in range(m):
        remap[i] = len(new_pos)
        new_pos.append(pos[i])
        is_fold.append(False)
        j = (i + 1) % m
        if sigma[i] == j:
            nxt = pos[j] + (L if j == 0 else 0)
            new_pos.append(((pos[i] + nxt) / 2) % L)
            is_fold.append(True)
    M = len(new_pos)
    sig = [0] * M
    for i in range(m):
        sig[remap[i]] = remap[sigma[i]]
    for k in range(M):
        if is_fold[k]:
            sig[k] = k
    return _gluing_from_tour(p, new_pos, sig)


def _gluing_from_tour(p, pos, sig):
    L = p.perimeter
    M = len(pos)
    eps = 10 * p.eps_len

    def step_len(k):
        d = pos[(k + 1) % M] - pos[k]
        return d + L if d <= 0 else d

    pairs = []
    seen = set()
    for c in range(M):
        d = (sig[c] - 1) % M
        if c in seen:
            continue
        if (sig[d] - 1) % M != c:
            raise LengthMismatch("corner structure is not a plane tree")
        wc, wd = step_len(c), step_len(d)
        if abs(wc - wd) > eps:
            raise LengthMismatch(f"glued steps differ: {wc:.9g} vs {wd:.9g}")
        seen.add(c)
        seen.add(d)
        if c == d:
            raise LengthMismatch("step glued to itself")
        pairs.append((pos[c], pos[d], (wc + wd) / 2))
    return Gluing(p, pairs)


# -- combinatorial types ---------------------------------------------------

@dataclass(frozen=True)
class GluingType:
    """Ordered pairs (v_i, z_j): z = ('v', j) or ('e', j), one per vertex."""
    pairs: tuple

    @classmethod
    def from_pairs(cls, pairs):
        return cls(tuple(sorted((int(i), str(k), int(j)) for i, k, j in pairs)))

    @property
    def n(self):
        return len(self.pairs)

    def as_dict(self):
        return {i: (k, j) for i, k, j in self.pairs}

    def to_json(self):
        return {"pairs": [["v", i, k, j] for i, k, j in self.pairs]}

    @classmethod
    def from_json(cls, d):
        return cls.from_pairs([(q[1], q[2], q[3]) for q in d["pairs"]])

    def key(self):
        return tuple((0 if k == "v" else 1, j) for _, k, j in self.pairs)

    def __str__(self):
        return "{" + ", ".join(f"(v{i},{k}{j})" for i, k, j in self.pairs) + "}"


def combinatorial_type(p, g):
    st = g.structure
    L = p.perimeter
    out = []
    for i in range(p.n):
        k = st.breakpoint_index(p.starts[i])
        if k is None:
            raise LengthMismatch(f"vertex {i} is not a breakpoint of the gluing")
        mates = [j for j in st.classes[st.class_of[k]] if j != k]
        if not mates:
            out.append((i, "v", i))
            continue
        s0 = p.starts[i]
        j = min(mates, key=lambda j: _circ_offset(st.bp[j], s0, L))
        if st.vertex[j] is not None:
            out.append((i, "v", st.vertex[j]))
        else:
            out.append((i, "e", st.edge[j]))
    return GluingType.from_pairs(out)


# -- gluing trees ----------------------------------------------------------

class GluingTree:
    """Labeled gluing tree. Node attributes:
    vertices, edges (edge labels of edge-interior points), angle, curvature,
    positions (arc coordinates of the glued points).
    """

    def __init__(self, graph, polygon=None, gluing=None):
        self.graph = graph
        self.polygon = polygon
        self.gluing = gluing

    def nodes(self):
        return [self.graph.nodes[v] | {"id": v} for v in self.graph.nodes]

    def leaves(self):
        return [v for v in self.graph.nodes if self.graph.degree(v) == 1]

    def fold_leaves(self):
        return [v for v in self.leaves() if not self.graph.nodes[v]["vertices"]]

    def curvature_sum(self):
        return sum(d["curvature"] for _, d in self.graph.nodes(data=True))

    def polytope_vertex_count(self):
        ea = config.TOL.eps_angle
        return sum(1 for _, d in self.graph.nodes(data=True) if abs(d["curvature"]) > 10 * ea)

    def to_json(self):
        nodes = []
        for v, d in self.graph.nodes(data=True):
            nodes.append({"id": int(v),
                          "labels": [f"v{i}" for i in d["vertices"]] + [f"e{j}" for j in d["edges"]],
                          "angle": d["angle"], "curvature": d["curvature"],
                          "positions": list(d["positions"])})
        return {"nodes": nodes, "arcs": [[int(a), int(b)] for a, b in self.graph.edges]}


def gluing_tree(p, g):
    """Gluing tree of a concrete gluing (pure edge/edge degree-2 points dropped)."""
    st = g.structure
    M = st.class_graph()
    G = nx.Graph()
    for c, members in enumerate(st.classes):
        verts = sorted(st.vertex[k] for k in members if st.vertex[k] is not None)
        edges = sorted(st.edge[k] for k in members if st.vertex[k] is None)
        ang = st.class_angle[c]
        G.add_node(c, vertices=tuple(verts), edges=tuple(edges), angle=ang,
                   curvature=TWO_PI - ang,
                   positions=tuple(sorted(float(st.bp[k]) for k in members)))
    for a, b in M.edges():
        G.add_edge(a, b)
    if M.number_of_edges() != G.number_of_edges():
        raise LengthMismatch("gluing has a cycle")
    for c in list(G.nodes):
        d = G.nodes[c]
        if not d["vertices"] and G.degree(c) == 2:
            u, w = list(G.neighbors(c))
            G.remove_node(c)
            G.add_edge(u, w)
    # stable integer ids ordered by first boundary position
    order = sorted(G.nodes, key=lambda c: G.nodes[c]["positions"][0])
    G = nx.relabel_nodes(G, {c: i for i, c in enumerate(order)})
    return GluingTree(G, p, g)


def node_curvatures(t):
    return [(v, d["curvature"]) for v, d in t.graph.nodes(data=True)]


def contract_degree2(t):
    """Unlabeled tree with every degree-2 node spliced out."""
    G = nx.Graph(t.graph if isinstance(t, GluingTree) else t)
    G = nx.Graph(G.edges()) if G.number_of_edges() else G
    changed = True
    while changed:
        changed = False
        for v in list(G.nodes):
            if G.degree(v) == 2:
                a, b = list(G.neighbors(v))
                if G.has_edge(a, b):
                    continue
                G.remove_node(v)
                G.add_edge(a, b)
                changed = True
    return nx.convert_node_labels_to_integers(G)


def shape_name(G):
    """Name of a contracted tree: path, Y, +, I, or a degree signature."""
    G = contract_degree2(G)
    degs = sorted((d for _, d in G.degree()), reverse=True)
    internal = [d for d in degs if d > 1]
    if not internal:
        return "path"
    if internal == [3]:
        return "Y"
    if internal == [4]:
        return "+"
    if internal == [3, 3]:
        return "I"
    return "tree" + "".join(str(d) for d in internal)


# -- rolling belts ---------------------------------------------------------

def _belt_rolls(tree, f1, f2):
    g = tree.gluing
    p = tree.polygon
    if g is None:
        return False
    L = p.perimeter
    st = g.structure
    path = nx.shortest_path(tree.graph, f1, f2)
    # tree arcs on the belt: map back to class pairs through contracted nodes
    M = st.class_graph()
    path_classes = _expand_path(M, tree, path)
    on_belt = set(zip(path_classes, path_classes[1:])) | set(zip(path_classes[1:], path_classes))
    keep, segs = [], []
    for (a, b, w), (i0, i1) in zip(g.pairs, st.arcs):
        e = (st.class_of[i0], st.class_of[i1])
        if e in on_belt:
            segs += [(a, w), (b, w)]
        else:
            keep.append((a, b, w))
    # loop coordinates start at the fold f1
    x0 = tree.graph.nodes[f1]["positions"][0]
    segs.sort(key=lambda s: _circ_offset(s[0], x0, L))
    loop, acc = [], 0.0
    for s, w in segs:
        loop.append((acc, s, w))
        acc += w
    ell = acc
    gaps = [float(np.min(np.diff(np.sort(np.concatenate([st.bp, st.bp + L])))))]
    vt = np.sort(np.concatenate([p.starts, p.starts + L]))
    gaps.append(float(np.min(np.diff(vt))))
    delta = min(min(gaps), ell) / 8
    before = _vertex_classes(st)
    for sgn in (1, -1):
        d = sgn * delta
        # loop folded at d and d + ell/2
        new = list(keep) + _loop_pairs(loop, ell, d, L)
        try:
            h = Gluing(p, new)
        except LengthMismatch:
            return False
        if not validate_aleksandrov(p, h).valid:
            return False
        after = _vertex_classes(h.structure)
        for cls in before:
            if len(cls) > 1 and not any(cls <= c2 for c2 in after):
                return False
    return True


def _vertex_classes(st):
    out = []
    for c in st.classes:
        vs = frozenset(st.vertex[k] for k in c if st.vertex[k] is not None)
        if vs:
            out.append(vs)
    return out


def _expand_path(M, tree, path):
    """Class-level path between the classes of two tree nodes."""
    st = tree.gluing.structure
    first = _class_for_node(st, tree, path[0])
    last = _class_for_node(st, tree, path[-1])
    return nx.shortest_path(nx.Graph(M), first, last)


def _class_for_node(st, tree, v):
    s = tree.graph.nodes[v]["positions"][0]
    return st.class_of[st.breakpoint_index(s)]


def _loop_pairs(loop, ell, d, L):
    """Perimeter-halving of the loop at loop coordinate d, mapped to the boundary."""
    tiny = 1e-12 * ell
    lo = d % ell
    cuts = {0.0, ell / 2}
    for t, s, w in loop:
        cuts.add((t - lo) % ell)
        cuts.add((lo - t) % ell)
    pts = sorted(u for u in cuts if u <= ell / 2 + tiny)

    def to_arc(t):
        # segment in which a piece starting at t continues forward
        t %= ell
        if ell - t <= tiny:
            t = 0.0
        for t0, s, w in loop:
            if t0 - tiny <= t < t0 + w - tiny:
                return (s + max(t - t0, 0.0)) % L
        return loop[0][1]

    out = []
    for u0, u1 in zip(pts, pts[1:]):
        if u1 - u0 <= tiny:
            continue
        # [lo+u0, lo+u1] is glued to its mirror [lo-u1, lo-u0]
        out.append((to_arc(lo + u0), to_arc(lo - u1), u1 - u0))
    return out


def classify_structure(t):
    """Leaf count, fold-point leaves, rolling belts and contracted shape."""
    leaves = t.leaves()
    folds = t.fold_leaves()
    rolling = [(a, b) for a, b in itertools.combinations(sorted(folds), 2) if _belt_rolls(t, a, b)]
    return {"leafCount": len(leaves), "foldPointLeaves": len(folds),
            "rollingBelts": len(rolling), "belts": rolling,
            "shape": shape_name(t.graph)}


# -- types back to trees ---------------------------------------------------

class _Lin:
    """Affine form c + a.x over the edge-corner variables."""
    __slots__ = ("c", "a")

    def __init__(self, c, a):
        self.c = float(c)
        self.a = np.asarray(a, dtype=float)

    def __add__(self, o):
        if isinstance(o, _Lin):
            return _Lin(self.c + o.c, self.a + o.a)
        return _Lin(self.c + o, self.a)

    def __sub__(self, o):
        if isinstance(o, _Lin):
            return _Lin(self.c - o.c, self.a - o.a)
        return _Lin(self.c - o, self.a)

    def __mul__(self, k):
        return _Lin(self.c * k, self.a * k)

    def value(self, x):
        return self.c + float(self.a @ x) if len(self.a) else self.c


def _type_nodes(p, t):
    """Node structure implied by a type: list of (vertex chain, edge or None)."""
    d = t.as_dict()
    n = p.n
    if set(d) != set(range(n)):
        raise LengthMismatch("type must have one pair per vertex")
    succ = {}
    for i, (k, j) in d.items():
        if not 0 <= j < n:
            raise LengthMismatch("type index out of range")
        if k == "v" and j != i:
            succ[i] = j
    indeg = {}
    for i, j in succ.items():
        indeg[j] = indeg.get(j, 0) + 1
        if indeg[j] > 1:
            raise LengthMismatch(f"vertex {j} has two predecessors")
    seen = set()
    nodes = []
    for i in range(n):
        if i in seen or indeg.get(i):
            continue
        chain = [i]
        seen.add(i)
        while chain[-1] in succ:
            chain.append(succ[chain[-1]])
            seen.add(chain[-1])
        k, j = d[chain[-1]]
        if k == "e":
            nodes.append((chain, j))
        elif j == chain[-1] and len(chain) == 1:
            nodes.append((chain, None))
        else:
            raise LengthMismatch(f"chain from v{i} does not close")
    for i in range(n):
        if i in seen:
            continue
        cyc = [i]
        seen.add(i)
        while succ[cyc[-1]] != i:
            cyc.append(succ[cyc[-1]])
            seen.add(cyc[-1])
        nodes.append((cyc, None))
    return nodes


def _arrangements(p, t):
    """Yield linear tour systems for each consistent ordering of edge corners."""
    nodes = _type_nodes(p, t)
    L = p.perimeter
    n = p.n
    s = p.starts
    for chain, e in nodes:
        ang = sum(p.angles[i] for i in chain) + (math.pi if e is not None else 0)
        if ang > TWO_PI + config.TOL.eps_angle:
            raise AngleExcess(f"node {chain} glues angle {ang:.9g}")
    # corners: ('v', i) fixed, ('e', node index) variable
    ecorners = [(k, e) for k, (chain, e) in enumerate(nodes) if e is not None]
    nvar = len(ecorners)
    by_edge = {}
    for vi, (k, e) in enumerate(ecorners):
        by_edge.setdefault(e, []).append(vi)
    node_of_vertex = {}
    for k, (chain, e) in enumerate(nodes):
        for i in chain:
            node_of_vertex[i] = k
    edges = sorted(by_edge)
    for perm in itertools.product(*[itertools.permutations(by_edge[e]) for e in edges]):
        rank = {}
        for e, order in zip(edges, perm):
            for r, vi in enumerate(order):
                rank[vi] = r
        corners = []  # (sort key, kind, ref, node)
        for i in range(n):
            corners.append(((i, 0, 0), "v", i, node_of_vertex[i]))
        for vi, (k, e) in enumerate(ecorners):
            corners.append(((e, 1, rank[vi]), "e", vi, k))
        corners.sort()
        m = len(corners)
        forms = []
        for key, kind, ref, k in corners:
            if kind == "v":
                forms.append(_Lin(s[ref], np.zeros(nvar)))
            else:
                a = np.zeros(nvar)
                a[ref] = 1.0
                forms.append(_Lin(0.0, a))
        # sigma from the type's chains
        pos_of = {}
        for idx, (key, kind, ref, k) in enumerate(corners):
            pos_of[(kind, ref)] = idx
        sigma = [None] * m
        ok = True
        for k, (chain, e) in enumerate(nodes):
            cyc = [pos_of[("v", i)] for i in chain]
            if e is not None:
                vi = [q for q, (kk, _) in enumerate(ecorners) if kk == k][0]
                cyc.append(pos_of[("e", vi)])
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                sigma[a] = b
            # corners of a node must be met in counterclockwise order: one wrap
            wraps = sum(1 for a, b in zip(cyc, cyc[1:] + cyc[:1]) if b <= a)
            if wraps != 1:
                ok = False
        if not ok:
            continue
        node_id = [c[3] for c in corners]
        # folds
        tour_forms, tour_node, tour_sigma_src, fold_flags = [], [], [], []
        remap = {}
        nodes_count = len(nodes)
        for idx in range(m):
            remap[idx] = len(tour_forms)
            tour_forms.append(forms[idx])
            tour_node.append(node_id[idx])
            fold_flags.append(False)
            j = (idx + 1) % m
            if sigma[idx] == j:
                nxt = forms[j] + (L if j == 0 else 0.0)
                tour_forms.append((forms[idx] + nxt) * 0.5)
                tour_node.append(nodes_count)
                nodes_count += 1
                fold_flags.append(True)
        M = len(tour_forms)
        sig = [0] * M
        for idx in range(m):
            sig[remap[idx]] = remap[sigma[idx]]
        for k in range(M):
            if fold_flags[k]:
                sig[k] = k
        if M % 2 or nodes_count != M // 2 + 1:
            continue
        # pairing and length equations
        eqs = []
        good = True
        for c in range(M):
            d = (sig[c] - 1) % M
            if (sig[d] - 1) % M != c or tour_node[(c + 1) % M] != tour_node[d]:
                good = False
                break
            if c < d:
                lc = tour_forms[(c + 1) % M] - tour_forms[c] + (L if c == M - 1 else 0.0)
                ld = tour_forms[(d + 1) % M] - tour_forms[d] + (L if d == M - 1 else 0.0)
                eqs.append(lc - ld)
        if not good:
            continue
        strict = []
        for vi, (k, e) in enumerate(ecorners):
            a = np.zeros(nvar)
            a[vi] = 1.0
            strict.append(_Lin(s[e], -a))  # s_e - t < 0
            strict.append(_Lin(-(s[e] + p.edge_lengths[e]), a))  # t - s_{e+1} < 0
        for e, order in zip(edges, perm):
            for u, w in zip(order, order[1:]):
                a = np.zeros(nvar)
                a[u], a[w] = 1.0, -1.0
                strict.append(_Lin(0.0, a))
        yield {"forms": tour_forms, "node": tour_node, "sigma": sig, "eqs": eqs,
               "strict": strict, "nvar": nvar, "fold": fold_flags, "ecorners": ecorners,
               "nodes": nodes}


def _solve_strict(eqs, strict, nvar, scale):
    """Max-slack point of {eqs = 0, strict < 0}; returns (x, slack) or None."""
    if nvar == 0:
        tol = 10 * config.TOL.eps_len * scale
        if any(abs(e.c) > tol for e in eqs):
            return None
        slack = min([-f.c for f in strict], default=scale)
        return (np.zeros(0), slack) if slack > tol else None
    A_ub = [np.append(f.a, 1.0) for f in strict]
    b_ub = [-f.c for f in strict]
    A_eq = [np.append(e.a, 0.0) for e in eqs if np.any(np.abs(e.a) > 0)]
    b_eq = [-e.c for e in eqs if np.any(np.abs(e.a) > 0)]
    tol = 10 * config.TOL.eps_len * scale
    if any(abs(e.c) > tol for e in eqs if not np.any(np.abs(e.a) > 0)):
        return None
    cobj = np.zeros(nvar + 1)
    cobj[-1] = -1.0
    bounds = [(None, None)] * nvar + [(None, scale)]
    res = linprog(cobj, A_ub=np.array(A_ub) if A_ub else None, b_ub=b_ub or None,
                  A_eq=np.array(A_eq) if A_eq else None, b_eq=b_eq or None,
                  bounds=bounds, method="highs")
    if res.status != 0 or -res.fun <= 1e-9 * scale:
        return None
    return res.x[:-1], -res.fun


def realize_type(p, t):
    """A concrete gluing of combinatorial type t (interior of its realization cell)."""
    if not isinstance(t, GluingType):
        t = GluingType.from_pairs(t)
    for arr in _arrangements(p, t):
        sol = _solve_strict(arr["eqs"], arr["strict"], arr["nvar"], p.perimeter)
        if sol is None:
            continue
        x, _ = sol
        pos = [f.value(x) % p.perimeter for f in arr["forms"]]
        g = _gluing_from_tour(p, pos, arr["sigma"])
        return g
    raise LengthMismatch(f"type {t} has no realization with matching lengths")


def grid_realizable(p, t, r):
    """Whether type t has a realization with every breakpoint on the r-grid."""
    L = p.perimeter
    eps = 1e-7 * r

    def on_grid(x):
        q = (x % L) / r
        return abs(q - round(q)) < eps / r * 10

    try:
        arrs = list(_arrangements(p, t))
    except (AngleExcess, LengthMismatch):
        return False
    for arr in arrs:
        choices = []
        for vi, (k, e) in enumerate(arr["ecorners"]):
            s0, w = p.starts[e], p.edge_lengths[e]
            m0 = math.ceil(s0 / r - 1e-9)
            vals = [m * r for m in range(m0, int(math.floor((s0 + w) / r + 1e-9)) + 1)
                    if s0 + eps < m * r < s0 + w - eps]
            choices.append(vals)
        for combo in itertools.product(*choices):
            x = np.array(combo, dtype=float)
            if any(f.value(x) >= -eps for f in arr["strict"]):
                continue
            if any(abs(e.value(x)) > eps for e in arr["eqs"]):
                continue
            if all(on_grid(f.value(x)) for f in arr["forms"]):
                return True
    return False


def gluing_tree_from_type(p, t):
    """Gluing tree determined by a combinatorial type."""
    g = realize_type(p, t)
    tree = gluing_tree(p, g)
    back = combinatorial_type(p, g)
    if back != t:
        raise LengthMismatch(f"type {t} realizes as {back}")
    return tree


def tree_summary(t):
    """Compact multiset description used by catalogs."""
    parts = []
    for _, d in sorted(t.graph.nodes(data=True), key=lambda x: x[0]):
        parts.append((len(d["vertices"]), len(d["edges"]), t.graph.degree(_)))
    return parts


def realization_dimension(p, t):
    """Dimension of the space of gluings of type t (0 for rigid types)."""
    if not isinstance(t, GluingType):
        t = GluingType.from_pairs(t)
    best = None
    for arr in _arrangements(p, t):
        if _solve_strict(arr["eqs"], arr["strict"], arr["nvar"], p.perimeter) is None:
            continue
        A = np.array([e.a for e in arr["eqs"]]) if arr["eqs"] else np.zeros((0, arr["nvar"]))
        rank = np.linalg.matrix_rank(A, tol=1e-9) if A.size else 0
        d = arr["nvar"] - rank
        best = d if best is None else max(best, d)
    if best is None:
        raise LengthMismatch(f"type {t} has no realization with matching lengths")
    return best
