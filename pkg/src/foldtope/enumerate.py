"""Enumeration of Aleksandrov gluings up to combinatorial type.

Structured enumerators cover trees with one internal node (paths, Y, +)
by sweeping the free fold or edge point through its event values.  The
general engine is a depth-first zip search that handles any polygon and
any tree shape.  brute_force_oracle is an independent reference for
polygons whose edges are integer multiples of a grid step.
"""

import itertools
import json
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.optimize import linprog

from . import config
from .errors import FoldtopeError, IncommensurableEdges, NotConvex, ResultCapExceeded
from .gluing import (GluingType, Gluing, classify_structure, combinatorial_type,
                     gluing_from_corners, gluing_tree, grid_realizable,
                     perimeter_halving, spider_gluing, validate_aleksandrov)

TWO_PI = 2 * math.pi


@dataclass(frozen=True)
class EnumerationConfig:
    symmetry: str = "none"  # none | rotation | dihedral
    max_leaves: int = None
    max_results: int = config.MAX_RESULTS
    resolution: float = None

    def __post_init__(self):
        if self.symmetry not in ("none", "rotation", "dihedral"):
            raise ValueError(f"unknown symmetry {self.symmetry!r}")
        if self.max_results <= 0:
            raise ValueError("max_results must be positive")
        if self.max_leaves is not None and self.max_leaves < 2:
            raise ValueError("max_leaves must be at least 2")


# -- canonical forms -------------------------------------------------------

def type_nodes(n, t):
    """Node label sets of a type: list of (sorted vertex tuple, edge or None)."""
    d = t.as_dict() if isinstance(t, GluingType) else dict((i, (k, j)) for i, k, j in t)
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    edge_of = {}
    for i, (k, j) in d.items():
        if k == "v":
            parent[find(i)] = find(j)
    for i, (k, j) in d.items():
        if k == "e":
            edge_of[find(i)] = j
    groups = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return sorted((tuple(sorted(v)), edge_of.get(r)) for r, v in groups.items())


def type_from_nodes(n, nodes):
    """Inverse of type_nodes: first counterclockwise member of each vertex's node."""
    out = []
    for verts, e in nodes:
        members = [(2 * v, "v", v) for v in verts]
        if e is not None:
            members.append((2 * e + 1, "e", e))
        for v in verts:
            if len(members) == 1:
                out.append((v, "v", v))
                continue
            nxt = min((m for m in members if m[0] != 2 * v),
                      key=lambda m: (m[0] - 2 * v) % (2 * n))
            out.append((v, nxt[1], nxt[2]))
    return GluingType.from_pairs(out)


def _transform(n, nodes, k, mirror):
    out = []
    for verts, e in nodes:
        if mirror:
            vs = tuple(sorted((-v + k) % n for v in verts))
            ee = None if e is None else (-e - 1 + k) % n
        else:
            vs = tuple(sorted((v + k) % n for v in verts))
            ee = None if e is None else (e + k) % n
        out.append((vs, ee))
    return out


def canonicalize(t, symmetry="none", n=None):
    """Minimal representative of t under rotations (and reflections)."""
    n = n or t.n
    if symmetry == "none":
        return t
    nodes = type_nodes(n, t)
    mirrors = (False, True) if symmetry == "dihedral" else (False,)
    best = None
    for mirror in mirrors:
        for k in range(n):
            cand = type_from_nodes(n, _transform(n, nodes, k, mirror))
            if best is None or cand.key() < best.key():
                best = cand
    return best


# -- catalogs --------------------------------------------------------------

@dataclass
class CatalogEntry:
    type: GluingType
    gluing: Gluing
    tree: object
    structure: dict

    def profile(self):
        """Curvature profile: counts of ('alpha', k) and ('beta', k) nodes."""
        out = {}
        for _, d in self.tree.graph.nodes(data=True):
            key = ("beta" if d["edges"] else "alpha", len(d["vertices"]))
            out[key] = out.get(key, 0) + 1
        return dict(sorted(out.items()))

    def to_json(self):
        return {"type": self.type.to_json(), "gluing": self.gluing.to_json(),
                "tree": self.tree.to_json(),
                "structure": {k: v for k, v in self.structure.items() if k != "belts"}}


class GluingCatalog:
    """Deduplicated catalog keyed by canonical type."""

    def __init__(self, polygon, symmetry="none"):
        self.polygon = polygon
        self.symmetry = symmetry
        self.entries = {}
        self.candidates = 0

    def add_gluing(self, g, check=True):
        p = self.polygon
        if check and not validate_aleksandrov(p, g).valid:
            return None
        t = combinatorial_type(p, g)
        key = canonicalize(t, self.symmetry, p.n)
        if key in self.entries:
            return self.entries[key]
        tree = gluing_tree(p, g)
        e = CatalogEntry(t, g, tree, classify_structure(tree))
        self.entries[key] = e
        return e

    def merge(self, other):
        for k, e in other.entries.items():
            self.entries.setdefault(k, e)
        self.candidates += other.candidates
        return self

    def filter(self, pred):
        out = GluingCatalog(self.polygon, self.symmetry)
        out.entries = {k: e for k, e in self.entries.items() if pred(e)}
        out.candidates = self.candidates
        return out

    @property
    def types(self):
        return set(self.entries)

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries[k] for k in sorted(self.entries, key=GluingType.key))

    def __contains__(self, t):
        return canonicalize(t, self.symmetry, self.polygon.n) in self.entries

    def to_jsonl(self):
        return "\n".join(json.dumps(e.to_json(), sort_keys=True) for e in self)


# -- structured enumerators ------------------------------------------------

def _dedupe_sorted(xs, eps):
    out = []
    for x in sorted(xs):
        if not out or x - out[-1] > eps:
            out.append(x)
    return out


def path_candidates(p):
    """Fold positions x in [0, L/2) at and between the belt's type-change events."""
    L = p.perimeter
    H = L / 2
    s = p.starts
    eps = p.eps_len
    ev = [si % H for si in s]
    ev += [((si + sj) / 2) % H for si, sj in itertools.combinations(s, 2)]
    ev = [0.0 if H - x <= eps else x for x in ev]
    ev = _dedupe_sorted(ev, eps)
    mids = [(a + b) / 2 for a, b in zip(ev, ev[1:] + [ev[0] + H])]
    return ev + [m % H for m in mids]


def enumerate_path_gluings(p, cfg=None):
    cfg = cfg or EnumerationConfig()
    cat = GluingCatalog(p, cfg.symmetry)
    cands = path_candidates(p)
    cat.candidates = len(cands)
    for x in cands:
        cat.add_gluing(perimeter_halving(p, x))
    return cat.filter(lambda e: e.structure["shape"] == "path")


def _edge_point_candidates(p, c0, c1):
    """Sweep values for a free centre corner in the open arc (c0, c1)."""
    L = p.perimeter
    eps = p.eps_len
    if c1 <= c0:
        c1 += L
    s = np.concatenate([p.starts, p.starts + L, p.starts + 2 * L])
    inside = [x for x in s if c0 + eps < x < c1 - eps]
    ev = []
    for ends in (c0, c1):
        ev += [2 * x - ends for x in inside]
        ev += [x + y - ends for x, y in itertools.combinations(inside, 2)]
    ev = [x for x in ev if c0 + eps < x < c1 - eps]
    knots = _dedupe_sorted(ev + inside + [c0, c1], eps)
    out = [x for x in knots if c0 + eps < x < c1 - eps and
           not any(abs(x - v) <= eps for v in inside)]
    out += [(a + b) / 2 for a, b in zip(knots, knots[1:])]
    return [x % L for x in out]


def enumerate_spider_gluings(p, k, cfg=None):
    """All gluings whose tree has a single internal node with k corners."""
    cfg = cfg or EnumerationConfig()
    cat = GluingCatalog(p, cfg.symmetry)
    th = p.angles
    ea = config.TOL.eps_angle
    n = p.n
    s = p.starts
    count = 0
    for nv in (k, k - 1):
        for vs in itertools.combinations(range(n), nv):
            ang = sum(th[i] for i in vs) + (math.pi if nv < k else 0.0)
            if ang > TWO_PI + ea:
                continue
            cs = [float(s[i]) for i in vs]
            if nv == k:
                count += 1
                cat.add_gluing(spider_gluing(p, cs))
                continue
            for a, b in zip(cs, cs[1:] + cs[:1]):
                for x in _edge_point_candidates(p, a, b):
                    count += 1
                    cat.add_gluing(spider_gluing(p, cs + [x]))
    cat.candidates = count
    want = {3: "Y", 4: "+"}.get(k)
    return cat.filter(lambda e: want is None or e.structure["shape"] == want)


def enumerate_y_gluings(p, cfg=None):
    return enumerate_spider_gluings(p, 3, cfg)


def enumerate_four_leaf_gluings(p, cfg=None):
    cfg = cfg or EnumerationConfig()
    plus = enumerate_spider_gluings(p, 4, cfg)
    gen = enumerate_general(p, EnumerationConfig(cfg.symmetry, 4, cfg.max_results))
    eye = gen.filter(lambda e: e.structure["shape"] == "I")
    return plus.merge(eye)


def enumerate_convex(p, cfg=None):
    cfg = cfg or EnumerationConfig()
    if not p.is_convex:
        raise NotConvex("enumerate_convex needs a convex polygon")
    cat = enumerate_path_gluings(p, cfg)
    cat.merge(enumerate_y_gluings(p, cfg))
    cat.merge(enumerate_four_leaf_gluings(p, cfg))
    if cfg.max_leaves is not None:
        cat = cat.filter(lambda e: e.structure["leafCount"] <= cfg.max_leaves)
    return cat


# -- general zip search ----------------------------------------------------

class _Form:
    """Sparse affine form c + sum a_k x_k over edge-point variables."""
    __slots__ = ("c", "a")

    def __init__(self, c, a=None):
        self.c = float(c)
        self.a = a or {}

    def __add__(self, o):
        if not isinstance(o, _Form):
            return _Form(self.c + o, self.a)
        a = dict(self.a)
        for k, v in o.a.items():
            a[k] = a.get(k, 0.0) + v
        return _Form(self.c + o.c, {k: v for k, v in a.items() if v != 0.0})

    def __neg__(self):
        return _Form(-self.c, {k: -v for k, v in self.a.items()})

    def __sub__(self, o):
        return self + (-o if isinstance(o, _Form) else -o)

    @property
    def const(self):
        return not self.a

    def value(self, x):
        return self.c + sum(v * x[k] for k, v in self.a.items())


def _lp(cons, scale, want_point=False):
    """Max-slack LP over ('eq'|'lt', form) constraints; None if infeasible."""
    vars_ = sorted({k for _, f in cons for k in f.a})
    if not vars_:
        ok = all(abs(f.c) <= 1e-9 * scale if kind == "eq" else f.c < -1e-9 * scale
                 for kind, f in cons)
        return ({}, scale) if ok else None
    idx = {k: i for i, k in enumerate(vars_)}
    m = len(vars_)
    A_ub, b_ub, A_eq, b_eq = [], [], [], []
    for kind, f in cons:
        row = np.zeros(m + 1)
        for k, v in f.a.items():
            row[idx[k]] = v
        if kind == "eq":
            A_eq.append(row)
            b_eq.append(-f.c)
        else:
            row[m] = 1.0
            A_ub.append(row)
            b_ub.append(-f.c)
    c = np.zeros(m + 1)
    c[m] = -1.0
    res = linprog(c, A_ub=np.array(A_ub) if A_ub else None, b_ub=b_ub or None,
                  A_eq=np.array(A_eq) if A_eq else None, b_eq=b_eq or None,
                  bounds=[(None, None)] * m + [(None, scale)], method="highs")
    if res.status != 0 or -res.fun <= 1e-9 * scale:
        return None
    return {k: res.x[idx[k]] for k in vars_}, -res.fun


class _Search:
    def __init__(self, p, max_results):
        self.p = p
        self.n = p.n
        self.L = p.perimeter
        self.th = [float(t) for t in p.angles]
        self.ea = config.TOL.eps_angle
        self.eps = p.eps_len
        self.max_results = max_results
        self.memo = {}
        self.counter = itertools.count()

    def S(self, K):
        n = self.n
        return float(self.p.starts[K % n]) + self.L * (K // n)

    def theta(self, K):
        return self.th[K % self.n]

    def new_var(self):
        return next(self.counter)

    def new_node(self):
        return ("n", next(self.counter))

    # corners are (form, kind, index): kind 'v' with unrolled vertex K or
    # 'e' with unrolled edge J
    @staticmethod
    def next_vertex(c):
        return c[2] + 1

    @staticmethod
    def prev_vertex(c):
        return c[2] - 1 if c[1] == "v" else c[2]

    def vcorner(self, K):
        return (_Form(self.S(K)), "v", K)

    def edge_point(self, J):
        """Fresh edge point variable strictly inside unrolled edge J."""
        x = self.new_var()
        f = _Form(0.0, {x: 1.0})
        cons = [("lt", _Form(self.S(J)) - f), ("lt", f - self.S(J + 1))]
        return (f, "e", J), cons

    def compare(self, diff, ctx):
        """Feasible relations of diff to 0 given ctx: list of (rel, extra constraints)."""
        if diff.const:
            if abs(diff.c) <= self.eps:
                return [("eq", [])]
            return [("lt", [])] if diff.c < 0 else [("gt", [])]
        out = []
        for rel, con in (("eq", ("eq", diff)), ("lt", ("lt", diff)), ("gt", ("lt", -diff))):
            if _lp(list(ctx) + [con], self.L) is not None:
                out.append((rel, [con]))
        return out

    # pockets ------------------------------------------------------------
    def pocket(self, a, b, ctx):
        """Completions of the self-glued arc between corners a and b."""
        if a[0].const and b[0].const:
            key = (a[1], a[2], round(a[0].c, 9), b[1], b[2], round(b[0].c, 9))
            if key not in self.memo:
                self.memo[key] = list(self._pocket(a, b, ()))
            return self.memo[key]
        return list(self._pocket(a, b, ctx))

    def _pocket(self, a, b, ctx):
        l, r = self.next_vertex(a), self.prev_vertex(b)
        if l > r:
            yield ([], [])
            return
        dl = _Form(self.S(l)) - a[0]
        dr = b[0] - self.S(r)
        for rel, extra in self.compare(dl - dr, ctx):
            ctx1 = tuple(ctx) + tuple(extra)
            if rel == "eq":
                if l == r:
                    yield ([(self.vcorner(l), self.new_node())], extra)
                    continue
                yield from self._node(self.vcorner(l), self.vcorner(r),
                                      range(l + 1, r), True, ctx1, extra)
            elif rel == "lt":
                q = (b[0] - dl, "e", r)
                yield from self._node(self.vcorner(l), q, range(l + 1, r + 1), False,
                                      ctx1, extra)
            else:
                q = (a[0] + dr, "e", l - 1)
                yield from self._node(q, self.vcorner(r), range(l, r), False, ctx1, extra)

    def _node(self, c0, c1, inner, allow_edge, ctx, extra):
        """Node containing c0 and c1, optionally with more corners between."""
        base = sum(math.pi if c[1] == "e" else self.theta(c[2]) for c in (c0, c1))
        inner = list(inner)
        edges = list(range(c0[2], c1[2])) if allow_edge else []
        budget = TWO_PI + self.ea - base
        if budget < -self.ea:
            return
        for D in _subsets_within(tuple(self.theta(K) for K in inner), budget):
            Dk = [inner[i] for i in D]
            used = sum(self.theta(K) for K in Dk)
            opts = [None]
            if allow_edge and used + math.pi <= budget:
                opts += edges
            for J in opts:
                corners = [self.vcorner(K) for K in Dk]
                cons = list(extra)
                if J is not None:
                    ep, ec = self.edge_point(J)
                    corners.append(ep)
                    cons += ec
                    if _lp(list(ctx) + ec, self.L) is None:
                        continue
                corners.sort(key=lambda c: (c[2], 0 if c[1] == "v" else 1))
                chain = [c0] + corners + [c1]
                node = self.new_node()
                mine = [(c, node) for c in chain]
                for sub_corners, sub_cons in self._chain(chain, tuple(ctx) + tuple(cons)):
                    yield (mine + sub_corners, cons + sub_cons)

    def _chain(self, chain, ctx):
        """Product of the pockets between consecutive corners of one node."""
        if len(chain) < 2:
            yield ([], [])
            return
        a, b = chain[0], chain[1]
        for c1, k1 in self.pocket(a, b, ctx):
            ctx1 = tuple(ctx) + tuple(k1)
            for c2, k2 in self._chain(chain[1:], ctx1):
                yield (c1 + c2, list(k1) + k2)

    def run(self):
        n = self.n
        th0 = self.theta(0)
        budget = TWO_PI + self.ea - th0
        inner = list(range(1, n))
        root = self.vcorner(0)
        end = self.vcorner(n)
        for D in _subsets_within(tuple(self.theta(K) for K in inner), budget):
            Dk = [inner[i] for i in D]
            used = sum(self.theta(K) for K in Dk)
            opts = [None] + (list(range(n)) if used + math.pi <= budget else [])
            for J in opts:
                corners = [self.vcorner(K) for K in Dk]
                cons = []
                if J is not None:
                    ep, cons = self.edge_point(J)
                    corners.append(ep)
                corners.sort(key=lambda c: (c[2], 0 if c[1] == "v" else 1))
                node = self.new_node()
                mine = [(c, node) for c in [root] + corners]
                chain = [root] + corners + [end]
                for sub, sc in self._chain(chain, tuple(cons)):
                    yield mine + sub, cons + sc


@lru_cache(maxsize=None)
def _subsets_within(weights, budget):
    """Index subsets (sorted tuples) whose weights sum to at most budget."""
    out = []

    def rec(i, acc, chosen):
        if i == len(weights):
            out.append(tuple(chosen))
            return
        rec(i + 1, acc, chosen)
        if acc + weights[i] <= budget:
            chosen.append(i)
            rec(i + 1, acc + weights[i], chosen)
            chosen.pop()

    rec(0, 0.0, [])
    return out


def iter_general(p, max_results=None):
    """Yield concrete gluings, one per search leaf (types may repeat)."""
    srch = _Search(p, max_results or config.MAX_RESULTS)
    L = p.perimeter
    for corners, cons in srch.run():
        sol = _lp(cons, L)
        if sol is None:
            continue
        x, _ = sol
        pos = [c[0].value(x) % L for c, _ in corners]
        nodes = [nd for _, nd in corners]
        try:
            g = gluing_from_corners(p, pos, nodes)
        except FoldtopeError:
            continue
        yield g


def enumerate_general(p, cfg=None):
    """Exhaustive catalog of gluing types of any polygon."""
    cfg = cfg or EnumerationConfig()
    cat = GluingCatalog(p, cfg.symmetry)
    raw = 0
    for g in iter_general(p, cfg.max_results):
        raw += 1
        e = cat.add_gluing(g)
        if e is not None and len(cat) > cfg.max_results:
            raise ResultCapExceeded(f"more than {cfg.max_results} gluing types")
    cat.candidates = raw
    if cfg.max_leaves is not None:
        cat = cat.filter(lambda e: e.structure["leafCount"] <= cfg.max_leaves)
    return cat


# -- brute force oracle ----------------------------------------------------

def _noncrossing_matchings(m):
    """All noncrossing perfect matchings of 0..m-1 as lists of pairs."""
    @lru_cache(maxsize=None)
    def rec(lo, hi):
        if lo > hi:
            return [()]
        out = []
        for k in range(lo + 1, hi + 1, 2):
            for left in rec(lo + 1, k - 1):
                for right in rec(k + 1, hi):
                    out.append(((lo, k),) + left + right)
        return out

    return rec(0, m - 1)


def brute_force_oracle(p, r):
    """Catalog of all gluings whose breakpoints lie on the r-grid."""
    q = p.edge_lengths / r
    if np.any(np.abs(q - np.round(q)) > 1e-9 * np.maximum(q, 1)):
        raise IncommensurableEdges(f"edge lengths are not multiples of {r}")
    m = int(round(p.perimeter / r))
    if m % 2:
        return GluingCatalog(p)
    cat = GluingCatalog(p)
    th = p.angles
    grid_vertex = {int(round(si / r)): i for i, si in enumerate(p.starts)}
    mats = _noncrossing_matchings(m)
    cat.candidates = len(mats)
    ea = config.TOL.eps_angle
    for mt in mats:
        # cheap angle check on grid-point classes before building the gluing
        parent = list(range(m))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for i, j in mt:
            # arc i is [i, i+1], glued reversed to [j, j+1]
            parent[find(i)] = find((j + 1) % m)
            parent[find((i + 1) % m)] = find(j)
        acc = {}
        for k in range(m):
            rt = find(k)
            acc[rt] = acc.get(rt, 0.0) + (th[grid_vertex[k]] if k in grid_vertex else math.pi)
        if any(v > TWO_PI + ea for v in acc.values()):
            continue
        g = Gluing(p, [(i * r, j * r, r) for i, j in mt])
        cat.add_gluing(g)
    return cat


def grid_restricted(cat, r):
    """Subset of a catalog whose types admit a realization on the r-grid."""
    p = cat.polygon
    return cat.filter(lambda e: grid_realizable(p, e.type, r))
