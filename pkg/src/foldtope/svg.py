"""Deterministic SVG output with a fixed viewBox."""

import math

import networkx as nx
import numpy as np

SIZE = 400
PAD = 20


def _fit(point_sets):
    P = np.vstack([np.asarray(s, float).reshape(-1, 2) for s in point_sets if len(s)])
    lo, hi = P.min(axis=0), P.max(axis=0)
    span = max(float((hi - lo).max()), 1e-12)
    k = (SIZE - 2 * PAD) / span

    def tr(pts):
        pts = np.asarray(pts, float).reshape(-1, 2)
        x = PAD + (pts[:, 0] - lo[0]) * k
        y = SIZE - PAD - (pts[:, 1] - lo[1]) * k
        return np.column_stack([x, y])
    return tr


def _path(pts, closed=True):
    s = " ".join(f"{x:.3f},{y:.3f}" for x, y in pts)
    tag = "polygon" if closed else "polyline"
    return f'<{tag} points="{s}"'


def _doc(body):
    return (f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {SIZE} {SIZE}" '
            f'width="{SIZE}" height="{SIZE}">\n' + "\n".join(body) + "\n</svg>\n")


def polygon_svg(pts, segments=(), labels=None):
    pts = np.asarray(pts, float)
    tr = _fit([pts] + [np.asarray(s) for s in segments])
    body = [_path(tr(pts)) + ' fill="#eef" stroke="black" stroke-width="1"/>']
    for a, b in segments:
        (x1, y1), (x2, y2) = tr([a, b])
        body.append(f'<line x1="{x1:.3f}" y1="{y1:.3f}" x2="{x2:.3f}" y2="{y2:.3f}" '
                    'stroke="red" stroke-width="0.8"/>')
    if labels:
        for (x, y), t in zip(tr(pts), labels):
            body.append(f'<text x="{x:.3f}" y="{y:.3f}" font-size="9">{t}</text>')
    return _doc(body)


def layout_svg(layout):
    """Faces of an unfolding layout with the boundary outlined."""
    faces = [np.array([[z.real, z.imag] for z in zs]) for _, _, zs in layout.faces]
    tr = _fit(faces + [layout.boundary])
    body = []
    for F in faces:
        body.append(_path(tr(F)) + ' fill="#ddf" stroke="#99a" stroke-width="0.4"/>')
    body.append(_path(tr(layout.boundary)) + ' fill="none" stroke="black" stroke-width="1.2"/>')
    return _doc(body)


def tree_svg(tree):
    """Radial embedding of a gluing tree, rooted at its lowest node id."""
    G = tree.graph if hasattr(tree, "graph") and not isinstance(tree, nx.Graph) else tree
    nodes = sorted(G.nodes)
    if not nodes:
        return _doc([])
    root = nodes[0]
    depth = nx.single_source_shortest_path_length(G, root)
    order = list(nx.dfs_preorder_nodes(G, root))
    leaves = [v for v in order if G.degree(v) == 1 and v != root] or [root]
    ang = {v: 2 * math.pi * i / len(leaves) for i, v in enumerate(leaves)}
    for v in reversed(order):
        if v not in ang:
            kids = [u for u in G.neighbors(v) if depth[u] > depth[v]]
            ang[v] = sum(ang[u] for u in kids) / len(kids) if kids else 0.0
    pos = {v: (depth[v] * math.cos(ang[v]), depth[v] * math.sin(ang[v])) for v in nodes}
    tr = _fit([list(pos.values())])
    P = {v: tr([pos[v]])[0] for v in nodes}
    body = []
    for a, b in sorted(G.edges):
        body.append(f'<line x1="{P[a][0]:.3f}" y1="{P[a][1]:.3f}" x2="{P[b][0]:.3f}" '
                    f'y2="{P[b][1]:.3f}" stroke="black"/>')
    for v in nodes:
        d = G.nodes[v]
        lab = ",".join([f"v{i}" for i in d.get("vertices", ())] + [f"e{j}" for j in d.get("edges", ())])
        body.append(f'<circle cx="{P[v][0]:.3f}" cy="{P[v][1]:.3f}" r="4" fill="white" stroke="black"/>')
        body.append(f'<text x="{P[v][0] + 5:.3f}" y="{P[v][1] - 5:.3f}" font-size="9">{lab}</text>')
    return _doc(body)
