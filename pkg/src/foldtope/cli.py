"""foldtope command line.

Exit codes: 0 success, 1 domain error (invalid gluing, unrealizable
metric, ...), 2 usage error.
"""

import argparse
import json
import sys

from . import config
from . import enumerate as enum_mod
from . import reconstruct, regular, svg, unfold
from .errors import FoldtopeError
from .geometry import build_polygon, rectangle, regular_ngon
from .gluing import (Gluing, classify_structure, gluing_tree, perimeter_halving,
                     validate_aleksandrov)


class UsageError(Exception):
    pass


def _dump(obj, out):
    out.write(json.dumps(obj, sort_keys=True, indent=1) + "\n")


def _load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as e:
        raise UsageError(str(e))
    except json.JSONDecodeError as e:
        raise UsageError(f"{path}: {e}")


def load_polygon(path):
    d = _load_json(path)
    pts = d["vertices"] if isinstance(d, dict) else d
    return build_polygon(pts)


def _apply_config(items):
    kw = {}
    for item in items or []:
        if "=" not in item:
            raise UsageError(f"config override {item!r} is not key=value")
        k, v = item.split("=", 1)
        if k not in ("eps_angle", "eps_len", "eps_vol"):
            raise UsageError(f"unknown config key {k!r}")
        try:
            kw[k] = float(v)
        except ValueError:
            raise UsageError(f"{k} needs a number")
        if kw[k] <= 0:
            raise UsageError(f"{k} must be positive")
    if kw:
        config.set_tolerances(**kw)


# -- subcommands -----------------------------------------------------------

def cmd_validate(a, out):
    p = load_polygon(a.polygon)
    g = Gluing.from_json(p, _load_json(a.gluing))
    rep = validate_aleksandrov(p, g)
    _dump(rep.to_json(), out)
    return 0 if rep.valid else 1


def cmd_enumerate(a, out):
    p = load_polygon(a.polygon)
    sym = {"d": "dihedral", "r": "rotation"}.get(a.symmetry, a.symmetry)
    cfg = enum_mod.EnumerationConfig(symmetry=sym, max_leaves=a.max_leaves,
                                     max_results=a.cap)
    if a.method == "auto":
        cat = enum_mod.enumerate_convex(p, cfg) if p.is_convex else enum_mod.enumerate_general(p, cfg)
    elif a.method == "convex":
        cat = enum_mod.enumerate_convex(p, cfg)
    else:
        cat = enum_mod.enumerate_general(p, cfg)
    if a.format == "table":
        for e in cat:
            s = e.structure
            out.write(f"{str(e.type):40s} {s['shape']:5s} leaves={s['leafCount']} "
                      f"belts={s['rollingBelts']} N={e.tree.polytope_vertex_count()}\n")
    else:
        text = cat.to_jsonl()
        out.write(text + ("\n" if text else ""))
    return 0


def cmd_fold(a, out):
    p = load_polygon(a.polygon)
    g = perimeter_halving(p, a.x)
    rep = validate_aleksandrov(p, g)
    tree = gluing_tree(p, g)
    if a.svg:
        with open(a.svg, "w") as fh:
            fh.write(svg.tree_svg(tree))
    s = classify_structure(tree)
    _dump({"gluing": g.to_json(), "validation": rep.to_json(), "tree": tree.to_json(),
           "structure": {k: v for k, v in s.items() if k != "belts"}}, out)
    return 0 if rep.valid else 1


def cmd_classify(a, out):
    if a.n < 3:
        raise FoldtopeError("n must be at least 3")
    rows = regular.classify_regular_foldings(a.n)
    if a.table:
        for r in rows:
            flag = "∞ " if r.continuum and not r.polytope.startswith("∞") else ""
            out.write(f"{r.shape:5s} {regular.format_curvatures(r.curvatures):32s} "
                      f"N={r.N:<3d} {flag}{r.polytope}\n")
    else:
        _dump([r.to_json() for r in rows], out)
    return 0


def cmd_make(a, out):
    if a.kind == "regular":
        _dump(regular_ngon(int(a.args[0])).to_json(), out)
    elif a.kind == "rectangle":
        _dump(rectangle(float(a.args[0]), float(a.args[1])).to_json(), out)
    elif a.kind == "star":
        p, spec = reconstruct.make_star_polygon(int(a.args[0]))
        d = p.to_json()
        d.update({"alpha": spec.alpha, "beta": spec.beta, "x": spec.x.to_json(),
                  "y": spec.y.to_json(), "n": spec.n})
        _dump(d, out)
    elif a.kind == "zigzag":
        _dump(reconstruct.make_zigzag_polygon(int(a.args[0])).to_json(), out)
    elif a.kind == "rect-twist":
        L, W, x = (float(v) for v in a.args[:3])
        tet, p, g = reconstruct.rectangle_twist_tetrahedron(L, W, x)
        if a.obj:
            with open(a.obj, "w") as fh:
                fh.write(tet.to_obj())
        _dump({"polygon": p.to_json(), "gluing": g.to_json(), "tetrahedron": tet.to_json()}, out)
    return 0


def _model_and_tree(a):
    if a.family == "volcano":
        model = unfold.make_volcano(a.m, asym=a.asym)
        bits = a.bits if a.bits is not None else "0" * (a.m // 2 - 1)
        return model, unfold.volcano_cut_tree(model, bits), "bottom"
    if a.family == "slab":
        model = unfold.make_slab(a.n, a.w)
        digits = a.digits if a.digits is not None else "0" * a.n
        return model, unfold.slab_cut_tree(model, digits), "strip"
    raise UsageError(f"unknown family {a.family!r}")


def cmd_unfold(a, out):
    if a.family == "doubled":
        if a.polygon is None or a.point is None:
            raise UsageError("doubled needs --polygon and --point X Y")
        p = load_polygon(a.polygon)
        P = unfold.unfold_flat_doubled_polygon(p, a.point)
        if a.svg:
            with open(a.svg, "w") as fh:
                fh.write(svg.polygon_svg(P.vertices))
        _dump({"polygon": P.to_json(), "convex": P.is_convex,
               "signature": unfold.congruence_signature(P)}, out)
        return 0
    model, tree, root = _model_and_tree(a)
    lay = unfold.unfold(model, tree, root=root)
    if a.svg:
        with open(a.svg, "w") as fh:
            fh.write(svg.layout_svg(lay))
    _dump({"tree": tree.to_json(model), "simple": lay.simple,
           "boundary": lay.to_json()["boundary"], "signature": lay.signature(),
           "quantization": {"length": 1e-6, "angle": 1e-6}}, out)
    return 0 if lay.simple else 1


def cmd_sharp(a, out):
    if a.model in unfold.PLATONIC:
        q = unfold.platonic_model(a.model)
    elif a.model == "sliver":
        q = unfold.make_sliver_tetrahedron()
    else:
        q = unfold.make_doubled_polygon(load_polygon(a.model))
    sharp, ok = unfold.sharp_vertices(q)
    _dump({"curvatures": {q.labels[i]: float(q.curvatures[i]) for i in q.vertex_ids},
           "sharp": [q.labels[i] for i in sharp], "convexUnfoldingPossible": ok,
           "shapes": sorted(unfold.convex_unfolding_leaf_bound(q))}, out)
    return 0


def cmd_tetra(a, out):
    tet = reconstruct.tetrahedron_from_edge_lengths(a.lengths)
    if a.obj:
        with open(a.obj, "w") as fh:
            fh.write(tet.to_obj())
    _dump(tet.to_json(), out)
    return 0


def cmd_signature(a, out):
    p = load_polygon(a.polygon)
    _dump({"signature": unfold.congruence_signature(p),
           "quantization": {"length": 1e-6, "angle": 1e-6}}, out)
    return 0


# -- parser ----------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser():
    ap = _Parser(prog="foldtope", description="Fold polygons into polytopes and unfold them back.")
    ap.add_argument("--config", action="append", metavar="KEY=VALUE",
                    help="tolerance override (eps_angle, eps_len, eps_vol)")
    sub = ap.add_subparsers(dest="cmd", parser_class=_Parser)
    sub.required = True

    s = sub.add_parser("validate", help="check a gluing against the Aleksandrov conditions")
    s.add_argument("polygon")
    s.add_argument("gluing")
    s.set_defaults(fn=cmd_validate)

    s = sub.add_parser("enumerate", help="catalog the gluings of a polygon")
    s.add_argument("polygon")
    s.add_argument("--symmetry", default="none", choices=["none", "rotation", "dihedral", "r", "d"])
    s.add_argument("--max-leaves", type=int)
    s.add_argument("--cap", type=int, default=config.MAX_RESULTS)
    s.add_argument("--method", default="auto", choices=["auto", "convex", "general"])
    s.add_argument("--format", default="jsonl", choices=["jsonl", "table"])
    s.set_defaults(fn=cmd_enumerate)

    s = sub.add_parser("fold", help="perimeter-halving gluing at arc coordinate x")
    s.add_argument("polygon")
    s.add_argument("--x", type=float, default=0.0)
    s.add_argument("--svg")
    s.set_defaults(fn=cmd_fold)

    s = sub.add_parser("classify-regular", help="fold classes of the regular n-gon")
    s.add_argument("n", type=int)
    s.add_argument("--table", action="store_true")
    s.set_defaults(fn=cmd_classify)

    s = sub.add_parser("make", help="emit a polygon family member")
    s.add_argument("kind", choices=["regular", "rectangle", "star", "zigzag", "rect-twist"])
    s.add_argument("args", nargs="*")
    s.add_argument("--obj", help="write the rect-twist tetrahedron as OBJ text")
    s.set_defaults(fn=cmd_make)

    s = sub.add_parser("unfold", help="unfold a volcano, slab or doubled polygon")
    s.add_argument("family", choices=["volcano", "slab", "doubled"])
    s.add_argument("--m", type=int, default=12)
    s.add_argument("--asym", type=float, default=0.01)
    s.add_argument("--bits")
    s.add_argument("--n", type=int, default=6)
    s.add_argument("--w", type=float)
    s.add_argument("--digits")
    s.add_argument("--polygon")
    s.add_argument("--point", type=float, nargs=2)
    s.add_argument("--svg")
    s.set_defaults(fn=cmd_unfold)

    s = sub.add_parser("sharp", help="sharp vertices of a model")
    s.add_argument("model", help="tetra|cube|octa|dodeca|icosa|sliver or a polygon JSON (doubled)")
    s.set_defaults(fn=cmd_sharp)

    s = sub.add_parser("reconstruct-tetra", help="embed a tetrahedron from six edge lengths")
    s.add_argument("lengths", type=float, nargs=6, metavar="L",
                   help="lengths 12 13 14 23 24 34")
    s.add_argument("--obj")
    s.set_defaults(fn=cmd_tetra)

    s = sub.add_parser("signature", help="congruence signature of a polygon")
    s.add_argument("polygon")
    s.set_defaults(fn=cmd_signature)
    return ap


_MAKE_ARITY = {"regular": 1, "rectangle": 2, "star": 1, "zigzag": 1, "rect-twist": 3}


def run(argv, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        a = build_parser().parse_args(argv)
        if a.cmd == "make" and len(a.args) != _MAKE_ARITY[a.kind]:
            raise UsageError(f"make {a.kind} takes {_MAKE_ARITY[a.kind]} arguments")
        _apply_config(a.config)
        return a.fn(a, out)
    except UsageError as e:
        err.write(json.dumps({"error": "usage", "message": str(e)}) + "\n")
        return 2
    except (FoldtopeError, ValueError, KeyError) as e:
        err.write(json.dumps({"error": type(e).__name__, "message": str(e)}) + "\n")
        return 1
    finally:
        config.set_tolerances(**vars(config.Tolerances()))


def main(argv=None):
    sys.exit(run(sys.argv[1:] if argv is None else argv))


if __name__ == "__main__":
    main()
