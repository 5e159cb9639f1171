"""Command-line front end.

Inputs are document files or ``fixture:NAME``.  Results are written to
``--out``; stdout carries only the paths written, stderr a one-line summary.

Exit codes: 0 success, 1 other library error, 2 parse error, 3 domain
mismatch, 4 lifting not convex-down, 5 input lifting does not induce the
triangulation, 6 input not simplicial, 7 unsupported dimension for export.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction
from pathlib import Path

from . import fixtures, io
from ._linalg import chart_axes
from .complex import PolyComplex, Subdivision, boundary, cell_key, is_subdivision, sorted_ids
from .conical import ConicalSubdivision, cone_over, find_slicing_function, slice
from .errors import (
    DomainMismatch,
    InputNotInduced,
    InputNotSimplicial,
    NotConvexDown,
    PolytriError,
)
from .lifting import induced_subdivision
from .semistable import check_nearly_semistable, weak_to_nearly_semistable
from .triangulation import NonRegularityWitness, enumerate_triangulations, extend_triangulation, is_regular

EXIT_PARSE, EXIT_DOMAIN, EXIT_CONVEX, EXIT_NOT_INDUCED, EXIT_NOT_SIMPLICIAL, EXIT_DIMENSION = 2, 3, 4, 5, 6, 7


class UnsupportedDimension(PolytriError):
    pass


def _say(msg: str) -> None:
    print(msg, file=sys.stderr)


def _resolve(ref: str) -> Path:
    if ref.startswith("fixture:"):
        return fixtures.path(ref[len("fixture:"):])
    return Path(ref)


def _load(ref: str, kind: str | None = None):
    try:
        doc = io.read_document(_resolve(ref))
    except FileNotFoundError as exc:
        raise io.ParseError(str(exc)) from exc
    if kind and doc.kind != kind:
        raise io.ParseError(f"{ref}: expected a {kind} document, got {doc.kind}")
    return doc, io.from_document(doc)


def _emit(obj, out: str, **extra) -> None:
    path = io.write(obj, out, **extra)
    print(path)


def _witness_payload(w: NonRegularityWitness) -> dict:
    return {
        "type": "regularity",
        "regular": False,
        "constraints": [
            {"parent": sorted_ids(c.parent), "cell": sorted_ids(c.cell), "point": c.point, "kind": c.kind,
             "coefficients": [[v, c.coefficients[v]] for v in sorted_ids(c.coefficients)],
             "rhs": c.rhs, "multiplier": c.multiplier}
            for c in w.infeasible_constraint_subset
        ],
        "verified": w.verify(),
    }


# -- commands ----------------------------------------------------------------------

def cmd_subdivide(args) -> int:
    _, complex_ = _load(args.complex, "complex")
    _, lifting = _load(args.lifting, "lifting")
    sub = induced_subdivision(complex_, lifting)
    _say(f"{len(sub.refined.maximal_cells())} maximal cells")
    _emit(sub, args.out)
    return 0


def _subcomplex(complex_: PolyComplex, selector: str) -> PolyComplex:
    if selector == "boundary":
        return boundary(complex_)
    cells = json.loads(_resolve(selector).read_text())
    return complex_.subcomplex(cells)


def cmd_extend(args) -> int:
    _, complex_ = _load(args.complex, "complex")
    _, given = _load(args.triangulation, "subdivision")
    _, lifting = _load(args.lifting, "lifting")
    sub_complex = _subcomplex(complex_, args.subcomplex)
    sub_tri = is_subdivision(given.refined, sub_complex)
    try:
        res = extend_triangulation(complex_, sub_complex, sub_tri, lifting, args.strategy, args.seed)
    except InputNotInduced as exc:
        _say(f"input not induced: {exc}")
        if isinstance(exc.witness, NonRegularityWitness):
            w = Path(args.out).with_suffix(".witness.json")
            io.write(io.report_document(_witness_payload(exc.witness)), w)
            print(w)
        return EXIT_NOT_INDUCED
    _say(f"extended: {len(res.subdivision.refined.maximal_cells())} simplices, epsilon {res.epsilon}")
    _emit(res.subdivision, args.out)
    if args.emit_certificate:
        _emit(res.lifting, args.emit_certificate)
    return 0


def cmd_check_regular(args) -> int:
    _, complex_ = _load(args.complex, "complex")
    _, sub = _load(args.subdivision, "subdivision")
    sub = is_subdivision(sub.refined, complex_)
    result = is_regular(complex_, sub)
    if isinstance(result, NonRegularityWitness):
        _say(f"NOT REGULAR ({len(result.infeasible_constraint_subset)} constraints in the witness)")
        payload = _witness_payload(result)
    else:
        _say(f"REGULAR (margin {result.margin})")
        payload = {"type": "regularity", "regular": True, "margin": result.margin,
                   "lifting": [[v, result.lifting[v]] for v in sorted_ids(result.lifting.values)]}
    if args.out:
        _emit(io.report_document(payload), args.out)
    return 0


def cmd_enumerate(args) -> int:
    _, complex_ = _load(args.complex, "complex")
    tris = enumerate_triangulations(complex_, jobs=args.jobs)
    _say(f"{len(tris)} triangulations")
    payload = {"type": "enumeration", "count": len(tris),
               "triangulations": [[sorted_ids(c) for c in sorted(t.maximal_key(), key=cell_key)] for t in tris]}
    if args.out:
        _emit(io.report_document(payload), args.out)
    return 0


def cmd_cone(args) -> int:
    _, complex_ = _load(args.complex, "complex")
    sigma, h = cone_over(complex_)
    _say(f"cone with {len(sigma.rays)} rays")
    _emit(sigma, args.out, slicing=h)
    return 0


def cmd_slice(args) -> int:
    doc, sigma = _load(args.conical, "conical")
    h = io._conical_in(doc.payload)[1]
    if h is None:
        h = find_slicing_function(sigma)
        if h is None:
            _say("no slicing function exists")
            return EXIT_DOMAIN
    delta = slice(sigma, h)
    _say(f"slice with {len(delta.vertices)} vertices")
    _emit(delta, args.out)
    return 0


def cmd_check_semistable(args) -> int:
    _, f = _load(args.morphism, "morphism")
    if args.reduce:
        ks = [int(k) for k in args.reduce.split(",")]
        _, sub, report = weak_to_nearly_semistable(f, ks, {}, seed=args.seed)
    else:
        sub = f.source
        if args.subdivision:
            _, sub = _load(args.subdivision, "subdivision")
            if not isinstance(sub, ConicalSubdivision):
                raise DomainMismatch("expected a conical subdivision")
        report = check_nearly_semistable(f, sub)
    _say(report.summary())
    if args.out:
        _emit(report, args.out)
    return 0


def _fmt(x: Fraction) -> str:
    return format(float(x), ".12g")


def _polygon_order(points: list[tuple]) -> list[int]:
    """Cyclic order of the vertices of a convex polygon (any ambient dimension)."""
    axes = chart_axes(points)
    flat = [(float(p[axes[0]]), float(p[axes[1]])) for p in points]
    cx = sum(p[0] for p in flat) / len(flat)
    cy = sum(p[1] for p in flat) / len(flat)
    return sorted(range(len(points)), key=lambda i: math.atan2(flat[i][1] - cy, flat[i][0] - cx))


def export_off(complex_: PolyComplex) -> str:
    if complex_.ambient_dim > 3:
        raise UnsupportedDimension("OFF export needs ambient dimension at most 3")
    ids = sorted_ids(complex_.vertices)
    index = {v: i for i, v in enumerate(ids)}
    faces = []
    for cell in complex_.maximal_cells():
        two = [cell] if cell.dim == 2 else [f for f in complex_.faces(cell) if f.dim == 2] if cell.dim == 3 else []
        if cell.dim < 2:
            faces.append([index[v] for v in cell.ordered()])
        for f in two:
            order = f.ordered()
            pts = [complex_.point(v) for v in order]
            faces.append([index[order[i]] for i in _polygon_order(pts)])
    lines = ["OFF", f"{len(ids)} {len(faces)} 0"]
    for v in ids:
        p = list(complex_.point(v)) + [Fraction(0)] * (3 - complex_.ambient_dim)
        lines.append(" ".join(_fmt(x) for x in p))
    lines += [" ".join(map(str, [len(f)] + f)) for f in faces]
    return "\n".join(lines) + "\n"


def export_svg(complex_: PolyComplex, size: int = 400, margin: int = 20) -> str:
    if complex_.ambient_dim > 2:
        raise UnsupportedDimension("SVG export needs ambient dimension at most 2")
    pts = {v: (list(p) + [Fraction(0)] * 2)[:2] for v, p in complex_.vertices.items()}
    xs = [p[0] for p in pts.values()] or [Fraction(0)]
    ys = [p[1] for p in pts.values()] or [Fraction(0)]
    span = max(max(xs) - min(xs), max(ys) - min(ys)) or Fraction(1)
    scale = Fraction(size - 2 * margin) / span

    def xy(v):
        x, y = pts[v]
        return _fmt(margin + (x - min(xs)) * scale), _fmt(size - margin - (y - min(ys)) * scale)

    body = []
    for cell in complex_.maximal_cells():
        order = cell.ordered()
        if cell.dim == 2:
            cyc = [order[i] for i in _polygon_order([complex_.point(v) for v in order])]
            coords = " ".join(",".join(xy(v)) for v in cyc)
            body.append(f'<polygon points="{coords}" fill="#dde8f4" stroke="#234" stroke-width="1"/>')
        elif cell.dim == 1:
            (x1, y1), (x2, y2) = xy(order[0]), xy(order[1])
            body.append(f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="#234" stroke-width="1"/>')
    for v in sorted_ids(pts):
        x, y = xy(v)
        body.append(f'<circle cx="{x}" cy="{y}" r="3" fill="#234"><title>{v}</title></circle>')
    return (f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
            f'viewBox="0 0 {size} {size}">\n' + "\n".join(body) + "\n</svg>\n")


def cmd_export(args) -> int:
    _, obj = _load(args.input)
    complex_ = obj.refined if isinstance(obj, Subdivision) else obj
    if not isinstance(complex_, PolyComplex):
        raise io.ParseError("export needs a compact complex or subdivision")
    text = export_off(complex_) if args.format == "off" else export_svg(complex_)
    Path(args.out).write_text(text)
    print(args.out)
    return 0


def cmd_fixtures(args) -> int:
    if args.name:
        print(fixtures.path(args.name))
    else:
        for name in fixtures.names():
            print(name)
    return 0


# -- driver ------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="polytri", description="Regular subdivisions and triangulation extension.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("subdivide", help="subdivision induced by a lifting")
    s.add_argument("complex")
    s.add_argument("lifting")
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_subdivide)

    s = sub.add_parser("extend", help="extend a regular triangulation of a subcomplex")
    s.add_argument("complex")
    s.add_argument("triangulation", help="subdivision document of the subcomplex")
    s.add_argument("lifting", help="lifting inducing that triangulation")
    s.add_argument("--subcomplex", default="boundary", help='"boundary" or a JSON file listing cells')
    s.add_argument("--out", required=True)
    s.add_argument("--emit-certificate", metavar="PATH")
    s.add_argument("--strategy", choices=["pulling", "random"], default="pulling")
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_extend)

    s = sub.add_parser("check-regular", help="decide whether a subdivision is induced by a lifting")
    s.add_argument("complex")
    s.add_argument("subdivision")
    s.add_argument("--out")
    s.set_defaults(func=cmd_check_regular)

    s = sub.add_parser("enumerate", help="all triangulations without new vertices")
    s.add_argument("complex")
    s.add_argument("--out")
    s.add_argument("--jobs", type=int, default=1)
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("cone", help="cone over a compact complex")
    s.add_argument("complex")
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_cone)

    s = sub.add_parser("slice", help="slice a conical complex at height 1")
    s.add_argument("conical")
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_slice)

    s = sub.add_parser("check-semistable", help="nearly-semistable conditions of a morphism")
    s.add_argument("morphism")
    s.add_argument("--subdivision")
    s.add_argument("--reduce", metavar="K1,K2,...", help="base change by these multipliers and extend first")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out")
    s.set_defaults(func=cmd_check_semistable)

    s = sub.add_parser("export", help="OFF or SVG geometry")
    s.add_argument("input")
    s.add_argument("--format", choices=["off", "svg"], default="off")
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_export)

    s = sub.add_parser("fixtures", help="list fixtures or print the path of one")
    s.add_argument("name", nargs="?")
    s.set_defaults(func=cmd_fixtures)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (io.ParseError, FileNotFoundError) as exc:
        _say(f"parse error: {exc}")
        return EXIT_PARSE
    except NotConvexDown as exc:
        _say(f"not convex-down: {exc}")
        return EXIT_CONVEX
    except InputNotInduced as exc:
        _say(f"input not induced: {exc}")
        return EXIT_NOT_INDUCED
    except InputNotSimplicial as exc:
        _say(f"input not simplicial: {exc}")
        return EXIT_NOT_SIMPLICIAL
    except UnsupportedDimension as exc:
        _say(str(exc))
        return EXIT_DIMENSION
    except DomainMismatch as exc:
        _say(f"domain mismatch: {exc}")
        return EXIT_DOMAIN
    except PolytriError as exc:
        _say(f"error: {type(exc).__name__}: {exc}")
        return 1


if __name__ == "__main__":
    sys.exit(main())
