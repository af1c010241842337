"""Command-line front end: compute, convert, delaunay, render, check.

Exit codes: 0 success; 1 verification disagreement; 2 parse error;
3 domain violation; 4 unsupported dimension; 5 exact arithmetic
unavailable on the requested path.  Every failure prints a single
machine-parseable line `error: <kind>: <reason>` on stderr.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from fractions import Fraction

import numpy as np

from . import __version__
from .conversions import convert, hub_coords
from .documents import (
    SCALAR_EXACT,
    DiagramDocument,
    PointSetDocument,
    diagram_to_document,
    dump_json,
    load_diagram,
    load_point_set,
    sniff_document,
)
from .errors import (
    DimensionUnsupported,
    ExactArithmeticUnavailable,
    GeometryError,
    NoExplicitGeometry,
    ParseError,
)
from .hvd import delaunay, detect_degeneracies, verify, voronoi
from .models import Curvature, ModelTag, validate_point
from .render import render_svg
from .sampling import ball_points
from .scalars import as_floats

EXIT_OK = 0
EXIT_DISAGREEMENT = 1
EXIT_PARSE = 2
EXIT_DOMAIN = 3
EXIT_DIMENSION = 4
EXIT_EXACT = 5


def _want_color() -> bool:
    return os.environ.get("NO_COLOR") is None and sys.stdout.isatty()


def _verdict(ok: bool) -> str:
    word = "PASS" if ok else "FAIL"
    if _want_color():
        code = "32" if ok else "31"
        return f"\x1b[{code}m{word}\x1b[0m"
    return word


def _write_output(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _apply_overrides(doc: PointSetDocument, args) -> PointSetDocument:
    if getattr(args, "model", None):
        doc.model = ModelTag.parse(args.model)
    if getattr(args, "curvature", None) is not None:
        doc.curvature = (
            Fraction(args.curvature) if doc.exact else float(args.curvature)
        )
    if getattr(args, "exact", False) and not doc.exact:
        doc.scalar = SCALAR_EXACT
        doc.curvature = Fraction(doc.curvature)
        doc.points = [tuple(Fraction(c) for c in p) for p in doc.points]
    return doc


def cmd_compute(args) -> int:
    doc = _apply_overrides(load_point_set(args.input), args)
    points = doc.model_points()
    dia = voronoi(points, route=args.route)
    try:
        dual = delaunay(dia)
    except NoExplicitGeometry:
        dual = None
    degeneracies = detect_degeneracies(points)
    verification = (
        verify(dia, args.verify, args.seed) if args.verify else None
    )
    out = diagram_to_document(dia, dual, degeneracies, verification, input_doc=doc)
    _write_output(dump_json(out), args.output)
    return EXIT_OK


def cmd_convert(args) -> int:
    doc = _apply_overrides(load_point_set(args.input), args)
    target = ModelTag.parse(args.to)
    converted = []
    for k, p in enumerate(doc.model_points()):
        try:
            converted.append(convert(p, target).coords)
        except ExactArithmeticUnavailable as e:
            raise ExactArithmeticUnavailable(
                f"point {k}: exact conversion {doc.model.value} -> "
                f"{target.value} needs a square root ({e}); "
                "use float64 or a square-root-free path"
            ) from e
    out = PointSetDocument(doc.dimension, doc.curvature, target, doc.scalar, converted)
    _write_output(dump_json(out.to_json()), args.output)
    return EXIT_OK


def cmd_delaunay(args) -> int:
    doc = _apply_overrides(load_point_set(args.input), args)
    dia = voronoi(doc.model_points(), route=args.route)
    dual = delaunay(dia)
    section = {
        "edges": [list(e) for e in sorted(dual.edges)],
        "faces": [sorted(f) for f in dual.faces],
        "is_triangulation": dual.is_triangulation,
    }
    _write_output(dump_json(section), args.output)
    return EXIT_OK


def cmd_render(args) -> int:
    doc = load_diagram(args.diagram)
    model = ModelTag.parse(args.model)
    svg = render_svg(doc, model, width=args.width, samples_per_arc=args.samples_per_arc)
    _write_output(svg, args.output)
    return EXIT_OK


def _print_report(report, label: str) -> int:
    print(f"checked: {label}")
    print(f"samples: {report.sample_count}")
    print(f"excluded (boundary band {report.band:g}): {report.excluded}")
    print(f"checked samples: {report.checked}")
    print(f"agreement: {report.agreement_rate:.6f}")
    print(f"max distance gap: {report.max_gap:.3e}")
    if report.witness is not None:
        w = report.witness
        point = ", ".join(f"{c:.12g}" for c in w["chart_point"])
        print(
            f"witness: sample={w['sample_index']} point=({point}) "
            f"diagram={w['diagram_label']} oracle={w['oracle_label']} "
            f"gap={w['distance_gap']:.3e}"
        )
    print(_verdict(report.ok))
    return EXIT_OK if report.ok else EXIT_DISAGREEMENT


def cmd_check(args) -> int:
    kind = sniff_document(args.input)
    if kind == "point-set":
        doc = _apply_overrides(load_point_set(args.input), args)
        dia = voronoi(doc.model_points(), route=args.route)
        report = verify(dia, args.samples, args.seed)
        return _print_report(report, f"recomputed diagram of {args.input}")
    report = _check_stored_diagram(load_diagram(args.input), args.samples, args.seed)
    return _print_report(report, f"stored diagram {args.input}")


def _check_stored_diagram(doc: DiagramDocument, samples: int, seed: int):
    """Validate a stored diagram's cell data against the distance oracle.

    Consumes the document only: labels come from the stored per-cell
    halfspace lists, the oracle from the echoed input points.
    """
    from .hvd import BOUNDARY_BAND, NEAREST_TIE_TOL, VerificationReport

    points = doc.input.model_points()
    for p in points:
        validate_point(p)
    d = doc.dimension
    hubs = np.array([as_floats(hub_coords(p)) for p in points])
    P, s0 = hubs[:, 1:], hubs[:, 0]
    X = ball_points(seed, samples, d)

    mats = []
    for site, empty, hss in doc.cells:
        if hss:
            A = np.array([as_floats(hs.normal) for hs in hss.values()], dtype=float)
            b = np.array([float(hs.offset) for hs in hss.values()], dtype=float)
            norms = np.linalg.norm(A, axis=1)
            norms[norms == 0.0] = 1.0
            A /= norms[:, None]
            b /= norms
        else:
            A = np.zeros((0, d))
            b = np.zeros(0)
        mats.append((site, A, b))

    xnorm = 1.0 - (X**2).sum(axis=1)
    cosh = (1.0 - X @ P.T) / (np.sqrt(xnorm)[:, None] * s0[None, :])
    oracle = np.argmin(cosh, axis=1)

    excluded = 0
    disagreements = 0
    max_gap = 0.0
    witness = None
    r = float(Curvature(doc.input.curvature).radius)
    for k in range(samples):
        x = X[k]
        best = None
        for site, A, b in mats:
            if len(b):
                vals = A @ x + b
                worst = float(vals.max())
                margin = float(np.abs(vals).min())
            else:
                worst, margin = -math.inf, math.inf
            if best is None or worst < best[0]:
                best = (worst, site, margin)
        label, margin = best[1], best[2]
        if margin < BOUNDARY_BAND:
            excluded += 1
            continue
        o = int(oracle[k])
        if o == label:
            continue
        da = r * math.acosh(max(1.0, float(cosh[k, label])))
        db = r * math.acosh(max(1.0, float(cosh[k, o])))
        gap = abs(da - db)
        if gap <= NEAREST_TIE_TOL:
            continue
        disagreements += 1
        max_gap = max(max_gap, gap)
        if witness is None:
            witness = {
                "sample_index": k,
                "chart_point": tuple(float(c) for c in x),
                "diagram_label": int(label),
                "oracle_label": o,
                "distance_gap": gap,
            }
    checked = samples - excluded
    return VerificationReport(
        sample_count=samples,
        excluded=excluded,
        checked=checked,
        disagreements=disagreements,
        max_gap=max_gap,
        witness=witness,
        seed=seed,
        band=BOUNDARY_BAND,
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hypervoronoi",
        description="Hyperbolic Voronoi diagrams via clipped power diagrams.",
    )
    parser.add_argument(
        "--version", action="version", version=f"hypervoronoi {__version__}"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, model=True):
        if model:
            p.add_argument("--model", help="override the document's model tag")
            p.add_argument(
                "--curvature", type=float, help="override the curvature (< 0)"
            )

    p = sub.add_parser("compute", help="compute a diagram document")
    p.add_argument("input", help="point set document (JSON)")
    p.add_argument("--route", choices=("klein", "hemisphere"), default="klein")
    p.add_argument("--exact", action="store_true", help="exact-rational arithmetic")
    p.add_argument("--output", "-o", default=None, help="output path (default stdout)")
    p.add_argument("--verify", type=int, default=0, metavar="N",
                   help="include a verification summary over N samples")
    p.add_argument("--seed", type=int, default=42)
    add_common(p)
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("convert", help="convert a point set to another model")
    p.add_argument("input")
    p.add_argument("--to", required=True, help="target model")
    p.add_argument("--output", "-o", default=None)
    add_common(p)
    p.set_defaults(func=cmd_convert, exact=False)

    p = sub.add_parser("delaunay", help="extract the Delaunay complex")
    p.add_argument("input")
    p.add_argument("--route", choices=("klein", "hemisphere"), default="klein")
    p.add_argument("--output", "-o", default=None)
    add_common(p)
    p.set_defaults(func=cmd_delaunay, exact=False)

    p = sub.add_parser("render", help="render a diagram document as SVG")
    p.add_argument("diagram", help="diagram document (JSON)")
    p.add_argument("--model", default="klein",
                   help="render model: klein, poincare or upper-half-space")
    p.add_argument("--output", "-o", default=None)
    p.add_argument("--width", type=int, default=800)
    p.add_argument("--samples-per-arc", type=int, default=24,
                   help="polyline density for degenerate-arc fallback")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("check", help="verify a point set or stored diagram")
    p.add_argument("input", help="point set or diagram document")
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--route", choices=("klein", "hemisphere"), default="klein")
    add_common(p)
    p.set_defaults(func=cmd_check, exact=False)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as e:
        _fail("parse", e)
        return EXIT_PARSE
    except (DimensionUnsupported, NoExplicitGeometry) as e:
        _fail("dimension", e)
        return EXIT_DIMENSION
    except ExactArithmeticUnavailable as e:
        _fail("exact-arithmetic", e)
        return EXIT_EXACT
    except GeometryError as e:
        _fail("domain", e)
        return EXIT_DOMAIN


def _fail(kind: str, err: Exception) -> None:
    message = " ".join(str(err).split())
    print(f"error: {kind}: {message}", file=sys.stderr)


if __name__ == "__main__":
    sys.exit(main())
