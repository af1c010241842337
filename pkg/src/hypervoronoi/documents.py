"""On-disk formats: point-set inputs and self-contained diagram documents.

Both formats are JSON.  Numbers are plain JSON floats in float64 mode
and "numerator/denominator" strings in exact-rational mode, so exact
documents round-trip losslessly and byte-identically across platforms.
A diagram document carries everything rendering or re-checking needs;
consumers never have to rebuild the diagram.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .bisectors import DegenerateSurface, classify
from .errors import ParseError
from .models import Curvature, ModelPoint, ModelTag
from .power import Halfspace
from .scalars import is_exact

SCALAR_FLOAT = "float64"
SCALAR_EXACT = "exact-rational"
DIAGRAM_FORMAT = "hypervoronoi-diagram/1"


def encode_number(x, exact: bool):
    if exact:
        f = Fraction(x)
        return f"{f.numerator}/{f.denominator}"
    return float(x)


def decode_number(v):
    if isinstance(v, str):
        try:
            return Fraction(v)
        except (ValueError, ZeroDivisionError) as e:
            raise ParseError(f"bad rational literal {v!r}") from e
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ParseError(f"expected a number, got {v!r}")
    return float(v)


def encode_vector(xs, exact: bool):
    return [encode_number(x, exact) for x in xs]


def decode_vector(vs):
    if not isinstance(vs, list):
        raise ParseError(f"expected a coordinate array, got {vs!r}")
    return tuple(decode_number(v) for v in vs)


@dataclass
class PointSetDocument:
    dimension: int
    curvature: object
    model: ModelTag
    scalar: str
    points: list

    def model_points(self) -> list[ModelPoint]:
        curv = Curvature(self.curvature)
        return [ModelPoint(self.model, p, curv) for p in self.points]

    @property
    def exact(self) -> bool:
        return self.scalar == SCALAR_EXACT

    def to_json(self) -> dict:
        return {
            "dimension": self.dimension,
            "curvature": encode_number(self.curvature, self.exact),
            "model": self.model.value,
            "scalar": self.scalar,
            "points": [encode_vector(p, self.exact) for p in self.points],
        }


def parse_point_set(data) -> PointSetDocument:
    if not isinstance(data, dict):
        raise ParseError("point set document must be a JSON object")
    try:
        dimension = int(data["dimension"])
        model = ModelTag.parse(str(data["model"]))
        scalar = data.get("scalar", SCALAR_FLOAT)
        curvature = decode_number(data.get("curvature", -1.0))
        raw_points = data["points"]
    except KeyError as e:
        raise ParseError(f"missing field {e.args[0]!r}") from e
    except ValueError as e:
        raise ParseError(str(e)) from e
    if scalar not in (SCALAR_FLOAT, SCALAR_EXACT):
        raise ParseError(f"unknown scalar kind {scalar!r}")
    if dimension < 2:
        raise ParseError(f"dimension must be >= 2, got {dimension}")
    if not isinstance(raw_points, list) or not raw_points:
        raise ParseError("points must be a non-empty array")
    arity = dimension + 1 if model.ambient else dimension
    points = []
    for k, row in enumerate(raw_points):
        p = decode_vector(row)
        if len(p) != arity:
            raise ParseError(
                f"point {k} has {len(p)} coordinates, {model.value} in "
                f"dimension {dimension} needs {arity}"
            )
        if scalar == SCALAR_EXACT:
            p = tuple(Fraction(c) for c in p)
        points.append(p)
    if scalar == SCALAR_EXACT:
        curvature = Fraction(curvature)
    return PointSetDocument(dimension, curvature, model, scalar, points)


def load_point_set(path) -> PointSetDocument:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except json.JSONDecodeError as e:
        raise ParseError(f"{path}: invalid JSON: {e}") from e
    except OSError as e:
        raise ParseError(f"{path}: {e}") from e
    return parse_point_set(data)


def dump_json(data: dict) -> str:
    return json.dumps(data, indent=2, allow_nan=False) + "\n"


def save_json(data: dict, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dump_json(data))


# --- diagram documents --------------------------------------------------------

def _surface_class_name(surface) -> str:
    try:
        return classify(surface).value
    except DegenerateSurface:
        return "degenerate"


def diagram_to_document(
    diagram,
    dual=None,
    degeneracies=None,
    verification=None,
    input_doc: PointSetDocument | None = None,
) -> dict:
    """Serialize a VoronoiDiagram (plus optional sections) to a document."""
    cx = diagram.complex
    exact = all(
        is_exact(c) for s in cx.sites for c in s.center + (s.weight,)
    )
    scalar = SCALAR_EXACT if exact else SCALAR_FLOAT
    if input_doc is None:
        input_doc = PointSetDocument(
            dimension=diagram.dimension,
            curvature=diagram.curvature.kappa,
            model=diagram.model,
            scalar=scalar,
            points=[p.coords for p in diagram.sites],
        )
    enc = lambda x: encode_number(x, exact)
    doc = {
        "format": DIAGRAM_FORMAT,
        "input": input_doc.to_json(),
        "route": diagram.route,
        "chart": {"model": "klein", "curvature": -1.0},
        "sites": [
            {
                "index": s.origin_index if s.origin_index >= 0 else k,
                "center": encode_vector(s.center, exact),
                "weight": enc(s.weight),
            }
            for k, s in enumerate(cx.sites)
        ],
        "cells": [
            {
                "site": cell.site_index,
                "empty": cell.empty,
                "halfspaces": [
                    {
                        "neighbor": j,
                        "normal": encode_vector(cell.halfspaces[j].normal, exact),
                        "offset": enc(cell.halfspaces[j].offset),
                    }
                    for j in sorted(cell.halfspaces)
                ],
            }
            for cell in cx.cells
        ],
        "clip": None
        if cx.clip is None
        else {
            "center": encode_vector(cx.clip.center, exact),
            "radius": enc(cx.clip.radius),
        },
        "adjacency": [list(pair) for pair in sorted(cx.adjacency)],
        "facets": [
            {
                "pair": list(pair),
                "points": [encode_vector(v, exact) for v in cx.facets[pair]],
            }
            for pair in sorted(cx.facets)
        ],
        "power_vertices": [
            {
                "point": encode_vector(v.point, exact),
                "sites": sorted(v.sites),
            }
            for v in sorted(
                cx.power_vertices, key=lambda v: tuple(sorted(v.sites))
            )
        ],
        "boundaries": [
            {
                "pair": list(pair),
                "model": diagram.model.value,
                "lambda": enc(surface.lam),
                "a": encode_vector(surface.a, exact),
                "b": enc(surface.b),
                "class": _surface_class_name(surface),
            }
            for pair, surface in sorted(diagram.boundaries.items())
        ],
    }
    if dual is not None:
        doc["delaunay"] = {
            "edges": [list(e) for e in sorted(dual.edges)],
            "faces": [sorted(f) for f in dual.faces],
            "is_triangulation": dual.is_triangulation,
        }
    if degeneracies is not None:
        doc["degeneracies"] = {
            "cocircular_groups": [list(g) for g in degeneracies.cocircular_groups],
            "collinear_groups": [list(g) for g in degeneracies.collinear_groups],
            "equal_norm_groups": [list(g) for g in degeneracies.equal_norm_groups],
            "equal_height_groups": [list(g) for g in degeneracies.equal_height_groups],
            "notes": list(degeneracies.notes),
        }
    if verification is not None:
        doc["verification"] = {
            "sample_count": verification.sample_count,
            "excluded": verification.excluded,
            "checked": verification.checked,
            "disagreements": verification.disagreements,
            "agreement_rate": verification.agreement_rate,
            "max_gap": verification.max_gap,
            "seed": verification.seed,
            "band": verification.band,
            "witness": verification.witness,
        }
    return doc


@dataclass
class DiagramDocument:
    """Parsed diagram document: typed access to the stored sections."""

    raw: dict
    input: PointSetDocument
    route: str
    cells: list  # (site_index, empty, {neighbor: Halfspace})
    adjacency: list
    facets: dict
    boundaries: list  # (pair, lam, a, b, class name)
    delaunay: dict | None
    clip_radius: object

    @property
    def dimension(self) -> int:
        return self.input.dimension


def parse_diagram(data) -> DiagramDocument:
    if not isinstance(data, dict) or data.get("format") != DIAGRAM_FORMAT:
        raise ParseError("not a hypervoronoi diagram document")
    try:
        input_doc = parse_point_set(data["input"])
        cells = []
        for cell in data["cells"]:
            halfspaces = {
                int(h["neighbor"]): Halfspace(
                    decode_vector(h["normal"]), decode_number(h["offset"])
                )
                for h in cell["halfspaces"]
            }
            cells.append((int(cell["site"]), bool(cell["empty"]), halfspaces))
        adjacency = [tuple(int(v) for v in pair) for pair in data["adjacency"]]
        facets = {
            tuple(int(v) for v in f["pair"]): tuple(
                decode_vector(pt) for pt in f["points"]
            )
            for f in data.get("facets", [])
        }
        boundaries = [
            (
                tuple(int(v) for v in b["pair"]),
                decode_number(b["lambda"]),
                decode_vector(b["a"]),
                decode_number(b["b"]),
                str(b["class"]),
            )
            for b in data.get("boundaries", [])
        ]
        clip = data.get("clip")
        clip_radius = decode_number(clip["radius"]) if clip else None
    except (KeyError, TypeError, ValueError) as e:
        raise ParseError(f"malformed diagram document: {e!r}") from e
    return DiagramDocument(
        raw=data,
        input=input_doc,
        route=str(data.get("route", "klein")),
        cells=cells,
        adjacency=adjacency,
        facets=facets,
        boundaries=boundaries,
        delaunay=data.get("delaunay"),
        clip_radius=clip_radius,
    )


def load_diagram(path) -> DiagramDocument:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except json.JSONDecodeError as e:
        raise ParseError(f"{path}: invalid JSON: {e}") from e
    except OSError as e:
        raise ParseError(f"{path}: {e}") from e
    return parse_diagram(data)


def sniff_document(path) -> str:
    """Classify a JSON file as 'diagram' or 'point-set' (or raise)."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except json.JSONDecodeError as e:
        raise ParseError(f"{path}: invalid JSON: {e}") from e
    except OSError as e:
        raise ParseError(f"{path}: {e}") from e
    if isinstance(data, dict) and data.get("format") == DIAGRAM_FORMAT:
        return "diagram"
    return "point-set"
