"""End-to-end hyperbolic Voronoi pipelines, Delaunay duals and the oracle.

Both routes reduce a point set to weighted sites on the unit-Klein chart
and clip the resulting power diagram with the unit ball:

* klein route      - sites from `klein_site_map` (one sqrt per site);
* hemisphere route - sites from `hemisphere_site_map` on the lifted
  coordinates (rational: exact with rational d+1 input).

The defining oracle (exhaustive nearest-site by hyperbolic distance)
lives here too, along with its sampling-based `verify` harness.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import power, sampling
from .bisectors import ImplicitSurface, scale_surface, transport_surface
from .conversions import hub_coords
from .errors import (
    DuplicateSites,
    EmptySites,
    ModelMismatch,
    NoExplicitGeometry,
)
from .models import (
    Curvature,
    ModelPoint,
    ModelTag,
    distance,
    validate_point,
)
from .power import PowerComplex, build_complex, radical_hyperplane, unit_ball
from .scalars import as_floats, norm_sq

ROUTE_KLEIN = "klein"
ROUTE_HEMISPHERE = "hemisphere"

NEAREST_TIE_TOL = 1e-12
BOUNDARY_BAND = 1e-7
# Dual power vertices count as inside the clip ball when 1 - |v| exceeds this.
BALL_STRICT_TOL = 1e-12
# Coordinate tolerance for merging degenerate dual vertices, confirmed by
# relative agreement of the incident-site circumdistances.
DUAL_MERGE_TOL = 1e-9


@dataclass
class VoronoiDiagram:
    model: ModelTag
    curvature: Curvature
    sites: tuple
    complex: PowerComplex
    boundaries: dict  # (i, j), i < j -> ImplicitSurface in `model`, site i side < 0
    route: str
    hub_points: tuple  # per site: unit hemisphere lift (x0, klein coords...)

    @property
    def dimension(self) -> int:
        return self.complex.dimension


@dataclass
class DelaunayComplex:
    faces: list  # site-index frozensets; size d+1 unless degenerate
    edges: set  # (i, j) pairs, i < j
    is_triangulation: bool


@dataclass
class DegeneracyReport:
    cocircular_groups: list
    collinear_groups: list
    equal_norm_groups: list
    equal_height_groups: list
    notes: list

    @property
    def empty(self) -> bool:
        return not (
            self.cocircular_groups
            or self.collinear_groups
            or self.equal_norm_groups
            or self.equal_height_groups
        )


@dataclass
class VerificationReport:
    sample_count: int
    excluded: int
    checked: int
    disagreements: int
    max_gap: float
    witness: dict | None
    seed: int
    band: float

    @property
    def agreement_rate(self) -> float:
        return 1.0 if self.checked == 0 else 1.0 - self.disagreements / self.checked

    @property
    def ok(self) -> bool:
        return self.disagreements == 0


def _check_point_set(points):
    if not points:
        raise EmptySites("need at least one site")
    first = points[0]
    seen = {}
    for k, p in enumerate(points):
        if p.model is not first.model:
            raise ModelMismatch(f"site {k} is in model {p.model.value}")
        if p.curvature.kappa != first.curvature.kappa:
            raise ModelMismatch(f"site {k} has curvature {p.curvature.kappa}")
        validate_point(p)
        if p.coords in seen:
            raise DuplicateSites(f"sites {seen[p.coords]} and {k} coincide")
        seen[p.coords] = k


def voronoi(points, route: str = ROUTE_KLEIN, explicit: bool | None = None) -> VoronoiDiagram:
    """Hyperbolic Voronoi diagram of a finite point set.

    The diagram is computed on the unit-Klein chart as a power diagram
    clipped to the unit ball; boundary surfaces are transported back to
    the input model at the input curvature.
    """
    points = [p if isinstance(p, ModelPoint) else ModelPoint(*p) for p in points]
    if route not in (ROUTE_KLEIN, ROUTE_HEMISPHERE):
        raise ValueError(f"unknown route {route!r}")
    _check_point_set(points)
    hubs = [hub_coords(p) for p in points]
    if route == ROUTE_KLEIN:
        sites = [power.klein_site_map(h[1:], i) for i, h in enumerate(hubs)]
    else:
        sites = [power.hemisphere_site_map(h, i) for i, h in enumerate(hubs)]
    d = points[0].dim
    cx = build_complex(sites, clip=unit_ball(d), explicit=explicit)
    model = points[0].model
    curvature = points[0].curvature
    boundaries = {}
    for (i, j) in sorted(cx.adjacency):
        hs = radical_hyperplane(sites[i], sites[j])
        chart = ImplicitSurface(0, hs.normal, hs.offset, ModelTag.KLEIN)
        moved = transport_surface(chart, model)
        boundaries[(i, j)] = scale_surface(moved, curvature, to_unit=False)
    return VoronoiDiagram(
        model=model,
        curvature=curvature,
        sites=tuple(points),
        complex=cx,
        boundaries=boundaries,
        route=route,
        hub_points=tuple(hubs),
    )


def nearest_site(x: ModelPoint, points) -> tuple[int, tuple[int, ...]]:
    """Exhaustive argmin of hyperbolic distance; the defining oracle.

    Returns (winner, tie_set); ties are distances within 1e-12 of the
    minimum, lowest index first.
    """
    points = list(points)
    if not points:
        raise EmptySites("nearest_site needs at least one site")
    dists = [distance(x, p) for p in points]
    best = min(dists)
    ties = tuple(i for i, v in enumerate(dists) if v - best <= NEAREST_TIE_TOL)
    return ties[0], ties


def _klein_cosh(u, v) -> float:
    num = 1.0 - sum(a * b for a, b in zip(u, v))
    den = math.sqrt((1.0 - sum(a * a for a in u)) * (1.0 - sum(a * a for a in v)))
    return num / den


def _merge_dual_vertices(vertices, klein_sites, tol):
    """Merge coincident dual vertices; union their incident site sets.

    Merging is by coordinate proximity and is confirmed by the union's
    circumdistances agreeing to `tol` relative (otherwise kept apart).
    """
    groups = []  # [float point, set sites, representative point]
    for v in vertices:
        fpt = as_floats(v.point)
        target = None
        for g in groups:
            if all(abs(a - b) <= tol for a, b in zip(g[0], fpt)):
                target = g
                break
        if target is None:
            groups.append([fpt, set(v.sites), v.point])
        else:
            union = target[1] | set(v.sites)
            coshes = [_klein_cosh(target[0], as_floats(klein_sites[s])) for s in union]
            lo, hi = min(coshes), max(coshes)
            if hi - lo <= tol * max(1.0, hi):
                target[1] |= set(v.sites)
            else:
                groups.append([fpt, set(v.sites), v.point])
    return groups


def delaunay(diagram: VoronoiDiagram) -> DelaunayComplex:
    """Dual Delaunay complex of a diagram built with explicit geometry.

    A dual face appears iff its power vertex lies strictly inside the
    clip ball; edges are the adjacencies whose facet meets the open
    ball.  The dual is a triangulation iff every face is a d-simplex and
    every edge is covered by a face.
    """
    cx = diagram.complex
    if not cx.explicit:
        raise NoExplicitGeometry("diagram was built without explicit geometry")
    d = cx.dimension
    klein_sites = tuple(h[1:] for h in diagram.hub_points)

    inside = []
    for v in cx.power_vertices:
        norm = math.sqrt(float(norm_sq(v.point)))
        if norm < 1.0 - BALL_STRICT_TOL:
            inside.append(v)
    faces = [
        frozenset(g[1])
        for g in _merge_dual_vertices(inside, klein_sites, DUAL_MERGE_TOL)
    ]
    faces.sort(key=lambda f: tuple(sorted(f)))

    edges = set()
    for (i, j) in sorted(cx.adjacency):
        facet = cx.facets.get((i, j))
        if facet is None:
            continue
        if d == 2:
            min_ns = _segment_min_norm_sq_float(facet[0], facet[1])
        else:
            from .clipping import face_min_norm_sq

            min_ns = float(face_min_norm_sq(facet))
        if math.sqrt(min_ns) < 1.0 - BALL_STRICT_TOL:
            edges.add((i, j))

    simplicial = all(len(f) == d + 1 for f in faces)
    covered = all(any(i in f and j in f for f in faces) for (i, j) in edges)
    return DelaunayComplex(faces=faces, edges=edges, is_triangulation=simplicial and covered)


def _segment_min_norm_sq_float(v0, v1) -> float:
    from .clipping import segment_min_norm_sq

    return float(segment_min_norm_sq(as_floats(v0), as_floats(v1)))


def detect_degeneracies(points, tol: float = 1e-9) -> DegeneracyReport:
    """Flag equal-norm/equal-height groups, collinear groups (in the
    Klein chart) and hyperbolically co-spherical groups (degenerate
    power vertices of the mapped sites)."""
    points = list(points)
    _check_point_set(points)
    model = points[0].model
    d = points[0].dim
    notes = [f"tolerance {tol} relative"]

    equal_norm = []
    equal_height = []
    if model is ModelTag.UPPER_HALF_SPACE:
        keys = [float(p.unit_coords()[-1]) for p in points]
        equal_height = _equal_value_groups(keys, tol)
    elif model in (ModelTag.KLEIN, ModelTag.POINCARE):
        keys = [math.sqrt(float(norm_sq(p.unit_coords()))) for p in points]
        equal_norm = _equal_value_groups(keys, tol)
    else:
        # hemisphere / hyperboloid: equal x0 is the ball-model equal norm
        keys = [float(p.unit_coords()[0]) for p in points]
        equal_norm = _equal_value_groups(keys, tol)

    hubs = [as_floats(hub_coords(p)) for p in points]
    kleins = [h[1:] for h in hubs]
    collinear = _collinear_groups(kleins, tol) if len(points) >= 3 else []

    cocircular = []
    if d in (2, 3) and len(points) >= d + 2:
        sites = [power.hemisphere_site_map(h, i) for i, h in enumerate(hubs)]
        cx = build_complex(sites, clip=unit_ball(d))
        merged = _merge_dual_vertices(cx.power_vertices, kleins, tol)
        for g in merged:
            if len(g[1]) > d + 1:
                cocircular.append(tuple(sorted(g[1])))
        cocircular.sort()
    elif d > 3:
        notes.append("co-spherical detection skipped for d > 3 (no explicit geometry)")

    return DegeneracyReport(
        cocircular_groups=cocircular,
        collinear_groups=collinear,
        equal_norm_groups=equal_norm,
        equal_height_groups=equal_height,
        notes=notes,
    )


def _equal_value_groups(values, tol):
    order = sorted(range(len(values)), key=lambda k: values[k])
    groups = []
    current = [order[0]] if order else []
    for prev, nxt in zip(order, order[1:]):
        if abs(values[nxt] - values[prev]) <= tol * max(1.0, abs(values[nxt])):
            current.append(nxt)
        else:
            if len(current) >= 2:
                groups.append(tuple(sorted(current)))
            current = [nxt]
    if len(current) >= 2:
        groups.append(tuple(sorted(current)))
    return groups


def _collinear_groups(kleins, tol):
    if any(len(k) != 2 for k in kleins):
        return []  # collinearity scan is planar only
    n = len(kleins)
    found = set()
    for i in range(n):
        for j in range(i + 1, n):
            ax, ay = kleins[i][0], kleins[i][1]
            bx, by = kleins[j][0], kleins[j][1]
            ux, uy = bx - ax, by - ay
            ln = math.hypot(ux, uy)
            if ln < 1e-15:
                continue
            group = {i, j}
            for k in range(n):
                if k in (i, j):
                    continue
                dist = abs((kleins[k][0] - ax) * uy - (kleins[k][1] - ay) * ux) / ln
                if dist <= tol:
                    group.add(k)
            if len(group) >= 3:
                found.add(tuple(sorted(group)))
    # keep only maximal groups
    out = [g for g in found if not any(set(g) < set(h) for h in found if h != g)]
    out.sort()
    return out


# --- sampling-based verification ---------------------------------------------

def sample_labels(diagram: VoronoiDiagram, sample_count: int, seed: int):
    """Deterministic verification samples with both labelings.

    Returns (samples, power_labels, oracle_labels, boundary_margin):
    samples in the unit-Klein chart, power labels from point location on
    the mapped sites, oracle labels from hyperbolic nearest-site, and
    each sample's distance to the nearest radical hyperplane of its
    winning site (the boundary-band criterion).
    """
    cx = diagram.complex
    n = len(cx.sites)
    d = cx.dimension
    X = sampling.ball_points(seed, sample_count, d)

    C = np.array([as_floats(s.center) for s in cx.sites])
    W = np.array([float(s.weight) for s in cx.sites])
    D = ((X[:, None, :] - C[None, :, :]) ** 2).sum(axis=2) - W[None, :]
    labels = np.argmin(D, axis=1)

    hubs = np.array([as_floats(h) for h in diagram.hub_points])
    P = hubs[:, 1:]
    s0 = hubs[:, 0]
    xnorm = 1.0 - (X**2).sum(axis=1)
    cosh = (1.0 - X @ P.T) / (np.sqrt(xnorm)[:, None] * s0[None, :])
    oracle = np.argmin(cosh, axis=1)

    margin = np.full(sample_count, np.inf)
    if n > 1:
        normals = np.zeros((n, n, d))
        offsets = np.zeros((n, n))
        for i in range(n):
            for j in range(n):
                if i == j:
                    continue
                hs = power.canonical_halfspace(
                    radical_hyperplane(cx.sites[i], cx.sites[j])
                )
                nf = as_floats(hs.normal)
                ln = math.sqrt(sum(c * c for c in nf)) or 1.0
                normals[i, j] = np.asarray(nf) / ln
                offsets[i, j] = float(hs.offset) / ln
        for i in range(n):
            mask = labels == i
            if not mask.any():
                continue
            others = [j for j in range(n) if j != i]
            vals = np.abs(X[mask] @ normals[i, others].T + offsets[i, others][None, :])
            margin[mask] = vals.min(axis=1)
    return X, labels, oracle, margin


def verify(
    diagram: VoronoiDiagram,
    sample_count: int = 10_000,
    seed: int = 42,
    band: float = BOUNDARY_BAND,
) -> VerificationReport:
    """Compare diagram cell membership against the nearest-site oracle.

    Samples are uniform in the unit-Klein chart ball; samples within
    `band` of a boundary of their winning cell are excluded and counted.
    """
    X, labels, oracle, margin = sample_labels(diagram, sample_count, seed)
    hubs = np.array([as_floats(h) for h in diagram.hub_points])
    P = hubs[:, 1:]
    s0 = hubs[:, 0]

    excluded_mask = margin < band
    checked = int((~excluded_mask).sum())
    disagreements = 0
    max_gap = 0.0
    witness = None
    r = diagram.curvature.radius
    for k in np.nonzero(~excluded_mask)[0]:
        a, b = int(labels[k]), int(oracle[k])
        if a == b:
            continue
        x = X[k]
        xn = 1.0 - float(x @ x)
        da = r * math.acosh(
            max(1.0, (1.0 - float(x @ P[a])) / (math.sqrt(xn) * s0[a]))
        )
        db = r * math.acosh(
            max(1.0, (1.0 - float(x @ P[b])) / (math.sqrt(xn) * s0[b]))
        )
        gap = abs(da - db)
        if gap <= NEAREST_TIE_TOL:
            continue
        disagreements += 1
        if gap > max_gap:
            max_gap = gap
        if witness is None:
            witness = {
                "sample_index": int(k),
                "chart_point": tuple(float(c) for c in x),
                "diagram_label": a,
                "oracle_label": b,
                "distance_gap": gap,
            }
    return VerificationReport(
        sample_count=sample_count,
        excluded=int(excluded_mask.sum()),
        checked=checked,
        disagreements=disagreements,
        max_gap=max_gap,
        witness=witness,
        seed=seed,
        band=band,
    )
