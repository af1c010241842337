"""Power (Laguerre) diagram engine: weighted sites, radical hyperplanes,
halfspace-clipped cells, ball clipping and point location.

The hyperbolic pipelines reduce to this module: Klein points map to
weighted sites through `klein_site_map` (algebraic: one square root per
site), hemisphere points through `hemisphere_site_map` (rational).  The
two maps agree under the vertical lift.

Cell construction is deliberately the O(n^2) sequential clipping scheme
(one pass of n-1 halfspaces per cell): at desk scale the simplicity and
rational-exactness matter more than the worst-case-optimal bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import clipping
from .clipping import BOX_TAG, Polygon, Polyhedron
from .errors import (
    ArityMismatch,
    CoincidentSites,
    DimensionUnsupported,
    DomainViolation,
    DuplicateSites,
    EmptySites,
)
from .scalars import all_exact, as_floats, dot, norm_sq, sqrt_scalar, vsub

# Klein-mapped sites switch from imaginary to real ball radius exactly at
# |p|^2 = 4 (sqrt(5) - 2); kept as a named constant for tests.
KLEIN_WEIGHT_SIGN_THRESHOLD = 4.0 * (math.sqrt(5.0) - 2.0)

TIE_TOL = 1e-12
FACET_MEASURE_TOL = 1e-10
VERTEX_MERGE_TOL = 1e-12


@dataclass(frozen=True)
class WeightedSite:
    """Euclidean center with a real weight (squared radius, may be < 0)."""

    center: tuple
    weight: object
    origin_index: int = -1

    def __post_init__(self):
        object.__setattr__(self, "center", tuple(self.center))


@dataclass(frozen=True)
class Halfspace:
    """{x : <normal, x> + offset <= 0}.

    A zero normal with nonzero offset encodes the degenerate radical
    "hyperplane" of two concentric sites: the constraint is constant,
    satisfied everywhere or nowhere.
    """

    normal: tuple
    offset: object

    def __post_init__(self):
        object.__setattr__(self, "normal", tuple(self.normal))

    def evaluate(self, x):
        if len(x) != len(self.normal):
            raise ArityMismatch(
                f"halfspace arity {len(self.normal)}, point arity {len(x)}"
            )
        return dot(self.normal, x) + self.offset


@dataclass(frozen=True)
class Ball:
    center: tuple
    radius: object

    def __post_init__(self):
        object.__setattr__(self, "center", tuple(self.center))


def unit_ball(d: int) -> Ball:
    return Ball((0,) * d, 1)


def power_distance(s: WeightedSite, x) -> object:
    """<c - x, c - x> - w; exact on rational input."""
    if len(x) != len(s.center):
        raise ArityMismatch(f"site arity {len(s.center)}, point arity {len(x)}")
    return norm_sq(vsub(s.center, x)) - s.weight


def canonical_halfspace(hs: Halfspace) -> Halfspace:
    """Scale to unit normal (float) or primitive integer tuple (exact).

    Scaling is always by a positive factor, so orientation survives.
    """
    coeffs = hs.normal + (hs.offset,)
    if all_exact(coeffs):
        fracs = [Fraction(c) for c in coeffs]
        den = 1
        for f in fracs:
            den = den * f.denominator // math.gcd(den, f.denominator)
        ints = [int(f * den) for f in fracs]
        g = 0
        for v in ints:
            g = math.gcd(g, abs(v))
        if g:
            ints = [v // g for v in ints]
        return Halfspace(tuple(ints[:-1]), ints[-1])
    coeffs = as_floats(coeffs)
    scale = math.sqrt(sum(c * c for c in coeffs[:-1]))
    if scale == 0.0:
        scale = abs(coeffs[-1])
    return Halfspace(tuple(c / scale for c in coeffs[:-1]), coeffs[-1] / scale)


def radical_hyperplane(s_i: WeightedSite, s_j: WeightedSite) -> Halfspace:
    """Locus of equal power distance, oriented so s_i's side is <= 0.

    Square-root free.  For equal centers with different weights the zero
    set is empty and the returned halfspace is the constant constraint
    (the smaller-power site wins everywhere).
    """
    if s_i.center == s_j.center and s_i.weight == s_j.weight:
        raise CoincidentSites("radical hyperplane of identical weighted sites")
    normal = tuple(2 * (b - a) for a, b in zip(s_i.center, s_j.center))
    offset = norm_sq(s_i.center) - norm_sq(s_j.center) + s_j.weight - s_i.weight
    return canonical_halfspace(Halfspace(normal, offset))


def klein_site_map(p, origin_index: int = -1) -> WeightedSite:
    """Map a unit-Klein point to its power-diagram site.

    center = p / (2 sqrt(1 - |p|^2)),
    weight = |p|^2 / (4 (1 - |p|^2)) - 1 / sqrt(1 - |p|^2).
    The radical hyperplane of two mapped sites is the Klein bisector.
    Requires a square root: rational input raises unless 1 - |p|^2 is a
    perfect square (use the hemisphere map for rational pipelines).
    """
    n2 = norm_sq(p)
    s2 = 1 - n2
    if not float(s2) > 0:
        raise DomainViolation(
            f"Klein point has squared norm {float(n2)} >= 1",
            constraint="sum x_i^2 < 1",
        )
    s = sqrt_scalar(s2)
    center = tuple(x / (2 * s) for x in p)
    weight = n2 / (4 * s2) - 1 / s
    return WeightedSite(center, weight, origin_index)


def hemisphere_site_map(p, origin_index: int = -1) -> WeightedSite:
    """Map a unit-hemisphere point (d+1 coords) to its power site on H_0.

    center = (p_1, ..., p_d) / (2 p_0),  weight = <c, c> - 1/p_0.
    Rational in, rational out.  The weight's sign was fixed once against
    the equidistance oracle (the projected bisector constant must read
    1/p_0 - 1/q_0); the mapped sites coincide with `klein_site_map` of
    the vertical projection.
    """
    if len(p) < 3:
        raise ArityMismatch("hemisphere point needs at least 3 coordinates")
    if not p[0] > 0:
        raise DomainViolation(
            f"hemisphere x_0 = {float(p[0])} is not positive", constraint="x_0 > 0"
        )
    center = tuple(x / (2 * p[0]) for x in p[1:])
    weight = norm_sq(center) - 1 / p[0]
    return WeightedSite(center, weight, origin_index)


def locate(x, sites, tol: float = TIE_TOL) -> tuple[int, tuple[int, ...]]:
    """Exhaustive power point location: argmin index plus the tie set."""
    if not sites:
        raise EmptySites("locate needs at least one site")
    powers = [power_distance(s, x) for s in sites]
    best = min(powers)
    if all_exact(powers):
        ties = tuple(i for i, v in enumerate(powers) if v == best)
    else:
        fb = float(best)
        ties = tuple(i for i, v in enumerate(powers) if float(v) - fb <= tol)
    return ties[0], ties


# --- complex construction ----------------------------------------------------

@dataclass
class ConvexCell:
    site_index: int
    halfspaces: dict  # neighbor index -> Halfspace (this cell's side <= 0)
    clip: Ball | None
    polygon: Polygon | None = None
    polyhedron: Polyhedron | None = None
    empty: bool = False


@dataclass(frozen=True)
class PowerVertex:
    point: tuple
    sites: frozenset

    @property
    def degenerate(self) -> bool:
        return len(self.sites) > len(self.point) + 1


@dataclass
class PowerComplex:
    dimension: int
    sites: list
    cells: list
    adjacency: set  # {(i, j), i < j} sharing a positive-measure facet
    power_vertices: list
    facets: dict  # (i, j) -> facet geometry: segment (d=2) or polygon (d=3)
    clip: Ball | None
    explicit: bool
    box_halfwidth: float = 0.0


def _check_sites(sites) -> int:
    if not sites:
        raise EmptySites("build_complex needs at least one site")
    d = len(sites[0].center)
    seen = {}
    for k, s in enumerate(sites):
        if len(s.center) != d:
            raise ArityMismatch("sites have inconsistent dimensions")
        key = (s.center, s.weight)
        if key in seen:
            raise DuplicateSites(f"sites {seen[key]} and {k} coincide")
        seen[key] = k
    return d


def _solve2(h1: Halfspace, h2: Halfspace):
    (a1, b1), c1 = as_floats(h1.normal), float(h1.offset)
    (a2, b2), c2 = as_floats(h2.normal), float(h2.offset)
    det = a1 * b2 - a2 * b1
    if abs(det) < 1e-13 * max(1.0, abs(a1), abs(b1), abs(a2), abs(b2)):
        return None
    return ((b1 * c2 - b2 * c1) / det, (a2 * c1 - a1 * c2) / det)


def _solve3(h1, h2, h3):
    import numpy as np

    a = np.array([as_floats(h.normal) for h in (h1, h2, h3)], dtype=float)
    b = -np.array([float(h.offset) for h in (h1, h2, h3)], dtype=float)
    try:
        x = np.linalg.solve(a, b)
    except np.linalg.LinAlgError:
        return None
    if not np.all(np.isfinite(x)):
        return None
    return tuple(float(v) for v in x)


def _box_halfwidth(sites, halfspaces, clip, explicit, d) -> float:
    """Window big enough to contain the clip ball, every hyperplane foot
    point and (for unclipped explicit diagrams) every candidate vertex."""
    scale = 1.0
    if clip is not None:
        reach = float(clip.radius) + max((abs(c) for c in as_floats(clip.center)), default=0.0)
        scale = max(scale, reach)
    for s in sites:
        for c in s.center:
            scale = max(scale, abs(float(c)))
    n = len(sites)
    for i in range(n):
        for j in range(i + 1, n):
            hs = halfspaces[i][j]
            nf = as_floats(hs.normal)
            ln = math.sqrt(sum(c * c for c in nf))
            if ln > 0:
                scale = max(scale, abs(float(hs.offset)) / ln)
    if clip is None and explicit and n >= d + 1:
        cap = 1e9
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(j + 1, n):
                    if d == 2:
                        pt = _solve2(halfspaces[i][j], halfspaces[i][k])
                        if pt is not None:
                            scale = max(scale, min(cap, max(abs(v) for v in pt)))
                    else:
                        for l in range(k + 1, n):
                            pt = _solve3(
                                halfspaces[i][j], halfspaces[i][k], halfspaces[i][l]
                            )
                            if pt is not None:
                                scale = max(scale, min(cap, max(abs(v) for v in pt)))
    return 2.0 * scale + 1.0


def _merge_vertex_candidates(candidates, tol):
    """candidates: list of (point, floats, siteset) in deterministic order."""
    groups = []  # [point, floats, set]
    for point, fpt, sites in candidates:
        merged = False
        for g in groups:
            if all(abs(a - b) <= tol for a, b in zip(g[1], fpt)):
                g[2] |= sites
                merged = True
                break
        if not merged:
            groups.append([point, fpt, set(sites)])
    return [PowerVertex(g[0], frozenset(g[2])) for g in groups]


def build_complex(sites, clip: Ball | None = None, explicit: bool | None = None) -> PowerComplex:
    """Construct the power diagram of the given sites.

    Each cell is cut from a bounding window by its n-1 radical
    hyperplanes; `clip` (the model ball for hyperbolic pipelines) is kept
    as a separate constraint, not polygonized.  Explicit vertex/facet
    geometry is available for d in {2, 3}; higher dimensions keep the
    implicit halfspace representation (cells retain all n-1 halfspaces).
    """
    sites = list(sites)
    d = _check_sites(sites)
    n = len(sites)
    if explicit is None:
        explicit = d in (2, 3)
    elif explicit and d not in (2, 3):
        raise DimensionUnsupported(
            f"explicit cell geometry is limited to d in {{2, 3}}, got d = {d}"
        )
    if clip is not None and len(clip.center) != d:
        raise ArityMismatch("clip ball dimension does not match sites")

    halfspaces = [dict() for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            if j > i:
                hs = radical_hyperplane(sites[i], sites[j])
                halfspaces[i][j] = hs
                halfspaces[j][i] = Halfspace(
                    tuple(-c for c in hs.normal), -hs.offset
                )

    cells = []
    adjacency = set()
    facets = {}
    vertex_candidates = []

    if not explicit:
        for i in range(n):
            cells.append(
                ConvexCell(site_index=i, halfspaces=dict(halfspaces[i]), clip=clip)
            )
        return PowerComplex(d, sites, cells, set(), [], {}, clip, False)

    halfwidth = _box_halfwidth(sites, halfspaces, clip, explicit, d)
    exact = all(all_exact(s.center + (s.weight,)) for s in sites)
    hw = Fraction(halfwidth) if exact else halfwidth
    scale = halfwidth
    facet_tol = FACET_MEASURE_TOL * scale
    merge_tol = VERTEX_MERGE_TOL * scale
    r2 = clip.radius * clip.radius if clip is not None else None

    for i in range(n):
        if d == 2:
            poly = clipping.box_polygon(hw)
            for j in range(n):
                if j == i:
                    continue
                hs = halfspaces[i][j]
                poly = clipping.clip_polygon(poly, hs.normal, hs.offset, j)
            surviving = {}
            for tag, v0, v1 in poly.edges():
                if tag is BOX_TAG:
                    continue
                length = math.sqrt(float(norm_sq(vsub(v1, v0))))
                if exact:
                    keep = norm_sq(vsub(v1, v0)) > 0
                else:
                    keep = length > facet_tol
                if keep:
                    surviving[tag] = halfspaces[i][tag]
                    a, b = (i, tag) if i < tag else (tag, i)
                    adjacency.add((a, b))
                    key = (a, b)
                    if key not in facets or i == a:
                        facets[key] = (v0, v1)
            min_ns = clipping.polygon_min_norm_sq(poly)
            empty = poly.empty or (
                clip is not None and min_ns is not None and not min_ns < r2
            )
            # vertices where two radical edges meet: cells i, tag_prev, tag_cur
            m = len(poly.vertices)
            for k in range(m):
                t_prev, t_cur = poly.tags[(k - 1) % m], poly.tags[k]
                if t_prev is BOX_TAG or t_cur is BOX_TAG or t_prev == t_cur:
                    continue
                point = poly.vertices[k]
                vertex_candidates.append(
                    (point, as_floats(point), frozenset((i, t_prev, t_cur)))
                )
            cells.append(
                ConvexCell(i, surviving, clip, polygon=poly, empty=empty)
            )
        else:  # d == 3
            polyh = clipping.box_polyhedron(hw)
            for j in range(n):
                if j == i:
                    continue
                hs = halfspaces[i][j]
                polyh = clipping.clip_polyhedron(polyh, hs.normal, hs.offset, j)
            surviving = {}
            min_ns = None
            for face in polyh.faces:
                if face.tag is BOX_TAG:
                    continue
                if clipping.face_area(face.vertices) > facet_tol * facet_tol:
                    surviving[face.tag] = halfspaces[i][face.tag]
                    a, b = (i, face.tag) if i < face.tag else (face.tag, i)
                    adjacency.add((a, b))
                    key = (a, b)
                    if key not in facets or i == a:
                        facets[key] = tuple(face.vertices)
            if not polyh.empty:
                min_ns = min(
                    clipping.face_min_norm_sq(face.vertices) for face in polyh.faces
                )
            empty = polyh.empty or (
                clip is not None and min_ns is not None and not min_ns < float(r2)
            )
            for point, tags in clipping.polyhedron_vertices(polyh, merge_tol):
                site_tags = {t for t in tags if t is not BOX_TAG}
                if len(site_tags) >= 3:
                    vertex_candidates.append(
                        (point, as_floats(point), frozenset(site_tags | {i}))
                    )
            cells.append(
                ConvexCell(i, surviving, clip, polyhedron=polyh, empty=empty)
            )

    power_vertices = [
        v
        for v in _merge_vertex_candidates(vertex_candidates, merge_tol)
        if len(v.sites) >= d + 1
    ]
    return PowerComplex(
        d, sites, cells, adjacency, power_vertices, facets, clip, True, halfwidth
    )
