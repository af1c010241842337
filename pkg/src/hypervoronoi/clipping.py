"""Halfspace clipping of convex polygons (d=2) and polyhedra (d=3).

Internal machinery for the power-diagram engine.  Every boundary element
carries a tag: the index of the neighbor site whose radical hyperplane
produced it, or BOX_TAG for the artificial bounding-box walls.  All
intersection arithmetic is a single division, so rational inputs stay
rational.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .scalars import as_floats, dot, norm_sq, vsub

BOX_TAG = None


# --- polygons (d = 2) --------------------------------------------------------

@dataclass
class Polygon:
    """Convex polygon; edge k runs vertices[k] -> vertices[(k+1) % m]."""

    vertices: list
    tags: list

    @property
    def empty(self) -> bool:
        return len(self.vertices) < 3

    def edges(self):
        m = len(self.vertices)
        for k in range(m):
            yield self.tags[k], self.vertices[k], self.vertices[(k + 1) % m]

    def area(self) -> float:
        if self.empty:
            return 0.0
        verts = [as_floats(v) for v in self.vertices]
        s = 0.0
        for k in range(len(verts)):
            x0, y0 = verts[k]
            x1, y1 = verts[(k + 1) % len(verts)]
            s += x0 * y1 - x1 * y0
        return 0.5 * abs(s)


def box_polygon(halfwidth, center=(0, 0)) -> Polygon:
    cx, cy = center
    h = halfwidth
    verts = [
        (cx - h, cy - h),
        (cx + h, cy - h),
        (cx + h, cy + h),
        (cx - h, cy + h),
    ]
    return Polygon(verts, [BOX_TAG] * 4)


def _cut_point(v0, v1, f0, f1):
    t = f0 / (f0 - f1)
    return tuple(a + t * (b - a) for a, b in zip(v0, v1))


def clip_polygon(poly: Polygon, normal, offset, tag) -> Polygon:
    """Keep the side <normal, x> + offset <= 0; new edges get `tag`."""
    if poly.empty:
        return poly
    verts, tags = poly.vertices, poly.tags
    m = len(verts)
    vals = [dot(normal, v) + offset for v in verts]
    out_v, out_t = [], []
    for k in range(m):
        v0, v1 = verts[k], verts[(k + 1) % m]
        f0, f1 = vals[k], vals[(k + 1) % m]
        t = tags[k]
        if f0 <= 0:
            out_v.append(v0)
            out_t.append(t)
            if f1 > 0:
                out_v.append(_cut_point(v0, v1, f0, f1))
                out_t.append(tag)
        elif f1 <= 0:
            out_v.append(_cut_point(v0, v1, f0, f1))
            out_t.append(t)
    # drop zero-length edges from grazing cuts
    verts2, tags2 = [], []
    for k in range(len(out_v)):
        if not out_v[k] == out_v[(k + 1) % len(out_v)]:
            verts2.append(out_v[k])
            tags2.append(out_t[k])
    if len(verts2) < 3:
        return Polygon([], [])
    return Polygon(verts2, tags2)


def segment_min_norm_sq(v0, v1):
    """min over the segment [v0, v1] of squared distance to the origin."""
    d = vsub(v1, v0)
    dd = norm_sq(d)
    if dd == 0:
        return norm_sq(v0)
    t = -dot(v0, d) / dd
    if t <= 0:
        return norm_sq(v0)
    if t >= 1:
        return norm_sq(v1)
    w = tuple(a + t * b for a, b in zip(v0, d))
    return norm_sq(w)


def polygon_min_norm_sq(poly: Polygon):
    """min squared distance from the origin to the polygon, None if empty."""
    if poly.empty:
        return None
    if _polygon_contains_origin(poly):
        return 0
    best = None
    for _, v0, v1 in poly.edges():
        m = segment_min_norm_sq(v0, v1)
        if best is None or m < best:
            best = m
    return best


def _polygon_contains_origin(poly: Polygon) -> bool:
    # convex, counterclockwise or clockwise consistent: origin inside iff
    # all cross products share a sign (zero allowed).
    sign = 0
    for _, v0, v1 in poly.edges():
        cr = v0[0] * (v1[1] - v0[1]) - v0[1] * (v1[0] - v0[0])
        if cr > 0:
            cur = 1
        elif cr < 0:
            cur = -1
        else:
            continue
        if sign == 0:
            sign = cur
        elif cur != sign:
            return False
    return True


# --- polyhedra (d = 3) -------------------------------------------------------

@dataclass
class Face:
    tag: object
    vertices: list


@dataclass
class Polyhedron:
    faces: list

    @property
    def empty(self) -> bool:
        return len(self.faces) < 4


def box_polyhedron(halfwidth, center=(0, 0, 0)) -> Polyhedron:
    cx, cy, cz = center
    h = halfwidth
    lo = (cx - h, cy - h, cz - h)
    hi = (cx + h, cy + h, cz + h)
    x0, y0, z0 = lo
    x1, y1, z1 = hi
    quads = [
        [(x0, y0, z0), (x0, y1, z0), (x0, y1, z1), (x0, y0, z1)],  # x = x0
        [(x1, y0, z0), (x1, y0, z1), (x1, y1, z1), (x1, y1, z0)],  # x = x1
        [(x0, y0, z0), (x0, y0, z1), (x1, y0, z1), (x1, y0, z0)],  # y = y0
        [(x0, y1, z0), (x1, y1, z0), (x1, y1, z1), (x0, y1, z1)],  # y = y1
        [(x0, y0, z0), (x1, y0, z0), (x1, y1, z0), (x0, y1, z0)],  # z = z0
        [(x0, y0, z1), (x0, y1, z1), (x1, y1, z1), (x1, y0, z1)],  # z = z1
    ]
    return Polyhedron([Face(BOX_TAG, q) for q in quads])


def _clip_face(verts, normal, offset):
    """Clip one convex face; returns (kept vertices, crossing points)."""
    m = len(verts)
    vals = [dot(normal, v) + offset for v in verts]
    out, cuts = [], []
    for k in range(m):
        v0, v1 = verts[k], verts[(k + 1) % m]
        f0, f1 = vals[k], vals[(k + 1) % m]
        if f0 <= 0:
            out.append(v0)
            if f1 > 0:
                w = _cut_point(v0, v1, f0, f1)
                out.append(w)
                cuts.append(w)
        elif f1 <= 0:
            w = _cut_point(v0, v1, f0, f1)
            out.append(w)
            cuts.append(w)
    dedup = [out[k] for k in range(len(out)) if not out[k] == out[(k + 1) % len(out)]]
    return dedup, cuts


def _order_ring(points, normal):
    """Order coplanar points into a convex ring around their centroid."""
    pts = []
    for p in points:
        if not any(p == q for q in pts):
            pts.append(p)
    if len(pts) < 3:
        return None
    fpts = [as_floats(p) for p in pts]
    cx = [sum(c[i] for c in fpts) / len(fpts) for i in range(3)]
    nf = as_floats(normal)
    # orthonormal-ish basis in the cutting plane
    axis = min(range(3), key=lambda i: abs(nf[i]))
    e1 = [0.0, 0.0, 0.0]
    e1[axis] = 1.0
    proj = sum(e1[i] * nf[i] for i in range(3)) / sum(c * c for c in nf)
    e1 = [e1[i] - proj * nf[i] for i in range(3)]
    e2 = [
        nf[1] * e1[2] - nf[2] * e1[1],
        nf[2] * e1[0] - nf[0] * e1[2],
        nf[0] * e1[1] - nf[1] * e1[0],
    ]
    def angle(k):
        v = [fpts[k][i] - cx[i] for i in range(3)]
        return math.atan2(
            sum(v[i] * e2[i] for i in range(3)), sum(v[i] * e1[i] for i in range(3))
        )
    order = sorted(range(len(pts)), key=angle)
    return [pts[k] for k in order]


def clip_polyhedron(poly: Polyhedron, normal, offset, tag) -> Polyhedron:
    """Keep the side <normal, x> + offset <= 0; the cut face gets `tag`."""
    if poly.empty:
        return poly
    new_faces = []
    cut_points = []
    for face in poly.faces:
        kept, cuts = _clip_face(face.vertices, normal, offset)
        if len(kept) >= 3:
            new_faces.append(Face(face.tag, kept))
        cut_points.extend(cuts)
    ring = _order_ring(cut_points, normal) if cut_points else None
    if ring is not None:
        new_faces.append(Face(tag, ring))
    if len(new_faces) < 4:
        return Polyhedron([])
    return Polyhedron(new_faces)


def face_area(verts) -> float:
    """Area via Newell's formula (verts assumed planar, ordered)."""
    n = [0.0, 0.0, 0.0]
    fv = [as_floats(v) for v in verts]
    m = len(fv)
    for k in range(m):
        u, w = fv[k], fv[(k + 1) % m]
        n[0] += (u[1] - w[1]) * (u[2] + w[2])
        n[1] += (u[2] - w[2]) * (u[0] + w[0])
        n[2] += (u[0] - w[0]) * (u[1] + w[1])
    return 0.5 * math.sqrt(n[0] ** 2 + n[1] ** 2 + n[2] ** 2)


def face_min_norm_sq(verts) -> float:
    """min squared distance from the origin to a planar convex face (float)."""
    fv = [as_floats(v) for v in verts]
    best = min(norm_sq(v) for v in fv)
    m = len(fv)
    for k in range(m):
        best = min(best, float(segment_min_norm_sq(fv[k], fv[(k + 1) % m])))
    # interior: project the origin onto the face plane, test containment
    e1 = [fv[1][i] - fv[0][i] for i in range(3)]
    e2 = [fv[-1][i] - fv[0][i] for i in range(3)]
    n = [
        e1[1] * e2[2] - e1[2] * e2[1],
        e1[2] * e2[0] - e1[0] * e2[2],
        e1[0] * e2[1] - e1[1] * e2[0],
    ]
    nn = sum(c * c for c in n)
    if nn == 0:
        return best
    t = sum(fv[0][i] * n[i] for i in range(3)) / nn
    foot = [t * n[i] for i in range(3)]
    inside = True
    sign = 0
    for k in range(m):
        u, w = fv[k], fv[(k + 1) % m]
        edge = [w[i] - u[i] for i in range(3)]
        rel = [foot[i] - u[i] for i in range(3)]
        cr = [
            edge[1] * rel[2] - edge[2] * rel[1],
            edge[2] * rel[0] - edge[0] * rel[2],
            edge[0] * rel[1] - edge[1] * rel[0],
        ]
        s = sum(cr[i] * n[i] for i in range(3))
        if s > 0:
            cur = 1
        elif s < 0:
            cur = -1
        else:
            continue
        if sign == 0:
            sign = cur
        elif cur != sign:
            inside = False
            break
    if inside:
        best = min(best, sum(c * c for c in foot))
    return best


def polyhedron_vertices(poly: Polyhedron, merge_tol: float):
    """Cluster face corners into vertices with their incident face tags.

    Returns a list of (point, set_of_tags).  merge_tol is an absolute
    coordinate tolerance (0 merges exact duplicates only).
    """
    out = []  # (point, floats, tagset)
    for face in poly.faces:
        for v in face.vertices:
            fv = as_floats(v)
            found = False
            for entry in out:
                if all(abs(a - b) <= merge_tol for a, b in zip(entry[1], fv)):
                    entry[2].add(face.tag)
                    found = True
                    break
            if not found:
                out.append((v, fv, {face.tag}))
    return [(p, tags) for p, _, tags in out]
