"""Shared helpers for the test suite."""

from __future__ import annotations

from hypervoronoi import ModelPoint, ModelTag, convert, geodesic

ALL_MODELS = (
    ModelTag.KLEIN,
    ModelTag.POINCARE,
    ModelTag.UPPER_HALF_SPACE,
    ModelTag.HEMISPHERE,
    ModelTag.HYPERBOLOID,
)


def random_klein_point(rng, d=2, max_norm=0.85) -> ModelPoint:
    while True:
        x = rng.uniform(-max_norm, max_norm, size=d)
        if float(x @ x) < max_norm * max_norm:
            return ModelPoint(ModelTag.KLEIN, tuple(float(c) for c in x))


def random_model_point(model: ModelTag, rng, d=2, max_norm=0.85) -> ModelPoint:
    return convert(random_klein_point(rng, d, max_norm), model)


def bisector_sample_point(p: ModelPoint, q: ModelPoint, surface, rng, max_norm=0.85):
    """A point on the bisector zero set, by bisection along a geodesic.

    Walks the geodesic between random same-model points on opposite
    sides of the surface; returns None when no sign change is found.
    """
    for _ in range(20):
        a = random_model_point(p.model, rng, p.dim, max_norm)
        b = random_model_point(p.model, rng, p.dim, max_norm)
        if a.coords == b.coords:
            continue
        fa = float(surface.evaluate(a.coords))
        fb = float(surface.evaluate(b.coords))
        if fa == 0.0:
            return a
        if fb == 0.0:
            return b
        if (fa > 0) == (fb > 0):
            continue
        lo, hi = 0.0, 1.0
        flo = fa
        for _ in range(80):
            mid = 0.5 * (lo + hi)
            fm = float(surface.evaluate(geodesic(a, b, mid).coords))
            if fm == 0.0:
                lo = hi = mid
                break
            if (fm > 0) == (flo > 0):
                lo = mid
                flo = fm
            else:
                hi = mid
        return geodesic(a, b, 0.5 * (lo + hi))
    return None
