"""Deterministic samplers and the named point-set fixtures used in tests.

The verification sampler is a pure function of (seed, index): sample i
of a stream is reproducible in isolation, so fanning the stream out
across workers cannot change a report.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .scalars import norm_sq


def ball_point(seed: int, index: int, d: int) -> tuple[float, ...]:
    """Uniform sample in the open unit d-ball, addressed by (seed, index)."""
    rng = np.random.default_rng([seed, index])
    while True:
        direction = rng.standard_normal(d)
        norm = float(np.linalg.norm(direction))
        if norm > 1e-12:
            break
        direction = rng.standard_normal(d)
        norm = float(np.linalg.norm(direction))
    radius = float(rng.random()) ** (1.0 / d)
    return tuple(float(c) * radius / norm for c in direction)


def ball_points(seed: int, count: int, d: int) -> np.ndarray:
    return np.array([ball_point(seed, i, d) for i in range(count)], dtype=float)


def random_klein_points(n: int, d: int = 2, seed: int = 0, max_norm: float = 0.9):
    """n distinct pseudo-random unit-Klein points with |x| <= max_norm."""
    rng = np.random.default_rng(seed)
    points = []
    while len(points) < n:
        direction = rng.standard_normal(d)
        norm = float(np.linalg.norm(direction))
        if norm < 1e-12:
            continue
        radius = max_norm * float(rng.random()) ** (1.0 / d)
        p = tuple(float(c) * radius / norm for c in direction)
        if p not in points:
            points.append(p)
    return points


def wheel_points(count: int = 8, radius: float = 0.6):
    """Equal-norm sites on a circle: the degenerate 'wheel' configuration."""
    pts = []
    for k in range(count):
        theta = 2.0 * np.pi * k / count
        pts.append((radius * float(np.cos(theta)), radius * float(np.sin(theta))))
    return pts


def unbounded_star_points(outer: int = 8, radius: float = 0.998):
    """One site at the origin plus a near-boundary co-circular ring.

    For the dual complex to be a star tree the ring's power vertices must
    leave the unit disk, which needs radius > ~0.9969 for outer = 8.
    """
    return [(0.0, 0.0)] + wheel_points(outer, radius)


def cocircular_square(radius: float = 0.4):
    """Four co-circular, equal-norm sites whose dual face is a quadrilateral."""
    return [(radius, 0.0), (0.0, radius), (-radius, 0.0), (0.0, -radius)]


def rational_hemisphere_points(n: int, d: int = 2, seed: int = 0, max_norm: float = 0.8):
    """Exactly-rational points on the unit hemisphere (d+1 coordinates).

    Rational parameters t in the d-ball map to (1 - |t|^2, 2t) / (1 + |t|^2),
    which lies on the unit sphere identically, so membership is exact.
    """
    rng = np.random.default_rng(seed)
    points = []
    while len(points) < n:
        direction = rng.standard_normal(d)
        norm = float(np.linalg.norm(direction))
        if norm < 1e-12:
            continue
        radius = max_norm * float(rng.random()) ** (1.0 / d)
        t = tuple(
            Fraction(float(c) * radius / norm).limit_denominator(10**6)
            for c in direction
        )
        n2 = norm_sq(t)
        if not n2 < 1:
            continue
        den = 1 + n2
        p = ((1 - n2) / den,) + tuple(2 * ti / den for ti in t)
        if p not in points:
            points.append(p)
    return points
