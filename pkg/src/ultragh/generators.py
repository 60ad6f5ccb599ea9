"""Instance generators.

Random generators use :func:`numpy.random.default_rng` (PCG64) seeded
explicitly, so outputs are reproducible for a fixed numpy major version.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import MetricInputError
from .space import FiniteMetricSpace


def _fmt(value: float) -> str:
    s = repr(float(value))
    return s[:-2] if s.endswith(".0") else s


def _line_space(points, name):
    pts = np.asarray(points, dtype=float)
    d = np.abs(pts[:, None] - pts[None, :])
    return FiniteMetricSpace(tuple(_fmt(p) for p in pts), d, name=name)


def one_point() -> FiniteMetricSpace:
    """The one-point space."""
    return FiniteMetricSpace(("*",), np.zeros((1, 1)), name="one_point")


def grid_segment(length: float, step: float) -> FiniteMetricSpace:
    """Points ``0, step, 2*step, ...`` up to and including ``length`` on the line.

    The last gap may be shorter than ``step`` so that ``length`` is included.
    """
    if not (length > 0 and step > 0):
        raise MetricInputError("grid_segment needs length > 0 and step > 0")
    if step > length:
        raise MetricInputError("grid_segment needs step <= length")
    count = math.ceil(length / step - 1e-9)
    points = [k * step for k in range(count)] + [length]
    return _line_space(points, f"grid_segment(L={length!r}, step={step!r})")


def geometric_progression(p: float, count: int) -> FiniteMetricSpace:
    """``{p, p**2, ..., p**count}`` with the line metric."""
    if not p > 1:
        raise MetricInputError("geometric_progression needs ratio p > 1")
    if count < 1 or int(count) != count:
        raise MetricInputError("geometric_progression needs an integer count >= 1")
    points = [float(p) ** k for k in range(1, int(count) + 1)]
    return _line_space(points, f"geometric_progression(p={p!r}, N={count})")


def polygon_vertices(n: int, radius: float) -> FiniteMetricSpace:
    """Vertices of a regular ``n``-gon inscribed in a circle of the given radius.

    Chord lengths ``2 R sin(pi k / n)`` depend only on the cyclic offset ``k``,
    so the matrix is exactly symmetric.
    """
    if n < 1 or int(n) != n:
        raise MetricInputError("polygon_vertices needs an integer n >= 1")
    if not radius > 0:
        raise MetricInputError("polygon_vertices needs radius > 0")
    idx = np.arange(n)
    offset = np.abs(idx[:, None] - idx[None, :])
    offset = np.minimum(offset, n - offset)
    chords = 2.0 * radius * np.sin(np.pi * np.arange(n // 2 + 1) / n)
    chords[0] = 0.0
    return FiniteMetricSpace(
        tuple(f"v{i}" for i in range(n)),
        chords[offset],
        name=f"polygon_vertices(n={n}, R={radius!r})",
    )


def random_points(n: int, dim: int, seed: int) -> np.ndarray:
    if n < 1 or dim < 1:
        raise MetricInputError("random_points needs n >= 1 and dim >= 1")
    rng = np.random.default_rng(seed)
    return rng.random((n, dim))


def random_euclidean(n: int, dim: int, seed: int) -> FiniteMetricSpace:
    """``n`` points uniform in the unit cube ``[0, 1]**dim`` with Euclidean distances."""
    pts = random_points(n, dim, seed)
    return FiniteMetricSpace.from_points(
        pts, name=f"random_euclidean(n={n}, dim={dim}, seed={seed})"
    )


def random_ultrametric(n: int, seed: int) -> FiniteMetricSpace:
    """Cophenetic distances of a random binary merge tree.

    Clusters are merged pairwise at strictly increasing heights drawn as
    distinct multiples of 1/8, so every distance is an exact binary fraction
    and the output is an ultrametric without any tolerance.
    """
    if n < 1 or int(n) != n:
        raise MetricInputError("random_ultrametric needs an integer n >= 1")
    rng = np.random.default_rng(seed)
    d = np.zeros((n, n))
    if n > 1:
        heights = np.sort(rng.choice(np.arange(1, 8 * n), size=n - 1, replace=False)) / 8.0
        clusters = [[i] for i in range(n)]
        for h in heights:
            a, b = sorted(rng.choice(len(clusters), size=2, replace=False))
            left, right = clusters[a], clusters[b]
            d[np.ix_(left, right)] = h
            d[np.ix_(right, left)] = h
            clusters[a] = left + right
            del clusters[b]
    return FiniteMetricSpace(
        tuple(f"u{i}" for i in range(n)), d, name=f"random_ultrametric(n={n}, seed={seed})"
    )
