"""Kuratowski embedding into the sup-norm space and sampled ``D_t`` constructions.

For an n-point space the bounded functions on it are just vectors in
``R^n`` with the max norm.  ``D_t`` adds the straight segments between
embedded points at distance at most ``t``; here those segments are sampled.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .chain import is_chain_connected
from .errors import MetricInputError, ResourceLimitError
from .gh import Correspondence
from .space import FiniteMetricSpace

MAX_SAMPLES = 5000
# slack on the t/2 ball test; covers rounding in the sampled coordinates
BALL_SLACK = 1e-12


@dataclass(frozen=True, eq=False)
class Embedding:
    coords: np.ndarray
    basepoint: int


@dataclass(frozen=True, eq=False)
class SampledDt:
    """A finite sample of ``D_t(X)``.

    ``origins[k]`` is ``("original", i)`` for the embedded point of ``x_i``
    or ``("segment", i, j, s)`` for the point ``(1 - s) Phi(x_i) + s Phi(x_j)``.
    """

    space: FiniteMetricSpace
    coords: np.ndarray
    origins: tuple
    t: float
    step: float
    n_originals: int


def sup_distances(coords: np.ndarray) -> np.ndarray:
    return np.abs(coords[:, None, :] - coords[None, :, :]).max(axis=2)


def embed(X: FiniteMetricSpace, basepoint: int = 0) -> Embedding:
    """Row ``i`` is the function ``y -> d(x_i, y) - d(x_0, y)``."""
    if not 0 <= basepoint < X.n:
        raise IndexError("basepoint out of range")
    coords = X.dist - X.dist[basepoint][None, :]
    coords.setflags(write=False)
    return Embedding(coords, basepoint)


def sample_dt(X: FiniteMetricSpace, t: float, step: float, basepoint: int = 0, max_points: int = MAX_SAMPLES) -> SampledDt:
    """Embedded points plus samples on every segment of length ``<= t``.

    A segment of length ``d`` is cut into ``ceil(d / step)`` equal pieces, so
    consecutive samples are at most ``step`` apart.  Points with identical
    coordinates are kept once.  Output order: originals, then segments by
    index pair, then by parameter.
    """
    if t < 0:
        raise MetricInputError("t must be nonnegative")
    if not step > 0:
        raise MetricInputError("step must be positive")
    emb = embed(X, basepoint)
    rows = [emb.coords[i] for i in range(X.n)]
    origins = [("original", i) for i in range(X.n)]
    seen = {r.tobytes() for r in rows}
    for i in range(X.n):
        for j in range(i + 1, X.n):
            d = X.dist[i, j]
            if d > t:
                continue
            pieces = math.ceil(d / step)
            if len(rows) + pieces > max_points:
                raise ResourceLimitError(f"sampled D_t would exceed {max_points} points")
            a, b = emb.coords[i], emb.coords[j]
            for k in range(1, pieces):
                s = k / pieces
                q = a + s * (b - a) + 0.0  # +0.0 folds -0.0 so byte keys match equality
                key = q.tobytes()
                if key in seen:
                    continue
                seen.add(key)
                rows.append(q)
                origins.append(("segment", i, j, s))
    coords = np.vstack(rows)
    labels = tuple(_label(X, o) for o in origins)
    space = FiniteMetricSpace(labels, sup_distances(coords), name=f"D_{t!r}({X.name or 'X'})")
    return SampledDt(space, coords, tuple(origins), float(t), float(step), X.n)


def _label(X, origin):
    if origin[0] == "original":
        return X.labels[origin[1]]
    _, i, j, s = origin
    return f"{X.labels[i]}~{X.labels[j]}@{s!r}"


def dt_correspondence(X: FiniteMetricSpace, dt: SampledDt) -> Correspondence:
    """Relate each sample to every original whose embedded point lies within ``t / 2``.

    Its distortion is at most ``t``, so the GH distance between ``X`` and
    the sample is at most ``t / 2``.
    """
    if dt.n_originals != X.n:
        raise MetricInputError("sample was not built from this space")
    # first n rows of the sample are the embedded originals
    to_orig = np.abs(dt.coords[:, None, :] - dt.coords[None, : X.n, :]).max(axis=2)
    radius = dt.t / 2 + BALL_SLACK * max(1.0, dt.t)
    pairs = frozenset((int(i), int(k)) for k, i in zip(*np.nonzero(to_orig <= radius)))
    return Correspondence(pairs, X.n, dt.space.n)


def dt_connectivity_check(X: FiniteMetricSpace, c: float, step: float) -> bool:
    """Whether the sample of ``D_c(X)`` is chain connected at scale ``step``.

    True whenever ``c`` is at least the heaviest spanning-tree edge of ``X``.
    """
    dt = sample_dt(X, c, step)
    return is_chain_connected(dt.space, step + 1e-12)
