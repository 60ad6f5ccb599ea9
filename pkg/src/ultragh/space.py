"""Finite metric spaces, axiom validation and metric products.

A :class:`FiniteMetricSpace` is a list of labels together with a dense
symmetric distance matrix.  Instances are immutable: the matrix is copied
on construction and flagged read-only.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .errors import MetricInputError, ResourceLimitError

DEFAULT_TOL = 1e-9
MAX_PRODUCT_POINTS = 4096

# sort order for violations sharing the same index tuple
_KIND_ORDER = {
    "diagonal": 0,
    "negative": 1,
    "asymmetry": 2,
    "zero-off-diagonal": 3,
    "triangle": 4,
}


@dataclass(frozen=True)
class Violation:
    kind: str
    indices: tuple
    magnitude: float


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of :func:`validate_metric`; ``ok`` is true iff there are no violations."""

    violations: tuple = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def summary(self, limit: int = 10) -> str:
        if self.ok:
            return "ok"
        lines = [f"{len(self.violations)} violation(s)"]
        for v in self.violations[:limit]:
            lines.append(f"  {v.kind} at {v.indices}: magnitude {v.magnitude!r}")
        if len(self.violations) > limit:
            lines.append(f"  ... {len(self.violations) - limit} more")
        return "\n".join(lines)


def _as_square(matrix) -> np.ndarray:
    arr = np.array(matrix, dtype=float)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise MetricInputError(f"distance matrix must be square, got shape {arr.shape}")
    if arr.shape[0] == 0:
        raise MetricInputError("a metric space needs at least one point")
    if not np.all(np.isfinite(arr)):
        raise MetricInputError("distance matrix contains non-finite entries")
    return arr


def validate_metric(matrix, tol: float = DEFAULT_TOL) -> ValidationReport:
    """Check the metric axioms on a square matrix.

    Every violation whose magnitude exceeds ``tol`` is reported.  Pairwise
    checks (asymmetry, zero off-diagonal, triangle) are reported once per
    unordered pair ``i < j``; triangle violations carry the triple
    ``(i, j, k)`` meaning ``d[i, j] > d[i, k] + d[k, j] + tol``.

    Parameters
    ----------
    matrix : array_like, shape (n, n)
    tol : float
        Absolute tolerance on the violation magnitude.

    Returns
    -------
    ValidationReport
        Violations sorted lexicographically by index tuple.

    Raises
    ------
    MetricInputError
        If ``matrix`` is not square or has non-finite entries.
    """
    if tol < 0:
        raise MetricInputError("tolerance must be nonnegative")
    d = _as_square(matrix)
    n = d.shape[0]
    found = []

    diag = np.abs(np.diag(d))
    for i in np.flatnonzero(diag > tol):
        found.append(Violation("diagonal", (int(i), int(i)), float(diag[i])))

    for i, j in zip(*np.nonzero(d < -tol)):
        found.append(Violation("negative", (int(i), int(j)), float(-d[i, j])))

    iu, ju = np.triu_indices(n, k=1)
    asym = np.abs(d[iu, ju] - d[ju, iu])
    for k in np.flatnonzero(asym > tol):
        found.append(Violation("asymmetry", (int(iu[k]), int(ju[k])), float(asym[k])))

    upper = d[iu, ju]
    for k in np.flatnonzero(np.abs(upper) <= tol):
        found.append(Violation("zero-off-diagonal", (int(iu[k]), int(ju[k])), float(abs(upper[k]))))

    for i in range(n):
        # excess[j, k] = d[i, j] - d[i, k] - d[k, j]
        excess = d[i][:, None] - d[i][None, :] - d.T
        for j, k in zip(*np.nonzero(excess > tol)):
            if i < j and k != i and k != j:
                found.append(Violation("triangle", (i, int(j), int(k)), float(excess[j, k])))

    found.sort(key=lambda v: (v.indices, _KIND_ORDER[v.kind]))
    return ValidationReport(tuple(found))


@dataclass(frozen=True, eq=False)
class FiniteMetricSpace:
    """Labeled points with a symmetric distance matrix.

    Construction validates the metric axioms at ``tol`` and raises
    :class:`MetricInputError` (carrying the report) on failure.  Pass
    ``validate=False`` only for matrices already known to be metrics.
    """

    labels: tuple
    dist: np.ndarray
    name: Optional[str] = None
    tol: float = field(default=DEFAULT_TOL, repr=False)
    validate: bool = field(default=True, repr=False)

    def __post_init__(self):
        d = _as_square(self.dist)
        d.setflags(write=False)
        labels = tuple(str(lab) for lab in self.labels)
        if len(labels) != d.shape[0]:
            raise MetricInputError(f"{len(labels)} labels for a {d.shape[0]}-point matrix")
        if len(set(labels)) != len(labels):
            raise MetricInputError("labels must be unique")
        object.__setattr__(self, "dist", d)
        object.__setattr__(self, "labels", labels)
        if self.validate:
            report = validate_metric(d, self.tol)
            if not report.ok:
                raise MetricInputError("matrix is not a metric:\n" + report.summary(), report)

    @classmethod
    def from_matrix(cls, matrix, labels: Optional[Sequence[str]] = None, name=None, tol=DEFAULT_TOL):
        d = _as_square(matrix)
        if labels is None:
            labels = [str(i) for i in range(d.shape[0])]
        return cls(tuple(labels), d, name=name, tol=tol)

    @classmethod
    def from_points(cls, points, labels=None, name=None):
        """Euclidean distances between the rows of ``points``."""
        from scipy.spatial.distance import pdist, squareform

        pts = np.atleast_2d(np.asarray(points, dtype=float))
        if pts.shape[0] == 1:
            d = np.zeros((1, 1))
        else:
            d = squareform(pdist(pts))
        return cls.from_matrix(d, labels=labels, name=name)

    @property
    def n(self) -> int:
        return self.dist.shape[0]

    def __len__(self):
        return self.n

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def distance(self, a, b) -> float:
        """Distance between two points given by index or label."""
        if isinstance(a, str):
            a = self.index(a)
        if isinstance(b, str):
            b = self.index(b)
        return float(self.dist[a, b])

    def subspace(self, indices, name=None) -> "FiniteMetricSpace":
        idx = list(indices)
        return FiniteMetricSpace(
            tuple(self.labels[i] for i in idx),
            self.dist[np.ix_(idx, idx)],
            name=name,
            validate=False,
        )

    def equals(self, other: "FiniteMetricSpace") -> bool:
        """Exact equality of labels and distance matrices."""
        return self.labels == other.labels and np.array_equal(self.dist, other.dist)

    def __repr__(self):
        nm = f" {self.name!r}" if self.name else ""
        return f"<FiniteMetricSpace{nm} n={self.n}>"


def is_ultrametric(X: FiniteMetricSpace, tol: float = 0.0) -> bool:
    """True iff ``d(x, z) <= max(d(x, y), d(y, z)) + tol`` for all triples."""
    return _raw_defect(X.dist) <= tol


def _raw_defect(d: np.ndarray) -> float:
    n = d.shape[0]
    if n < 3:
        return 0.0
    worst = 0.0
    # loop over the middle point keeps memory at O(n^2)
    for y in range(n):
        gap = d - np.maximum(d[:, y][:, None], d[y, :][None, :])
        worst = max(worst, float(gap.max()))
    return worst


def ultrametric_defect(X: FiniteMetricSpace) -> float:
    """Largest amount by which a triple breaks the ultrametric inequality.

    ``max over (x, y, z) of d(x, z) - max(d(x, y), d(y, z))``, clamped at 0.
    Zero exactly on ultrametric spaces.
    """
    return max(_raw_defect(X.dist), 0.0)


def diameter(X: FiniteMetricSpace) -> float:
    return float(X.dist.max()) if X.n > 1 else 0.0


@dataclass(frozen=True, eq=False)
class ProductMetricTable:
    """A metric ``rho`` on the pair set of ``left x right`` in row-major pair order.

    Pair ``(i, j)`` sits at row ``i * right.n + j``.
    """

    left: FiniteMetricSpace
    right: FiniteMetricSpace
    rho: np.ndarray

    def __post_init__(self):
        rho = np.array(self.rho, dtype=float)
        size = self.left.n * self.right.n
        if rho.shape != (size, size):
            raise MetricInputError(
                f"table for {self.left.n}x{self.right.n} pairs must be {size}x{size}, got {rho.shape}"
            )
        rho.setflags(write=False)
        object.__setattr__(self, "rho", rho)

    @property
    def labels(self) -> tuple:
        return pair_labels(self.left, self.right)

    def to_space(self, name=None, tol=DEFAULT_TOL) -> FiniteMetricSpace:
        return FiniteMetricSpace(self.labels, self.rho, name=name, tol=tol)


def pair_labels(X: FiniteMetricSpace, Y: FiniteMetricSpace) -> tuple:
    return tuple(f"{a}|{b}" for a in X.labels for b in Y.labels)


def _check_size(X, Y, max_points):
    if X.n * Y.n > max_points:
        raise ResourceLimitError(
            f"product of {X.n} and {Y.n} points exceeds the cap of {max_points} points"
        )


def _pair_grids(X, Y):
    # dx[(i,j),(i',j')] = dX[i,i'], dy[...] = dY[j,j'] in row-major pair order
    m = Y.n
    dx = np.repeat(np.repeat(X.dist, m, axis=0), m, axis=1)
    dy = np.tile(Y.dist, (X.n, X.n))
    return dx, dy


def product_table(X, Y, metric: str = "l1", max_points: int = MAX_PRODUCT_POINTS) -> ProductMetricTable:
    """Product metric table with ``metric`` in ``{"l1", "linf"}``."""
    _check_size(X, Y, max_points)
    dx, dy = _pair_grids(X, Y)
    if metric == "l1":
        rho = dx + dy
    elif metric == "linf":
        rho = np.maximum(dx, dy)
    else:
        raise MetricInputError(f"unknown product metric {metric!r}; use 'l1' or 'linf'")
    return ProductMetricTable(X, Y, rho)


def product_l1(X, Y, max_points: int = MAX_PRODUCT_POINTS) -> FiniteMetricSpace:
    """Cartesian product with the Manhattan metric; labels ``"x|y"``, row-major."""
    table = product_table(X, Y, "l1", max_points)
    return FiniteMetricSpace(table.labels, table.rho, validate=False)


def product_linf(X, Y, max_points: int = MAX_PRODUCT_POINTS) -> FiniteMetricSpace:
    """Cartesian product with the max metric; labels ``"x|y"``, row-major."""
    table = product_table(X, Y, "linf", max_points)
    return FiniteMetricSpace(table.labels, table.rho, validate=False)


def _slice_masks(table):
    n, m = table.left.n, table.right.n
    xi = np.repeat(np.arange(n), m)
    yj = np.tile(np.arange(m), n)
    same_y = yj[:, None] == yj[None, :]
    same_x = xi[:, None] == xi[None, :]
    return same_x, same_y


def check_fair(table: ProductMetricTable, tol: float = DEFAULT_TOL) -> bool:
    """Restrictions of ``rho`` to every slice reproduce the factor metrics."""
    dx, dy = _pair_grids(table.left, table.right)
    same_x, same_y = _slice_masks(table)
    ok_x = np.all(np.abs(table.rho - dx)[same_y] <= tol)
    ok_y = np.all(np.abs(table.rho - dy)[same_x] <= tol)
    return bool(ok_x and ok_y)


def check_dominates_linf(table: ProductMetricTable, tol: float = DEFAULT_TOL) -> bool:
    """``rho >= max(d_X, d_Y)`` pointwise, within ``tol``."""
    dx, dy = _pair_grids(table.left, table.right)
    return bool(np.all(table.rho >= np.maximum(dx, dy) - tol))
