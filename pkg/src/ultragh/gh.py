"""Gromov-Hausdorff distance between finite metric spaces.

Twice the GH distance is the smallest distortion of a correspondence.  For
finite spaces that minimum is attained, and its value is one of the numbers
``|d_X(x, x') - d_Y(y, y')|``.  :func:`gh_exact` therefore binary-searches
over those candidates.  Each probe asks whether some correspondence has
distortion at most the candidate, and answers it by backtracking.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional

import numpy as np

from .errors import MetricInputError, ResourceLimitError
from .space import FiniteMetricSpace, diameter
from .ultrametrize import subdominant

DEFAULT_MAX_NODES = 10**7
DEFAULT_TIMEOUT = 30.0
ENUMERATION_MAX_PAIRS = 12


@dataclass(frozen=True)
class Correspondence:
    """A relation between ``range(n_left)`` and ``range(n_right)`` onto both sides."""

    pairs: frozenset
    n_left: int
    n_right: int

    def __post_init__(self):
        pairs = frozenset((int(i), int(j)) for i, j in self.pairs)
        object.__setattr__(self, "pairs", pairs)
        if not pairs:
            raise MetricInputError("a correspondence cannot be empty")
        for i, j in pairs:
            if not (0 <= i < self.n_left and 0 <= j < self.n_right):
                raise MetricInputError(f"pair {(i, j)} out of range")
        if {i for i, _ in pairs} != set(range(self.n_left)):
            raise MetricInputError("relation does not cover every left point")
        if {j for _, j in pairs} != set(range(self.n_right)):
            raise MetricInputError("relation does not cover every right point")

    @classmethod
    def full(cls, n_left, n_right):
        return cls(frozenset(itertools.product(range(n_left), range(n_right))), n_left, n_right)

    @classmethod
    def identity(cls, n):
        return cls(frozenset((i, i) for i in range(n)), n, n)

    def sorted_pairs(self) -> list:
        return sorted(self.pairs)

    def __len__(self):
        return len(self.pairs)


def inverse(R: Correspondence) -> Correspondence:
    return Correspondence(frozenset((j, i) for i, j in R.pairs), R.n_right, R.n_left)


def distortion(rel, X: FiniteMetricSpace, Y: FiniteMetricSpace) -> float:
    """Largest ``| d_X(x, x') - d_Y(y, y') |`` over pairs of related points.

    ``rel`` is a :class:`Correspondence` or any nonempty iterable of index pairs.
    """
    pairs = rel.sorted_pairs() if isinstance(rel, Correspondence) else sorted(set(rel))
    if not pairs:
        raise MetricInputError("distortion of an empty relation is undefined")
    xs = np.array([p[0] for p in pairs])
    ys = np.array([p[1] for p in pairs])
    if xs.min() < 0 or xs.max() >= X.n or ys.min() < 0 or ys.max() >= Y.n:
        raise MetricInputError("relation indices out of range")
    gap = np.abs(X.dist[np.ix_(xs, xs)] - Y.dist[np.ix_(ys, ys)])
    return float(gap.max())


def hausdorff(ambient: FiniteMetricSpace, A: Iterable[int], B: Iterable[int]) -> float:
    """Hausdorff distance between two nonempty index sets of ``ambient``."""
    a = sorted(set(A))
    b = sorted(set(B))
    if not a or not b:
        raise MetricInputError("Hausdorff distance needs nonempty sets")
    block = ambient.dist[np.ix_(a, b)]
    return float(max(block.min(axis=1).max(), block.min(axis=0).max()))


@dataclass
class GhResult:
    """A GH value or a certified interval ``[lower, upper]`` for it.

    ``witness``, when present, is a correspondence of distortion ``2 * upper``.
    """

    lower: float
    upper: float
    exact: bool
    witness: Optional[Correspondence] = None
    provenance: list = field(default_factory=list)
    nodes_explored: int = 0
    timed_out: bool = False

    @property
    def value(self) -> float:
        if not self.exact:
            raise ValueError("search did not finish; only bounds are available")
        return self.upper


class _SearchAborted(Exception):
    pass


class _CorrespondenceSearch:
    """Feasibility of ``dis R <= c`` for successive thresholds ``c``.

    Pair ``(x, y)`` is bit ``x * m + y``.  The search keeps the set of pairs
    compatible with everything chosen so far and branches on the uncovered
    point with the fewest remaining partners.
    """

    def __init__(self, X, Y, max_nodes, timeout):
        self.n, self.m = X.n, Y.n
        n, m = self.n, self.m
        self.gap = np.abs(X.dist[:, None, :, None] - Y.dist[None, :, None, :]).reshape(n * m, n * m)
        self.row_masks = [sum(1 << (x * m + y) for y in range(m)) for x in range(n)]
        self.col_masks = [sum(1 << (x * m + y) for x in range(n)) for y in range(m)]
        # tie-break for branching: larger eccentricity first
        ecc_x = X.dist.max(axis=1) if n > 1 else np.zeros(1)
        ecc_y = Y.dist.max(axis=1) if m > 1 else np.zeros(1)
        self.points = [("x", x, -ecc_x[x]) for x in range(n)] + [("y", y, -ecc_y[y]) for y in range(m)]
        self.max_nodes = max_nodes
        self.deadline = time.monotonic() + timeout
        self.nodes = 0

    def feasible(self, c: float) -> Optional[int]:
        """Bitmask of a covering compatible pair set, or None if there is none."""
        ok = self.gap <= c
        self.compat = [sum(1 << int(q) for q in np.flatnonzero(ok[p])) for p in range(ok.shape[0])]
        self.failed = set()
        full = (1 << (self.n * self.m)) - 1
        return self._extend(full, 0, frozenset(range(self.n)), frozenset(range(self.m)))

    def _tick(self):
        self.nodes += 1
        if self.nodes > self.max_nodes:
            raise _SearchAborted("node cap")
        if self.nodes & 1023 == 0 and time.monotonic() > self.deadline:
            raise _SearchAborted("time cap")

    def _extend(self, allowed, chosen, open_x, open_y):
        self._tick()
        if not open_x and not open_y:
            return chosen
        if chosen in self.failed:
            return None

        best = None
        for kind, idx, ecc in self.points:
            if kind == "x":
                if idx not in open_x:
                    continue
                dom = allowed & self.row_masks[idx]
            else:
                if idx not in open_y:
                    continue
                dom = allowed & self.col_masks[idx]
            if not dom:
                self.failed.add(chosen)
                return None
            key = (dom.bit_count(), kind != "x", ecc, idx)
            if best is None or key < best[0]:
                best = (key, dom)
        dom = best[1]

        m = self.m
        options = []
        while dom:
            low = dom & -dom
            p = low.bit_length() - 1
            dom ^= low
            x, y = divmod(p, m)
            covers = (x in open_x) + (y in open_y)
            room = (allowed & self.compat[p]).bit_count()
            options.append((-covers, -room, p))
        options.sort()

        for _, _, p in options:
            x, y = divmod(p, m)
            found = self._extend(
                allowed & self.compat[p], chosen | (1 << p), open_x - {x}, open_y - {y}
            )
            if found is not None:
                return found
        self.failed.add(chosen)
        return None

    def to_correspondence(self, mask: int) -> Correspondence:
        pairs = []
        while mask:
            low = mask & -mask
            pairs.append(divmod(low.bit_length() - 1, self.m))
            mask ^= low
        return Correspondence(frozenset(pairs), self.n, self.m)


def candidate_distortions(X: FiniteMetricSpace, Y: FiniteMetricSpace) -> np.ndarray:
    """Sorted distinct values ``|d_X(x, x') - d_Y(y, y')|``; the optimum is among them."""
    return np.unique(np.abs(X.dist[:, None, :, None] - Y.dist[None, :, None, :]))


def gh_exact(
    X: FiniteMetricSpace,
    Y: FiniteMetricSpace,
    max_nodes: int = DEFAULT_MAX_NODES,
    timeout: float = DEFAULT_TIMEOUT,
) -> GhResult:
    """Exact GH distance by threshold search over correspondences.

    Intended for spaces of up to about ten points each.  If the node or time
    cap is reached, the result is the best certified interval found so far,
    with ``exact=False`` and ``timed_out=True``; no exception is raised.
    """
    if max_nodes <= 0 or timeout <= 0:
        raise MetricInputError("search limits must be positive")
    cands = candidate_distortions(X, Y)
    diam_gap = abs(diameter(X) - diameter(Y))
    provenance = [("diam", diam_gap / 2)]

    # everything below the diameter gap is infeasible; the full relation is feasible
    lo = int(np.searchsorted(cands, diam_gap, side="left"))
    hi = len(cands) - 1
    witness = Correspondence.full(X.n, Y.n)
    provenance.append(("full-relation", float(cands[hi]) / 2))

    search = _CorrespondenceSearch(X, Y, max_nodes, timeout)
    try:
        while lo < hi:
            mid = (lo + hi) // 2
            mask = search.feasible(float(cands[mid]))
            if mask is None:
                lo = mid + 1
            else:
                hi = mid
                witness = search.to_correspondence(mask)
    except _SearchAborted:
        provenance.append(("search-interval", float(cands[lo]) / 2))
        return GhResult(
            lower=float(cands[lo]) / 2,
            upper=float(cands[hi]) / 2,
            exact=False,
            witness=witness,
            provenance=provenance,
            nodes_explored=search.nodes,
            timed_out=True,
        )
    value = float(cands[hi]) / 2
    provenance.append(("search", value))
    return GhResult(value, value, True, witness, provenance, search.nodes, False)


def enumerate_correspondences(
    X: FiniteMetricSpace, Y: FiniteMetricSpace, max_pairs: int = ENUMERATION_MAX_PAIRS
) -> Iterator[Correspondence]:
    """Every correspondence between ``X`` and ``Y`` exactly once.

    Subsets of ``X x Y`` are visited in increasing bitmask order and filtered
    for surjectivity, so the cost is ``2 ** (|X| |Y|)``.
    """
    n, m = X.n, Y.n
    if n * m > max_pairs:
        raise ResourceLimitError(f"enumeration over {n * m} pairs exceeds the cap of {max_pairs}")
    all_pairs = [(x, y) for x in range(n) for y in range(m)]
    for mask in range(1, 1 << (n * m)):
        chosen = [all_pairs[k] for k in range(n * m) if mask >> k & 1]
        if len({x for x, _ in chosen}) == n and len({y for _, y in chosen}) == m:
            yield Correspondence(frozenset(chosen), n, m)


def gh_by_enumeration(X, Y, max_pairs: int = ENUMERATION_MAX_PAIRS) -> float:
    """Half the minimum distortion over all correspondences (reference oracle)."""
    return min(distortion(R, X, Y) for R in enumerate_correspondences(X, Y, max_pairs)) / 2


def gh_upper_bound_trivial(X: FiniteMetricSpace, Y: FiniteMetricSpace) -> float:
    """Half the distortion of the full relation ``X x Y``."""
    return distortion(Correspondence.full(X.n, Y.n), X, Y) / 2


def gh_lower_bounds(
    X: FiniteMetricSpace,
    Y: FiniteMetricSpace,
    max_nodes: int = DEFAULT_MAX_NODES,
    timeout: float = DEFAULT_TIMEOUT,
) -> list:
    """Named lower bounds on the GH distance.

    ``"diam"`` is half the diameter gap.  ``"ultra"`` is the GH distance
    between the subdominant ultrametrics, which never exceeds the GH
    distance of the originals.  If that nested search hits its limits, the
    entry is ``"ultra-diam"`` instead: the best certified lower bound for
    the pair of ultrametrics.
    """
    bounds = [("diam", abs(diameter(X) - diameter(Y)) / 2)]
    UX, UY = subdominant(X).space, subdominant(Y).space
    nested = gh_exact(UX, UY, max_nodes=max_nodes, timeout=timeout)
    if nested.exact:
        bounds.append(("ultra", nested.value))
    else:
        bounds.append(("ultra-diam", max(nested.lower, abs(diameter(UX) - diameter(UY)) / 2)))
    return bounds


def gh_bounds(X, Y, max_nodes: int = DEFAULT_MAX_NODES, timeout: float = DEFAULT_TIMEOUT) -> GhResult:
    """Certified interval without running the exact search on ``X, Y`` themselves."""
    lows = gh_lower_bounds(X, Y, max_nodes=max_nodes, timeout=timeout)
    full = Correspondence.full(X.n, Y.n)
    up = distortion(full, X, Y) / 2
    lower = max(v for _, v in lows)
    return GhResult(
        lower=lower,
        upper=up,
        exact=lower == up,
        witness=full,
        provenance=lows + [("full-relation", up)],
    )


def product_correspondence(R: Correspondence, A: FiniteMetricSpace) -> Correspondence:
    """Lift ``R`` between ``X`` and ``Y`` to ``{((x, a), (y, a))}`` between ``X x A`` and ``Y x A``.

    Indices follow the row-major pair order of :func:`~ultragh.space.product_l1`.
    The lifted relation has the same distortion as ``R``.
    """
    k = A.n
    pairs = frozenset((x * k + a, y * k + a) for x, y in R.pairs for a in range(k))
    return Correspondence(pairs, R.n_left * k, R.n_right * k)
