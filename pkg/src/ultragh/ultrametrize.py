"""The ultrametrization operator: subdominant ultrametric via minimax paths.

For a finite space the infimum over chains in the definition of ``u_X`` is
attained, and equals the largest edge on the path joining the two points
in a minimum spanning tree of the complete graph.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ResourceLimitError
from .space import FiniteMetricSpace

ORACLE_CAP = 64


@dataclass(frozen=True)
class MstEdgeList:
    edges: tuple  # (i, j, weight) with i < j
    max_weight: float


@dataclass(frozen=True, eq=False)
class UltrametricSpace:
    """``U(X)`` together with the input classes merged into each point.

    ``source_classes[k]`` lists the input indices collapsed into point ``k``
    of ``space``; all singletons unless a positive merge tolerance was used.
    """

    space: FiniteMetricSpace
    source_classes: tuple

    @property
    def dist(self):
        return self.space.dist

    @property
    def labels(self):
        return self.space.labels


def minimum_spanning_tree(X: FiniteMetricSpace) -> MstEdgeList:
    """Dense Prim's algorithm, O(n^2).

    Ties in the key update keep the earlier parent; ties in vertex selection
    go to the smallest index.  The minimax values do not depend on either.
    """
    d = X.dist
    n = X.n
    if n == 1:
        return MstEdgeList((), 0.0)
    in_tree = np.zeros(n, dtype=bool)
    in_tree[0] = True
    key = d[0].copy()
    parent = np.zeros(n, dtype=int)
    edges = []
    for _ in range(n - 1):
        masked = np.where(in_tree, np.inf, key)
        v = int(np.argmin(masked))
        u = int(parent[v])
        edges.append((min(u, v), max(u, v), float(d[u, v])))
        in_tree[v] = True
        better = (d[v] < key) & ~in_tree
        key[better] = d[v][better]
        parent[better] = v
    return MstEdgeList(tuple(edges), max(w for _, _, w in edges))


def minimax_matrix(X: FiniteMetricSpace, mst: MstEdgeList | None = None) -> np.ndarray:
    """All-pairs minimax path values, one tree traversal per root."""
    n = X.n
    if mst is None:
        mst = minimum_spanning_tree(X)
    adj = [[] for _ in range(n)]
    for i, j, w in mst.edges:
        adj[i].append((j, w))
        adj[j].append((i, w))
    u = np.zeros((n, n))
    for root in range(n):
        row = u[root]
        seen = np.zeros(n, dtype=bool)
        seen[root] = True
        stack = [root]
        while stack:
            a = stack.pop()
            for b, w in adj[a]:
                if not seen[b]:
                    seen[b] = True
                    row[b] = max(row[a], w)
                    stack.append(b)
    return u


def subdominant(X: FiniteMetricSpace, merge_tolerance: float = 0.0) -> UltrametricSpace:
    """Compute ``U(X)``.

    Points with ``u(x, x') <= merge_tolerance`` are merged; with the default
    0 this is vacuous for a true metric.  Every output distance is one of
    the input distances, so the result is an exact ultrametric.

    Merged points keep the label of their smallest member.
    """
    u = minimax_matrix(X)
    if merge_tolerance <= 0 or X.n == 1:
        classes = tuple((i,) for i in range(X.n))
        space = FiniteMetricSpace(X.labels, u, name=_uname(X), validate=False)
        return UltrametricSpace(space, classes)

    # closed balls of an ultrametric partition the space
    rep = np.full(X.n, -1)
    classes = []
    for i in range(X.n):
        if rep[i] < 0:
            members = np.flatnonzero((u[i] <= merge_tolerance) & (rep < 0))
            rep[members] = len(classes)
            classes.append(tuple(int(m) for m in members))
    heads = [c[0] for c in classes]
    space = FiniteMetricSpace(
        tuple(X.labels[h] for h in heads),
        u[np.ix_(heads, heads)],
        name=_uname(X),
        validate=False,
    )
    return UltrametricSpace(space, tuple(classes))


def _uname(X):
    return f"U({X.name})" if X.name else None


def minimax_closure_oracle(X: FiniteMetricSpace, cap: int = ORACLE_CAP) -> np.ndarray:
    """Brute-force minimax closure: ``u[i,j] <- min_k max(u[i,k], u[k,j])`` to a fixpoint.

    Independent of the spanning-tree route; meant for tests.
    """
    if X.n > cap:
        raise ResourceLimitError(f"oracle limited to {cap} points, got {X.n}")
    u = np.array(X.dist, dtype=float)
    while True:
        relaxed = np.min(np.maximum(u[:, :, None], u[None, :, :]), axis=1)
        if np.array_equal(relaxed, u):
            return u
        u = relaxed


def bottleneck(X: FiniteMetricSpace) -> float:
    """Diameter of ``U(X)``: the heaviest minimum spanning tree edge."""
    return minimum_spanning_tree(X).max_weight
