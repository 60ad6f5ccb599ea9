"""Chain connectivity at a scale: components, witnesses, and the connecting scale."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.cluster.hierarchy import DisjointSet

from .space import FiniteMetricSpace


@dataclass(frozen=True)
class ChainPartition:
    scale: float
    components: tuple  # tuples of indices, ordered by smallest member


@dataclass(frozen=True)
class ChainWitness:
    indices: tuple
    max_step: float


def _sorted_edges(X):
    iu, ju = np.triu_indices(X.n, k=1)
    w = X.dist[iu, ju]
    order = np.lexsort((ju, iu, w))
    return iu[order], ju[order], w[order]


def components_at_scale(X: FiniteMetricSpace, eps: float) -> ChainPartition:
    """Connected components of the graph joining points at distance ``<= eps``."""
    if eps < 0:
        raise ValueError("eps must be nonnegative")
    ds = DisjointSet(range(X.n))
    for i, j, w in zip(*_sorted_edges(X)):
        if w > eps:
            break
        ds.merge(int(i), int(j))
    comps = sorted(tuple(sorted(s)) for s in ds.subsets())
    return ChainPartition(float(eps), tuple(comps))


def is_chain_connected(X: FiniteMetricSpace, eps: float) -> bool:
    return len(components_at_scale(X, eps).components) == 1


def min_connecting_scale(X: FiniteMetricSpace) -> float:
    """Smallest ``eps`` at which the space is a single component.

    Found by one sweep over edges in increasing weight; the answer is the
    weight of the edge that performs the last merge.
    """
    if X.n == 1:
        return 0.0
    ds = DisjointSet(range(X.n))
    remaining = X.n - 1
    for i, j, w in zip(*_sorted_edges(X)):
        if ds.merge(int(i), int(j)):
            remaining -= 1
            if remaining == 0:
                return float(w)
    raise AssertionError("complete graph must connect")


def chain_witness(X: FiniteMetricSpace, source: int, target: int, eps: float) -> Optional[ChainWitness]:
    """A chain from ``source`` to ``target`` with every step ``<= eps``, or None.

    Breadth-first search with neighbours visited in index order, so the
    result is deterministic (and has the fewest steps), not minimax-optimal.
    """
    n = X.n
    if not (0 <= source < n and 0 <= target < n):
        raise IndexError("chain endpoints out of range")
    adj = X.dist <= eps
    prev = np.full(n, -1)
    prev[source] = source
    queue = deque([source])
    while queue:
        a = queue.popleft()
        if a == target:
            break
        for b in np.flatnonzero(adj[a]):
            if prev[b] < 0:
                prev[b] = a
                queue.append(int(b))
    if prev[target] < 0:
        return None
    path = [target]
    while path[-1] != source:
        path.append(int(prev[path[-1]]))
    path.reverse()
    steps = [X.dist[a, b] for a, b in zip(path, path[1:])]
    return ChainWitness(tuple(path), float(max(steps, default=0.0)))
