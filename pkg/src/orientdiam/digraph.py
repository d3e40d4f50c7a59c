"""Dense digraphs with exact BFS distance services.

A :class:`Digraph` is immutable: a boolean ``n x n`` arc matrix plus the same
adjacency packed into one Python ``int`` per vertex (bit ``v`` of
``out_masks[u]`` is set iff ``u -> v``).  All-pairs distances are computed by
level-synchronous BFS from every source at once, where a whole frontier layer
is expanded with a single boolean matrix product.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional, Sequence

import numpy as np

__all__ = [
    "INFINITE",
    "Digraph",
    "DiameterReport",
    "OrientationError",
    "from_oriented_edges",
    "all_pairs_distances",
    "diameter_report",
    "diam_between",
    "is_bridgeless_underlying",
    "find_bridges",
    "reverse",
    "neighbor_sets",
]

#: Distance sentinel for unreachable pairs.  Larger than any finite distance,
#: so ``max`` over a distance matrix needs no special casing.
INFINITE = int(np.iinfo(np.int64).max)


class OrientationError(ValueError):
    """An arc list that is not an orientation of a simple graph."""

    def __init__(self, message: str, pair: Optional[tuple[int, int]] = None):
        super().__init__(message)
        self.pair = pair


class Digraph:
    """Orientation of a simple graph on vertices ``0..n-1``.

    Parameters
    ----------
    arcs : array_like of bool, shape (n, n)
        ``arcs[u, v]`` is true iff there is an arc ``u -> v``.

    Raises
    ------
    OrientationError
        If the matrix has a loop or a pair oriented both ways.
    """

    def __init__(self, arcs):
        a = np.array(arcs, dtype=bool, copy=True)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise OrientationError(f"arc matrix must be square, got shape {a.shape}")
        loops = np.flatnonzero(np.diagonal(a))
        if loops.size:
            u = int(loops[0])
            raise OrientationError(f"loop at vertex {u}", (u, u))
        both = np.argwhere(a & a.T)
        if both.size:
            u, v = (int(x) for x in both[0])
            raise OrientationError(f"pair ({u}, {v}) is oriented in both directions", (u, v))
        a.setflags(write=False)
        self._arcs = a

    @property
    def n(self) -> int:
        return self._arcs.shape[0]

    @property
    def arcs(self) -> np.ndarray:
        """Read-only boolean arc matrix."""
        return self._arcs

    @cached_property
    def out_masks(self) -> tuple[int, ...]:
        return tuple(_row_mask(row) for row in self._arcs)

    @cached_property
    def in_masks(self) -> tuple[int, ...]:
        return tuple(_row_mask(col) for col in self._arcs.T)

    def has_arc(self, u: int, v: int) -> bool:
        return bool(self._arcs[u, v])

    def arc_list(self) -> list[tuple[int, int]]:
        """Arcs in lexicographic order."""
        return [(int(u), int(v)) for u, v in np.argwhere(self._arcs)]

    @property
    def n_arcs(self) -> int:
        return int(self._arcs.sum())

    def underlying_edges(self) -> list[tuple[int, int]]:
        sym = self._arcs | self._arcs.T
        return [(int(u), int(v)) for u, v in np.argwhere(np.triu(sym, 1))]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Digraph):
            return NotImplemented
        return self._arcs.shape == other._arcs.shape and bool(np.array_equal(self._arcs, other._arcs))

    def __hash__(self):
        return hash((self.n, np.packbits(self._arcs).tobytes()))

    def __repr__(self) -> str:
        return f"Digraph(n={self.n}, arcs={self.n_arcs})"


def _row_mask(row: np.ndarray) -> int:
    mask = 0
    for v in np.flatnonzero(row):
        mask |= 1 << int(v)
    return mask


def from_oriented_edges(n: int, edges: Iterable[Sequence[int]]) -> Digraph:
    """Build a digraph from ordered pairs ``(u, v)`` meaning ``u -> v``.

    Loops, duplicate pairs and pairs given in both directions are rejected
    with the offending pair attached to the exception.
    """
    if n < 0:
        raise OrientationError(f"vertex count must be nonnegative, got {n}")
    a = np.zeros((n, n), dtype=bool)
    for e in edges:
        u, v = int(e[0]), int(e[1])
        if not (0 <= u < n and 0 <= v < n):
            raise OrientationError(f"arc ({u}, {v}) has an endpoint outside 0..{n - 1}", (u, v))
        if u == v:
            raise OrientationError(f"loop at vertex {u}", (u, v))
        if a[u, v]:
            raise OrientationError(f"duplicate arc ({u}, {v})", (u, v))
        if a[v, u]:
            raise OrientationError(f"pair ({u}, {v}) is oriented in both directions", (u, v))
        a[u, v] = True
    return Digraph(a)


def all_pairs_distances(D: Digraph) -> np.ndarray:
    """Matrix of directed distances; ``INFINITE`` where unreachable."""
    n = D.n
    dist = np.full((n, n), INFINITE, dtype=np.int64)
    if n == 0:
        return dist
    # float32 products of 0/1 matrices are exact far beyond any n used here
    A = D.arcs.astype(np.float32)
    reached = np.eye(n, dtype=bool)
    np.fill_diagonal(dist, 0)
    frontier = reached
    level = 0
    while True:
        level += 1
        nxt = (frontier.astype(np.float32) @ A) > 0
        nxt &= ~reached
        if not nxt.any():
            break
        dist[nxt] = level
        reached |= nxt
        frontier = nxt
    return dist


@dataclass(frozen=True)
class DiameterReport:
    """Strongness and diameter of a digraph.

    ``witness`` is the lexicographically smallest ordered pair of distinct
    vertices attaining the diameter (``None`` when ``n < 2``).
    """

    strong: bool
    diameter: int
    witness: Optional[tuple[int, int]]
    distances: Optional[np.ndarray] = field(default=None, repr=False, compare=False)

    @property
    def finite(self) -> bool:
        return self.diameter != INFINITE

    def to_dict(self) -> dict:
        return {
            "strong": self.strong,
            "diameter": self.diameter if self.finite else None,
            "witness": list(self.witness) if self.witness else None,
        }


def diameter_report(D: Digraph, keep_distances: bool = False) -> DiameterReport:
    if D.n < 1:
        raise ValueError("diameter is undefined for the empty digraph")
    dist = all_pairs_distances(D)
    if D.n == 1:
        return DiameterReport(True, 0, None, dist if keep_distances else None)
    off = dist.copy()
    np.fill_diagonal(off, -1)
    flat = int(np.argmax(off))  # first maximum in row-major order
    u, v = divmod(flat, D.n)
    diameter = int(off[u, v])
    return DiameterReport(
        strong=diameter != INFINITE,
        diameter=diameter,
        witness=(u, v),
        distances=dist if keep_distances else None,
    )


def diam_between(D: Digraph, U: Iterable[int], V: Iterable[int], distances: Optional[np.ndarray] = None) -> int:
    """``max`` of the distance from ``u`` to ``v`` over ``u in U``, ``v in V``."""
    U, V = sorted(set(U)), sorted(set(V))
    if not U or not V:
        raise ValueError("vertex sets must be nonempty")
    if distances is None:
        distances = all_pairs_distances(D)
    return int(distances[np.ix_(U, V)].max())


def reverse(D: Digraph) -> Digraph:
    return Digraph(D.arcs.T)


def neighbor_sets(D: Digraph, v: int) -> tuple[frozenset[int], frozenset[int]]:
    """``(out-neighbours, in-neighbours)`` of ``v``."""
    if not 0 <= v < D.n:
        raise IndexError(f"vertex {v} out of range for n={D.n}")
    out = frozenset(int(w) for w in np.flatnonzero(D.arcs[v]))
    inn = frozenset(int(w) for w in np.flatnonzero(D.arcs[:, v]))
    return out, inn


def find_bridges(n: int, edges: Iterable[Sequence[int]]) -> list[tuple[int, int]]:
    """Bridges of a simple undirected graph (iterative lowpoint DFS)."""
    adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for idx, (u, v) in enumerate(edges):
        adj[u].append((v, idx))
        adj[v].append((u, idx))
    disc = [-1] * n
    low = [0] * n
    bridges = []
    timer = 0
    for root in range(n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = timer
        timer += 1
        # (vertex, edge id used to enter it, iterator position)
        stack = [(root, -1, 0)]
        while stack:
            u, via, i = stack[-1]
            if i < len(adj[u]):
                stack[-1] = (u, via, i + 1)
                w, eid = adj[u][i]
                if eid == via:
                    continue
                if disc[w] == -1:
                    disc[w] = low[w] = timer
                    timer += 1
                    stack.append((w, eid, 0))
                else:
                    low[u] = min(low[u], disc[w])
            else:
                stack.pop()
                if stack:
                    parent = stack[-1][0]
                    low[parent] = min(low[parent], low[u])
                    if low[u] > disc[parent]:
                        bridges.append((min(parent, u), max(parent, u)))
    return sorted(bridges)


def is_bridgeless_underlying(n: int, edges: Iterable[Sequence[int]]) -> bool:
    """True iff the undirected graph is connected and has no bridge.

    By Robbins' theorem this is exactly when a strong orientation exists.
    """
    edges = [(int(u), int(v)) for u, v in edges]
    if n <= 1:
        return True
    seen = {0}
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    stack = [0]
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    if len(seen) != n:
        return False
    return not find_bridges(n, edges)
