"""Exhaustive and backtracking ground truth for tiny instances.

Two independent routes to oriented diameters:

* :func:`min_orientation_diameter` / :func:`f_bruteforce` enumerate every
  orientation as a bitmask (bit ``i`` set means edge ``i = (u, v)``, ``u < v``,
  is oriented ``u -> v``) and BFS whole batches at once, one ``uint64`` vertex
  bitset per orientation.
* :func:`exists_diam2_backtracking` decides "diameter at most 2" by
  depth-first search over edge directions with constraint propagation.

Plus the two set-system enumerations the bounds rest on: maximum antichains of
small power sets (:func:`sperner_check`) and far pairs in orientations of
complete bipartite graphs (:func:`far_pair_check`).
"""
from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from typing import Optional, Sequence

import numpy as np

from .digraph import INFINITE, Digraph, diameter_report, is_bridgeless_underlying
from .multipartite import edges as multipartite_edges
from .multipartite import layout

__all__ = [
    "binom",
    "SearchResult",
    "BacktrackResult",
    "SpernerResult",
    "FarPairResult",
    "orientation_from_mask",
    "batch_diameters",
    "min_orientation_diameter",
    "f_bruteforce",
    "exists_diam2_backtracking",
    "sperner_check",
    "far_pair_check",
]

DEFAULT_EDGE_BUDGET = 24
CHUNK = 1 << 15
_ONE = np.uint64(1)


def binom(n: int, k: int) -> int:
    """Exact binomial coefficient; rejects ``k`` outside ``0..n``."""
    if n < 0 or k < 0 or k > n:
        raise ValueError(f"binom({n}, {k}) needs 0 <= k <= n")
    return math.comb(n, k)


@dataclass(frozen=True)
class SearchResult:
    """Minimum diameter over all strong orientations.

    ``f_value`` is ``None`` when no orientation is strong.  ``witness`` is some
    optimal orientation; callers should check its properties, not identity.
    """

    f_value: Optional[int]
    witness: Optional[Digraph]
    orientations_examined: int
    method: str = "full-enum"
    note: str = ""

    def to_dict(self) -> dict:
        return {
            "f": self.f_value,
            "method": self.method,
            "examined": self.orientations_examined,
            "witness_edges": self.witness.arc_list() if self.witness is not None else None,
            "note": self.note,
        }


# -- batch enumeration --------------------------------------------------------


def orientation_from_mask(n: int, edges: Sequence[tuple[int, int]], mask: int) -> Digraph:
    a = np.zeros((n, n), dtype=bool)
    for i, (u, v) in enumerate(edges):
        if (mask >> i) & 1:
            a[u, v] = True
        else:
            a[v, u] = True
    return Digraph(a)


def _batch_out(n: int, edges: Sequence[tuple[int, int]], masks: np.ndarray) -> np.ndarray:
    out = np.zeros((n, masks.size), dtype=np.uint64)
    for i, (u, v) in enumerate(edges):
        bit = (masks >> np.uint64(i)) & _ONE
        out[u] |= bit << np.uint64(v)
        out[v] |= (bit ^ _ONE) << np.uint64(u)
    return out


def _expand(reach: np.ndarray, out: np.ndarray) -> np.ndarray:
    """One BFS layer: ``reach[u] | out[reach[u]]`` for every orientation."""
    new = reach.copy()
    for w in range(out.shape[0]):
        has = ((reach >> np.uint64(w)) & _ONE).astype(bool)
        new |= np.where(has, out[w][None, :], np.uint64(0))
    return new


def batch_diameters(
    n: int, edges: Sequence[tuple[int, int]], masks: np.ndarray, max_level: Optional[int] = None
) -> np.ndarray:
    """Diameter of each orientation in ``masks``; ``INFINITE`` if not strong.

    With ``max_level`` set, orientations whose diameter exceeds it are
    reported as ``INFINITE`` too (they are not resolved further).
    """
    if n > 63:
        raise ValueError("batch enumeration packs vertex sets into 64-bit words; n <= 63")
    masks = np.asarray(masks, dtype=np.uint64)
    diam = np.full(masks.size, INFINITE, dtype=np.int64)
    if n == 1:
        diam[:] = 0
        return diam
    out = _batch_out(n, edges, masks)
    full = np.uint64((1 << n) - 1)
    self_bits = np.array([1 << u for u in range(n)], dtype=np.uint64)[:, None]
    reach = out | self_bits
    cap = n - 1 if max_level is None else min(max_level, n - 1)
    pending = np.ones(masks.size, dtype=bool)
    level = 1
    while True:
        done = pending & np.all(reach == full, axis=0)
        diam[done] = level
        pending &= ~done
        if level >= cap or not pending.any():
            break
        new = _expand(reach, out)
        pending &= np.any(new != reach, axis=0)  # stalled before full: not strong
        reach = new
        level += 1
    return diam


def _scan(args) -> tuple[int, int, int]:
    """Best (diameter, mask) over ``masks[start:stop]``; worker-safe."""
    n, edges, start, stop, fixed_bit, cap = args
    idx = np.arange(start, stop, dtype=np.uint64)
    masks = (idx << _ONE) | _ONE if fixed_bit else idx
    d = batch_diameters(n, edges, masks, cap)
    j = int(np.argmin(d))
    return int(d[j]), int(masks[j]), stop - start


def min_orientation_diameter(
    n: int,
    edges: Sequence[tuple[int, int]],
    check_bridges: bool = True,
    n_jobs: int = 1,
    symmetry: bool = True,
) -> SearchResult:
    """Exact minimum diameter over all orientations of a small graph.

    The first edge is fixed to one direction (reversing every arc preserves
    the diameter), so ``2**(m-1)`` orientations are scanned.  The scan stops
    as soon as the trivial lower bound (2 for ``n >= 2``) is attained.  With
    ``n_jobs > 1`` the mask range is split into shards scanned in parallel
    and merged by minimum; the ``f_value`` is the same either way.
    """
    edges = [tuple(sorted((int(u), int(v)))) for u, v in edges]
    m = len(edges)
    if check_bridges and not is_bridgeless_underlying(n, edges):
        return SearchResult(None, None, 0, note="graph has a bridge or is disconnected: no strong orientation (Robbins)")
    if n == 1:
        return SearchResult(0, Digraph(np.zeros((1, 1), dtype=bool)), 1)
    fixed = symmetry and m > 0
    total = 1 << (m - 1) if fixed else 1 << m
    lower = 2
    shards = [(n, edges, s, min(s + CHUNK, total), fixed) for s in range(0, total, CHUNK)]

    best_d, best_mask, examined = INFINITE, None, 0
    if n_jobs > 1 and len(shards) > 1:
        with ProcessPoolExecutor(max_workers=n_jobs) as pool:
            for d, mask, cnt in pool.map(_scan, [s + (None,) for s in shards]):
                examined += cnt
                if d < best_d:  # shards arrive in mask order, so ties keep the smallest mask
                    best_d, best_mask = d, mask
    else:
        for shard in shards:
            cap = None if best_d == INFINITE else best_d - 1
            if cap is not None and cap < lower:
                break
            d, mask, cnt = _scan(shard + (cap,))
            examined += cnt
            if d < best_d:
                best_d, best_mask = d, mask
            if best_d <= lower:
                break
    if best_mask is None or best_d == INFINITE:
        return SearchResult(None, None, examined, note="no orientation is strong")
    return SearchResult(best_d, orientation_from_mask(n, edges, best_mask), examined)


def f_bruteforce(part_sizes: Sequence[int], edge_budget: int = DEFAULT_EDGE_BUDGET, n_jobs: int = 1) -> SearchResult:
    """Oriented diameter of ``K(part_sizes)`` by full enumeration."""
    L = layout(part_sizes)
    if L.n_edges > edge_budget:
        raise ValueError(
            f"K{tuple(L.part_sizes)} has {L.n_edges} edges, over the budget of {edge_budget}; "
            "use exists_diam2_backtracking for the diameter-two question instead"
        )
    return min_orientation_diameter(L.n, multipartite_edges(L), n_jobs=n_jobs)


# -- backtracking -------------------------------------------------------------


@dataclass(frozen=True)
class BacktrackResult:
    """``exists`` is ``None`` when the time limit cut the search short."""

    exists: Optional[bool]
    witness: Optional[Digraph]
    nodes: int
    elapsed: float
    method: str = "backtrack"

    def to_dict(self) -> dict:
        return {
            "exists": self.exists,
            "method": self.method,
            "nodes": self.nodes,
            "elapsed": round(self.elapsed, 3),
            "witness_edges": self.witness.arc_list() if self.witness is not None else None,
        }


class _Timeout(Exception):
    pass


class _Diam2Search:
    """Partial orientation with propagation of the 'distance <= 2' constraints.

    ``pout[u]`` holds the vertices ``u`` may still point to (decided or
    undecided); ``out[u]`` only the decided ones.  An ordered pair ``(u, v)``
    stays feasible while ``v in pout[u]`` or ``pout[u] & pin[v] != 0``.
    """

    def __init__(self, n: int, edges: Sequence[tuple[int, int]], deadline: Optional[float]):
        self.n = n
        self.adj = [0] * n
        for u, v in edges:
            self.adj[u] |= 1 << v
            self.adj[v] |= 1 << u
        self.nbrs = [[w for w in range(n) if (self.adj[u] >> w) & 1] for u in range(n)]
        self.pout = list(self.adj)
        self.pin = list(self.adj)
        self.out = [0] * n
        self.inn = [0] * n
        self.trail: list[tuple[int, int]] = []
        self.queue: list[tuple[int, int]] = []
        self.nodes = 0
        self.deadline = deadline

    def decided(self, u: int, v: int) -> bool:
        return bool(((self.out[u] | self.inn[u]) >> v) & 1)

    def assign(self, a: int, b: int) -> bool:
        """Orient ``a -> b``; False if the edge was already ``b -> a``."""
        if (self.out[a] >> b) & 1:
            return True
        if not (self.pout[a] >> b) & 1:
            return False
        self.pout[b] &= ~(1 << a)
        self.pin[a] &= ~(1 << b)
        self.out[a] |= 1 << b
        self.inn[b] |= 1 << a
        self.trail.append((a, b))
        q = self.queue
        q.append((b, a))
        q.extend((b, v) for v in self.nbrs[a] if v != b)
        q.extend((u, a) for u in self.nbrs[b] if u != a)
        return True

    def undo(self, mark: int):
        while len(self.trail) > mark:
            a, b = self.trail.pop()
            self.pout[b] |= 1 << a
            self.pin[a] |= 1 << b
            self.out[a] &= ~(1 << b)
            self.inn[b] &= ~(1 << a)

    def propagate(self) -> bool:
        q = self.queue
        while q:
            u, v = q.pop()
            if (self.out[u] >> v) & 1 or self.out[u] & self.inn[v]:
                continue
            direct = (self.pout[u] >> v) & 1
            mids = self.pout[u] & self.pin[v]
            if not direct and not mids:
                q.clear()
                return False
            if direct and not mids:
                if not self.assign(u, v):
                    q.clear()
                    return False
            elif not direct and mids & (mids - 1) == 0:
                w = mids.bit_length() - 1
                if not (self.assign(u, w) and self.assign(w, v)):
                    q.clear()
                    return False
        return True

    def all_pairs_feasible(self) -> bool:
        self.queue.extend((u, v) for u in range(self.n) for v in range(self.n) if u != v)
        return self.propagate()

    def solve(self, order: Sequence[tuple[int, int]], i: int = 0) -> bool:
        self.nodes += 1
        if self.deadline is not None and not self.nodes & 1023 and time.monotonic() > self.deadline:
            raise _Timeout
        while i < len(order) and self.decided(*order[i]):
            i += 1
        if i == len(order):
            return True
        u, v = order[i]
        for a, b in ((u, v), (v, u)):
            mark = len(self.trail)
            if self.assign(a, b) and self.propagate() and self.solve(order, i + 1):
                return True
            self.queue.clear()
            self.undo(mark)
        return False

    def digraph(self) -> Digraph:
        a = np.zeros((self.n, self.n), dtype=bool)
        for u in range(self.n):
            for v in range(self.n):
                if (self.out[u] >> v) & 1:
                    a[u, v] = True
        return Digraph(a)


def _interleaved_order(part_sizes: Sequence[int]) -> list[tuple[int, int]]:
    """Edges ordered so small vertex prefixes taken round-robin over the
    parts are completed first; pairs inside a prefix are then fully decided
    early, which is where the distance constraints prune."""
    L = layout(part_sizes)
    rank, r = {}, 0
    for j in range(max(L.part_sizes)):
        for i in range(L.n_parts):
            if j < L.part_sizes[i]:
                rank[L.offsets[i] + j] = r
                r += 1
    es = multipartite_edges(L)
    return sorted(es, key=lambda e: (max(rank[e[0]], rank[e[1]]), min(rank[e[0]], rank[e[1]])))


def exists_diam2_backtracking(
    part_sizes: Sequence[int], max_vertices: int = 16, time_limit: Optional[float] = None
) -> BacktrackResult:
    """Decide whether ``K(part_sizes)`` has an orientation of diameter <= 2.

    A partial orientation is abandoned as soon as some ordered pair has lost
    its direct arc and every possible two-step path.  Pairs left with a
    single option have that option forced.  The first edge is fixed to one
    direction (reversal symmetry).  Returns ``exists=None`` on timeout.
    """
    L = layout(part_sizes)
    if L.n > max_vertices:
        raise ValueError(f"{L.n} vertices exceeds the backtracking limit of {max_vertices}")
    t0 = time.monotonic()
    deadline = None if time_limit is None else t0 + time_limit
    order = _interleaved_order(part_sizes)
    s = _Diam2Search(L.n, order, deadline)
    if L.n == 1:
        return BacktrackResult(True, Digraph(np.zeros((1, 1), dtype=bool)), 0, 0.0)
    try:
        ok = bool(order) and s.assign(*order[0]) and s.all_pairs_feasible() and s.solve(order, 1)
    except _Timeout:
        return BacktrackResult(None, None, s.nodes, time.monotonic() - t0)
    elapsed = time.monotonic() - t0
    if not ok:
        return BacktrackResult(False, None, s.nodes, elapsed)
    D = s.digraph()
    rep = diameter_report(D)
    if rep.diameter > 2:
        raise RuntimeError(f"backtracking witness has diameter {rep.diameter}; search bug")
    return BacktrackResult(True, D, s.nodes, elapsed)


# -- set systems --------------------------------------------------------------


@dataclass(frozen=True)
class SpernerResult:
    n: int
    max_size: int
    maximum_antichains: tuple[tuple[frozenset[int], ...], ...]
    n_antichains: int

    @property
    def all_maximum_uniform_middle(self) -> bool:
        """Every maximum antichain consists of ``floor(n/2)``- or
        ``ceil(n/2)``-subsets only, all of one size."""
        ok = {self.n // 2, (self.n + 1) // 2}
        for fam in self.maximum_antichains:
            sizes = {len(s) for s in fam}
            if len(sizes) != 1 or not sizes <= ok:
                return False
        return True

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "max_size": self.max_size,
            "n_maximum": len(self.maximum_antichains),
            "n_antichains": self.n_antichains,
            "maximum_antichains": [[sorted(x + 1 for x in s) for s in fam] for fam in self.maximum_antichains],
            "uniform": self.all_maximum_uniform_middle,
        }


def sperner_check(n: int) -> SpernerResult:
    """Enumerate every antichain of subsets of an ``n``-set (``1 <= n <= 5``).

    Two distinct sets may share an antichain iff neither contains the other.
    Counts include the empty family.
    """
    if not 1 <= n <= 5:
        raise ValueError(f"sperner_check enumerates n in 1..5, got {n}")
    universe = list(range(1 << n))
    best: list[tuple[int, ...]] = []
    best_size = 0
    count = 0

    def comparable(s: int, t: int) -> bool:
        c = s & t
        return c == s or c == t

    def rec(start: int, chosen: list[int]):
        nonlocal best_size, count
        count += 1
        if len(chosen) > best_size:
            best_size, best[:] = len(chosen), [tuple(chosen)]
        elif len(chosen) == best_size:
            best.append(tuple(chosen))
        for i in range(start, len(universe)):
            s = universe[i]
            if all(not comparable(s, t) for t in chosen):
                chosen.append(s)
                rec(i + 1, chosen)
                chosen.pop()

    rec(0, [])

    def as_set(mask: int) -> frozenset[int]:
        return frozenset(i for i in range(n) if (mask >> i) & 1)

    fams = tuple(tuple(as_set(m) for m in fam) for fam in best)
    return SpernerResult(n, best_size, fams, count)


@dataclass(frozen=True)
class FarPairResult:
    p: int
    q: int
    holds: bool
    examined: int
    counterexample: Optional[Digraph] = None

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "q": self.q,
            "holds": self.holds,
            "examined": self.examined,
            "counterexample_edges": self.counterexample.arc_list() if self.counterexample is not None else None,
        }


def far_pair_check(p: int, q: int) -> FarPairResult:
    """Check that every orientation of ``K(p, q)`` has two vertices of the
    ``q``-side at distance at least 4 (unreachable counts as far).

    Every one of the ``2**(p*q)`` orientations is scanned, strong or not.
    Only meaningful when ``q > C(p, p//2)``; smaller ``q`` is rejected.
    """
    if p < 2 or q < p:
        raise ValueError(f"far_pair_check needs 2 <= p <= q, got p={p}, q={q}")
    if q <= binom(p, p // 2):
        raise ValueError(f"q={q} <= C({p}, {p // 2}) = {binom(p, p // 2)}: no far pair is forced")
    if p * q > DEFAULT_EDGE_BUDGET:
        raise ValueError(f"p*q = {p * q} edges exceeds the enumeration budget of {DEFAULT_EDGE_BUDGET}")
    L = layout([p, q])
    es = multipartite_edges(L)
    big = list(L.part(1))
    total = 1 << len(es)
    examined = 0
    for start in range(0, total, CHUNK):
        masks = np.arange(start, min(start + CHUNK, total), dtype=np.uint64)
        out = _batch_out(L.n, es, masks)
        self_bits = np.array([1 << u for u in range(L.n)], dtype=np.uint64)[:, None]
        reach = out | self_bits
        for _ in range(2):
            reach = _expand(reach, out)
        has_far = np.zeros(masks.size, dtype=bool)
        for z, w in combinations(big, 2):
            has_far |= ((reach[z] >> np.uint64(w)) & _ONE) == 0
            has_far |= ((reach[w] >> np.uint64(z)) & _ONE) == 0
        examined += masks.size
        if not has_far.all():
            bad = int(masks[np.flatnonzero(~has_far)[0]])
            return FarPairResult(p, q, False, examined, orientation_from_mask(L.n, es, bad))
    return FarPairResult(p, q, True, examined)
