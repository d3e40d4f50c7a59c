"""Closed-form oriented diameters of complete multipartite graphs.

Every known value is encoded here as a lookup on the sorted part sizes.  The
sources are tagged by the family of graphs the value comes from:

=====================  ==============================================
``complete-graph``     K_n: 2 for n >= 3, n != 4; 3 for n = 4
``complete-bipartite`` K(p, q), 2 <= p <= q: 3 iff q <= C(p, p//2), else 4
``tripartite-2pq``     K(2, p, q): 2 iff q <= C(p, p//2), else 3
``tripartite-33q``     K(3, 3, q): 2 iff q <= 6, else 3
``tripartite-34q``     K(3, 4, q): 2 iff q <= 11, else 3
``tripartite-3pq``     K(3, p, q), p >= 5: 2 iff q < C(p+1, (p+1)//2)
``multipartite-bound`` any other K(p1..pn), n >= 3: f is 2 or 3
=====================  ==============================================
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .search import binom

__all__ = ["FormulaVerdict", "f_formula", "threshold_3pq", "central_binom"]


def central_binom(m: int) -> int:
    """``C(m, floor(m/2))``, the largest antichain in the subsets of an m-set."""
    return binom(m, m // 2)


@dataclass(frozen=True)
class FormulaVerdict:
    """Outcome of a closed-form lookup.

    ``status`` is ``"exact"`` (``f`` holds the value), ``"not-orientable"``
    (the graph has a bridge, no strong orientation exists) or ``"unknown"``
    (``candidates`` lists the values still possible).
    """

    f: Optional[int]
    source: str
    status: str = "exact"
    candidates: tuple[int, ...] = field(default=())

    @property
    def known(self) -> bool:
        return self.status != "unknown"

    def admits(self, value: Optional[int]) -> bool:
        if self.status == "exact":
            return value == self.f
        if self.status == "not-orientable":
            return value is None
        return value in self.candidates

    def to_dict(self) -> dict:
        d = {"f": self.f, "source": self.source, "status": self.status}
        if self.candidates:
            d["candidates"] = list(self.candidates)
        return d


def _exact(f: int, source: str) -> FormulaVerdict:
    return FormulaVerdict(f, source)


def threshold_3pq(p: int) -> int:
    """Least ``q`` with ``f(K(3, p, q)) = 3`` when ``p >= 5``."""
    if p < 5:
        raise ValueError(f"threshold_3pq needs p >= 5, got {p}; smaller p follow other rules")
    return binom(p + 1, (p + 1) // 2)


def f_formula(part_sizes: Sequence[int]) -> FormulaVerdict:
    """Look up ``f(K(part_sizes))``; the order of the parts is irrelevant."""
    try:
        parts = sorted(int(s) for s in part_sizes)
    except TypeError as exc:
        raise ValueError(f"part sizes must be integers: {part_sizes!r}") from exc
    if not parts:
        raise ValueError("at least one part is required")
    if parts[0] < 1:
        raise ValueError(f"part sizes must be positive, got {parts}")

    k = len(parts)
    if all(s == 1 for s in parts):
        if k == 1:
            return _exact(0, "complete-graph")
        if k == 2:
            return FormulaVerdict(None, "complete-graph", "not-orientable")
        return _exact(3 if k == 4 else 2, "complete-graph")

    if k == 1:
        # edgeless graph on several vertices: disconnected
        return FormulaVerdict(None, "disconnected", "not-orientable")

    if k == 2:
        p, q = parts
        if p == 1:
            return FormulaVerdict(None, "complete-bipartite", "not-orientable")
        return _exact(3 if q <= central_binom(p) else 4, "complete-bipartite")

    if k == 3:
        a, p, q = parts
        if a == 2:
            return _exact(2 if q <= central_binom(p) else 3, "tripartite-2pq")
        if a == 3 and p == 3:
            return _exact(2 if q <= 6 else 3, "tripartite-33q")
        if a == 3 and p == 4:
            return _exact(2 if q <= 11 else 3, "tripartite-34q")
        if a == 3:
            return _exact(2 if q < threshold_3pq(p) else 3, "tripartite-3pq")

    return FormulaVerdict(None, "multipartite-bound", "unknown", (2, 3))
