"""Vertex layout and edge sets of complete multipartite graphs.

Parts occupy contiguous index ranges in the order given.  For the tripartite
graphs ``K(3, p, q)`` the first part is ``{x1, x2, x3} = {0, 1, 2}``, the
second part (``y`` vertices) follows, then the third part (``z`` vertices).
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import accumulate
from typing import Sequence

import numpy as np

from .digraph import Digraph

__all__ = ["PartLayout", "layout", "edges", "is_complete_multipartite_orientation", "part_ids"]


@dataclass(frozen=True)
class PartLayout:
    part_sizes: tuple[int, ...]
    offsets: tuple[int, ...]

    @property
    def n(self) -> int:
        return self.offsets[-1] + self.part_sizes[-1]

    @property
    def n_parts(self) -> int:
        return len(self.part_sizes)

    def part(self, i: int) -> range:
        return range(self.offsets[i], self.offsets[i] + self.part_sizes[i])

    def part_of(self, v: int) -> int:
        for i, (off, size) in enumerate(zip(self.offsets, self.part_sizes)):
            if off <= v < off + size:
                return i
        raise IndexError(f"vertex {v} outside layout of {self.n} vertices")

    @property
    def n_edges(self) -> int:
        total = sum(self.part_sizes)
        return (total * total - sum(s * s for s in self.part_sizes)) // 2

    def to_dict(self) -> dict:
        return {"parts": list(self.part_sizes)}


def layout(part_sizes: Sequence[int]) -> PartLayout:
    sizes = tuple(int(s) for s in part_sizes)
    if not sizes:
        raise ValueError("at least one part is required")
    if any(s < 1 for s in sizes):
        raise ValueError(f"part sizes must be positive, got {list(sizes)}")
    offsets = (0,) + tuple(accumulate(sizes))[:-1]
    return PartLayout(sizes, offsets)


def part_ids(L: PartLayout) -> np.ndarray:
    return np.repeat(np.arange(L.n_parts), L.part_sizes)


def edges(L: PartLayout) -> list[tuple[int, int]]:
    """All cross-part pairs ``(u, v)`` with ``u < v``, lexicographic."""
    pid = part_ids(L)
    return [(u, v) for u in range(L.n) for v in range(u + 1, L.n) if pid[u] != pid[v]]


def is_complete_multipartite_orientation(D: Digraph, L: PartLayout) -> bool:
    if D.n != L.n:
        return False
    pid = part_ids(L)
    cross = pid[:, None] != pid[None, :]
    sym = D.arcs | D.arcs.T
    # Digraph already forbids two-way pairs, so sym == cross means exactly one arc per cross pair
    return bool(np.array_equal(sym, cross))
