"""Diameter-two orientations of complete tripartite graphs ``K(3, p, q)``.

Vertex indices follow :mod:`orientdiam.multipartite`: ``x1, x2, x3`` are
``0, 1, 2``; the ``p`` vertices of the second part start at 3; the ``q``
vertices of the third part follow.

A vertex ``v`` outside the first part is given a *class* ``A``, a subset of
``{1, 2, 3}``: ``x_i -> v`` for ``i`` in ``A`` and ``v -> x_i`` otherwise.
Between the second and third parts most arcs come from *window orientations*
of complete bipartite graphs (:func:`lambda_out_sets`), where every vertex of
one side sends arcs to a distinct ``lam``-subset of the other side and the
``p`` cyclic intervals of length ``lam`` are always among those subsets.

Each public constructor checks its own diameter claim by BFS before
returning; a failed check raises :class:`ConstructionFault`.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Optional, Sequence

import numpy as np

from .digraph import Digraph, all_pairs_distances, diameter_report
from .multipartite import PartLayout, layout
from .search import binom
from .thresholds import central_binom, threshold_3pq

__all__ = [
    "Kind",
    "ConstructionPlan",
    "ConstructionError",
    "ConstructionFault",
    "cyclic_window",
    "lambda_out_sets",
    "lambda_capacity",
    "bipartite_lambda_orientation",
    "odd_orientation",
    "even_orientation",
    "singleton_orientation",
    "near_bipartite_orientation",
    "construct_diameter2",
    "kind_range",
    "build",
    "choose_kind",
    "class_name",
]


class Kind(str, enum.Enum):
    BIPARTITE_LAMBDA = "bipartite-lambda"
    ODD = "odd"
    EVEN = "even"
    SINGLETON = "singleton"
    SINGLETON_PLUS = "singleton-plus"
    SINGLETON_MINUS = "singleton-minus"
    SINGLETON_BOTH = "singleton-both"
    NEAR_BIPARTITE = "near-bipartite"


class ConstructionError(ValueError):
    """Parameters outside the range a construction covers."""

    def __init__(self, message: str, citation: str = ""):
        super().__init__(message)
        self.citation = citation


class ConstructionFault(RuntimeError):
    """A construction produced a digraph that fails its own diameter check."""


_CLASS_NAMES = {
    frozenset(): "-",
    frozenset({1, 2, 3}): "+",
}


def class_name(A: Iterable[int]) -> str:
    """``"+"``, ``"-"`` or the sorted digits of ``A`` (``{1, 3}`` -> ``"13"``)."""
    A = frozenset(A)
    return _CLASS_NAMES.get(A) or "".join(str(i) for i in sorted(A))


@dataclass(frozen=True)
class ConstructionPlan:
    """Construction kind plus every free parameter it resolved."""

    kind: Kind
    p: int
    q: int
    lam: Optional[int] = None
    q_split: Optional[tuple[int, int]] = None
    v2_classes: tuple[str, ...] = ()
    v2_even_positions: Optional[tuple[int, ...]] = None
    forbidden_out_sets: tuple[tuple[int, ...], ...] = field(default=())

    @property
    def parts(self) -> list[int]:
        if self.kind is Kind.BIPARTITE_LAMBDA:
            return [self.p, self.q]
        return [3, self.p, self.q]

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "p": self.p,
            "q": self.q,
            "lambda": self.lam,
            "q_split": list(self.q_split) if self.q_split else None,
            "v2_even_positions": list(self.v2_even_positions) if self.v2_even_positions is not None else None,
            "v2_classes": list(self.v2_classes),
            "forbidden_out_sets": [list(s) for s in self.forbidden_out_sets],
            "parts": self.parts,
        }


# -- window orientations of K(p, q) ------------------------------------------


def cyclic_window(p: int, lam: int, i: int) -> frozenset[int]:
    return frozenset((i + s) % p for s in range(lam))


def _colex(p: int, lam: int) -> list[frozenset[int]]:
    subsets = sorted(combinations(range(p), lam), key=lambda c: c[::-1])
    return [frozenset(c) for c in subsets]


def _check_window_params(p: int, lam: int, forbidden: Iterable[Iterable[int]]):
    if p < 2:
        raise ConstructionError(f"window orientations need p >= 2, got p={p}")
    if not 1 <= lam <= p - 1:
        raise ConstructionError(f"window width must satisfy 1 <= lam <= p-1, got lam={lam}, p={p}")
    windows = [cyclic_window(p, lam, i) for i in range(p)]
    forb = set()
    for f in forbidden:
        f = frozenset(int(x) for x in f)
        if not f <= frozenset(range(p)):
            raise ConstructionError(f"forbidden set {sorted(f)} is not a subset of 0..{p - 1}")
        if f in windows:
            i = windows.index(f)
            raise ConstructionError(f"forbidden set {sorted(f)} equals cyclic window {i}")
        forb.add(f)
    return windows, forb


def lambda_capacity(p: int, lam: int, forbidden: Iterable[Iterable[int]] = ()) -> int:
    """Number of distinct out-sets available to a window orientation."""
    _, forb = _check_window_params(p, lam, forbidden)
    return binom(p, lam) - sum(1 for f in forb if len(f) == lam)


def lambda_out_sets(p: int, q: int, lam: int, forbidden: Iterable[Iterable[int]] = ()) -> list[frozenset[int]]:
    """Out-sets (subsets of ``0..p-1``) for the ``q`` vertices of the big side.

    The first ``p`` are the cyclic windows ``{i, ..., i+lam-1 mod p}``; the
    rest are the remaining ``lam``-subsets in colexicographic order, skipping
    forbidden sets.
    """
    windows, forb = _check_window_params(p, lam, forbidden)
    if q < p:
        raise ConstructionError(f"a window orientation needs q >= p, got p={p}, q={q}")
    window_set = set(windows)
    extra = [s for s in _colex(p, lam) if s not in window_set and s not in forb]
    available = p + len(extra)
    if q > available:
        raise ConstructionError(
            f"q={q} exceeds the {available} distinct {lam}-subsets available for p={p}"
        )
    return windows + extra[: q - p]


def _orient_between(a: np.ndarray, side1: Sequence[int], side2: Sequence[int], out_sets: Sequence[frozenset[int]]):
    """``side2[j] -> side1[i]`` for ``i`` in ``out_sets[j]``, reverse otherwise."""
    for z, out in zip(side2, out_sets):
        for i, y in enumerate(side1):
            if i in out:
                a[z, y] = True
            else:
                a[y, z] = True


def _orient_class(a: np.ndarray, v: int, A: Iterable[int]):
    A = set(A)
    for i in (1, 2, 3):
        if i in A:
            a[i - 1, v] = True
        else:
            a[v, i - 1] = True


def _all(a: np.ndarray, U: Iterable[int], V: Iterable[int]):
    a[np.ix_(list(U), list(V))] = True


def _is_window_claim(p: int, lam: int) -> bool:
    return p >= 4 and lam >= 2 and p - lam >= 2


def bipartite_lambda_orientation(
    p: int,
    q: int,
    lam: int,
    forbidden_out_sets: Iterable[Iterable[int]] = (),
    verify: bool = True,
) -> Digraph:
    """Window orientation of ``K(p, q)`` on layout ``[p, q]``.

    With ``p >= 4``, ``lam >= 2`` and ``p - lam >= 2`` both sides are at
    mutual distance at most 2 and the diameter is exactly 3; that claim is
    checked when ``verify`` is set.  Other widths are built but not checked.
    """
    out_sets = lambda_out_sets(p, q, lam, forbidden_out_sets)
    a = np.zeros((p + q, p + q), dtype=bool)
    _orient_between(a, range(p), range(p, p + q), out_sets)
    D = Digraph(a)
    if verify and _is_window_claim(p, lam):
        dist = all_pairs_distances(D)
        w1 = dist[:p, :p].max()
        w2 = dist[p:, p:].max()
        diam = dist.max()
        if w1 > 2 or w2 > 2 or diam != 3:
            raise ConstructionFault(
                f"window orientation ({p},{q},{lam}): side distances {w1}, {w2}, diameter {diam}"
            )
    return D


# -- tripartite constructions -------------------------------------------------


def _tri(p: int, q: int) -> tuple[PartLayout, np.ndarray, list[int], list[int]]:
    L = layout([3, p, q])
    return L, np.zeros((L.n, L.n), dtype=bool), list(L.part(1)), list(L.part(2))


def _verify_two(D: Digraph, plan: ConstructionPlan) -> Digraph:
    rep = diameter_report(D)
    if rep.diameter != 2:
        raise ConstructionFault(
            f"{plan.kind.value} construction for K(3,{plan.p},{plan.q}) has diameter "
            f"{rep.diameter if rep.finite else 'infinite'} (witness {rep.witness})"
        )
    return D


_DIAM3_CITATION = "K(3,p,q) with p >= 5 and q >= C(p+1, (p+1)//2) has oriented diameter 3"


def _two_window_range(p: int) -> tuple[int, int]:
    return 2 * p, threshold_3pq(p) - 1


def _two_window_split(
    p: int, q: int, cap1: int, cap2: int, q_split: Optional[Sequence[int]]
) -> tuple[int, int]:
    if q_split is None:
        q2 = min(q - p, cap2)
        q1 = q - q2
    else:
        q1, q2 = (int(x) for x in q_split)
        if q1 + q2 != q:
            raise ConstructionError(f"q_split {q1}+{q2} does not sum to q={q}")
    if not p <= q1 <= cap1:
        raise ConstructionError(f"q1={q1} outside [{p}, {cap1}]")
    if not p <= q2 <= cap2:
        raise ConstructionError(f"q2={q2} outside [{p}, {cap2}]")
    return q1, q2


def _two_window(
    kind: Kind,
    p: int,
    q: int,
    pos12: list[int],
    lam23: int,
    lam3: int,
    forbid_in_23: bool,
    q_split,
    verify: bool,
) -> tuple[ConstructionPlan, Digraph]:
    lo, hi = _two_window_range(p)
    if q > hi:
        raise ConstructionError(
            f"{kind.value} orientation needs q <= C(p+1, (p+1)//2) - 1 = {hi}, got q={q}",
            _DIAM3_CITATION,
        )
    if q < lo:
        raise ConstructionError(f"{kind.value} orientation needs q >= 2p = {lo}, got q={q}")
    forb = [pos12]
    cap1 = lambda_capacity(p, lam23, forb if forbid_in_23 else ())
    cap2 = lambda_capacity(p, lam3, () if forbid_in_23 else forb)
    q1, q2 = _two_window_split(p, q, cap1, cap2, q_split)

    L, a, V2, V3 = _tri(p, q)
    classes = ["12" if j in pos12 else "1" for j in range(p)]
    for y, c in zip(V2, classes):
        _orient_class(a, y, {1, 2} if c == "12" else {1})
    V3_23, V3_3 = V3[:q1], V3[q1:]
    for z in V3_23:
        _orient_class(a, z, {2, 3})
    for z in V3_3:
        _orient_class(a, z, {3})
    _orient_between(a, V2, V3_23, lambda_out_sets(p, q1, lam23, forb if forbid_in_23 else ()))
    _orient_between(a, V2, V3_3, lambda_out_sets(p, q2, lam3, () if forbid_in_23 else forb))

    plan = ConstructionPlan(
        kind=kind,
        p=p,
        q=q,
        lam=lam23,
        q_split=(q1, q2),
        v2_classes=tuple(classes),
        v2_even_positions=tuple(pos12),
        forbidden_out_sets=(tuple(V2[j] for j in pos12),),
    )
    D = Digraph(a)
    return plan, (_verify_two(D, plan) if verify else D)


def odd_orientation(p: int, q: int, q_split: Optional[Sequence[int]] = None, verify: bool = True):
    """Two-window construction for odd ``p = 2k + 1 >= 5`` and ``2p <= q``.

    The second part splits into class ``{1}`` (``k+1`` vertices) and class
    ``{1, 2}`` (``k`` vertices, placed at the even cyclic positions
    ``0, 2, ..., 2k-2``).  The third part splits into class ``{2, 3}``
    (``q1`` vertices, out-sets are ``(k+1)``-subsets) and class ``{3}``
    (``q2`` vertices, out-sets are ``k``-subsets other than the ``{1, 2}``
    block).  Returns ``(plan, digraph)``.
    """
    if p < 5 or p % 2 == 0:
        raise ConstructionError(f"odd orientation needs odd p >= 5, got p={p}")
    k = (p - 1) // 2
    pos12 = list(range(0, 2 * k - 1, 2))
    return _two_window(Kind.ODD, p, q, pos12, k + 1, k, False, q_split, verify)


def even_orientation(p: int, q: int, q_split: Optional[Sequence[int]] = None, verify: bool = True):
    """Two-window construction for even ``p = 2k + 2 >= 6`` and ``2p <= q``.

    Class ``{1, 2}`` has ``k+2`` vertices at cyclic positions
    ``0, 1, 2, 4, ..., 2k`` (never a cyclic interval), class ``{1}`` the
    other ``k``.  Third-part class ``{2, 3}`` uses ``(k+2)``-subsets other
    than the ``{1, 2}`` block; class ``{3}`` uses all ``(k+1)``-subsets.
    """
    if p < 6 or p % 2:
        raise ConstructionError(f"even orientation needs even p >= 6, got p={p}")
    k = (p - 2) // 2
    pos12 = sorted({1} | set(range(0, 2 * k + 1, 2)))
    return _two_window(Kind.EVEN, p, q, pos12, k + 2, k + 1, True, q_split, verify)


def _singleton_range(p: int, n_ext: int) -> tuple[int, int]:
    return p + n_ext, 2 + n_ext + central_binom(p - 2)


def singleton_orientation(p: int, q: int, plus: bool = False, minus: bool = False, verify: bool = True):
    """Construction with singleton classes ``{1}``, ``{2}`` in the second part.

    Second part: ``y1`` (class ``{1}``), ``y2`` (class ``{2}``) and ``p-2``
    vertices of class ``{3}``.  Third part: ``z23``, ``z13`` and ``q1``
    vertices of class ``{1, 2}`` forming a window orientation with the class
    ``{3}`` block (width ``(p-2)//2``).  ``plus`` adds a vertex fed by the
    whole first part and feeding the whole second part; ``minus`` adds the
    mirror image.  Covers ``p + e <= q <= 2 + e + C(p-2, (p-2)//2)`` where
    ``e`` counts the enabled extras.
    """
    if p < 5:
        raise ConstructionError(f"singleton orientation needs p >= 5, got p={p}")
    n_ext = int(plus) + int(minus)
    lo, hi = _singleton_range(p, n_ext)
    kind = {
        (False, False): Kind.SINGLETON,
        (True, False): Kind.SINGLETON_PLUS,
        (False, True): Kind.SINGLETON_MINUS,
        (True, True): Kind.SINGLETON_BOTH,
    }[(bool(plus), bool(minus))]
    if not lo <= q <= hi:
        raise ConstructionError(f"{kind.value} orientation for p={p} needs {lo} <= q <= {hi}, got q={q}")
    p1 = p - 2
    lam = p1 // 2
    q1 = q - 2 - n_ext

    L, a, V2, V3 = _tri(p, q)
    y1, y2, V2_3 = V2[0], V2[1], V2[2:]
    z23, z13 = V3[0], V3[1]
    V3_12 = V3[2 : 2 + q1]
    extras = V3[2 + q1 :]
    _orient_class(a, y1, {1})
    _orient_class(a, y2, {2})
    for y in V2_3:
        _orient_class(a, y, {3})
    _orient_class(a, z23, {2, 3})
    _orient_class(a, z13, {1, 3})
    for z in V3_12:
        _orient_class(a, z, {1, 2})

    _all(a, V3_12, [y1, y2])
    _all(a, [z13], [y1, *V2_3])
    _all(a, [z23], [y2, *V2_3])
    a[y1, z23] = True
    a[y2, z13] = True
    _orient_between(a, V2_3, V3_12, lambda_out_sets(p1, q1, lam))

    it = iter(extras)
    if plus:
        zp = next(it)
        _orient_class(a, zp, {1, 2, 3})
        _all(a, [zp], V2)
    if minus:
        zm = next(it)
        _orient_class(a, zm, ())
        _all(a, V2, [zm])

    plan = ConstructionPlan(
        kind=kind,
        p=p,
        q=q,
        lam=lam,
        q_split=(q1, n_ext),
        v2_classes=("1", "2") + ("3",) * p1,
    )
    D = Digraph(a)
    return plan, (_verify_two(D, plan) if verify else D)


def near_bipartite_orientation(p: int, q: int, verify: bool = True):
    """Construction whose third part is mostly class ``{3}``.

    Second part: ``y1`` (class ``{1}``), ``y2`` (class ``{2}``), and ``p-2``
    vertices of class ``{1, 2}`` (``y12`` first).  Third part: ``z+`` (class
    ``+``, sends arcs to the whole second part), ``z13``, ``z23`` and ``q-3``
    vertices of class ``{3}`` forming a window orientation of width ``p//2``
    with the whole second part.  Covers ``p + 3 <= q <= 3 + C(p, p//2)``.
    """
    if p < 5:
        raise ConstructionError(f"near-bipartite orientation needs p >= 5, got p={p}")
    lo, hi = p + 3, 3 + central_binom(p)
    if not lo <= q <= hi:
        raise ConstructionError(f"near-bipartite orientation for p={p} needs {lo} <= q <= {hi}, got q={q}")
    lam = p // 2
    q1 = q - 3

    L, a, V2, V3 = _tri(p, q)
    y1, y2, y12, V2p = V2[0], V2[1], V2[2], V2[3:]
    zp, z13, z23, V3_3 = V3[0], V3[1], V3[2], V3[3:]
    _orient_class(a, y1, {1})
    _orient_class(a, y2, {2})
    for y in [y12, *V2p]:
        _orient_class(a, y, {1, 2})
    _orient_class(a, zp, {1, 2, 3})
    _orient_class(a, z13, {1, 3})
    _orient_class(a, z23, {2, 3})
    for z in V3_3:
        _orient_class(a, z, {3})

    _all(a, [zp], V2)
    _all(a, [z13], [y1, y2, *V2p])
    _all(a, [z23], [y1, y2, *V2p])
    _all(a, [y12], [z13, z23])
    _orient_between(a, V2, V3_3, lambda_out_sets(p, q1, lam))

    plan = ConstructionPlan(
        kind=Kind.NEAR_BIPARTITE,
        p=p,
        q=q,
        lam=lam,
        q_split=(q1, 3),
        v2_classes=("1", "2") + ("12",) * (p - 2),
    )
    D = Digraph(a)
    return plan, (_verify_two(D, plan) if verify else D)


# -- dispatcher ---------------------------------------------------------------


def kind_range(kind: Kind, p: int) -> tuple[int, int]:
    """Inclusive ``q`` range a tripartite construction covers for this ``p``."""
    if kind is Kind.SINGLETON:
        return _singleton_range(p, 0)
    if kind in (Kind.SINGLETON_PLUS, Kind.SINGLETON_MINUS):
        return _singleton_range(p, 1)
    if kind is Kind.SINGLETON_BOTH:
        return _singleton_range(p, 2)
    if kind is Kind.NEAR_BIPARTITE:
        return p + 3, 3 + central_binom(p)
    if kind in (Kind.ODD, Kind.EVEN):
        return _two_window_range(p)
    raise ValueError(f"{kind} is not a tripartite construction")


def build(kind: Kind, p: int, q: int, q_split=None, verify: bool = True) -> tuple[ConstructionPlan, Digraph]:
    kind = Kind(kind)
    if kind is Kind.SINGLETON:
        return singleton_orientation(p, q, verify=verify)
    if kind is Kind.SINGLETON_PLUS:
        return singleton_orientation(p, q, plus=True, verify=verify)
    if kind is Kind.SINGLETON_MINUS:
        return singleton_orientation(p, q, minus=True, verify=verify)
    if kind is Kind.SINGLETON_BOTH:
        return singleton_orientation(p, q, plus=True, minus=True, verify=verify)
    if kind is Kind.NEAR_BIPARTITE:
        return near_bipartite_orientation(p, q, verify=verify)
    if kind is Kind.ODD:
        return odd_orientation(p, q, q_split, verify=verify)
    if kind is Kind.EVEN:
        return even_orientation(p, q, q_split, verify=verify)
    raise ConstructionError(f"{kind.value} does not orient K(3, p, q)")


_DISPATCH_ORDER = (
    Kind.SINGLETON,
    Kind.SINGLETON_PLUS,
    Kind.SINGLETON_BOTH,
    Kind.NEAR_BIPARTITE,
)


def choose_kind(p: int, q: int) -> Kind:
    if p < 5:
        raise ConstructionError(f"diameter-two constructions here need p >= 5, got p={p}")
    if q < p:
        raise ConstructionError(f"parts must satisfy p <= q, got p={p}, q={q}")
    top = threshold_3pq(p) - 1
    if q > top:
        raise ConstructionError(
            f"no diameter-two orientation of K(3,{p},{q}): q >= C(p+1, (p+1)//2) = {top + 1}",
            _DIAM3_CITATION,
        )
    for kind in _DISPATCH_ORDER:
        lo, hi = kind_range(kind, p)
        if lo <= q <= hi:
            return kind
    return Kind.ODD if p % 2 else Kind.EVEN


def construct_diameter2(p: int, q: int) -> tuple[ConstructionPlan, Digraph]:
    """Diameter-two orientation of ``K(3, p, q)`` for ``5 <= p <= q < C(p+1, (p+1)//2)``.

    Tries the singleton family, then the near-bipartite one, then the
    two-window construction matching the parity of ``p``; the first whose
    range contains ``q`` is used.  The result is BFS-checked; a failure is a
    bug and raises :class:`ConstructionFault`.
    """
    return build(choose_kind(p, q), p, q, verify=True)
