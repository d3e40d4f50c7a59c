"""Class decomposition of orientations of K(3, p, q) and the resulting bounds.

Write ``x1, x2, x3`` for the three vertices of the first part.  A vertex ``v``
of the second or third part belongs to class ``A`` (a subset of ``{1, 2, 3}``)
when ``x_i -> v`` exactly for ``i in A``.  Class ``{1, 2, 3}`` is written
``"+"`` and the empty class ``"-"``.  ``V_i^A`` denotes the vertices of part
``i`` in class ``A``.

In a diameter-two orientation the classes are heavily constrained.  The
predicates checked by :func:`check_class_constraints` are:

``shared_class``
    no class is nonempty in both part 2 and part 3.
``extreme_class``
    ``V_i^+`` has at most one vertex and it beats all of part ``j``;
    symmetrically ``V_i^-`` has at most one vertex, beaten by all of part ``j``.
``nested_classes``
    if ``A`` is a proper subset of ``B`` then ``V_j^B -> V_i^A`` entirely.
``uniform_class_size``
    a class all of whose arcs to the other part's classes are uniform has
    exactly one vertex.
``mixed_pair_size``
    otherwise, with ``V_j2`` the union of the other part's classes that meet
    ``V_i^A`` with arcs in both directions, ``|V_i^A| <= C(|V_j2|)``.

Here ``C(m) = binom(m, m // 2)``.  Violations of the first three are
certificates that the diameter exceeds two; the BFS stays the arbiter.

The number ``h`` of nonempty classes in part 2 splits the analysis into
cases; :func:`case_bound` gives the largest ``q`` compatible with diameter two
in each case and :func:`subcase_bound` the finer per-shape bounds.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from itertools import chain, combinations
from typing import Callable, Optional, Union

from .constructions import class_name
from .digraph import Digraph
from .multipartite import PartLayout, is_complete_multipartite_orientation
from .thresholds import central_binom as C

__all__ = [
    "Bound",
    "IMPOSSIBLE",
    "ALL_CLASSES",
    "ClassAssignment",
    "Violation",
    "MixedPair",
    "HPartition",
    "StructureReport",
    "classify",
    "check_class_constraints",
    "h_partition",
    "analyze",
    "case_bound",
    "case_min_p",
    "respects_case_bound",
    "SUBCASES",
    "subcase_bound",
    "Inequality",
    "INEQUALITIES",
    "verify_inequality_chains",
    "verify_increment_monotonicity",
]

CERTIFYING_PREDICATES = frozenset({"shared_class", "extreme_class", "nested_classes"})

ALL_CLASSES: tuple[frozenset[int], ...] = tuple(
    frozenset(c) for c in chain.from_iterable(combinations((1, 2, 3), r) for r in (3, 1, 2, 0))
)


class Bound(enum.Enum):
    IMPOSSIBLE = "impossible"

    def __repr__(self) -> str:
        return self.name


IMPOSSIBLE = Bound.IMPOSSIBLE


def _name(A: frozenset[int]) -> str:
    return class_name(A)


@dataclass(frozen=True)
class ClassAssignment:
    """Class of every vertex of parts 2 and 3 (keyed by vertex index)."""

    layout: PartLayout
    of: dict[int, frozenset[int]]

    def members(self, part: int, A: frozenset[int]) -> tuple[int, ...]:
        """Vertices of ``part`` (2 or 3) in class ``A``."""
        return tuple(v for v in self.layout.part(part - 1) if self.of[v] == A)

    def nonempty(self, part: int) -> list[frozenset[int]]:
        present = {self.of[v] for v in self.layout.part(part - 1)}
        return [A for A in ALL_CLASSES if A in present]

    def to_dict(self) -> dict:
        return {
            f"V{i}": {_name(A): list(self.members(i, A)) for A in self.nonempty(i)} for i in (2, 3)
        }


@dataclass(frozen=True)
class Violation:
    predicate: str
    part: int
    classes: tuple[str, ...]
    witness: tuple[int, ...]
    detail: str

    @property
    def certifies_diameter_above_two(self) -> bool:
        return self.predicate in CERTIFYING_PREDICATES

    def to_dict(self) -> dict:
        return {
            "predicate": self.predicate,
            "part": self.part,
            "classes": list(self.classes),
            "witness": list(self.witness),
            "detail": self.detail,
        }


@dataclass(frozen=True)
class MixedPair:
    """``V_i^A`` together with the union ``V_j2`` of part-``j`` classes that
    meet it with arcs in both directions."""

    part: int
    cls: str
    size: int
    other_classes: tuple[str, ...]
    other_size: int

    @property
    def bound(self) -> int:
        return C(self.other_size)

    def to_dict(self) -> dict:
        return {
            "part": self.part,
            "class": self.cls,
            "size": self.size,
            "mixed_classes": list(self.other_classes),
            "mixed_size": self.other_size,
            "bound": self.bound,
        }


@dataclass(frozen=True)
class HPartition:
    """Nonempty classes of part 2 with their sizes, in canonical class order."""

    sizes: tuple[tuple[frozenset[int], int], ...]

    @property
    def h(self) -> int:
        return len(self.sizes)

    def as_names(self) -> dict[str, int]:
        return {_name(A): s for A, s in self.sizes}


@dataclass(frozen=True)
class StructureReport:
    classes: ClassAssignment
    H: HPartition
    violations: tuple[Violation, ...]
    mixed_pairs: tuple[MixedPair, ...] = field(default=())

    @property
    def certified_not_diameter_two(self) -> bool:
        return any(v.certifies_diameter_above_two for v in self.violations)

    def to_dict(self) -> dict:
        return {
            "classes": self.classes.to_dict(),
            "H": self.H.as_names(),
            "h": self.H.h,
            "violations": [v.to_dict() for v in self.violations],
            "mixed_pairs": [m.to_dict() for m in self.mixed_pairs],
        }


def _check_layout(D: Digraph, L: PartLayout):
    if L.n_parts != 3 or L.part_sizes[0] != 3:
        raise ValueError(f"structure analysis needs a K(3, p, q) layout, got parts {list(L.part_sizes)}")
    if not is_complete_multipartite_orientation(D, L):
        raise ValueError(f"digraph on {D.n} vertices is not an orientation of K{tuple(L.part_sizes)}")


def classify(D: Digraph, L: PartLayout) -> ClassAssignment:
    _check_layout(D, L)
    a = D.arcs
    of = {}
    for v in range(3, L.n):
        of[v] = frozenset(i + 1 for i in range(3) if a[i, v])
    return ClassAssignment(L, of)


def _arc_pattern(a, U, W) -> tuple[bool, bool]:
    """``(all U -> W, all W -> U)`` for disjoint vertex sets."""
    sub = a[list(U)][:, list(W)]
    return bool(sub.all()), not bool(sub.any())


def _first_arc(a, U, W) -> tuple[int, int]:
    for u in U:
        for w in W:
            if a[u, w]:
                return u, w
    raise AssertionError("no arc found")


def check_class_constraints(D: Digraph, L: PartLayout, classes: Optional[ClassAssignment] = None):
    """All predicate failures, exhaustively; returns ``(violations, mixed_pairs)``."""
    if classes is None:
        classes = classify(D, L)
    else:
        _check_layout(D, L)
    a = D.arcs
    violations: list[Violation] = []
    mixed: list[MixedPair] = []
    members = {(i, A): classes.members(i, A) for i in (2, 3) for A in ALL_CLASSES}
    full, empty = frozenset((1, 2, 3)), frozenset()

    for A in ALL_CLASSES:
        if members[2, A] and members[3, A]:
            violations.append(
                Violation("shared_class", 2, (_name(A),), (members[2, A][0], members[3, A][0]),
                          f"class {_name(A)} is nonempty in both parts")
            )

    for i, j in ((2, 3), (3, 2)):
        other = list(L.part(j - 1))
        for A, beats in ((full, True), (empty, False)):
            V = members[i, A]
            if not V:
                continue
            if len(V) > 1:
                violations.append(
                    Violation("extreme_class", i, (_name(A),), V[:2], f"|V{i}^{_name(A)}| = {len(V)} > 1")
                )
            for v in V:
                bad = [w for w in other if a[v, w] != beats]
                if bad:
                    arc = (v, bad[0]) if not beats else (bad[0], v)
                    violations.append(
                        Violation("extreme_class", i, (_name(A),), arc,
                                  f"arc {arc[0]}->{arc[1]} against V{i}^{_name(A)}")
                    )

        for A in ALL_CLASSES:
            VA = members[i, A]
            if not VA:
                continue
            for B in ALL_CLASSES:
                VB = members[j, B]
                if A < B and VB:
                    down, _ = _arc_pattern(a, VB, VA)
                    if not down:
                        u, w = _first_arc(a, VA, VB)
                        violations.append(
                            Violation("nested_classes", i, (_name(A), _name(B)), (u, w),
                                      f"arc {u}->{w} from V{i}^{_name(A)} to V{j}^{_name(B)}")
                        )

            mixed_names, mixed_size = [], 0
            for B in ALL_CLASSES:
                VB = members[j, B]
                if not VB:
                    continue
                out, inn = _arc_pattern(a, VA, VB)
                if not (out or inn):
                    mixed_names.append(_name(B))
                    mixed_size += len(VB)
            if not mixed_names:
                if len(VA) != 1:
                    violations.append(
                        Violation("uniform_class_size", i, (_name(A),), VA[:2],
                                  f"V{i}^{_name(A)} meets every class uniformly but has {len(VA)} vertices")
                    )
                continue
            mp = MixedPair(i, _name(A), len(VA), tuple(mixed_names), mixed_size)
            mixed.append(mp)
            if mp.size > mp.bound:
                violations.append(
                    Violation("mixed_pair_size", i, (_name(A),) + mp.other_classes, VA[:2],
                              f"|V{i}^{_name(A)}| = {mp.size} > C({mixed_size}) = {mp.bound}")
                )
    return violations, mixed


def h_partition(classes: ClassAssignment) -> HPartition:
    sizes = tuple((A, len(classes.members(2, A))) for A in classes.nonempty(2))
    return HPartition(sizes)


def analyze(D: Digraph, L: PartLayout) -> StructureReport:
    classes = classify(D, L)
    violations, mixed = check_class_constraints(D, L, classes)
    return StructureReport(classes, h_partition(classes), tuple(violations), tuple(mixed))


# -- bounds -------------------------------------------------------------------

_CASE_MIN_P = {1: 3, 2: 5, 3: 4, 4: 4, 5: 5, 6: 5, 7: 3, 8: 3}


def case_min_p(h: int) -> int:
    if h not in _CASE_MIN_P:
        raise ValueError(f"h must be in 1..8, got {h}")
    return _CASE_MIN_P[h]


def case_bound(p: int, h: int) -> Union[int, Bound, None]:
    """Largest ``q`` for which an orientation of K(3, p, q) with ``h``
    nonempty part-2 classes can have diameter two.

    ``IMPOSSIBLE`` when no such orientation exists, ``None`` for ``h = 8``
    (no bound is known).
    """
    if p < case_min_p(h):
        raise ValueError(f"case_bound for h={h} needs p >= {case_min_p(h)}, got p={p}")
    if h in (1, 7):
        return IMPOSSIBLE
    if h == 2:
        return C(p + 1) - 1
    if h == 3:
        return 1 + C(p - 3) + C(p - 1) + C(p)
    if h == 4:
        return max(1 + 2 * C(p - 2) + C(p - 1), 2 + 2 * C(p - 1))
    if h == 5:
        return C(p - 3) + C(p - 2)
    if h == 6:
        return C(p - 2)
    return None


def respects_case_bound(p: int, q: int, h: int) -> Optional[bool]:
    """``q <= case_bound(p, h)``; ``None`` when no bound applies."""
    if not 1 <= h <= 8 or p < case_min_p(h):
        return None
    b = case_bound(p, h)
    if b is None:
        return None
    if b is IMPOSSIBLE:
        return False
    return q <= b


@dataclass(frozen=True)
class Subcase:
    """A shape of part 2 (which classes are nonempty) with its bound on ``q``.

    In the shape strings ``+``/``-`` are the extreme classes and letters
    stand for distinct proper nonempty classes.
    """

    h: int
    shape: str
    min_p: int
    formula: Callable[[int], int]


SUBCASES: dict[str, Subcase] = {
    "plus_one": Subcase(2, "+ A", 3, lambda p: 1 + 3 * C(p - 1)),
    "two_equal_size": Subcase(2, "A B, |A| = |B|", 3, lambda p: max(2 + C(p - 1) + C(p), 1 + 2 * C(p - 2) + C(p))),
    "two_unequal_size": Subcase(
        2, "A B, |A| != |B|", 3, lambda p: max(4 + 2 * C(p - 1), 2 + 4 * C(p - 2), C(p + 1) - 1)
    ),
    "plus_one_minus": Subcase(3, "+ A -", 3, lambda p: 2 + 3 * C(p - 2)),
    "plus_two_equal_size": Subcase(3, "+ A B, |A| = |B|", 3, lambda p: 2 + 2 * C(p - 1)),
    "plus_two_unequal_size": Subcase(3, "+ A B, |A| != |B|", 3, lambda p: 1 + C(p - 2) + 2 * C(p - 1)),
    "three_proper": Subcase(3, "A B C", 4, lambda p: 1 + C(p - 3) + C(p - 1) + C(p)),
    "plus_two_minus": Subcase(4, "+ A B -", 4, lambda p: 3 * C(p - 2)),
    "plus_three": Subcase(4, "+ A B C", 4, lambda p: 1 + 2 * C(p - 2) + C(p - 1)),
    "four_proper": Subcase(4, "A B C E", 4, lambda p: 2 + 2 * C(p - 1)),
    "all_but_plus_one_minus": Subcase(5, "all but + A -", 5, lambda p: 2 + C(p - 2)),
    "all_but_plus_two": Subcase(5, "all but + A B", 5, lambda p: 1 + 2 * C(p - 3)),
    "all_but_three_proper": Subcase(5, "all but A B C", 5, lambda p: C(p - 3) + C(p - 2)),
    "all_but_two_proper": Subcase(6, "all but A B", 6, lambda p: C(p - 2)),
}


def subcase_bound(p: int, key: str) -> int:
    try:
        sc = SUBCASES[key]
    except KeyError:
        raise ValueError(f"unknown subcase {key!r}; known: {', '.join(SUBCASES)}") from None
    if p < sc.min_p:
        raise ValueError(f"subcase {key!r} needs p >= {sc.min_p}, got p={p}")
    return sc.formula(p)


# -- inequality chains --------------------------------------------------------


@dataclass(frozen=True)
class Inequality:
    name: str
    min_p: int
    lhs: Callable[[int], int]
    rhs: Callable[[int], int]
    strict: bool

    def holds(self, p: int) -> bool:
        l, r = self.lhs(p), self.rhs(p)
        return l < r if self.strict else l <= r

    def describe(self, p: int) -> str:
        return f"{self.name} at p={p}: {self.lhs(p)} {'<' if self.strict else '<='} {self.rhs(p)}"


def _top(p: int) -> int:
    return C(p + 1) - 1


INEQUALITIES: tuple[Inequality, ...] = (
    # the two-class bounds sit below the threshold
    Inequality("plus_one<=top", 5, lambda p: 1 + 3 * C(p - 1), _top, False),
    Inequality("two_equal_size<top", 5, SUBCASES["two_equal_size"].formula, _top, True),
    Inequality("two_unequal_size_core<top", 5, lambda p: max(4 + 2 * C(p - 1), 2 + 4 * C(p - 2)), _top, True),
    # three-class subcases are ordered, so the last one dominates
    Inequality("three_halves", 4, lambda p: 3 * C(p - 1), lambda p: 2 * C(p), True),
    Inequality("plus_one_minus<plus_two_equal", 5, SUBCASES["plus_one_minus"].formula,
               SUBCASES["plus_two_equal_size"].formula, True),
    Inequality("plus_two_equal<plus_two_unequal", 5, SUBCASES["plus_two_equal_size"].formula,
               SUBCASES["plus_two_unequal_size"].formula, True),
    Inequality("plus_two_unequal<=three_proper", 5, SUBCASES["plus_two_unequal_size"].formula,
               SUBCASES["three_proper"].formula, False),
    # every case bound sits below the threshold
    Inequality("h3<=top", 5, lambda p: case_bound(p, 3), _top, False),
    Inequality("h4<top", 5, lambda p: case_bound(p, 4), _top, True),
    Inequality("h5<top", 5, lambda p: case_bound(p, 5), _top, True),
)


def verify_increment_monotonicity(n_max: int) -> tuple[bool, Optional[tuple[int, int]]]:
    """``C(m+1) - C(m) <= C(n+1) - C(n)`` for all ``1 <= m <= n <= n_max``."""
    d = [C(m + 1) - C(m) for m in range(n_max + 1)]
    for n in range(1, n_max + 1):
        for m in range(1, n + 1):
            if d[m] > d[n]:
                return False, (m, n)
    return True, None


def verify_inequality_chains(p_min: int, p_max: int) -> tuple[bool, Optional[tuple[int, str]]]:
    """Check every inequality for ``max(p_min, its own min_p) <= p <= p_max``
    plus increment monotonicity up to ``p_max``.

    Returns ``(True, None)`` or ``(False, (p, description))`` for the first
    failure in increasing ``p``.
    """
    for p in range(p_min, p_max + 1):
        for ineq in INEQUALITIES:
            if p >= ineq.min_p and not ineq.holds(p):
                return False, (p, ineq.describe(p))
    ok, mn = verify_increment_monotonicity(p_max)
    if not ok:
        m, n = mn
        return False, (n, f"increment monotonicity fails at m={m}, n={n}")
    return True, None
