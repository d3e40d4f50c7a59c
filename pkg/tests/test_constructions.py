import math
from itertools import combinations

import numpy as np
import pytest

from orientdiam.constructions import (
    ConstructionError,
    Kind,
    bipartite_lambda_orientation,
    build,
    choose_kind,
    construct_diameter2,
    cyclic_window,
    even_orientation,
    kind_range,
    lambda_capacity,
    lambda_out_sets,
    near_bipartite_orientation,
    odd_orientation,
    singleton_orientation,
)
from orientdiam.digraph import diam_between, diameter_report, reverse
from orientdiam.multipartite import is_complete_multipartite_orientation, layout
from orientdiam.structure import classify
from orientdiam.thresholds import threshold_3pq

TRIPARTITE_KINDS = [k for k in Kind if k is not Kind.BIPARTITE_LAMBDA]


def _kinds_for(p):
    return [k for k in TRIPARTITE_KINDS if not (k is Kind.ODD and p % 2 == 0) and not (k is Kind.EVEN and p % 2 == 1)]


def _big_side_out_sets(D, p, q):
    return [frozenset(int(i) for i in np.flatnonzero(D.arcs[p + j, :p])) for j in range(q)]


# -- window orientations ------------------------------------------------------


def test_window_uses_every_pair_once():
    D = bipartite_lambda_orientation(5, 10, 2)
    outs = _big_side_out_sets(D, 5, 10)
    assert outs[0] == {0, 1}
    assert sorted(map(sorted, outs)) == sorted(map(list, combinations(range(5), 2)))
    assert diameter_report(D).diameter == 3


def test_window_first_p_are_cyclic():
    outs = lambda_out_sets(7, 21, 3)
    assert outs[:7] == [cyclic_window(7, 3, i) for i in range(7)]
    assert len(set(outs)) == 21


def test_forbidden_set_respected():
    forb = [{0, 2}]
    assert lambda_capacity(4, 2, forb) == 5
    D = bipartite_lambda_orientation(4, 5, 2, forb)
    assert frozenset({0, 2}) not in _big_side_out_sets(D, 4, 5)
    with pytest.raises(ConstructionError):
        bipartite_lambda_orientation(4, 6, 2, forb)


def test_forbidden_window_rejected():
    with pytest.raises(ConstructionError, match="cyclic window 1"):
        lambda_out_sets(5, 5, 2, [{1, 2}])


@pytest.mark.parametrize("p, q, lam", [(5, 4, 2), (5, 11, 2), (5, 5, 0), (5, 5, 5)])
def test_window_parameter_rejections(p, q, lam):
    with pytest.raises(ConstructionError):
        lambda_out_sets(p, q, lam)


@pytest.mark.parametrize("p", range(4, 10))
def test_window_claims(p):
    for lam in range(2, p - 1):
        for q in sorted({p, math.comb(p, lam)}):
            D = bipartite_lambda_orientation(p, q, lam, verify=False)
            W1, W2 = range(p), range(p, p + q)
            assert diam_between(D, W1, W1) <= 2
            assert diam_between(D, W2, W2) <= 2
            assert diameter_report(D).diameter == 3


# -- tripartite constructions -------------------------------------------------


def test_odd_examples():
    plan, D = odd_orientation(5, 19)
    assert plan.q_split == (10, 9) and diameter_report(D).diameter == 2
    plan, D = odd_orientation(5, 10)
    assert plan.q_split == (5, 5) and diameter_report(D).diameter == 2
    with pytest.raises(ConstructionError):
        odd_orientation(5, 20)
    with pytest.raises(ConstructionError):
        odd_orientation(6, 20)


def test_even_examples():
    assert diameter_report(even_orientation(6, 34)[1]).diameter == 2
    assert diameter_report(even_orientation(6, 12)[1]).diameter == 2
    with pytest.raises(ConstructionError):
        even_orientation(6, 35)


def test_explicit_split():
    plan, D = odd_orientation(5, 15, q_split=(8, 7))
    assert plan.q_split == (8, 7) and diameter_report(D).diameter == 2
    for bad in [(8, 6), (4, 11), (11, 4)]:
        with pytest.raises(ConstructionError):
            odd_orientation(5, 15, q_split=bad)


def test_singleton_examples():
    assert diameter_report(singleton_orientation(5, 5)[1]).diameter == 2
    assert diameter_report(singleton_orientation(5, 7, plus=True, minus=True)[1]).diameter == 2
    with pytest.raises(ConstructionError):
        singleton_orientation(5, 8, plus=True, minus=True)
    with pytest.raises(ConstructionError):
        singleton_orientation(5, 6)


def test_near_bipartite_examples():
    assert diameter_report(near_bipartite_orientation(5, 8)[1]).diameter == 2
    assert diameter_report(near_bipartite_orientation(5, 13)[1]).diameter == 2
    with pytest.raises(ConstructionError):
        near_bipartite_orientation(5, 14)
    with pytest.raises(ConstructionError):
        near_bipartite_orientation(5, 7)


@pytest.mark.parametrize("p, q, kind", [(5, 5, Kind.SINGLETON), (5, 12, Kind.NEAR_BIPARTITE), (5, 19, Kind.ODD), (6, 34, Kind.EVEN)])
def test_dispatcher(p, q, kind):
    assert choose_kind(p, q) is kind
    plan, _ = construct_diameter2(p, q)
    assert plan.kind is kind


def test_dispatcher_rejections():
    with pytest.raises(ConstructionError) as ei:
        construct_diameter2(5, 20)
    assert "oriented diameter 3" in ei.value.citation
    with pytest.raises(ConstructionError):
        construct_diameter2(4, 6)
    with pytest.raises(ConstructionError):
        construct_diameter2(6, 5)


def test_plan_json_keys():
    plan, _ = odd_orientation(5, 19)
    d = plan.to_dict()
    assert d["kind"] == "odd" and d["parts"] == [3, 5, 19] and d["q_split"] == [10, 9]
    assert d["v2_even_positions"] == [0, 2]


@pytest.mark.parametrize("p", range(5, 9))
def test_every_kind_over_full_range(p):
    for kind in _kinds_for(p):
        lo, hi = kind_range(kind, p)
        for q in range(lo, hi + 1):
            plan, D = build(kind, p, q)
            L = layout(plan.parts)
            assert is_complete_multipartite_orientation(D, L)
            assert diameter_report(D).diameter == 2
            assert diameter_report(reverse(D)).diameter == 2
            classes = classify(D, L)
            # out-sets into part 2 are pairwise distinct and equal-sized within each part-3 class
            by_class = {}
            for z in L.part(2):
                out = frozenset(int(y) for y in np.flatnonzero(D.arcs[z, 3:3 + p]))
                by_class.setdefault(classes.of[z], []).append(out)
            for outs in by_class.values():
                assert len(set(outs)) == len(outs)
                assert len({len(o) for o in outs}) == 1


@pytest.mark.parametrize("p", range(5, 11))
def test_forbidden_class_never_used(p):
    kind = Kind.ODD if p % 2 else Kind.EVEN
    guarded = frozenset({3}) if kind is Kind.ODD else frozenset({2, 3})
    for q in (2 * p, threshold_3pq(p) - 1):
        plan, D = build(kind, p, q)
        L = layout(plan.parts)
        classes = classify(D, L)
        v2_12 = {v for v in L.part(1) if classes.of[v] == {1, 2}}
        assert len(v2_12) == ((p - 1) // 2 if kind is Kind.ODD else p // 2 + 1)
        for z in L.part(2):
            if classes.of[z] == guarded:
                out = {int(y) for y in np.flatnonzero(D.arcs[z]) if y in L.part(1)}
                assert out != v2_12

