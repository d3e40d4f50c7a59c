import itertools
import math

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import simple_graphs
from orientdiam.digraph import INFINITE, diameter_report, is_bridgeless_underlying
from orientdiam.multipartite import edges, is_complete_multipartite_orientation, layout
from orientdiam.search import (
    batch_diameters,
    exists_diam2_backtracking,
    f_bruteforce,
    far_pair_check,
    min_orientation_diameter,
    orientation_from_mask,
    sperner_check,
)


def _nx_min_diameter(n, es):
    """Independent oracle: every orientation through networkx."""
    best = None
    for dirs in itertools.product((0, 1), repeat=len(es)):
        G = nx.DiGraph()
        G.add_nodes_from(range(n))
        G.add_edges_from((u, v) if d else (v, u) for (u, v), d in zip(es, dirs))
        if n == 1 or nx.is_strongly_connected(G):
            d = nx.diameter(G) if n > 1 else 0
            best = d if best is None else min(best, d)
    return best


@pytest.mark.parametrize("parts, f", [([2, 2, 2], 2), ([2, 2, 3], 3), ([1, 1, 1, 1], 3)])
def test_bruteforce_examples(parts, f):
    res = f_bruteforce(parts)
    assert res.f_value == f
    assert diameter_report(res.witness).diameter == f
    assert is_complete_multipartite_orientation(res.witness, layout(parts))


def test_budget_points_to_backtracking():
    with pytest.raises(ValueError, match="exists_diam2_backtracking"):
        f_bruteforce([3, 3, 3])


def test_bridged_multipartite():
    res = f_bruteforce([1, 3])
    assert res.f_value is None and "bridge" in res.note


@settings(max_examples=60, deadline=None)
@given(simple_graphs(min_n=1, max_n=6))
def test_bruteforce_matches_networkx(g):
    n, es = g
    if len(es) > 9:
        es = es[:9]
    res = min_orientation_diameter(n, es, check_bridges=False)
    assert res.f_value == _nx_min_diameter(n, es)
    if res.witness is not None:
        assert diameter_report(res.witness).diameter == res.f_value


@settings(max_examples=80, deadline=None)
@given(simple_graphs(min_n=1, max_n=7))
def test_robbins_consistency(g):
    n, es = g
    es = es[:12]
    res = min_orientation_diameter(n, es, check_bridges=False)
    assert (res.f_value is not None) == is_bridgeless_underlying(n, es)


@settings(max_examples=60, deadline=None)
@given(simple_graphs(min_n=2, max_n=8), st.lists(st.integers(0, 2 ** 20 - 1), min_size=1, max_size=40))
def test_batch_matches_single_bfs(g, raw):
    n, es = g
    m = len(es)
    masks = np.array([r % (1 << m) if m else 0 for r in raw], dtype=np.uint64)
    got = batch_diameters(n, es, masks)
    for mask, d in zip(masks.tolist(), got.tolist()):
        assert d == diameter_report(orientation_from_mask(n, es, mask)).diameter


def test_symmetry_reduction_is_sound():
    L = layout([2, 2, 3])
    es = edges(L)
    a = min_orientation_diameter(L.n, es, symmetry=True)
    b = min_orientation_diameter(L.n, es, symmetry=False)
    assert a.f_value == b.f_value == 3


def test_parallel_agrees():
    L = layout([2, 2, 4])
    es = edges(L)
    one = min_orientation_diameter(L.n, es, n_jobs=1)
    two = min_orientation_diameter(L.n, es, n_jobs=2)
    assert one.f_value == two.f_value == 3
    assert diameter_report(two.witness).diameter == 3


@settings(max_examples=25, deadline=None)
@given(st.lists(st.integers(1, 3), min_size=2, max_size=4).filter(lambda s: layout(s).n_edges <= 15))
def test_permuting_parts_keeps_f(sizes):
    base = f_bruteforce(sizes).f_value
    assert f_bruteforce(sorted(sizes, reverse=True)).f_value == base
    assert f_bruteforce(sizes[1:] + sizes[:1]).f_value == base


# -- backtracking -------------------------------------------------------------


@pytest.mark.parametrize("parts", [[1, 1, 1], [3, 3, 3]])
def test_backtracking_positive(parts):
    res = exists_diam2_backtracking(parts)
    assert res.exists is True
    assert diameter_report(res.witness).diameter <= 2
    assert is_complete_multipartite_orientation(res.witness, layout(parts))


SMALL = [[1, 1, 1], [1, 1, 1, 1], [1, 1, 1, 1, 1], [2, 2], [2, 3], [3, 3], [3, 4], [2, 2, 2], [2, 2, 3],
         [2, 2, 4], [2, 3, 3], [1, 1, 2], [1, 2, 2], [1, 1, 1, 2], [1, 2, 3], [1, 1, 4], [1, 1, 1, 1, 2]]


@pytest.mark.parametrize("parts", SMALL, ids=lambda s: "K" + "-".join(map(str, s)))
def test_backtracking_agrees_with_bruteforce(parts):
    assert exists_diam2_backtracking(parts).exists == (f_bruteforce(parts).f_value == 2)


def test_backtracking_limits():
    assert exists_diam2_backtracking([3, 4, 11], max_vertices=20, time_limit=0.05).exists is None
    with pytest.raises(ValueError):
        exists_diam2_backtracking([3, 4, 11])


# -- set systems --------------------------------------------------------------


def _naive_antichains(n):
    subsets = range(1 << n)
    count, best = 0, 0
    for fam in range(1 << (1 << n)):
        members = [s for s in subsets if (fam >> s) & 1]
        if all(a & b not in (a, b) for a, b in itertools.combinations(members, 2)):
            count += 1
            best = max(best, len(members))
    return count, best


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_sperner_matches_naive_enumeration(n):
    res = sperner_check(n)
    assert (res.n_antichains, res.max_size) == _naive_antichains(n)


@pytest.mark.parametrize("n, size, n_max", [(1, 1, 2), (2, 2, 1), (3, 3, 2), (4, 6, 1), (5, 10, 2)])
def test_sperner(n, size, n_max):
    res = sperner_check(n)
    assert res.max_size == size == math.comb(n, n // 2)
    assert len(res.maximum_antichains) == n_max
    assert res.all_maximum_uniform_middle


def test_sperner_n5_families():
    res = sperner_check(5)
    assert res.n_antichains == 7581
    layers = sorted({len(s) for s in fam}.pop() for fam in res.maximum_antichains)
    assert layers == [2, 3]


@pytest.mark.parametrize("n", [0, 6])
def test_sperner_range(n):
    with pytest.raises(ValueError):
        sperner_check(n)


# -- far pairs ----------------------------------------------------------------


def _nx_far_pair_everywhere(p, q):
    big = range(p, p + q)
    es = edges(layout([p, q]))
    for dirs in itertools.product((0, 1), repeat=len(es)):
        G = nx.DiGraph()
        G.add_nodes_from(range(p + q))
        G.add_edges_from((u, v) if d else (v, u) for (u, v), d in zip(es, dirs))
        dist = dict(nx.all_pairs_shortest_path_length(G, cutoff=3))
        if all(w in dist[z] for z in big for w in big):
            return False
    return True


@pytest.mark.parametrize("p, q, total", [(2, 3, 64), (3, 4, 4096)])
def test_far_pair(p, q, total):
    res = far_pair_check(p, q)
    assert res.holds and res.examined == total


def test_far_pair_networkx_oracle():
    assert _nx_far_pair_everywhere(2, 3)


@pytest.mark.parametrize("p, q", [(2, 2), (3, 3), (1, 3), (4, 3)])
def test_far_pair_preconditions(p, q):
    with pytest.raises(ValueError):
        far_pair_check(p, q)
