"""Acceptance gate: one test per criterion, one PASS/FAIL line each.

The lines are collected in ``LINES`` and printed in the pytest terminal
summary (see ``conftest.py``); running this file directly prints them too.
Tolerances are fixed here and not tuned.
"""
import math
import os
import random
import time

import pytest

from orientdiam.constructions import bipartite_lambda_orientation, construct_diameter2
from orientdiam.digraph import Digraph, diam_between, diameter_report
from orientdiam.multipartite import is_complete_multipartite_orientation, layout
from orientdiam.search import exists_diam2_backtracking, f_bruteforce, far_pair_check, sperner_check
from orientdiam.structure import IMPOSSIBLE, analyze, case_bound, verify_increment_monotonicity, verify_inequality_chains
from orientdiam.thresholds import f_formula, threshold_3pq

LINES: list[str] = []

SWEEP_BUDGET_S = 120.0
ORACLE_BUDGET_S = 60.0
BACKTRACK_BUDGET_S = 600.0
FAR_PAIR_BUDGET_S = 1.0
SPERNER_BUDGET_S = 10.0
STRETCH_LIMIT_S = float(os.environ.get("ORIENT_STRETCH_SECONDS", "300"))


def record(n, ok: bool, detail: str):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {n}: {detail}"
    LINES.append(line)
    print(line)
    assert ok, line


def test_criterion_1_construction_sweep():
    t0 = time.perf_counter()
    total, bad = 0, []
    for p in range(5, 11):
        for q in range(p, threshold_3pq(p)):
            plan, D = construct_diameter2(p, q)
            total += 1
            if not is_complete_multipartite_orientation(D, layout(plan.parts)) or diameter_report(D).diameter != 2:
                bad.append((p, q))
    dt = time.perf_counter() - t0
    expected = sum(threshold_3pq(p) - p for p in range(5, 11))
    ok = not bad and total == expected and dt < SWEEP_BUDGET_S
    record(1, ok, f"{total - len(bad)}/{expected} K(3,p,q) instances p=5..10 have diameter exactly 2 ({dt:.1f}s)")


def test_criterion_2_window_orientation_claims():
    cases, bad = 0, []
    for p in range(4, 10):
        for lam in range(2, p - 1):
            for q in sorted({p, math.comb(p, lam)}):
                D = bipartite_lambda_orientation(p, q, lam, verify=False)
                W1, W2 = range(p), range(p, p + q)
                cases += 1
                if diam_between(D, W1, W1) > 2 or diam_between(D, W2, W2) > 2 or diameter_report(D).diameter != 3:
                    bad.append((p, q, lam))
    record(2, not bad, f"{cases - len(bad)}/{cases} window orientations: both sides within distance 2, diameter 3")


ORACLE_SET = [[1, 1, 1], [1, 1, 1, 1], [1, 1, 1, 1, 1], [2, 2], [2, 3], [3, 3], [3, 4], [2, 2, 2], [2, 2, 3],
              [2, 2, 4], [2, 3, 3], [1, 1, 2], [1, 2, 2]]


def test_criterion_3_oracle_formula_agreement():
    t0 = time.perf_counter()
    bad, unknown = [], []
    for parts in ORACLE_SET:
        f = f_bruteforce(parts).f_value
        verdict = f_formula(parts)
        if verdict.status == "unknown":
            unknown.append(f"K{tuple(parts)}={f}")
        if not verdict.admits(f):
            bad.append((parts, f, verdict.f))
    dt = time.perf_counter() - t0
    ok = not bad and dt < ORACLE_BUDGET_S
    record(3, ok, f"brute force agrees with formulas on {len(ORACLE_SET) - len(bad)}/{len(ORACLE_SET)} graphs "
                  f"({dt:.1f}s; unclassified, within the 2..3 bound: {', '.join(unknown)})")


def test_criterion_4_k333_backtracking():
    res = exists_diam2_backtracking([3, 3, 3], time_limit=BACKTRACK_BUDGET_S)
    ok = res.exists is True and diameter_report(res.witness).diameter == 2
    record(4, ok, f"K(3,3,3) has a diameter-two orientation: {res.exists} ({res.nodes} nodes, {res.elapsed:.2f}s)")


def test_criterion_5_far_pairs():
    t0 = time.perf_counter()
    a, b = far_pair_check(2, 3), far_pair_check(3, 4)
    dt = time.perf_counter() - t0
    ok = a.holds and b.holds and a.examined == 64 and b.examined == 4096 and dt < FAR_PAIR_BUDGET_S
    record(5, ok, f"far pair in all {a.examined} orientations of K(2,3) and all {b.examined} of K(3,4) ({dt:.2f}s)")


def test_criterion_6_sperner():
    t0 = time.perf_counter()
    results = [sperner_check(n) for n in range(1, 6)]
    dt = time.perf_counter() - t0
    sizes = [r.max_size for r in results]
    ok = sizes == [1, 2, 3, 6, 10] and all(r.all_maximum_uniform_middle for r in results) and dt < SPERNER_BUDGET_S
    record(6, ok, f"maximum antichains {sizes}, all uniform middle layers; {results[-1].n_antichains} antichains at n=5 ({dt:.2f}s)")


def test_criterion_7_inequality_chains():
    a = verify_inequality_chains(5, 64)
    b = verify_inequality_chains(4, 64)
    c = verify_increment_monotonicity(64)
    ok = a[0] and b[0] and c[0]
    record(7, ok, f"inequality chains hold over p=5..64 and p=4..64, increments monotone to 64 ({a[1] or b[1] or c[1] or 'no failure'})")


def test_criterion_8_structure_soundness():
    rng = random.Random(20240531)
    flips, certified, false_cert = 200, 0, 0
    for _ in range(flips):
        q = rng.randint(5, 19)
        plan, D = construct_diameter2(5, q)
        x, v = rng.randrange(3), rng.randrange(3, D.n)
        a = D.arcs.copy()
        a[x, v], a[v, x] = a[v, x], a[x, v]
        E = Digraph(a)
        rep = analyze(E, layout(plan.parts))
        if rep.certified_not_diameter_two:
            certified += 1
            if diameter_report(E).diameter <= 2:
                false_cert += 1
    record(8, false_cert == 0, f"{certified}/{flips} flipped orientations flagged by the class predicates, {false_cert} with diameter 2")


def test_criterion_9_substitute_and_stretch():
    bounds = {h: case_bound(5, h) for h in range(1, 8)}
    a = all(isinstance(bounds[h], int) and bounds[h] <= 19 for h in range(2, 7))
    a = a and bounds[1] is IMPOSSIBLE and bounds[7] is IMPOSSIBLE
    b = verify_inequality_chains(5, 64)[0]
    c = all(f_formula(s).admits(f_bruteforce(s).f_value) for s in ORACLE_SET)
    res = exists_diam2_backtracking([3, 3, 7], max_vertices=13, time_limit=STRETCH_LIMIT_S)
    stretch = {True: "CONTRADICTS the formula", False: "false, as the formula says", None: "not finished"}[res.exists]
    LINES.append(f"[INFO] criterion 9 stretch (not gating): K(3,3,7) diameter-two search {stretch} "
                 f"({res.nodes} nodes, {res.elapsed:.1f}s)")
    ok = a and b and c and res.exists is not True
    shown = {h: ("IMPOSSIBLE" if v is IMPOSSIBLE else v) for h, v in bounds.items()}
    record(9, ok, f"case_bound(5, h) = {shown}; chains and oracle agreement hold")


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
