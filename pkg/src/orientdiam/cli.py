"""Command-line interface.

Every command prints one JSON report (``"schema": 1``) on stdout and a short
human summary on stderr (suppressed by ``--json``).

Exit codes: 0 all verdicts pass, 2 usage error, 3 parameters out of range,
4 a verification failed, 5 unreadable or inconsistent input.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Optional, Sequence

from . import constructions as cons
from .digraph import diameter_report
from .formats import EdgeListError, read_edge_list, write_dot, write_edge_list
from .multipartite import edges as multipartite_edges
from .multipartite import layout
from .search import exists_diam2_backtracking, f_bruteforce, far_pair_check, sperner_check
from .structure import IMPOSSIBLE, analyze, case_bound, case_min_p, respects_case_bound, verify_inequality_chains
from .thresholds import central_binom, f_formula, threshold_3pq

EXIT_OK, EXIT_USAGE, EXIT_RANGE, EXIT_FAIL, EXIT_INPUT = 0, 2, 3, 4, 5
SCHEMA = 1
SWEEP_P_RANGE = (5, 12)


class CommandError(Exception):
    def __init__(self, code: int, message: str, citation: str = ""):
        super().__init__(message)
        self.code = code
        self.citation = citation


def _threads(args) -> int:
    env = os.environ.get("ORIENT_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise CommandError(EXIT_USAGE, f"ORIENT_THREADS must be an integer, got {env!r}") from None
    return max(1, args.threads)


def _parts(text: str) -> list[int]:
    try:
        parts = [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"part sizes must be comma-separated integers, got {text!r}") from None
    if not parts or any(s < 1 for s in parts):
        raise argparse.ArgumentTypeError(f"part sizes must be positive, got {text!r}")
    return parts


def _split(text: str) -> tuple[int, int]:
    try:
        q1, q2 = (int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"--q-split expects Q1,Q2, got {text!r}") from None
    return q1, q2


def _bound_json(b):
    return "impossible" if b is IMPOSSIBLE else b


# -- commands -----------------------------------------------------------------


def cmd_construct(args) -> tuple[dict, bool, str]:
    p, q = args.p, args.q
    try:
        kind = cons.Kind(args.kind) if args.kind else cons.choose_kind(p, q)
        plan, D = cons.build(kind, p, q, q_split=args.q_split, verify=False)
    except cons.ConstructionError as exc:
        raise CommandError(EXIT_RANGE, str(exc), exc.citation) from None
    rep = diameter_report(D)
    artifacts = {}
    if args.edges:
        write_edge_list(D, args.edges)
        artifacts["edges"] = args.edges
    if args.dot:
        write_dot(D, args.dot, parts=plan.parts)
        artifacts["dot"] = args.dot
    ok = rep.diameter == 2
    body = {"plan": plan.to_dict(), "diameter": rep.to_dict(), "artifacts": artifacts}
    summary = f"K(3,{p},{q}) via {plan.kind.value}: diameter {rep.to_dict()['diameter']}"
    return body, ok, summary


def _load(path: str, parts: Optional[list[int]]):
    try:
        D = read_edge_list(path)
    except (OSError, EdgeListError) as exc:
        raise CommandError(EXIT_INPUT, str(exc)) from None
    if parts is None:
        return D, None
    L = layout(parts)
    if L.n != D.n:
        raise CommandError(EXIT_INPUT, f"parts {parts} have {L.n} vertices but the file has {D.n}")
    want = set(multipartite_edges(L))
    have = set(D.underlying_edges())
    if want != have:
        missing, extra = sorted(want - have), sorted(have - want)
        raise CommandError(
            EXIT_INPUT,
            f"edge set is not K{tuple(parts)}: {len(missing)} missing pairs {missing[:10]}, "
            f"{len(extra)} extra pairs {extra[:10]}",
        )
    return D, L


def _is_3pq(parts: Optional[list[int]]) -> bool:
    return parts is not None and len(parts) == 3 and parts[0] == 3


def _structure_body(D, L, parts) -> dict:
    rep = analyze(D, L)
    p, q = parts[1], parts[2]
    h = rep.H.h
    body = {"structure": rep.to_dict(), "h": h}
    if p >= case_min_p(h):
        b = case_bound(p, h)
        body["case_bound"] = _bound_json(b)
        body["respects_case_bound"] = respects_case_bound(p, q, h)
    else:
        body["case_bound"] = None
        body["respects_case_bound"] = None
    return body


def cmd_verify(args) -> tuple[dict, bool, str]:
    D, L = _load(args.input, args.parts)
    rep = diameter_report(D)
    body = {"diameter": rep.to_dict()}
    ok = rep.strong and rep.diameter <= args.max_diameter
    if _is_3pq(args.parts):
        body.update(_structure_body(D, L, args.parts))
        # a diameter-two orientation can never violate the class predicates
        consistent = not (rep.diameter <= 2 and body["structure"]["violations"])
        body["structure_consistent"] = consistent
        ok = ok and consistent
    d = rep.to_dict()["diameter"]
    return body, ok, f"{args.input}: strong={rep.strong} diameter={d}"


def cmd_analyze(args) -> tuple[dict, bool, str]:
    if not _is_3pq(args.parts):
        raise CommandError(EXIT_RANGE, f"analyze needs parts 3,p,q; got {args.parts}")
    D, L = _load(args.input, args.parts)
    body = _structure_body(D, L, args.parts)
    n_v = len(body["structure"]["violations"])
    return body, True, f"{args.input}: h={body['h']}, {n_v} violations"


def _sweep_cell(pq: tuple[int, int]) -> dict:
    p, q = pq
    try:
        plan, D = cons.build(cons.choose_kind(p, q), p, q, verify=False)
    except Exception as exc:  # reported per cell, never fatal
        return {"p": p, "q": q, "kind": None, "diameter": None, "error": str(exc)}
    d = diameter_report(D).to_dict()["diameter"]
    return {"p": p, "q": q, "kind": plan.kind.value, "diameter": d, "error": None}


def cmd_sweep(args) -> tuple[dict, bool, str]:
    lo, hi = SWEEP_P_RANGE
    if not lo <= args.p_min <= args.p_max <= hi:
        raise CommandError(EXIT_RANGE, f"sweep needs {lo} <= p_min <= p_max <= {hi}, got {args.p_min}..{args.p_max}")
    cells = [(p, q) for p in range(args.p_min, args.p_max + 1) for q in range(p, threshold_3pq(p))]
    threads = _threads(args)
    if threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(_sweep_cell, cells, chunksize=8))
    else:
        results = [_sweep_cell(c) for c in cells]
    failures = [r for r in results if r["diameter"] != 2]
    per_p = {}
    for r in results:
        d = per_p.setdefault(str(r["p"]), {"instances": 0, "passed": 0, "kinds": {}})
        d["instances"] += 1
        d["passed"] += r["diameter"] == 2
        if r["kind"]:
            d["kinds"][r["kind"]] = d["kinds"].get(r["kind"], 0) + 1
    body = {"instances": len(results), "passed": len(results) - len(failures), "per_p": per_p, "failures": failures}
    return body, not failures, f"sweep p={args.p_min}..{args.p_max}: {body['passed']}/{len(results)} diameter 2"


def cmd_threshold(args) -> tuple[dict, bool, str]:
    p = args.p
    try:
        t = threshold_3pq(p)
    except ValueError as exc:
        raise CommandError(EXIT_RANGE, str(exc)) from None
    bounds = {str(h): _bound_json(case_bound(p, h)) for h in range(1, 9) if p >= case_min_p(h)}
    body = {"p": p, "threshold": t, "largest_diameter_two_q": t - 1, "case_bounds": bounds}
    return body, True, f"f(K(3,{p},q)) = 2 for {p} <= q <= {t - 1}, 3 from q = {t}"


def cmd_oracle(args) -> tuple[dict, bool, str]:
    which = args.oracle
    if which == "f":
        formula = f_formula(args.parts)
        try:
            res = f_bruteforce(args.parts, n_jobs=_threads(args))
        except ValueError as exc:
            raise CommandError(EXIT_RANGE, str(exc)) from None
        ok = formula.admits(res.f_value)
        body = {"search": res.to_dict(), "formula": formula.to_dict(), "agree": ok}
        return body, ok, f"f(K{tuple(args.parts)}) = {res.f_value}; formula {formula.f} ({formula.status})"
    if which == "diam2":
        try:
            res = exists_diam2_backtracking(args.parts, max_vertices=args.max_vertices, time_limit=args.time_limit)
        except ValueError as exc:
            raise CommandError(EXIT_RANGE, str(exc)) from None
        formula = f_formula(args.parts)
        expected = None if formula.status != "exact" else formula.f == 2
        ok = res.exists is not None and (expected is None or res.exists == expected)
        body = {"search": res.to_dict(), "formula": formula.to_dict(), "expected": expected}
        return body, ok, f"diameter-two orientation of K{tuple(args.parts)}: {res.exists}"
    if which == "sperner":
        try:
            res = sperner_check(args.n)
        except ValueError as exc:
            raise CommandError(EXIT_RANGE, str(exc)) from None
        ok = res.max_size == central_binom(args.n) and res.all_maximum_uniform_middle
        return res.to_dict(), ok, f"n={args.n}: max antichain {res.max_size}, {len(res.maximum_antichains)} maximum"
    if which == "far-pair":
        try:
            res = far_pair_check(args.p, args.q)
        except ValueError as exc:
            raise CommandError(EXIT_RANGE, str(exc)) from None
        return res.to_dict(), res.holds, f"K({args.p},{args.q}): far pair in all {res.examined} orientations: {res.holds}"
    if which == "chains":
        if args.p_min < 4 or args.p_max < args.p_min:
            raise CommandError(EXIT_RANGE, f"chains need 4 <= p_min <= p_max, got {args.p_min}..{args.p_max}")
        ok, bad = verify_inequality_chains(args.p_min, args.p_max)
        body = {"holds": ok, "first_failure": {"p": bad[0], "inequality": bad[1]} if bad else None}
        return body, ok, f"chains over p={args.p_min}..{args.p_max}: {'hold' if ok else bad[1]}"
    raise CommandError(EXIT_USAGE, f"unknown oracle {which!r}")


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="orientdiam", description=__doc__.split("\n")[0])
    ap.add_argument("--json", action="store_true", help="JSON report only; no summary on stderr")
    ap.add_argument("--threads", type=int, default=1, help="worker processes (ORIENT_THREADS overrides)")
    # same flags after the subcommand; SUPPRESS keeps them from resetting values given before it
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help=argparse.SUPPRESS)
    common.add_argument("--threads", type=int, default=argparse.SUPPRESS, help=argparse.SUPPRESS)
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", parents=[common], help="build and BFS-check a diameter-two K(3,p,q) orientation")
    c.add_argument("p", type=int)
    c.add_argument("q", type=int)
    tri = [k.value for k in cons.Kind if k is not cons.Kind.BIPARTITE_LAMBDA]
    c.add_argument("--kind", choices=tri, help="force a construction instead of dispatching")
    c.add_argument("--q-split", type=_split, metavar="Q1,Q2", help="split of the third part (odd/even kinds)")
    c.add_argument("--edges", metavar="PATH", help="write the orientation as an edge list")
    c.add_argument("--dot", metavar="PATH", help="write the orientation as Graphviz DOT")
    c.set_defaults(func=cmd_construct)

    v = sub.add_parser("verify", parents=[common], help="diameter and structure of an edge-list orientation")
    v.add_argument("input", metavar="PATH")
    v.add_argument("--parts", type=_parts, metavar="P1,P2,...", help="check the file orients K(parts)")
    v.add_argument("--max-diameter", type=int, default=2, help="pass iff strong with diameter <= this (default 2)")
    v.set_defaults(func=cmd_verify)

    a = sub.add_parser("analyze", parents=[common], help="class decomposition of a K(3,p,q) orientation")
    a.add_argument("input", metavar="PATH")
    a.add_argument("--parts", type=_parts, required=True, metavar="3,P,Q")
    a.set_defaults(func=cmd_analyze)

    s = sub.add_parser("sweep", parents=[common], help="construct and check every q below the threshold")
    s.add_argument("p_min", type=int)
    s.add_argument("p_max", type=int)
    s.set_defaults(func=cmd_sweep)

    t = sub.add_parser("threshold", parents=[common], help="diameter-two range of K(3,p,q) and case bounds")
    t.add_argument("p", type=int)
    t.set_defaults(func=cmd_threshold)

    o = sub.add_parser("oracle", parents=[common], help="brute-force ground truth")
    osub = o.add_subparsers(dest="oracle", required=True)
    of = osub.add_parser("f", parents=[common], help="exact f(K(parts)) by full enumeration")
    of.add_argument("parts", type=int, nargs="+")
    od = osub.add_parser("diam2", parents=[common], help="diameter-two existence by backtracking")
    od.add_argument("parts", type=int, nargs="+")
    od.add_argument("--time-limit", type=float, default=None, metavar="SECONDS")
    od.add_argument("--max-vertices", type=int, default=16)
    osp = osub.add_parser("sperner", parents=[common], help="maximum antichains of an n-set, n <= 5")
    osp.add_argument("n", type=int)
    ofp = osub.add_parser("far-pair", parents=[common], help="far pair in every orientation of K(p,q)")
    ofp.add_argument("p", type=int)
    ofp.add_argument("q", type=int)
    oc = osub.add_parser("chains", parents=[common], help="bound inequalities over a p range")
    oc.add_argument("p_min", type=int)
    oc.add_argument("p_max", type=int)
    o.set_defaults(func=cmd_oracle)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) and EXIT_USAGE
    t0 = time.perf_counter()
    report = {"schema": SCHEMA, "command": ["orientdiam"] + argv, "parameters": {
        k: v for k, v in vars(args).items() if k not in ("func", "json", "command", "oracle")
    }}
    try:
        body, ok, summary = args.func(args)
        code = EXIT_OK if ok else EXIT_FAIL
        report.update(ok=ok, result=body)
    except CommandError as exc:
        code, ok = exc.code, False
        summary = f"error: {exc}"
        report.update(ok=False, error={"message": str(exc), "citation": exc.citation or None, "exit_code": code})
    except cons.ConstructionFault as exc:
        code, ok, summary = EXIT_FAIL, False, f"verification failed: {exc}"
        report.update(ok=False, error={"message": str(exc), "citation": None, "exit_code": code})
    report["timings"] = {"total_s": round(time.perf_counter() - t0, 4)}
    json.dump(report, sys.stdout, default=list)
    sys.stdout.write("\n")
    if not args.json:
        print(summary, file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
