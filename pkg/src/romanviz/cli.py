"""Command-line entry point: ``romanviz compute|audit|sweep|oracle-diff|verify-trace``.

Exit codes: 0 all pass, 1 usage or parse error, 2 budget exceeded,
3 defect (a false mathematical verdict or solver/oracle mismatch).
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from .audit import TIE_RULES, audit_pair
from .corpus import ATLAS_MAX_ORDER, all_graphs, random_corpus
from .graph import GraphError
from .io import write_graph6
from .report import PAIR_RULES, SweepConfig, resolve_single, resolve_sources, run_sweep
from .solvers import (
    BudgetExceeded,
    PreconditionError,
    SolverBudget,
    brute_force_gamma,
    brute_force_gamma_roman,
    gamma_exact,
    gamma_roman_exact,
)
from .trace import TraceFormatError, dump_trace, load_trace, verify_trace

EXIT_OK, EXIT_USAGE, EXIT_BUDGET, EXIT_DEFECT = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _budget(args) -> SolverBudget:
    env = SolverBudget.from_env()
    return SolverBudget(
        max_nodes=args.max_nodes if args.max_nodes is not None else env.max_nodes,
        max_order=args.max_order if args.max_order is not None else env.max_order,
    )


def _fmt_pairs(vs, hn: int) -> str:
    return " ".join(f"({x // hn},{x % hn})" for x in vs)


def cmd_compute(args) -> int:
    if args.family:
        label, G = resolve_single(args.family, args.seed)
    elif args.graph6:
        label, G = resolve_single(f"g6:{args.graph6}")
    else:
        label, G = resolve_single(f"file:{args.file}")
    budget = _budget(args)
    out = {"graph": label, "n": G.n, "m": G.m}
    if args.which in ("gamma", "both"):
        r = gamma_exact(G, budget)
        out["gamma"] = r.value
        if args.witness:
            out["gamma_witness"] = r.witness.tolist()
    if args.which in ("gamma_r", "both"):
        r = gamma_roman_exact(G, budget)
        out["gamma_r"] = r.value
        if args.witness:
            out["gamma_r_witness"] = {
                "v0": r.witness.v0.tolist(), "v1": r.witness.v1.tolist(), "v2": r.witness.v2.tolist()
            }
    if args.json:
        print(json.dumps(out, sort_keys=True))
    else:
        if "gamma" in out:
            print(f"gamma = {out['gamma']}")
        if "gamma_r" in out:
            print(f"gamma_R = {out['gamma_r']}")
        if args.witness:
            if "gamma_witness" in out:
                print(f"dominating set: {out['gamma_witness']}")
            if "gamma_r_witness" in out:
                w = out["gamma_r_witness"]
                print(f"RDF: V0={w['v0']} V1={w['v1']} V2={w['v2']}")
    return EXIT_OK


def cmd_audit(args) -> int:
    g_label, G = resolve_single(args.g, args.seed)
    h_label, H = resolve_single(args.h, args.seed)
    report, trace = audit_pair(
        G, H, _budget(args), rule=args.rule, seed=args.seed, g_label=g_label, h_label=h_label
    )
    if args.trace_out:
        dump_trace(trace, args.trace_out)
    vv = report.vizing_product
    status = "PASS" if report.passed else "FAIL"
    print(f"G = {g_label} (n={G.n}, gamma={report.gamma_g})")
    print(f"H = {h_label} (n={H.n}, gamma={report.gamma_h})")
    print(f"gamma(GxH) = {report.gamma_product}, gamma_R(GxH) = {report.gamma_r_product}")
    print(f"theorem2: {vv} <= {report.gamma_r_product} {'PASS' if report.theorem2 else 'FAIL'}")
    print(f"theorem1: {vv} <= {report.clark_suen_bound} {'PASS' if report.theorem1 else 'FAIL'}")
    print(f"N = {trace.N}: {vv - len(trace.f.v1) - len(trace.f.v2)} <= N <= {len(trace.f.v2)}")
    if args.witness:
        print(f"V2 = {_fmt_pairs(trace.f.v2, H.n)}")
        print(f"V1 = {_fmt_pairs(trace.f.v1, H.n)}")
    for name, ok in trace.checks.items():
        if not ok:
            print(f"check FAILED: {name}")
    print(f"{status}: {vv} <= {report.gamma_r_product}, gap {report.gap}, "
          f"{sum(trace.checks.values())}/{len(trace.checks)} checks")
    return EXIT_OK if report.passed else EXIT_DEFECT


def cmd_sweep(args) -> int:
    config = SweepConfig(
        sources=args.source,
        h_sources=args.h_source,
        pair_rule=args.pairs,
        budget=_budget(args),
        csv_path=args.csv,
        summary_path=args.summary,
        trace_dir=args.trace_dir,
        jobs=args.jobs,
        rule=args.rule,
        seed=args.seed,
        omit_times=args.omit_times,
    )
    rows, summary = run_sweep(config)
    if not args.csv:
        for row in rows:
            print(f"{row['g_id']} x {row['h_id']}: {row['vizing_product']} <= "
                  f"{row['gamma_r_product']} {row['status'].upper()}")
    print(json.dumps(summary, sort_keys=True))
    if summary["defects"]:
        return EXIT_DEFECT
    if summary["budget_exceeded"]:
        return EXIT_BUDGET
    return EXIT_OK


def cmd_oracle_diff(args) -> int:
    if args.order_cap > ATLAS_MAX_ORDER:
        raise GraphError(f"--order-cap is at most {ATLAS_MAX_ORDER} (graph atlas)")
    graphs = [(f"g6:{write_graph6(g)}", g) for g in all_graphs(args.order_cap)] if args.order_cap else []
    if args.random:
        if args.seed is None:
            raise GraphError("--random needs --seed")
        graphs += [
            (f"g6:{write_graph6(g)}", g)
            for g in random_corpus(args.random, args.random_min, args.random_max, args.seed)
        ]
    graphs += resolve_sources(args.source or [], args.seed)
    budget = _budget(args)
    mismatches = 0
    for label, G in graphs:
        if G.n > 12:
            raise GraphError(f"{label}: order {G.n} above the gamma_R oracle limit 12")
        g_bb, r_bb = gamma_exact(G, budget).value, gamma_roman_exact(G, budget).value
        g_bf, r_bf = brute_force_gamma(G), brute_force_gamma_roman(G)
        if (g_bb, r_bb) != (g_bf, r_bf):
            mismatches += 1
            print(f"MISMATCH {write_graph6(G)}: solver ({g_bb}, {r_bb}) oracle ({g_bf}, {r_bf})")
        elif args.verbose:
            print(f"match {label}: ({g_bb}, {r_bb})")
    print(f"{len(graphs)} graphs, {mismatches} mismatches")
    return EXIT_DEFECT if mismatches else EXIT_OK


def cmd_verify_trace(args) -> int:
    trace = load_trace(args.path)
    result = verify_trace(trace, resolve=args.resolve, budget=_budget(args))
    for name, ok in result.checks.items():
        print(f"{'PASS' if ok else 'FAIL'} {name}")
    for name in result.flag_mismatches:
        print(f"FAIL recorded flag differs: {name}")
    for name, ok in result.resolved.items():
        print(f"{'PASS' if ok else 'FAIL'} re-solve {name}")
    print("PASS" if result.ok else "FAIL")
    return EXIT_OK if result.ok else EXIT_DEFECT


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="romanviz", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p):
        p.add_argument("--max-nodes", type=int, default=None,
                       help="search node cap (default: $ROMANVIZ_MAX_NODES or 10^7)")
        p.add_argument("--max-order", type=int, default=None,
                       help="largest graph order accepted (default: $ROMANVIZ_MAX_ORDER or 4096)")
        p.add_argument("--seed", type=int, default=None, help="seed for random families")

    p = sub.add_parser("compute", help="exact gamma / gamma_R of one graph")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--family", help="family spec, e.g. cycle:5")
    src.add_argument("--graph6", help="graph6 string")
    src.add_argument("--file", help="graph6 or 'n m' edge-list file")
    p.add_argument("--which", choices=("gamma", "gamma_r", "both"), default="both")
    p.add_argument("--witness", action="store_true")
    p.add_argument("--json", action="store_true")
    common(p)
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("audit", help="check the product inequality on one pair with a proof trace")
    p.add_argument("--g", required=True, help="source for G (family spec, g6:..., file:...)")
    p.add_argument("--h", required=True, help="source for H")
    p.add_argument("--trace-out", help="write the proof trace JSON here")
    p.add_argument("--rule", choices=TIE_RULES, default="smallest")
    p.add_argument("--witness", action="store_true")
    common(p)
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("sweep", help="audit many pairs, write CSV rows and a JSON summary")
    p.add_argument("--source", action="append", required=True,
                   help="graph source; repeatable (path:2..6, connected:4, random:8,0.4,42, file:...)")
    p.add_argument("--h-source", action="append", help="sources for H (default: same as --source)")
    p.add_argument("--pairs", choices=PAIR_RULES, default="self")
    p.add_argument("--csv")
    p.add_argument("--summary")
    p.add_argument("--trace-dir")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--rule", choices=TIE_RULES, default="smallest")
    p.add_argument("--omit-times", action="store_true",
                   help="blank the solve_seconds column for byte-reproducible output")
    common(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("oracle-diff", help="compare branch-and-bound against brute force")
    p.add_argument("--order-cap", type=int, default=6,
                   help="include every graph up to this order (<= 7; 0 disables)")
    p.add_argument("--random", type=int, default=0, help="number of extra random graphs")
    p.add_argument("--random-min", type=int, default=7)
    p.add_argument("--random-max", type=int, default=12)
    p.add_argument("--source", action="append", help="extra graph sources")
    p.add_argument("--max-nodes", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=cmd_oracle_diff, max_order=None)

    p = sub.add_parser("verify-trace", help="re-check a proof trace from its recorded sets")
    p.add_argument("path")
    p.add_argument("--resolve", action="store_true", help="also re-solve the recorded optimal values")
    common(p)
    p.set_defaults(func=cmd_verify_trace)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (GraphError, TraceFormatError, PreconditionError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
