"""Graph sources, pair sweeps and their CSV / JSON reports."""

from __future__ import annotations

import csv
import io
import json
import statistics
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any

from .audit import audit_pair
from .corpus import all_graphs
from .families import expand_family_spec
from .graph import Graph, GraphError
from .io import parse_graph6, read_graph_file, write_graph6
from .solvers import BudgetExceeded, SolverBudget
from .trace import dump_trace

SUMMARY_SCHEMA_TAG = "romanviz.sweep-summary/1"
PAIR_RULES = ("all", "zipped", "self")

CSV_COLUMNS = [
    "g_id", "h_id", "g_order", "h_order", "g_graph6", "h_graph6",
    "gamma_g", "gamma_h", "gamma_product", "gamma_r_product",
    "vizing_product", "clark_suen_bound", "gap",
    "theorem2", "theorem1", "lemma1_product", "all_checks", "strict_improvement",
    "status", "failed_checks", "nodes_explored", "solve_seconds",
]


def resolve_source(token: str, seed: int | None = None) -> list[tuple[str, Graph]]:
    """Turn a source token into labelled graphs.

    Accepted forms: a family spec (``cycle:5``, ``path:2..6``,
    ``random:8,0.4,42``), ``atlas:K`` / ``connected:K`` for every
    (connected) graph on at most K vertices, ``g6:STRING``, and
    ``file:PATH`` (graph6 lines or an ``n m`` edge list).
    """
    kind, _, rest = token.partition(":")
    if kind in ("atlas", "connected"):
        try:
            k = int(rest)
        except ValueError:
            raise GraphError(f"bad order in {token!r}") from None
        return [
            (f"g6:{write_graph6(g)}", g) for g in all_graphs(k, connected=kind == "connected")
        ]
    if kind == "g6":
        return [(token, parse_graph6(rest))]
    if kind == "file":
        try:
            graphs = read_graph_file(rest)
        except OSError as exc:
            raise GraphError(f"cannot read {rest}: {exc}") from None
        return [(f"{rest}#{i}", g) for i, g in enumerate(graphs)]
    return expand_family_spec(token, seed)


def resolve_sources(tokens: list[str], seed: int | None = None) -> list[tuple[str, Graph]]:
    out = []
    for tok in tokens:
        out.extend(resolve_source(tok, seed))
    return out


def resolve_single(token: str, seed: int | None = None) -> tuple[str, Graph]:
    graphs = resolve_source(token, seed)
    if len(graphs) != 1:
        raise GraphError(f"{token!r} names {len(graphs)} graphs; exactly one is needed")
    return graphs[0]


@dataclass
class SweepConfig:
    sources: list[str]
    h_sources: list[str] | None = None
    pair_rule: str = "self"
    budget: SolverBudget = field(default_factory=SolverBudget)
    csv_path: str | None = None
    summary_path: str | None = None
    trace_dir: str | None = None
    jobs: int = 1
    rule: str = "smallest"
    seed: int | None = None
    omit_times: bool = False

    def __post_init__(self):
        if self.pair_rule not in PAIR_RULES:
            raise ValueError(f"pair rule must be one of {PAIR_RULES}, got {self.pair_rule!r}")
        if self.jobs < 1:
            raise ValueError("jobs must be >= 1")


def make_pairs(config: SweepConfig) -> list[tuple[tuple[str, Graph], tuple[str, Graph]]]:
    left = resolve_sources(config.sources, config.seed)
    right = resolve_sources(config.h_sources, config.seed) if config.h_sources else left
    if config.pair_rule == "self":
        return [(g, g) for g in left]
    if config.pair_rule == "zipped":
        if len(left) != len(right):
            raise ValueError(f"zipped sweep needs equal lengths, got {len(left)} and {len(right)}")
        return list(zip(left, right))
    return [(g, h) for g in left for h in right]


def _audit_item(args: tuple) -> dict[str, Any]:
    index, (g_id, g6), (h_id, h6), budget, rule, seed, trace_dir = args
    G, H = parse_graph6(g6), parse_graph6(h6)
    row: dict[str, Any] = {c: "" for c in CSV_COLUMNS}
    row.update(g_id=g_id, h_id=h_id, g_order=G.n, h_order=H.n, g_graph6=g6, h_graph6=h6)
    try:
        report, trace = audit_pair(G, H, budget, rule=rule, seed=seed, g_label=g_id, h_label=h_id)
    except (BudgetExceeded, GraphError) as exc:
        row.update(status="budget_exceeded", failed_checks=str(exc))
        return row
    if trace_dir:
        dump_trace(trace, Path(trace_dir) / f"trace_{index:05d}.json")
    row.update(
        gamma_g=report.gamma_g,
        gamma_h=report.gamma_h,
        gamma_product=report.gamma_product,
        gamma_r_product=report.gamma_r_product,
        vizing_product=report.vizing_product,
        clark_suen_bound=report.clark_suen_bound,
        gap=report.gap,
        theorem2=report.theorem2,
        theorem1=report.theorem1,
        lemma1_product=report.lemma1_product,
        all_checks=report.all_checks_pass,
        strict_improvement=report.strict_improvement,
        status="pass" if report.passed else "defect",
        failed_checks=";".join(report.failed_checks),
        nodes_explored=report.nodes_explored,
        solve_seconds=f"{report.solve_seconds:.6f}",
    )
    return row


def run_sweep(config: SweepConfig) -> tuple[list[dict[str, Any]], dict[str, Any]]:
    """Audit every pair; rows come back in work-item order whatever ``jobs`` is."""
    pairs = make_pairs(config)
    if config.trace_dir:
        Path(config.trace_dir).mkdir(parents=True, exist_ok=True)
    items = [
        (
            idx,
            (g_id, write_graph6(G)),
            (h_id, write_graph6(H)),
            config.budget,
            config.rule,
            config.seed,
            config.trace_dir,
        )
        for idx, ((g_id, G), (h_id, H)) in enumerate(pairs)
    ]
    if config.jobs == 1:
        rows = [_audit_item(it) for it in items]
    else:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            rows = list(pool.map(_audit_item, items, chunksize=4))
    if config.omit_times:
        for row in rows:
            row["solve_seconds"] = ""
    summary = summarize(rows, config)
    if config.csv_path:
        Path(config.csv_path).write_text(rows_to_csv(rows))
    if config.summary_path:
        Path(config.summary_path).write_text(json.dumps(summary, indent=1, sort_keys=True) + "\n")
    return rows, summary


def rows_to_csv(rows: list[dict[str, Any]]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def summarize(rows: list[dict[str, Any]], config: SweepConfig | None = None) -> dict[str, Any]:
    done = [r for r in rows if r["status"] in ("pass", "defect")]
    gaps = [r["gap"] for r in done]
    return {
        "schema": SUMMARY_SCHEMA_TAG,
        "pair_rule": config.pair_rule if config else None,
        "tie_rule": config.rule if config else None,
        "budget": asdict(config.budget) if config else None,
        "pairs": len(rows),
        "completed": len(done),
        "budget_exceeded": sum(r["status"] == "budget_exceeded" for r in rows),
        "defects": [f"{r['g_id']} x {r['h_id']}" for r in rows if r["status"] == "defect"],
        "gap_min": min(gaps) if gaps else None,
        "gap_median": statistics.median(gaps) if gaps else None,
        "tight": sum(g == 0 for g in gaps),
        "strict_improvement": sum(bool(r["strict_improvement"]) for r in done),
    }
