"""JSON form of :class:`~romanviz.audit.ProofTrace` and standalone re-verification.

Vertex sets are sorted integer arrays; product vertices are ``[u, v]``
coordinate pairs; pairs of C are ``[i, v]`` with 1-based block index ``i``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import jsonschema

from .audit import (
    BlockRecord,
    ColumnRecord,
    DominatorPartition,
    ProofTrace,
    derive_checks,
)
from .graph import GraphError, VertexSet, cartesian_product, induced_subgraph
from .io import parse_graph6, write_graph6
from .solvers import RomanFunction, SolverBudget, gamma_exact, gamma_roman_exact

SCHEMA_TAG = "romanviz.proof-trace/1"

_int_list = {"type": "array", "items": {"type": "integer", "minimum": 0}}
_pair = {
    "type": "array",
    "items": {"type": "integer", "minimum": 0},
    "minItems": 2,
    "maxItems": 2,
}
_pair_list = {"type": "array", "items": _pair}
_graph = {
    "type": "object",
    "required": ["n", "graph6"],
    "properties": {"n": {"type": "integer", "minimum": 1}, "graph6": {"type": "string"}},
}

TRACE_SCHEMA: dict[str, Any] = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": [
        "schema", "g", "h", "gamma_g", "gamma_h", "gamma_product", "gamma_r_product",
        "gamma_set_h", "gamma_set_product", "f", "partition", "per_block", "per_column",
        "C", "N", "lemma2_subgraph_gamma", "checks",
    ],
    "properties": {
        "schema": {"const": SCHEMA_TAG},
        "g": _graph,
        "h": _graph,
        "gamma_g": {"type": "integer", "minimum": 0},
        "gamma_h": {"type": "integer", "minimum": 0},
        "gamma_product": {"type": "integer", "minimum": 0},
        "gamma_r_product": {"type": "integer", "minimum": 0},
        "gamma_set_h": _int_list,
        "gamma_set_product": _pair_list,
        "f": {
            "type": "object",
            "required": ["v0", "v1", "v2"],
            "properties": {"v0": _pair_list, "v1": _pair_list, "v2": _pair_list},
        },
        "partition": {
            "type": "object",
            "required": ["representatives", "blocks", "rule"],
            "properties": {
                "representatives": _int_list,
                "blocks": {"type": "array", "items": _int_list},
                "rule": {"type": "string"},
            },
        },
        "per_block": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["i", "D", "P", "U", "undominated_count", "L_size"],
                "properties": {
                    "i": {"type": "integer", "minimum": 1},
                    "D": _pair_list,
                    "P": _int_list,
                    "U": _int_list,
                    "undominated_count": {"type": "integer", "minimum": 0},
                    "L_size": {"type": "integer", "minimum": 0},
                },
            },
        },
        "per_column": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["v", "Q", "R_size"],
                "properties": {
                    "v": {"type": "integer", "minimum": 0},
                    "Q": _int_list,
                    "R_size": {"type": "integer", "minimum": 0},
                },
            },
        },
        "C": _pair_list,
        "N": {"type": "integer", "minimum": 0},
        "lemma2_subgraph_gamma": {"type": "integer", "minimum": 0},
        "checks": {"type": "object", "additionalProperties": {"type": "boolean"}},
    },
}


class TraceFormatError(ValueError):
    """Trace JSON does not match the schema or is internally inconsistent."""


def trace_to_dict(trace: ProofTrace) -> dict[str, Any]:
    hn = trace.H.n

    def pairs(vs: VertexSet) -> list[list[int]]:
        return [list(divmod(x, hn)) for x in vs]

    return {
        "schema": SCHEMA_TAG,
        "g": {"n": trace.G.n, "graph6": write_graph6(trace.G)},
        "h": {"n": trace.H.n, "graph6": write_graph6(trace.H)},
        "gamma_g": trace.gamma_g,
        "gamma_h": trace.gamma_h,
        "gamma_product": trace.gamma_product,
        "gamma_r_product": trace.gamma_r_product,
        "gamma_set_h": trace.gamma_set_h.tolist(),
        "gamma_set_product": pairs(trace.gamma_set_product),
        "f": {"v0": pairs(trace.f.v0), "v1": pairs(trace.f.v1), "v2": pairs(trace.f.v2)},
        "partition": {
            "representatives": list(trace.partition.representatives),
            "blocks": [b.tolist() for b in trace.partition.blocks],
            "rule": trace.partition.rule,
        },
        "per_block": [
            {
                "i": i + 1,
                "D": pairs(b.D),
                "P": b.P.tolist(),
                "U": b.U.tolist(),
                "undominated_count": len(b.U),
                "L_size": b.L_size,
            }
            for i, b in enumerate(trace.blocks)
        ],
        "per_column": [
            {"v": v, "Q": c.Q.tolist(), "R_size": c.R_size} for v, c in enumerate(trace.columns)
        ],
        "C": [list(p) for p in trace.C],
        "N": trace.N,
        "lemma2_subgraph_gamma": trace.lemma2_subgraph_gamma,
        "checks": dict(trace.checks),
    }


def trace_from_dict(data: dict[str, Any]) -> ProofTrace:
    try:
        jsonschema.validate(data, TRACE_SCHEMA)
    except jsonschema.ValidationError as exc:
        raise TraceFormatError(f"schema violation: {exc.message}") from None
    try:
        G = parse_graph6(data["g"]["graph6"])
        H = parse_graph6(data["h"]["graph6"])
        if G.n != data["g"]["n"] or H.n != data["h"]["n"]:
            raise TraceFormatError("declared graph orders disagree with graph6")
        gn, hn = G.n, H.n
        pn = gn * hn

        def prod_set(pairs: list[list[int]]) -> VertexSet:
            for u, v in pairs:
                if u >= gn or v >= hn:
                    raise TraceFormatError(f"coordinate ({u}, {v}) outside the product grid")
            return VertexSet(pn, (u * hn + v for u, v in pairs))

        f = RomanFunction(
            prod_set(data["f"]["v0"]), prod_set(data["f"]["v1"]), prod_set(data["f"]["v2"])
        )
        part = DominatorPartition(
            tuple(data["partition"]["representatives"]),
            tuple(VertexSet(gn, b) for b in data["partition"]["blocks"]),
            data["partition"]["rule"],
        )
        blocks = []
        for i, rec in enumerate(data["per_block"]):
            if rec["i"] != i + 1 or rec["undominated_count"] != len(rec["U"]):
                raise TraceFormatError(f"per_block entry {i} is inconsistent")
            blocks.append(
                BlockRecord(prod_set(rec["D"]), VertexSet(hn, rec["P"]), VertexSet(hn, rec["U"]), rec["L_size"])
            )
        columns = []
        for v, rec in enumerate(data["per_column"]):
            if rec["v"] != v:
                raise TraceFormatError(f"per_column entry {v} is out of order")
            columns.append(ColumnRecord(VertexSet(gn, rec["Q"]), rec["R_size"]))
        return ProofTrace(
            G=G,
            H=H,
            gamma_g=data["gamma_g"],
            gamma_h=data["gamma_h"],
            gamma_product=data["gamma_product"],
            gamma_r_product=data["gamma_r_product"],
            gamma_set_h=VertexSet(hn, data["gamma_set_h"]),
            gamma_set_product=prod_set(data["gamma_set_product"]),
            f=f,
            partition=part,
            blocks=blocks,
            columns=columns,
            C=[tuple(p) for p in data["C"]],
            N=data["N"],
            lemma2_subgraph_gamma=data["lemma2_subgraph_gamma"],
            checks=dict(data["checks"]),
        )
    except GraphError as exc:
        raise TraceFormatError(str(exc)) from None


def dump_trace(trace: ProofTrace, path: str | Path) -> None:
    Path(path).write_text(json.dumps(trace_to_dict(trace), indent=1, sort_keys=True) + "\n")


def load_trace(path: str | Path) -> ProofTrace:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise TraceFormatError(f"not valid JSON: {exc}") from None
    return trace_from_dict(data)


@dataclass
class TraceVerification:
    checks: dict[str, bool]
    flag_mismatches: list[str] = field(default_factory=list)
    resolved: dict[str, bool] = field(default_factory=dict)

    @property
    def failed(self) -> list[str]:
        out = [k for k, ok in self.checks.items() if not ok]
        out += [f"recorded flag differs: {k}" for k in self.flag_mismatches]
        out += [f"re-solve mismatch: {k}" for k, ok in self.resolved.items() if not ok]
        return out

    @property
    def ok(self) -> bool:
        return not self.failed


def verify_trace(
    trace: ProofTrace | dict[str, Any], resolve: bool = False, budget: SolverBudget | None = None
) -> TraceVerification:
    """Re-derive every verdict of a trace from its recorded sets.

    With ``resolve`` the recorded optimal values are also recomputed with the
    exact solvers, which is only sensible for small instances.
    """
    if isinstance(trace, dict):
        trace = trace_from_dict(trace)
    checks = derive_checks(trace)
    mismatches = sorted(
        k for k in set(checks) | set(trace.checks) if checks.get(k) != trace.checks.get(k)
    )
    resolved = {}
    if resolve:
        prod = cartesian_product(trace.G, trace.H, max_order=trace.G.n * trace.H.n).product
        resolved["gamma_g"] = gamma_exact(trace.G, budget).value == trace.gamma_g
        resolved["gamma_h"] = gamma_exact(trace.H, budget).value == trace.gamma_h
        resolved["gamma_product"] = gamma_exact(prod, budget).value == trace.gamma_product
        resolved["gamma_r_product"] = gamma_roman_exact(prod, budget).value == trace.gamma_r_product
        keep = trace.f.v0 | trace.f.v2
        sub_gamma = gamma_exact(induced_subgraph(prod, keep)[0], budget).value if keep else 0
        resolved["lemma2_subgraph_gamma"] = sub_gamma == trace.lemma2_subgraph_gamma
    return TraceVerification(checks, mismatches, resolved)
