"""Instantiate the γ(G)γ(H) <= γ_R(G□H) argument on a concrete pair of graphs.

Given G, H and a minimum-weight Roman dominating function f = (V0, V1, V2) of
G□H, the argument proceeds as follows:

* split V(G) into blocks Π_i around a minimum dominating set u_1..u_k;
* slice D = V1 ∪ V2 along the blocks (D_i) and project onto H (P_i);
* for each column v of the product collect Q_v, the G-coordinates of V2 there;
* count C = {(i, v) : Π_i ⊆ N_G[Q_v]} by rows (L_i) and by columns (R_v);
* bound N = |C| from below by γ(G)γ(H) - |D| and from above by |V2|.

Every set is kept extensionally in a :class:`ProofTrace`. :func:`derive_checks`
re-derives all verdicts from those recorded sets alone, so a serialized trace
can be re-checked without running the solvers.
"""

from __future__ import annotations

import logging
import random
import time
from dataclasses import dataclass, field
from typing import Sequence

from .graph import (
    Graph,
    GraphError,
    LabeledProduct,
    VertexSet,
    as_mask,
    cartesian_product,
    closed_neighborhood_mask,
    induced_subgraph,
    is_dominating,
    iter_bits,
)
from .io import write_graph6
from .solvers import (
    BudgetExceeded,
    PreconditionError,
    RomanFunction,
    SolverBudget,
    gamma_exact,
    gamma_roman_exact,
    is_rdf,
    roman_weight,
)

log = logging.getLogger(__name__)

TIE_RULES = ("smallest", "largest", "random")


@dataclass(frozen=True)
class DominatorPartition:
    representatives: tuple[int, ...]
    blocks: tuple[VertexSet, ...]
    rule: str = "smallest"

    @property
    def k(self) -> int:
        return len(self.representatives)


def build_partition(
    G: Graph,
    gamma_set: Sequence[int],
    gamma: int | None = None,
    rule: str = "smallest",
    seed: int | None = None,
) -> DominatorPartition:
    """Assign every vertex of G to a block Π_i around representative u_i.

    Representatives claim themselves; any other vertex u joins a block whose
    representative is adjacent to u. ``rule`` picks among eligible blocks:
    lowest index, highest index, or a seeded random choice.
    """
    reps = tuple(gamma_set)
    if rule not in TIE_RULES:
        raise ValueError(f"unknown tie rule {rule!r}")
    if len(set(reps)) != len(reps):
        raise GraphError("dominating set has repeated vertices")
    if not is_dominating(G, reps):
        raise GraphError(f"{list(reps)} does not dominate G")
    if gamma is not None and len(reps) != gamma:
        raise GraphError(f"dominating set has size {len(reps)}, expected gamma(G) = {gamma}")
    rng = random.Random(seed)
    closed = G.closed_masks()
    index = {u: i for i, u in enumerate(reps)}
    members: list[list[int]] = [[u] for u in reps]
    for u in range(G.n):
        if u in index:
            continue
        eligible = [i for i, r in enumerate(reps) if closed[r] >> u & 1]
        if rule == "smallest":
            i = eligible[0]
        elif rule == "largest":
            i = eligible[-1]
        else:
            i = rng.choice(eligible)
        members[i].append(u)
    return DominatorPartition(reps, tuple(VertexSet(G.n, m) for m in members), rule)


@dataclass(frozen=True)
class PartitionVerdict:
    is_partition: bool
    representatives_in_blocks: bool
    blocks_adjacent_to_representative: bool
    size_matches_gamma: bool

    @property
    def holds(self) -> bool:
        return (
            self.is_partition
            and self.representatives_in_blocks
            and self.blocks_adjacent_to_representative
            and self.size_matches_gamma
        )


def check_partition(G: Graph, partition: DominatorPartition, gamma: int) -> PartitionVerdict:
    seen = 0
    disjoint = True
    for block in partition.blocks:
        if block.n != G.n or seen & block.bits:
            disjoint = False
        seen |= block.bits
    closed = G.closed_masks()
    return PartitionVerdict(
        is_partition=disjoint and seen == G.full_mask and len(partition.blocks) == partition.k,
        representatives_in_blocks=all(
            u in b for u, b in zip(partition.representatives, partition.blocks)
        ),
        blocks_adjacent_to_representative=all(
            b.bits & ~closed[u] == 0 for u, b in zip(partition.representatives, partition.blocks)
        ),
        size_matches_gamma=partition.k == gamma,
    )


@dataclass(frozen=True)
class BlockSlice:
    D: VertexSet  # product vertices
    P: VertexSet  # vertices of H


def compute_slices(
    f: RomanFunction, partition: DominatorPartition, lp: LabeledProduct
) -> list[BlockSlice]:
    """D_i = (Π_i x V(H)) ∩ D and its projection P_i onto H."""
    if f.n != lp.product.n:
        raise GraphError("Roman function order does not match the product")
    if any(b.n != lp.g_order for b in partition.blocks):
        raise GraphError("partition order does not match G")
    d = f.v1.bits | f.v2.bits
    out = []
    for block in partition.blocks:
        di = d & lp.cylinder_mask(block.bits)
        proj = 0
        for x in iter_bits(di):
            proj |= 1 << lp.decode(x)[1]
        out.append(BlockSlice(VertexSet.from_mask(lp.product.n, di), VertexSet.from_mask(lp.h_order, proj)))
    return out


@dataclass(frozen=True)
class ProjectionBound:
    undominated: VertexSet  # V(H) - N_H[P_i]
    completion_dominates: bool
    holds: bool

    @property
    def count(self) -> int:
        return len(self.undominated)


def check_projection_bound(H: Graph, P: VertexSet | Sequence[int], gamma_h: int) -> ProjectionBound:
    """|V(H) - N_H[P]| >= γ(H) - |P|, witnessed by P ∪ U dominating H."""
    p = as_mask(H, P)
    u = H.full_mask & ~closed_neighborhood_mask(H, p)
    return ProjectionBound(
        VertexSet.from_mask(H.n, u),
        is_dominating(H, p | u),
        u.bit_count() >= gamma_h - p.bit_count(),
    )


def compute_columns(f: RomanFunction, lp: LabeledProduct) -> list[VertexSet]:
    """Q_v: the G-coordinates u with (u, v) in V2, one set per column v."""
    if f.n != lp.product.n:
        raise GraphError("Roman function order does not match the product")
    cols = [0] * lp.h_order
    for x in f.v2:
        u, v = lp.decode(x)
        cols[v] |= 1 << u
    return [VertexSet.from_mask(lp.g_order, c) for c in cols]


@dataclass(frozen=True)
class CountingSets:
    C: tuple[tuple[int, int], ...]  # (i, v) with i 1-based
    L_sizes: tuple[int, ...]
    R_sizes: tuple[int, ...]

    @property
    def N(self) -> int:
        return len(self.C)


def compute_C(
    G: Graph, partition: DominatorPartition, columns: Sequence[VertexSet]
) -> CountingSets:
    """Pairs (i, v) whose block Π_i lies inside N_G[Q_v].

    Within column v the closed product neighbourhood of Q_v x {v} is exactly
    N_G[Q_v] x {v}, so the test runs on G alone; see
    :func:`c_membership_product_level` for the direct product-level version.
    """
    k, hn = partition.k, len(columns)
    pairs = []
    L = [0] * k
    R = [0] * hn
    for v, q in enumerate(columns):
        reach = closed_neighborhood_mask(G, as_mask(G, q))
        for i, block in enumerate(partition.blocks):
            if block.bits & ~reach == 0:
                pairs.append((i + 1, v))
                L[i] += 1
                R[v] += 1
    pairs.sort()
    return CountingSets(tuple(pairs), tuple(L), tuple(R))


def c_membership_product_level(
    partition: DominatorPartition, columns: Sequence[VertexSet], lp: LabeledProduct
) -> set[tuple[int, int]]:
    """Same set as :func:`compute_C`, tested as Π_i x {v} ⊆ N_{G□H}[Q_v x {v}]."""
    out = set()
    for v, q in enumerate(columns):
        col = 0
        for u in q:
            col |= 1 << lp.encode(u, v)
        reach = closed_neighborhood_mask(lp.product, col)
        for i, block in enumerate(partition.blocks):
            target = 0
            for u in block:
                target |= 1 << lp.encode(u, v)
            if target & ~reach == 0:
                out.add((i + 1, v))
    return out


@dataclass(frozen=True)
class LMembershipVerdict:
    missing: tuple[tuple[int, int], ...]  # (i, v) with v ∉ N_H[P_i] but (i, v) ∉ C
    row_bounds_hold: bool
    total_bound_holds: bool

    @property
    def holds(self) -> bool:
        return not self.missing and self.row_bounds_hold and self.total_bound_holds


def check_L_membership(
    undominated: Sequence[VertexSet], counting: CountingSets
) -> LMembershipVerdict:
    """Every v outside N_H[P_i] puts (i, v) in C; so |L_i| >= |V(H) - N_H[P_i]|."""
    cset = set(counting.C)
    missing = tuple(
        (i + 1, v) for i, u in enumerate(undominated) for v in u if (i + 1, v) not in cset
    )
    rows = all(L >= len(u) for L, u in zip(counting.L_sizes, undominated))
    total = counting.N >= sum(len(u) for u in undominated)
    return LMembershipVerdict(missing, rows, total)


@dataclass(frozen=True)
class Contradiction:
    column: int
    dominating_set: tuple[int, ...]
    dominates: bool
    size: int
    gamma: int


@dataclass(frozen=True)
class NBoundsVerdict:
    lower: int  # γ(G)γ(H) - |V1| - |V2|
    N: int
    upper: int  # |V2|
    lower_holds: bool
    upper_holds: bool
    exchange_holds: bool
    contradictions: tuple[Contradiction, ...] = ()

    @property
    def holds(self) -> bool:
        return self.lower_holds and self.upper_holds and self.exchange_holds


def check_N_bounds(
    G: Graph,
    gamma_g: int,
    gamma_h: int,
    f: RomanFunction,
    partition: DominatorPartition,
    columns: Sequence[VertexSet],
    counting: CountingSets,
) -> NBoundsVerdict:
    """γγ - |V1| - |V2| <= N <= |V2|, with |R_v| <= |Q_v| column by column.

    A column with |R_v| > |Q_v| cannot occur when the representatives form a
    minimum dominating set: Q_v together with the representatives of the
    blocks outside R_v would dominate G with fewer than γ(G) vertices. If it
    does occur that set is built, checked and returned as a contradiction.
    """
    n1, n2 = len(f.v1), len(f.v2)
    N = counting.N
    in_c = set(counting.C)
    contradictions = []
    for v, q in enumerate(columns):
        if counting.R_sizes[v] > len(q):
            cand = set(q) | {
                u for i, u in enumerate(partition.representatives) if (i + 1, v) not in in_c
            }
            cand_t = tuple(sorted(cand))
            contradictions.append(
                Contradiction(v, cand_t, is_dominating(G, cand_t), len(cand_t), gamma_g)
            )
    for c in contradictions:
        log.error(
            "column %d: |R_v| > |Q_v|; %s dominates G with %d < gamma(G) = %d vertices",
            c.column, list(c.dominating_set), c.size, c.gamma,
        )
    lower = gamma_g * gamma_h - n1 - n2
    return NBoundsVerdict(
        lower=lower,
        N=N,
        upper=n2,
        lower_holds=lower <= N,
        upper_holds=N <= n2,
        exchange_holds=not contradictions,
        contradictions=tuple(contradictions),
    )


@dataclass(frozen=True)
class BlockRecord:
    D: VertexSet
    P: VertexSet
    U: VertexSet
    L_size: int


@dataclass(frozen=True)
class ColumnRecord:
    Q: VertexSet
    R_size: int


@dataclass
class ProofTrace:
    """Extensional record of one instantiation of the argument.

    Product vertices are ids under the row-major encoding; block indices in
    ``C`` are 1-based to match Π_1..Π_k.
    """

    G: Graph
    H: Graph
    gamma_g: int
    gamma_h: int
    gamma_product: int
    gamma_r_product: int
    gamma_set_h: VertexSet
    gamma_set_product: VertexSet
    f: RomanFunction
    partition: DominatorPartition
    blocks: list[BlockRecord]
    columns: list[ColumnRecord]
    C: list[tuple[int, int]]
    N: int
    lemma2_subgraph_gamma: int
    checks: dict[str, bool] = field(default_factory=dict)

    @property
    def product(self) -> LabeledProduct:
        return cartesian_product(self.G, self.H, max_order=self.G.n * self.H.n)

    @property
    def all_pass(self) -> bool:
        return bool(self.checks) and all(self.checks.values())


def derive_checks(trace: ProofTrace) -> dict[str, bool]:
    """Recompute every verdict from the sets recorded in ``trace``.

    No optimisation is run; optimal values are taken as recorded and only
    their certificates (witness sets of the recorded size) are re-checked.
    Each check also confirms that the recorded derived sets agree with what
    f and the partition imply.
    """
    G, H = trace.G, trace.H
    lp = trace.product
    P_graph = lp.product
    f = trace.f
    gg, gh = trace.gamma_g, trace.gamma_h
    vv = gg * gh
    n1, n2 = len(f.v1), len(f.v2)
    part = trace.partition
    checks: dict[str, bool] = {}

    checks["partition_valid"] = (
        check_partition(G, part, gg).holds and is_dominating(G, part.representatives)
    )
    checks["gamma_witnesses"] = (
        is_dominating(G, part.representatives)
        and len(part.representatives) == gg
        and is_dominating(H, trace.gamma_set_h)
        and len(trace.gamma_set_h) == gh
        and is_dominating(P_graph, trace.gamma_set_product)
        and len(trace.gamma_set_product) == trace.gamma_product
    )
    checks["f_valid_rdf"] = f.n == P_graph.n and is_rdf(P_graph, f)
    checks["weight_consistency"] = roman_weight(f) == trace.gamma_r_product

    d_mask = f.v1.bits | f.v2.bits
    checks["d_dominates_product"] = is_dominating(P_graph, d_mask)
    keep = f.v0 | f.v2
    if keep:
        sub, relabel = induced_subgraph(P_graph, keep)
        v2_sub = [relabel[x] for x in f.v2]
        v2_dom = is_dominating(sub, v2_sub)
    else:
        v2_dom = True
    checks["v2_dominates_product_minus_v1"] = v2_dom
    checks["lemma2_gamma_set"] = v2_dom and n2 == trace.lemma2_subgraph_gamma

    ok_partition = checks["partition_valid"] and len(trace.blocks) == part.k
    expected_slices = compute_slices(f, part, lp) if ok_partition else []
    checks["slices"] = (
        ok_partition
        and all(
            rec.D == s.D and rec.P == s.P for rec, s in zip(trace.blocks, expected_slices)
        )
    )

    proj_ok = len(trace.blocks) == part.k
    for rec in trace.blocks:
        pb = check_projection_bound(H, rec.P, gh)
        proj_ok &= pb.undominated == rec.U and pb.completion_dominates and pb.holds
    checks["projection_bound"] = proj_ok

    expected_cols = compute_columns(f, lp)
    checks["columns"] = len(trace.columns) == H.n and all(
        rec.Q == q for rec, q in zip(trace.columns, expected_cols)
    )

    recorded_q = [rec.Q for rec in trace.columns]
    if ok_partition and len(recorded_q) == H.n:
        counting = compute_C(G, part, recorded_q)
        checks["c_membership"] = list(counting.C) == sorted(trace.C)
        checks["c_criterion_equivalence"] = set(counting.C) == c_membership_product_level(
            part, recorded_q, lp
        )
    else:
        checks["c_membership"] = False
        checks["c_criterion_equivalence"] = False

    cset = set(trace.C)
    L_from_c = [sum(1 for i, _ in cset if i == b + 1) for b in range(len(trace.blocks))]
    R_from_c = [sum(1 for _, v in cset if v == col) for col in range(len(trace.columns))]
    checks["counting_identity"] = (
        len(cset) == len(trace.C)
        and trace.N == len(cset)
        and trace.N == sum(rec.L_size for rec in trace.blocks)
        and trace.N == sum(rec.R_size for rec in trace.columns)
        and [rec.L_size for rec in trace.blocks] == L_from_c
        and [rec.R_size for rec in trace.columns] == R_from_c
        and sum(len(rec.Q) for rec in trace.columns) == n2
        and sum(len(rec.D) for rec in trace.blocks) == d_mask.bit_count()
    )

    recorded = CountingSets(
        tuple(sorted(cset)),
        tuple(rec.L_size for rec in trace.blocks),
        tuple(rec.R_size for rec in trace.columns),
    )
    lm = check_L_membership([rec.U for rec in trace.blocks], recorded)
    checks["l_membership"] = lm.holds and trace.N >= sum(len(rec.U) for rec in trace.blocks)

    sum_u = sum(len(rec.U) for rec in trace.blocks)
    sum_p = sum(len(rec.P) for rec in trace.blocks)
    sum_d = sum(len(rec.D) for rec in trace.blocks)
    sum_r = sum(rec.R_size for rec in trace.columns)
    sum_q = sum(len(rec.Q) for rec in trace.columns)
    checks["n_lower_bound"] = (
        trace.N >= sum_u >= vv - sum_p >= vv - sum_d and sum_d == n1 + n2
    )
    if ok_partition:
        nb = check_N_bounds(G, gg, gh, f, part, recorded_q, recorded)
        checks["exchange_bound"] = nb.exchange_holds and all(
            rec.R_size <= len(rec.Q) for rec in trace.columns
        )
    else:
        checks["exchange_bound"] = False
    checks["n_upper_bound"] = trace.N == sum_r and sum_r <= sum_q == n2
    checks["conclusion"] = vv <= trace.N + n1 + n2 <= n1 + 2 * n2
    checks["theorem2"] = vv <= trace.gamma_r_product
    checks["theorem1"] = vv <= 2 * trace.gamma_product
    checks["lemma1_product"] = (
        trace.gamma_product <= trace.gamma_r_product <= 2 * trace.gamma_product
    )
    return checks


@dataclass(frozen=True)
class AuditReport:
    g_label: str
    h_label: str
    g_order: int
    h_order: int
    g_graph6: str
    h_graph6: str
    gamma_g: int
    gamma_h: int
    gamma_product: int
    gamma_r_product: int
    theorem2: bool
    theorem1: bool
    lemma1_product: bool
    all_checks_pass: bool
    nodes_explored: int
    solve_seconds: float
    failed_checks: tuple[str, ...] = ()

    @property
    def vizing_product(self) -> int:
        return self.gamma_g * self.gamma_h

    @property
    def clark_suen_bound(self) -> int:
        return 2 * self.gamma_product

    @property
    def gap(self) -> int:
        return self.gamma_r_product - self.vizing_product

    @property
    def strict_improvement(self) -> bool:
        return self.gamma_r_product < 2 * self.gamma_product

    @property
    def passed(self) -> bool:
        return self.theorem2 and self.theorem1 and self.lemma1_product and self.all_checks_pass


def _solve(fn, graph: Graph, budget: SolverBudget, stage: str):
    try:
        return fn(graph, budget)
    except BudgetExceeded as exc:
        raise BudgetExceeded(f"{stage}: {exc}", stage=stage, nodes=exc.nodes) from exc


def audit_pair(
    G: Graph,
    H: Graph,
    budget: SolverBudget | None = None,
    rule: str = "smallest",
    seed: int | None = None,
    f: RomanFunction | None = None,
    require_optimal: bool = True,
    g_label: str = "G",
    h_label: str = "H",
) -> tuple[AuditReport, ProofTrace]:
    """Solve everything for (G, H), build every set of the argument and check it.

    ``f`` overrides the solver's γ_R(G□H) witness. A non-optimal ``f`` is
    refused unless ``require_optimal`` is False.
    """
    budget = budget or SolverBudget()
    t0 = time.perf_counter()
    lp = cartesian_product(G, H, max_order=budget.max_order)
    prod = lp.product

    rg = _solve(gamma_exact, G, budget, "gamma(G)")
    rh = _solve(gamma_exact, H, budget, "gamma(H)")
    rp = _solve(gamma_exact, prod, budget, "gamma(GxH)")
    rr = _solve(gamma_roman_exact, prod, budget, "gamma_R(GxH)")
    nodes = rg.nodes_explored + rh.nodes_explored + rp.nodes_explored + rr.nodes_explored
    if f is None:
        f = rr.witness
    else:
        if not is_rdf(prod, f):
            raise PreconditionError("supplied f is not a Roman dominating function of G□H")
        if roman_weight(f) != rr.value and require_optimal:
            raise PreconditionError(
                f"supplied f has weight {roman_weight(f)} but gamma_R(G□H) = {rr.value}"
            )

    partition = build_partition(G, rg.witness.tolist(), gamma=rg.value, rule=rule, seed=seed)
    slices = compute_slices(f, partition, lp)
    bounds = [check_projection_bound(H, s.P, rh.value) for s in slices]
    cols = compute_columns(f, lp)
    counting = compute_C(G, partition, cols)

    keep = f.v0 | f.v2
    if keep:
        sub, _ = induced_subgraph(prod, keep)
        sub_gamma = _solve(gamma_exact, sub, budget, "lemma2").value
    else:
        sub_gamma = 0

    trace = ProofTrace(
        G=G,
        H=H,
        gamma_g=rg.value,
        gamma_h=rh.value,
        gamma_product=rp.value,
        gamma_r_product=rr.value,
        gamma_set_h=rh.witness,
        gamma_set_product=rp.witness,
        f=f,
        partition=partition,
        blocks=[
            BlockRecord(s.D, s.P, b.undominated, L)
            for s, b, L in zip(slices, bounds, counting.L_sizes)
        ],
        columns=[ColumnRecord(q, R) for q, R in zip(cols, counting.R_sizes)],
        C=list(counting.C),
        N=counting.N,
        lemma2_subgraph_gamma=sub_gamma,
    )
    trace.checks = derive_checks(trace)

    failed = tuple(k for k, ok in trace.checks.items() if not ok)
    if failed:
        log.error("audit of (%s, %s) failed checks: %s", g_label, h_label, ", ".join(failed))
    vv = rg.value * rh.value
    report = AuditReport(
        g_label=g_label,
        h_label=h_label,
        g_order=G.n,
        h_order=H.n,
        g_graph6=write_graph6(G),
        h_graph6=write_graph6(H),
        gamma_g=rg.value,
        gamma_h=rh.value,
        gamma_product=rp.value,
        gamma_r_product=rr.value,
        theorem2=vv <= rr.value,
        theorem1=vv <= 2 * rp.value,
        lemma1_product=rp.value <= rr.value <= 2 * rp.value,
        all_checks_pass=not failed,
        nodes_explored=nodes,
        solve_seconds=time.perf_counter() - t0,
        failed_checks=failed,
    )
    return report, trace


@dataclass(frozen=True)
class RemarkVerdict:
    gamma_r_k2: int
    gamma_r_k2_product: int
    gamma_k2_product: int

    @property
    def factor_product(self) -> int:
        return self.gamma_r_k2 * self.gamma_r_k2

    @property
    def roman_analogue_fails(self) -> bool:
        return self.factor_product > self.gamma_r_k2_product

    @property
    def lemma1_on_product(self) -> bool:
        return self.gamma_k2_product <= self.gamma_r_k2_product <= 2 * self.gamma_k2_product


def check_remark(budget: SolverBudget | None = None) -> RemarkVerdict:
    """γ_R(K2)^2 = 4 > 3 = γ_R(K2□K2): no Roman analogue of the product inequality."""
    k2 = Graph(2, [(0, 1)])
    prod = cartesian_product(k2, k2).product
    return RemarkVerdict(
        gamma_roman_exact(k2, budget).value,
        gamma_roman_exact(prod, budget).value,
        gamma_exact(prod, budget).value,
    )
