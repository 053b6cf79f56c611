import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from romanviz.audit import (
    DominatorPartition,
    audit_pair,
    build_partition,
    c_membership_product_level,
    check_L_membership,
    check_N_bounds,
    check_partition,
    check_projection_bound,
    check_remark,
    compute_C,
    compute_columns,
    compute_slices,
    derive_checks,
)
from romanviz.families import complete_graph, cycle_graph, path_graph, random_graph
from romanviz.graph import Graph, GraphError, VertexSet, cartesian_product
from romanviz.solvers import BudgetExceeded, PreconditionError, SolverBudget, RomanFunction, gamma_exact, gamma_roman_exact

from conftest import graphs

K2 = complete_graph(2)
C4 = cycle_graph(4)
P3 = path_graph(3)


@pytest.fixture
def k2k2():
    lp = cartesian_product(K2, K2)
    e = lp.encode
    # the optimal RDF: (0,0) -> 2, (1,1) -> 1
    f = RomanFunction.from_sets(4, v0={e(0, 1), e(1, 0)}, v1={e(1, 1)}, v2={e(0, 0)})
    part = build_partition(K2, [0], gamma=1)
    return lp, f, part


def test_partition_examples():
    p = build_partition(K2, [0])
    assert [b.tolist() for b in p.blocks] == [[0, 1]]
    p = build_partition(C4, [0, 2])
    assert [set(b) for b in p.blocks] == [{3, 0, 1}, {2}]
    p = build_partition(P3, [1])
    assert [b.tolist() for b in p.blocks] == [[0, 1, 2]]


def test_partition_largest_rule():
    p = build_partition(C4, [0, 2], rule="largest")
    assert [set(b) for b in p.blocks] == [{0}, {1, 2, 3}]
    assert check_partition(C4, p, 2).holds


def test_partition_rejects():
    with pytest.raises(GraphError):
        build_partition(C4, [0])
    with pytest.raises(GraphError):
        build_partition(C4, [0, 1, 2], gamma=2)
    with pytest.raises(GraphError):
        build_partition(C4, [0, 0, 2])


@settings(max_examples=60, deadline=None)
@given(graphs(max_order=9), st.sampled_from(["smallest", "largest", "random"]), st.integers(0, 99))
def test_partition_soundness(g, rule, seed):
    r = gamma_exact(g)
    p = build_partition(g, r.witness.tolist(), gamma=r.value, rule=rule, seed=seed)
    v = check_partition(g, p, r.value)
    assert v.is_partition and v.representatives_in_blocks
    assert v.blocks_adjacent_to_representative and v.size_matches_gamma


def test_slices_literal_example():
    # D = {(0,0), (0,1)}; compute_slices does not require f to be an RDF
    lp = cartesian_product(K2, K2)
    e = lp.encode
    f = RomanFunction.from_sets(4, v0={e(1, 0), e(1, 1)}, v1={e(0, 1)}, v2={e(0, 0)})
    (s,) = compute_slices(f, build_partition(K2, [0]), lp)
    assert {lp.decode(x) for x in s.D} == {(0, 0), (0, 1)}
    assert s.P.tolist() == [0, 1]


def test_slices_single_block_identity():
    g, h = complete_graph(3), cycle_graph(5)
    lp = cartesian_product(g, h)
    f = gamma_roman_exact(lp.product).witness
    (s,) = compute_slices(f, build_partition(g, [0], gamma=1), lp)
    assert s.D == f.v1 | f.v2
    assert set(s.P) == {lp.decode(x)[1] for x in s.D}


def test_slices_empty_d():
    lp = cartesian_product(K2, K2)
    f = RomanFunction.from_sets(4, v0=range(4))
    (s,) = compute_slices(f, build_partition(K2, [0]), lp)
    assert not s.D and not s.P


def test_slices_order_mismatch(k2k2):
    lp, f, _ = k2k2
    with pytest.raises(GraphError):
        compute_slices(f, build_partition(C4, [0, 2]), lp)


def test_projection_bound_examples():
    b = check_projection_bound(K2, [], 1)
    assert b.undominated.tolist() == [0, 1] and b.holds and b.completion_dominates
    b = check_projection_bound(C4, [0], 2)
    assert b.undominated.tolist() == [2] and b.count == 1 and b.holds
    b = check_projection_bound(C4, [0, 2], 2)
    assert b.count == 0 and b.holds


def test_columns_examples(k2k2):
    lp, f, _ = k2k2
    q = compute_columns(f, lp)
    assert [c.tolist() for c in q] == [[0], []]
    g, h = path_graph(3), path_graph(4)
    lp = cartesian_product(g, h)
    col = VertexSet(12, [lp.encode(u, 2) for u in range(3)])
    f = RomanFunction(col.complement(), VertexSet(12), col)
    q = compute_columns(f, lp)
    assert [len(c) for c in q] == [0, 0, 3, 0]
    f = RomanFunction(VertexSet(12), VertexSet.full(12), VertexSet(12))
    assert all(not c for c in compute_columns(f, lp))


def test_compute_C_examples(k2k2):
    lp, f, part = k2k2
    cs = compute_C(K2, part, compute_columns(f, lp))
    assert cs.C == ((1, 0),) and cs.N == 1
    assert cs.L_sizes == (1,) and cs.R_sizes == (1, 0)


def test_compute_C_full_and_empty_columns():
    g = cycle_graph(6)
    part = build_partition(g, [0, 3], gamma=2)
    cols = [VertexSet.full(6), VertexSet(6)]
    cs = compute_C(g, part, cols)
    assert cs.C == ((1, 0), (2, 0)) and cs.R_sizes == (2, 0)


def test_L_membership_examples(k2k2):
    lp, f, part = k2k2
    slices = compute_slices(f, part, lp)
    und = [check_projection_bound(K2, s.P, 1).undominated for s in slices]
    assert all(not u for u in und)  # N_H[P_1] = V(H): vacuous
    cs = compute_C(K2, part, compute_columns(f, lp))
    assert check_L_membership(und, cs).holds


def test_L_membership_detects_missing():
    from romanviz.audit import CountingSets

    und = [VertexSet(3, [1, 2])]
    v = check_L_membership(und, CountingSets(((1, 1),), (1,), (0, 1, 0)))
    assert v.missing == ((1, 2),) and not v.holds


def test_N_bounds_remark_witness(k2k2):
    lp, f, part = k2k2
    cols = compute_columns(f, lp)
    v = check_N_bounds(K2, 1, 1, f, part, cols, compute_C(K2, part, cols))
    assert (v.lower, v.N, v.upper) == (-1, 1, 1)
    assert v.holds and not v.contradictions


def test_N_bounds_injected_contradiction():
    # {0, 1} claimed as a minimum dominating set of K2 (it is not)
    lp = cartesian_product(K2, Graph(1))
    part = DominatorPartition((0, 1), (VertexSet(2, [0]), VertexSet(2, [1])))
    f = RomanFunction.from_sets(2, v0={1}, v2={0})
    cols = compute_columns(f, lp)
    cs = compute_C(K2, part, cols)
    assert cs.R_sizes == (2,)
    v = check_N_bounds(K2, 2, 1, f, part, cols, cs)
    assert not v.exchange_holds and not v.holds
    (c,) = v.contradictions
    assert c.dominating_set == (0,) and c.dominates and c.size == 1 < c.gamma


def test_audit_k2_k2():
    report, trace = audit_pair(K2, K2)
    assert report.vizing_product == 1 and report.gamma_r_product == 3
    assert report.passed and trace.all_pass
    assert trace.N == 1


def test_audit_identity_factor_reduces_to_lemma1():
    h = cycle_graph(5)
    report, _ = audit_pair(Graph(1), h)
    assert report.vizing_product == gamma_exact(h).value == 2
    assert report.gamma_r_product == gamma_roman_exact(h).value == 4
    assert report.passed


def test_audit_c4_c4():
    report, trace = audit_pair(C4, C4)
    assert report.vizing_product == 4
    assert report.gamma_r_product >= 4
    assert report.passed, report.failed_checks
    assert all(trace.checks.values())


def test_audit_p3_p3_l_membership():
    _, trace = audit_pair(P3, P3)
    assert trace.checks["l_membership"] and trace.checks["counting_identity"]


def test_audit_refuses_non_optimal_f():
    f = RomanFunction.from_sets(4, v1=range(4))
    with pytest.raises(PreconditionError):
        audit_pair(K2, K2, f=f)
    report, trace = audit_pair(K2, K2, f=f, require_optimal=False)
    # the counting argument holds for any RDF; only the optimality checks fail
    failed = {k for k, ok in trace.checks.items() if not ok}
    assert "weight_consistency" in failed
    assert failed <= {"weight_consistency", "lemma2_gamma_set"}
    with pytest.raises(PreconditionError):
        audit_pair(K2, K2, f=RomanFunction.from_sets(4, v0=range(4)), require_optimal=False)


@settings(max_examples=25, deadline=None)
@given(graphs(max_order=4), graphs(max_order=4))
def test_c_criterion_equivalence(g, h):
    lp = cartesian_product(g, h)
    f = gamma_roman_exact(lp.product).witness
    r = gamma_exact(g)
    part = build_partition(g, r.witness.tolist(), gamma=r.value)
    cols = compute_columns(f, lp)
    assert set(compute_C(g, part, cols).C) == c_membership_product_level(part, cols, lp)


@settings(max_examples=25, deadline=None)
@given(graphs(max_order=4), graphs(max_order=4), st.sampled_from(["smallest", "largest", "random"]))
def test_audit_properties(g, h, rule):
    report, trace = audit_pair(g, h, rule=rule, seed=3)
    assert report.passed, report.failed_checks
    assert trace.N == len(trace.C) == sum(b.L_size for b in trace.blocks)
    assert trace.N == sum(c.R_size for c in trace.columns)
    assert all(c.R_size <= len(c.Q) for c in trace.columns)
    assert report.vizing_product <= report.gamma_r_product <= 2 * report.gamma_product


def test_derive_checks_matches_recorded():
    _, trace = audit_pair(random_graph(4, 0.6, 1), cycle_graph(4))
    assert derive_checks(trace) == trace.checks


def test_remark():
    v = check_remark()
    assert (v.gamma_r_k2, v.gamma_r_k2_product) == (2, 3)
    assert v.factor_product == 4 and v.roman_analogue_fails
    assert v.gamma_k2_product == 2 and v.lemma1_on_product


def test_audit_budget_reports_stage():
    with pytest.raises(BudgetExceeded) as exc:
        audit_pair(path_graph(4), cycle_graph(7), SolverBudget(max_nodes=3))
    assert exc.value.stage in {"gamma(G)", "gamma(H)", "gamma(GxH)", "gamma_R(GxH)"}
    with pytest.raises(GraphError):
        audit_pair(path_graph(10), path_graph(10), SolverBudget(max_order=50))
