"""Exact domination / Roman domination toolkit and a per-instance auditor
for the bound γ(G)γ(H) <= γ_R(G□H) on Cartesian products."""

from .audit import AuditReport, DominatorPartition, ProofTrace, audit_pair, build_partition, check_remark
from .families import generate_family, parse_family_spec
from .graph import Graph, LabeledProduct, VertexSet, cartesian_product, is_dominating, new_graph
from .io import parse_graph6, write_graph6
from .solvers import (
    BudgetExceeded,
    RomanFunction,
    SolverBudget,
    SolverResult,
    gamma_exact,
    gamma_roman_exact,
    is_rdf,
    roman_weight,
)

__version__ = "0.1.0"
