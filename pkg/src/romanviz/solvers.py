"""Exact domination and Roman domination numbers.

Both solvers are depth-first branch-and-bound over bitmasks with a fixed
branching order (lowest undominated vertex first, candidates by descending
coverage then ascending id), so the same graph always yields the same
witness. Brute-force oracles live here too; they share no search code with
the solvers and exist to cross-check them.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from itertools import combinations, product

from .graph import (
    Graph,
    GraphError,
    VertexSet,
    as_mask,
    closed_neighborhood_mask,
    induced_subgraph,
    is_dominating,
    iter_bits,
)

DEFAULT_MAX_NODES = 10_000_000
DEFAULT_MAX_ORDER = 4096


class BudgetExceeded(RuntimeError):
    """A solve hit its node or order cap; no value is reported."""

    def __init__(self, message: str, stage: str | None = None, nodes: int = 0):
        super().__init__(message)
        self.stage = stage
        self.nodes = nodes


class PreconditionError(ValueError):
    """Inputs violate a documented precondition (e.g. a non-optimal RDF)."""


@dataclass(frozen=True)
class SolverBudget:
    max_nodes: int = DEFAULT_MAX_NODES
    max_order: int = DEFAULT_MAX_ORDER

    @classmethod
    def from_env(cls) -> SolverBudget:
        """Defaults overridable via ``ROMANVIZ_MAX_NODES`` / ``ROMANVIZ_MAX_ORDER``."""
        return cls(
            max_nodes=int(os.environ.get("ROMANVIZ_MAX_NODES", DEFAULT_MAX_NODES)),
            max_order=int(os.environ.get("ROMANVIZ_MAX_ORDER", DEFAULT_MAX_ORDER)),
        )


@dataclass(frozen=True)
class RomanFunction:
    """Ordered partition ``(V0, V1, V2)``: the level sets of f: V -> {0, 1, 2}."""

    v0: VertexSet
    v1: VertexSet
    v2: VertexSet

    def __post_init__(self):
        n = self.v0.n
        if self.v1.n != n or self.v2.n != n:
            raise GraphError("Roman function parts have different orders")
        a, b, c = self.v0.bits, self.v1.bits, self.v2.bits
        if a & b or a & c or b & c or a | b | c != (1 << n) - 1:
            raise GraphError("(V0, V1, V2) is not a partition of the vertex set")

    @classmethod
    def from_sets(cls, n: int, v0=(), v1=(), v2=()) -> RomanFunction:
        return cls(VertexSet(n, v0), VertexSet(n, v1), VertexSet(n, v2))

    @classmethod
    def from_labels(cls, labels) -> RomanFunction:
        n = len(labels)
        return cls.from_sets(
            n, *[[v for v, x in enumerate(labels) if x == k] for k in (0, 1, 2)]
        )

    @classmethod
    def from_v2(cls, G: Graph, s_mask: int) -> RomanFunction:
        """Cheapest RDF with ``V2 = S``: covered vertices get 0, the rest 1."""
        covered = closed_neighborhood_mask(G, s_mask)
        return cls(
            VertexSet.from_mask(G.n, covered & ~s_mask),
            VertexSet.from_mask(G.n, G.full_mask & ~covered),
            VertexSet.from_mask(G.n, s_mask),
        )

    @property
    def n(self) -> int:
        return self.v0.n

    def labels(self) -> list[int]:
        return [0 if v in self.v0 else 1 if v in self.v1 else 2 for v in range(self.n)]

    @property
    def weight(self) -> int:
        return roman_weight(self)


def roman_weight(f: RomanFunction) -> int:
    return len(f.v1) + 2 * len(f.v2)


def is_rdf(G: Graph, f: RomanFunction) -> bool:
    """Every vertex labelled 0 has a neighbour labelled 2."""
    if f.n != G.n:
        raise GraphError(f"Roman function of order {f.n} used with graph of order {G.n}")
    adj = G.adjacency_masks()
    v2 = f.v2.bits
    return all(adj[v] & v2 for v in f.v0)


@dataclass(frozen=True)
class SolverResult:
    value: int
    witness: VertexSet | RomanFunction
    nodes_explored: int


def _check_order(G: Graph, budget: SolverBudget, stage: str) -> None:
    if G.n > budget.max_order:
        raise BudgetExceeded(
            f"order {G.n} exceeds solver cap {budget.max_order}", stage=stage
        )


def _coverage_order(cands: int, closed: tuple[int, ...], undom: int) -> list[int]:
    return sorted(iter_bits(cands), key=lambda c: (-(closed[c] & undom).bit_count(), c))


def _max_coverage(allowed: int, closed: tuple[int, ...], undom: int) -> int:
    return max(((closed[c] & undom).bit_count() for c in iter_bits(allowed)), default=0)


def greedy_dominating_set(G: Graph) -> list[int]:
    """Repeatedly take the vertex covering most undominated vertices (ties: smallest id)."""
    closed = G.closed_masks()
    undom = G.full_mask
    chosen = []
    while undom:
        best = max(range(G.n), key=lambda c: ((closed[c] & undom).bit_count(), -c))
        chosen.append(best)
        undom &= ~closed[best]
    return chosen


def gamma_exact(G: Graph, budget: SolverBudget | None = None) -> SolverResult:
    """Domination number with a minimum dominating set as witness.

    Set cover by closed neighbourhoods: branch on the members of N[v] for the
    lowest undominated v, excluding earlier siblings from later branches, and
    prune when ``|chosen| + ceil(undominated / max coverage) >= incumbent``.
    The greedy set seeds the incumbent.
    """
    budget = budget or SolverBudget()
    _check_order(G, budget, "gamma")
    closed = G.closed_masks()
    full = G.full_mask

    best = greedy_dominating_set(G)
    nodes = 0
    # (dominated, forbidden, chosen)
    stack: list[tuple[int, int, tuple[int, ...]]] = [(0, 0, ())]
    while stack:
        dominated, forbidden, chosen = stack.pop()
        nodes += 1
        if nodes > budget.max_nodes:
            raise BudgetExceeded(
                f"gamma search exceeded {budget.max_nodes} nodes", stage="gamma", nodes=nodes
            )
        undom = full & ~dominated
        if not undom:
            if len(chosen) < len(best):
                best = list(chosen)
            continue
        allowed = full & ~forbidden
        maxcov = _max_coverage(allowed, closed, undom)
        if maxcov == 0:
            continue
        remaining = undom.bit_count()
        if len(chosen) + -(-remaining // maxcov) >= len(best):
            continue
        v = (undom & -undom).bit_length() - 1
        cands = _coverage_order(closed[v] & allowed, closed, undom)
        children = []
        excluded = forbidden
        for c in cands:
            children.append((dominated | closed[c], excluded, chosen + (c,)))
            excluded |= 1 << c
        stack.extend(reversed(children))

    return SolverResult(len(best), VertexSet(G.n, best), nodes)


def gamma_roman_exact(G: Graph, budget: SolverBudget | None = None) -> SolverResult:
    """Roman domination number with a minimum-weight RDF as witness.

    Searches over ``S = V2`` only; for fixed S the cheapest completion labels
    N[S] - S with 0 and everything outside N[S] with 1, giving weight
    ``2|S| + n - |N[S]|``. For the lowest unresolved vertex v the branches
    are: put some c in N[v] into S (earlier siblings excluded), or exclude all
    of N[v] from S so that v pays 1. Each undecided vertex costs at least
    ``min(1, 2 / max coverage)``, which gives the pruning bound.
    """
    budget = budget or SolverBudget()
    _check_order(G, budget, "gamma_r")
    closed = G.closed_masks()
    full = G.full_mask

    def completion_weight(s: int) -> int:
        return 2 * s.bit_count() + G.n - closed_neighborhood_mask(G, s).bit_count()

    greedy = as_mask(G, greedy_dominating_set(G))
    best_s = min((0, greedy), key=completion_weight)
    best = completion_weight(best_s)

    nodes = 0
    # (S, covered = N[S], forbidden, paid)
    stack: list[tuple[int, int, int, int]] = [(0, 0, 0, 0)]
    while stack:
        s, covered, forbidden, paid = stack.pop()
        nodes += 1
        if nodes > budget.max_nodes:
            raise BudgetExceeded(
                f"gamma_R search exceeded {budget.max_nodes} nodes", stage="gamma_r", nodes=nodes
            )
        cost = 2 * s.bit_count() + paid.bit_count()
        undecided = full & ~covered & ~paid
        if not undecided:
            if cost < best:
                best, best_s = cost, s
            continue
        allowed = full & ~forbidden & ~s
        maxcov = _max_coverage(allowed, closed, undecided)
        remaining = undecided.bit_count()
        if maxcov <= 2:
            bound = cost + remaining
        else:
            bound = cost + -(-2 * remaining // maxcov)
        if bound >= best:
            continue
        v = (undecided & -undecided).bit_length() - 1
        cands = _coverage_order(closed[v] & allowed, closed, undecided)
        children = []
        excluded = forbidden
        for c in cands:
            children.append((s | 1 << c, covered | closed[c], excluded, paid))
            excluded |= 1 << c
        children.append((s, covered, forbidden | closed[v], paid | 1 << v))
        stack.extend(reversed(children))

    return SolverResult(best, RomanFunction.from_v2(G, best_s), nodes)


def brute_force_gamma(G: Graph, max_order: int = 16) -> int:
    """Smallest k such that some k-subset dominates; subsets tried by increasing size."""
    if G.n > max_order:
        raise BudgetExceeded(f"oracle limited to order {max_order}", stage="oracle_gamma")
    for k in range(G.n + 1):
        for subset in combinations(range(G.n), k):
            if is_dominating(G, subset):
                return k
    raise AssertionError("the full vertex set always dominates")


def brute_force_gamma_roman(G: Graph, max_order: int = 12) -> int:
    """min over all 2^n choices of V2 of ``2|S| + n - |N[S]|``."""
    if G.n > max_order:
        raise BudgetExceeded(f"oracle limited to order {max_order}", stage="oracle_gamma_r")
    closed = G.closed_masks()
    n = G.n
    cover = [0] * (1 << n)
    best = n
    for s in range(1, 1 << n):
        low = s & -s
        cover[s] = cover[s ^ low] | closed[low.bit_length() - 1]
        best = min(best, 2 * s.bit_count() + n - cover[s].bit_count())
    return best


def brute_force_gamma_roman_labelings(G: Graph, max_order: int = 8) -> int:
    """min weight over all 3^n labelings that are RDFs."""
    if G.n > max_order:
        raise BudgetExceeded(f"oracle limited to order {max_order}", stage="oracle_labelings")
    adj = [list(G.neighbors(v)) for v in range(G.n)]
    best = None
    for labels in product((0, 1, 2), repeat=G.n):
        if all(labels[v] or any(labels[u] == 2 for u in adj[v]) for v in range(G.n)):
            w = sum(labels)
            if best is None or w < best:
                best = w
    return best


@dataclass(frozen=True)
class Lemma1Verdict:
    gamma: int
    gamma_r: int
    holds: bool


def check_lemma1(G: Graph, budget: SolverBudget | None = None) -> Lemma1Verdict:
    g = gamma_exact(G, budget).value
    r = gamma_roman_exact(G, budget).value
    return Lemma1Verdict(g, r, g <= r <= 2 * g)


@dataclass(frozen=True)
class Lemma2Verdict:
    v2_dominates: bool
    v2_is_minimum: bool
    subgraph_order: int
    subgraph_gamma: int

    @property
    def holds(self) -> bool:
        return self.v2_dominates and self.v2_is_minimum


def check_lemma2(
    G: Graph,
    f: RomanFunction,
    budget: SolverBudget | None = None,
    gamma_r: int | None = None,
) -> Lemma2Verdict:
    """Check that V2 is a minimum dominating set of G[V0 ∪ V2].

    ``f`` must be a minimum-weight RDF; pass ``gamma_r`` to skip re-solving.
    An empty V0 ∪ V2 is vacuously fine.
    """
    if not is_rdf(G, f):
        raise PreconditionError("f is not a Roman dominating function")
    if gamma_r is None:
        gamma_r = gamma_roman_exact(G, budget).value
    if roman_weight(f) != gamma_r:
        raise PreconditionError(
            f"f has weight {roman_weight(f)} but gamma_R = {gamma_r}; lemma needs an optimal f"
        )
    keep = f.v0 | f.v2
    if not keep:
        return Lemma2Verdict(True, True, 0, 0)
    sub, relabel = induced_subgraph(G, keep)
    v2_new = [relabel[v] for v in f.v2]
    dominates = is_dominating(sub, v2_new)
    sub_gamma = gamma_exact(sub, budget).value
    return Lemma2Verdict(dominates, len(v2_new) == sub_gamma, sub.n, sub_gamma)


def certify_dominating(G: Graph, result: SolverResult) -> bool:
    w = result.witness
    return isinstance(w, VertexSet) and is_dominating(G, w) and len(w) == result.value


def certify_roman(G: Graph, result: SolverResult) -> bool:
    w = result.witness
    return isinstance(w, RomanFunction) and is_rdf(G, w) and roman_weight(w) == result.value

