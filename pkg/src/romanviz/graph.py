"""Simple graphs over dense integer vertices, stored as bitset adjacency.

Vertices are ``0..n-1``. Every neighbourhood and vertex set is a Python
int used as a fixed-width bit vector, so unions and domination checks are
word-parallel. :class:`VertexSet` wraps such a mask together with the
order of the graph it belongs to.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator
from dataclasses import dataclass

DEFAULT_MAX_PRODUCT_ORDER = 4096


class GraphError(ValueError):
    """Invalid graph construction or out-of-range vertex reference."""


class ProductTooLarge(GraphError):
    """Cartesian product exceeds the configured order cap."""


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the indices of set bits in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class VertexSet:
    """Immutable subset of ``range(n)``."""

    __slots__ = ("n", "bits")

    def __init__(self, n: int, members: Iterable[int] = ()):
        bits = 0
        for v in members:
            if not 0 <= v < n:
                raise GraphError(f"vertex {v} out of range for order {n}")
            bits |= 1 << v
        self.n = n
        self.bits = bits

    @classmethod
    def from_mask(cls, n: int, bits: int) -> VertexSet:
        if bits < 0 or bits >> n:
            raise GraphError(f"mask {bits:#x} exceeds order {n}")
        vs = cls.__new__(cls)
        vs.n = n
        vs.bits = bits
        return vs

    @classmethod
    def full(cls, n: int) -> VertexSet:
        return cls.from_mask(n, (1 << n) - 1)

    def __iter__(self) -> Iterator[int]:
        return iter_bits(self.bits)

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __contains__(self, v: object) -> bool:
        return isinstance(v, int) and 0 <= v < self.n and bool(self.bits >> v & 1)

    def __bool__(self) -> bool:
        return self.bits != 0

    def _check(self, other: VertexSet) -> None:
        if not isinstance(other, VertexSet):
            raise TypeError(f"expected VertexSet, got {type(other).__name__}")
        if other.n != self.n:
            raise GraphError(f"order mismatch: {self.n} vs {other.n}")

    def __or__(self, other: VertexSet) -> VertexSet:
        self._check(other)
        return VertexSet.from_mask(self.n, self.bits | other.bits)

    def __and__(self, other: VertexSet) -> VertexSet:
        self._check(other)
        return VertexSet.from_mask(self.n, self.bits & other.bits)

    def __sub__(self, other: VertexSet) -> VertexSet:
        self._check(other)
        return VertexSet.from_mask(self.n, self.bits & ~other.bits)

    def complement(self) -> VertexSet:
        return VertexSet.from_mask(self.n, ((1 << self.n) - 1) & ~self.bits)

    def issubset(self, other: VertexSet) -> bool:
        self._check(other)
        return self.bits & ~other.bits == 0

    def tolist(self) -> list[int]:
        return list(self)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, VertexSet):
            return self.n == other.n and self.bits == other.bits
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.n, self.bits))

    def __repr__(self) -> str:
        return f"VertexSet({self.n}, {self.tolist()})"


class Graph:
    """Finite simple undirected graph on vertices ``0..n-1``.

    Duplicate edges collapse to one; self-loops and out-of-range endpoints
    raise :class:`GraphError`. Order 0 is only reachable through
    :func:`induced_subgraph` with ``allow_empty=True``.
    """

    __slots__ = ("n", "_adj")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if not isinstance(n, int) or n < 1:
            raise GraphError(f"graph order must be a positive integer, got {n!r}")
        adj = [0] * n
        for a, b in edges:
            if not (0 <= a < n and 0 <= b < n):
                raise GraphError(f"edge ({a}, {b}) out of range for order {n}")
            if a == b:
                raise GraphError(f"self-loop at vertex {a}")
            adj[a] |= 1 << b
            adj[b] |= 1 << a
        self.n = n
        self._adj = tuple(adj)

    @classmethod
    def _from_masks(cls, adj: Iterable[int], allow_empty: bool = False) -> Graph:
        adj = tuple(adj)
        n = len(adj)
        if n == 0 and not allow_empty:
            raise GraphError("graph order must be at least 1")
        for v, mask in enumerate(adj):
            if mask >> v & 1:
                raise GraphError(f"self-loop at vertex {v}")
            if mask >> n:
                raise GraphError(f"neighbour of {v} out of range")
            for u in iter_bits(mask):
                if not adj[u] >> v & 1:
                    raise GraphError(f"asymmetric adjacency between {v} and {u}")
        g = cls.__new__(cls)
        g.n = n
        g._adj = adj
        return g

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def _vertex(self, v: int) -> int:
        if not 0 <= v < self.n:
            raise GraphError(f"vertex {v} out of range for order {self.n}")
        return v

    def neighbor_mask(self, v: int) -> int:
        return self._adj[self._vertex(v)]

    def closed_mask(self, v: int) -> int:
        return self._adj[self._vertex(v)] | 1 << v

    def adjacency_masks(self) -> tuple[int, ...]:
        return self._adj

    def closed_masks(self) -> tuple[int, ...]:
        return tuple(m | 1 << v for v, m in enumerate(self._adj))

    def neighbors(self, v: int) -> VertexSet:
        return VertexSet.from_mask(self.n, self.neighbor_mask(v))

    def degree(self, v: int) -> int:
        return self.neighbor_mask(v).bit_count()

    def has_edge(self, a: int, b: int) -> bool:
        return bool(self.neighbor_mask(a) >> self._vertex(b) & 1)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in iter_bits(self._adj[u] >> u + 1 << u + 1)]

    @property
    def m(self) -> int:
        return sum(mask.bit_count() for mask in self._adj) // 2

    def vertices(self) -> VertexSet:
        return VertexSet.full(self.n)

    def isolated_vertices(self) -> VertexSet:
        return VertexSet(self.n, (v for v, mask in enumerate(self._adj) if mask == 0))

    def add_edge(self, a: int, b: int) -> Graph:
        """Return a new graph with edge ``ab`` added."""
        return Graph(self.n, self.edges() + [(a, b)])

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Graph):
            return self.n == other.n and self._adj == other._adj
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.n, self._adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"


def new_graph(n: int, edges: Iterable[tuple[int, int]] = ()) -> Graph:
    return Graph(n, edges)


def as_mask(G: Graph, S: VertexSet | Iterable[int] | int) -> int:
    """Coerce a vertex set given as VertexSet, iterable or raw mask."""
    if isinstance(S, VertexSet):
        if S.n != G.n:
            raise GraphError(f"vertex set of order {S.n} used with graph of order {G.n}")
        return S.bits
    if isinstance(S, int):
        if S < 0 or S >> G.n:
            raise GraphError(f"mask {S:#x} exceeds order {G.n}")
        return S
    return VertexSet(G.n, S).bits


def open_neighborhood_mask(G: Graph, mask: int) -> int:
    adj = G.adjacency_masks()
    out = 0
    for v in iter_bits(mask):
        out |= adj[v]
    return out


def closed_neighborhood_mask(G: Graph, mask: int) -> int:
    return open_neighborhood_mask(G, mask) | mask


def open_neighborhood_of_set(G: Graph, S: VertexSet | Iterable[int]) -> VertexSet:
    return VertexSet.from_mask(G.n, open_neighborhood_mask(G, as_mask(G, S)))


def closed_neighborhood_of_set(G: Graph, S: VertexSet | Iterable[int]) -> VertexSet:
    return VertexSet.from_mask(G.n, closed_neighborhood_mask(G, as_mask(G, S)))


def is_dominating(G: Graph, S: VertexSet | Iterable[int]) -> bool:
    return closed_neighborhood_mask(G, as_mask(G, S)) == G.full_mask


def induced_subgraph(
    G: Graph, S: VertexSet | Iterable[int], allow_empty: bool = False
) -> tuple[Graph, dict[int, int]]:
    """Subgraph induced by ``S`` with vertices relabelled in ascending order.

    Returns the subgraph and the old-to-new id map. An empty ``S`` raises
    unless ``allow_empty`` is set, in which case the order-0 graph is returned.
    """
    mask = as_mask(G, S)
    if mask == 0 and not allow_empty:
        raise GraphError("induced subgraph on the empty set has order 0")
    relabel = {old: new for new, old in enumerate(iter_bits(mask))}
    adj = G.adjacency_masks()
    sub = []
    for old in relabel:
        row = 0
        for w in iter_bits(adj[old] & mask):
            row |= 1 << relabel[w]
        sub.append(row)
    return Graph._from_masks(sub, allow_empty=True), relabel


@dataclass(frozen=True)
class LabeledProduct:
    """G□H together with the row-major coordinate bijection ``(u, v) -> u*|H| + v``."""

    product: Graph
    g_order: int
    h_order: int

    def encode(self, u: int, v: int) -> int:
        if not (0 <= u < self.g_order and 0 <= v < self.h_order):
            raise GraphError(f"coordinate ({u}, {v}) outside {self.g_order}x{self.h_order} grid")
        return u * self.h_order + v

    def decode(self, x: int) -> tuple[int, int]:
        if not 0 <= x < self.product.n:
            raise GraphError(f"product vertex {x} out of range")
        return divmod(x, self.h_order)

    def column_mask(self, v: int) -> int:
        """Product mask of ``V(G) x {v}``."""
        return sum(1 << self.encode(u, v) for u in range(self.g_order))

    def cylinder_mask(self, g_mask: int) -> int:
        """Product mask of ``A x V(H)`` for the G-vertex set ``A``."""
        row = (1 << self.h_order) - 1
        out = 0
        for u in iter_bits(g_mask):
            out |= row << u * self.h_order
        return out


def cartesian_product(
    G: Graph, H: Graph, max_order: int = DEFAULT_MAX_PRODUCT_ORDER
) -> LabeledProduct:
    """Cartesian product: adjacent iff equal in one coordinate, adjacent in the other."""
    order = G.n * H.n
    if order > max_order:
        raise ProductTooLarge(f"product order {order} exceeds cap {max_order}")
    hn = H.n
    g_adj, h_adj = G.adjacency_masks(), H.adjacency_masks()
    adj = []
    for u in range(G.n):
        g_nbrs = list(iter_bits(g_adj[u]))
        for v in range(hn):
            row = h_adj[v] << u * hn
            for u2 in g_nbrs:
                row |= 1 << u2 * hn + v
            adj.append(row)
    return LabeledProduct(Graph._from_masks(adj), G.n, hn)
