"""Small-graph corpora: every graph up to isomorphism on few vertices, plus seeded random graphs."""

from __future__ import annotations

import random

import networkx as nx

from .families import random_graph
from .graph import Graph

ATLAS_MAX_ORDER = 7


def from_networkx(g: nx.Graph) -> Graph:
    index = {v: i for i, v in enumerate(sorted(g.nodes))}
    return Graph(len(index), [(index[a], index[b]) for a, b in g.edges])


def all_graphs(max_order: int, min_order: int = 1, connected: bool = False) -> list[Graph]:
    """All graphs with ``min_order <= n <= max_order``, one per isomorphism class.

    Backed by the networkx graph atlas, so ``max_order`` is capped at 7.
    Ordering follows the atlas (by order, then edge count, then degree sequence).
    """
    if max_order > ATLAS_MAX_ORDER:
        raise ValueError(f"atlas covers orders up to {ATLAS_MAX_ORDER}, asked for {max_order}")
    out = []
    for g in nx.graph_atlas_g():
        n = g.number_of_nodes()
        if n < max(min_order, 1) or n > max_order:
            continue
        if connected and not nx.is_connected(g):
            continue
        out.append(from_networkx(g))
    return out


def random_corpus(
    count: int, min_order: int, max_order: int, seed: int, p_range: tuple[float, float] = (0.1, 0.9)
) -> list[Graph]:
    """``count`` reproducible G(n, p) graphs with n and p drawn from a master seed."""
    master = random.Random(seed)
    out = []
    for _ in range(count):
        n = master.randint(min_order, max_order)
        p = master.uniform(*p_range)
        out.append(random_graph(n, p, master.getrandbits(64)))
    return out
