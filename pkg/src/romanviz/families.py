"""Named graph families and the ``name:params`` spec mini-language.

Random graphs are Erdos-Renyi G(n, p) driven by :class:`random.Random`
(MT19937) seeded with the given integer. Candidate pairs ``(i, j)`` with
``i < j`` are visited in lexicographic order and each is kept when the next
``random()`` draw is strictly below ``p``. MT19937 seeded from an int and its
``random()`` output are fixed by the CPython docs, so a seed regenerates the
same graph on every platform.
"""

from __future__ import annotations

import random
from itertools import combinations

from .graph import Graph, GraphError

FAMILY_KINDS = ("path", "cycle", "complete", "complete_bipartite", "star", "random", "petersen")


def path_graph(n: int) -> Graph:
    _require_size(n, 1, "path")
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    _require_size(n, 3, "cycle")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    _require_size(n, 1, "complete")
    return Graph(n, combinations(range(n), 2))


def complete_bipartite_graph(a: int, b: int) -> Graph:
    _require_size(a, 1, "complete_bipartite")
    _require_size(b, 1, "complete_bipartite")
    return Graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def star_graph(n: int) -> Graph:
    """Star on ``n`` vertices in total: centre 0 joined to ``1..n-1``."""
    _require_size(n, 1, "star")
    return Graph(n, [(0, i) for i in range(1, n)])


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, outer + spokes + inner)


def random_graph(n: int, p: float, seed: int) -> Graph:
    _require_size(n, 1, "random")
    if not 0.0 <= p <= 1.0:
        raise GraphError(f"edge probability must lie in [0, 1], got {p}")
    rng = random.Random(seed)
    return Graph(n, [(i, j) for i, j in combinations(range(n), 2) if rng.random() < p])


def _require_size(n: int, low: int, kind: str) -> None:
    if not isinstance(n, int) or n < low:
        raise GraphError(f"{kind} requires size >= {low}, got {n!r}")


def generate_family(kind: str, *params) -> Graph:
    if kind == "path":
        return path_graph(*params)
    if kind == "cycle":
        return cycle_graph(*params)
    if kind == "complete":
        return complete_graph(*params)
    if kind == "complete_bipartite":
        return complete_bipartite_graph(*params)
    if kind == "star":
        return star_graph(*params)
    if kind == "random":
        return random_graph(*params)
    if kind == "petersen":
        return petersen_graph(*params)
    raise GraphError(f"unknown family {kind!r}; expected one of {', '.join(FAMILY_KINDS)}")


def _parse_number(text: str) -> int | float:
    text = text.strip()
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        raise GraphError(f"bad family parameter {text!r}") from None


def parse_family_spec(spec: str, seed: int | None = None) -> Graph:
    """Build a graph from ``name:params``, e.g. ``cycle:5`` or ``random:8,0.4,42``.

    A ``random`` spec without a seed uses ``seed``; omitting both is an error.
    """
    name, _, rest = spec.partition(":")
    name = name.strip()
    params = [_parse_number(p) for p in rest.split(",")] if rest.strip() else []
    if name == "random":
        if len(params) == 2:
            if seed is None:
                raise GraphError("random family needs a seed (random:n,p,seed or --seed)")
            params.append(seed)
        if len(params) != 3:
            raise GraphError(f"random expects n,p[,seed], got {rest!r}")
        params[1] = float(params[1])
    try:
        return generate_family(name, *params)
    except TypeError as exc:
        raise GraphError(f"bad parameters for {name!r}: {rest!r}") from exc


def expand_family_spec(spec: str, seed: int | None = None) -> list[tuple[str, Graph]]:
    """Expand a spec that may carry a size range, e.g. ``path:2..6``.

    Returns ``(label, graph)`` pairs in ascending size order.
    """
    name, _, rest = spec.partition(":")
    if ".." in rest and "," not in rest:
        lo, _, hi = rest.partition("..")
        try:
            lo_i, hi_i = int(lo), int(hi)
        except ValueError:
            raise GraphError(f"bad range in {spec!r}") from None
        labels = [f"{name}:{k}" for k in range(lo_i, hi_i + 1)]
        return [(lab, parse_family_spec(lab, seed)) for lab in labels]
    return [(spec, parse_family_spec(spec, seed))]
