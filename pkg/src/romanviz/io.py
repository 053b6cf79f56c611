"""graph6 and plain edge-list readers/writers."""

from __future__ import annotations

from pathlib import Path

from .graph import Graph, GraphError

GRAPH6_HEADER = ">>graph6<<"
MAX_GRAPH6_ORDER = (1 << 36) - 1


class Graph6Error(GraphError):
    """Malformed graph6 input."""


def _encode_order(n: int) -> str:
    if n < 63:
        return chr(n + 63)
    if n <= 258047:
        return "~" + "".join(chr((n >> s & 63) + 63) for s in (12, 6, 0))
    if n <= MAX_GRAPH6_ORDER:
        return "~~" + "".join(chr((n >> s & 63) + 63) for s in (30, 24, 18, 12, 6, 0))
    raise Graph6Error(f"order {n} too large for graph6")


def _sextets(chars: str) -> list[int]:
    out = []
    for ch in chars:
        code = ord(ch)
        if not 63 <= code <= 126:
            raise Graph6Error(f"character {ch!r} outside graph6 range [63, 126]")
        out.append(code - 63)
    return out


def write_graph6(G: Graph) -> str:
    """Encode ``G`` as one graph6 line (no header, no newline)."""
    bits = [
        1 if G.has_edge(i, j) else 0 for j in range(1, G.n) for i in range(j)
    ]
    bits += [0] * (-len(bits) % 6)
    body = "".join(
        chr(63 + int("".join(map(str, bits[k : k + 6])), 2)) for k in range(0, len(bits), 6)
    )
    return _encode_order(G.n) + body


def parse_graph6(text: str) -> Graph:
    """Decode a single graph6 line; an optional ``>>graph6<<`` prefix is accepted."""
    line = text.strip()
    if line.startswith(GRAPH6_HEADER):
        line = line[len(GRAPH6_HEADER):]
    if not line:
        raise Graph6Error("empty graph6 string")
    head = _sextets(line[: 8 if line.startswith("~~") else 4 if line.startswith("~") else 1])
    if line.startswith("~~"):
        if len(line) < 8:
            raise Graph6Error("truncated 8-byte order header")
        n, rest = 0, line[8:]
        for x in head[2:]:
            n = n << 6 | x
    elif line.startswith("~"):
        if len(line) < 4:
            raise Graph6Error("truncated 4-byte order header")
        n, rest = 0, line[4:]
        for x in head[1:]:
            n = n << 6 | x
    else:
        n, rest = head[0], line[1:]
    if n < 1:
        raise Graph6Error("graph6 order 0 is not a valid graph here")
    nbits = n * (n - 1) // 2
    expected = (nbits + 5) // 6
    if len(rest) != expected:
        raise Graph6Error(f"body has {len(rest)} characters, expected {expected} for order {n}")
    sextets = _sextets(rest)
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if sextets[k // 6] >> (5 - k % 6) & 1:
                edges.append((i, j))
            k += 1
    if any(sextets[k // 6] >> (5 - k % 6) & 1 for k in range(nbits, expected * 6)):
        raise Graph6Error("nonzero padding bits")
    return Graph(n, edges)


def read_graph6_file(path: str | Path) -> list[Graph]:
    graphs = []
    for line in Path(path).read_text().splitlines():
        line = line.strip()
        if line and line != GRAPH6_HEADER:
            graphs.append(parse_graph6(line))
    return graphs


def write_edge_list(G: Graph) -> str:
    """Text format: header ``n m`` then one ``u v`` line per edge."""
    edges = G.edges()
    return "\n".join([f"{G.n} {len(edges)}"] + [f"{u} {v}" for u, v in edges]) + "\n"


def parse_edge_list(text: str) -> Graph:
    rows = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not rows or len(rows[0]) != 2:
        raise GraphError("edge list must start with a 'n m' header")
    try:
        n, m = int(rows[0][0]), int(rows[0][1])
        edges = [(int(a), int(b)) for a, b in rows[1:]]
    except ValueError as exc:
        raise GraphError(f"malformed edge list: {exc}") from None
    if len(edges) != m:
        raise GraphError(f"header declares {m} edges but {len(edges)} were given")
    return Graph(n, edges)


def read_graph_file(path: str | Path) -> list[Graph]:
    """Read graph6 lines, or a single edge-list graph if the header is ``n m``."""
    text = Path(path).read_text()
    first = next((ln for ln in text.splitlines() if ln.strip()), "")
    if len(first.split()) == 2 and all(tok.isdigit() for tok in first.split()):
        return [parse_edge_list(text)]
    return read_graph6_file(path)
