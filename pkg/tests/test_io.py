
import pytest

from romanviz.corpus import all_graphs, random_corpus
from romanviz.families import complete_graph, cycle_graph, path_graph, petersen_graph, random_graph
from romanviz.graph import Graph, GraphError
from romanviz.io import (
    Graph6Error,
    parse_edge_list,
    parse_graph6,
    read_graph_file,
    write_edge_list,
    write_graph6,
)


def test_parse_k2():
    # 'A' -> order 2; '_' -> 95 - 63 = 0b100000, so bit x(0,1) is set
    assert parse_graph6("A_") == complete_graph(2)


def test_write_single_vertex():
    # order 1 -> chr(63 + 1), no edge bits
    assert write_graph6(Graph(1)) == "@"


def test_roundtrip_c5():
    assert parse_graph6(write_graph6(cycle_graph(5))) == cycle_graph(5)


def test_matches_networkx_encoder():
    import networkx as nx

    for g in [petersen_graph(), cycle_graph(7), random_graph(12, 0.5, 9)]:
        ng = nx.Graph()
        ng.add_nodes_from(range(g.n))
        ng.add_edges_from(g.edges())
        ref = nx.to_graph6_bytes(ng, header=False).decode().strip()
        assert write_graph6(g) == ref


def test_known_strings():
    assert write_graph6(path_graph(3)) == "Bg"  # bits x01=1, x02=0, x12=1 -> 101000
    assert write_graph6(complete_graph(4)) == "C~"


def test_header_prefix_accepted():
    assert parse_graph6(">>graph6<<A_") == complete_graph(2)


def test_long_order_header_roundtrip():
    g = random_graph(70, 0.05, 3)
    s = write_graph6(g)
    assert s.startswith("~") and not s.startswith("~~")
    assert parse_graph6(s) == g


@pytest.mark.parametrize("bad", ["", "A", "A__", "A\x20", "~?", "B{", "?"])
def test_malformed(bad):
    with pytest.raises(Graph6Error):
        parse_graph6(bad)


def test_roundtrip_corpus():
    corpus = all_graphs(6) + random_corpus(100, 1, 20, seed=5) + [petersen_graph()]
    for g in corpus:
        assert parse_graph6(write_graph6(g)) == g


def test_edge_list_roundtrip(tmp_path):
    g = petersen_graph()
    text = write_edge_list(g)
    assert text.splitlines()[0] == "10 15"
    assert parse_edge_list(text) == g
    path = tmp_path / "g.txt"
    path.write_text(text)
    assert read_graph_file(path) == [g]


def test_edge_list_errors():
    with pytest.raises(GraphError):
        parse_edge_list("3 2\n0 1\n")
    with pytest.raises(GraphError):
        parse_edge_list("3 1\n0 5\n")
    with pytest.raises(GraphError):
        parse_edge_list("")


def test_graph6_file(tmp_path):
    path = tmp_path / "c.g6"
    gs = [cycle_graph(4), path_graph(5)]
    path.write_text(">>graph6<<" + write_graph6(gs[0]) + "\n" + write_graph6(gs[1]) + "\n")
    assert read_graph_file(path) == gs


def test_atlas_counts():
    # non-isomorphic graphs on 1..6 vertices: 1, 2, 4, 11, 34, 156
    counts = [len(all_graphs(n, min_order=n)) for n in range(1, 7)]
    assert counts == [1, 2, 4, 11, 34, 156]
    # connected ones on 1..4 vertices: 1, 1, 2, 6
    assert [len(all_graphs(n, min_order=n, connected=True)) for n in range(1, 5)] == [1, 1, 2, 6]
