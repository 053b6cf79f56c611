import pytest

from romanviz.families import (
    complete_bipartite_graph,
    complete_graph,
    cycle_graph,
    expand_family_spec,
    generate_family,
    parse_family_spec,
    path_graph,
    random_graph,
    star_graph,
)
from romanviz.graph import GraphError
from romanviz.io import write_graph6


def test_path_4():
    g = generate_family("path", 4)
    assert g.n == 4 and g.m == 3


def test_cycle_3_is_k3():
    assert generate_family("cycle", 3) == complete_graph(3)


def test_random_p0_is_edgeless():
    for seed in (0, 1, 2**63 - 1):
        g = generate_family("random", 5, 0.0, seed)
        assert g.n == 5 and g.m == 0


def test_random_p1_is_complete():
    assert random_graph(6, 1.0, 7) == complete_graph(6)


def test_random_reproducible():
    assert random_graph(8, 0.4, 42) == random_graph(8, 0.4, 42)
    # frozen: MT19937 output for this seed is fixed across platforms
    assert write_graph6(random_graph(8, 0.4, 42)) == "G\\pXYK"


def test_other_families():
    assert star_graph(6).degree(0) == 5 and star_graph(6).m == 5
    kb = complete_bipartite_graph(2, 3)
    assert kb.n == 5 and kb.m == 6
    assert complete_graph(5).m == 10


@pytest.mark.parametrize(
    "kind, params",
    [("path", (0,)), ("cycle", (2,)), ("random", (3, 1.5, 0)), ("wheel", (4,)), ("star", (-1,))],
)
def test_invalid_params(kind, params):
    with pytest.raises(GraphError):
        generate_family(kind, *params)


def test_spec_language():
    assert parse_family_spec("cycle:5") == cycle_graph(5)
    assert parse_family_spec("complete_bipartite:2,3") == complete_bipartite_graph(2, 3)
    assert parse_family_spec("random:8,0.4,42") == random_graph(8, 0.4, 42)
    assert parse_family_spec("random:8,0.4", seed=42) == random_graph(8, 0.4, 42)
    with pytest.raises(GraphError):
        parse_family_spec("random:8,0.4")
    with pytest.raises(GraphError):
        parse_family_spec("path:x")
    with pytest.raises(GraphError):
        parse_family_spec("path:1,2")


def test_range_expansion():
    items = expand_family_spec("path:2..4")
    assert [lab for lab, _ in items] == ["path:2", "path:3", "path:4"]
    assert [g for _, g in items] == [path_graph(2), path_graph(3), path_graph(4)]
