import copy
import json

import pytest

from romanviz.audit import audit_pair
from romanviz.families import complete_graph, cycle_graph, path_graph, star_graph
from romanviz.trace import (
    SCHEMA_TAG,
    TraceFormatError,
    dump_trace,
    load_trace,
    trace_from_dict,
    trace_to_dict,
    verify_trace,
)


@pytest.fixture(scope="module")
def k2_trace():
    _, trace = audit_pair(complete_graph(2), complete_graph(2))
    return trace_to_dict(trace)


@pytest.fixture(scope="module")
def c4p3_trace():
    _, trace = audit_pair(cycle_graph(4), path_graph(3))
    return trace_to_dict(trace)


def test_schema_shape(k2_trace):
    d = k2_trace
    assert d["schema"] == SCHEMA_TAG
    assert d["f"]["v2"] == [[0, 0]] and d["f"]["v1"] == [[1, 1]]
    assert d["C"] == [[1, 0]] and d["N"] == 1
    assert d["per_column"] == [{"v": 0, "Q": [0], "R_size": 1}, {"v": 1, "Q": [], "R_size": 0}]
    assert d["per_block"][0]["undominated_count"] == 0
    assert json.loads(json.dumps(d)) == d


def test_roundtrip_and_verify(k2_trace, tmp_path):
    trace = trace_from_dict(k2_trace)
    assert trace_to_dict(trace) == k2_trace
    assert verify_trace(k2_trace).ok
    path = tmp_path / "t.json"
    dump_trace(trace, path)
    assert verify_trace(load_trace(path), resolve=True).ok


def test_q_removal_fails_counting_identity(c4p3_trace):
    d = copy.deepcopy(c4p3_trace)
    col = next(c for c in d["per_column"] if c["Q"])
    col["Q"].pop()
    res = verify_trace(d)
    assert not res.ok
    assert not res.checks["counting_identity"]


def test_n_altered_detected(c4p3_trace):
    d = copy.deepcopy(c4p3_trace)
    d["N"] += 1
    res = verify_trace(d)
    assert not res.ok and not res.checks["counting_identity"]


def test_weight_altered_detected(c4p3_trace):
    d = copy.deepcopy(c4p3_trace)
    d["gamma_r_product"] -= 1
    res = verify_trace(d)
    assert not res.ok and not res.checks["weight_consistency"]


def test_v2_vertex_demoted_detected(c4p3_trace):
    d = copy.deepcopy(c4p3_trace)
    d["f"]["v1"].append(d["f"]["v2"].pop())
    res = verify_trace(d)
    assert not res.checks["weight_consistency"]


def test_flipped_flag_detected(k2_trace):
    d = copy.deepcopy(k2_trace)
    d["checks"]["theorem2"] = False
    res = verify_trace(d)
    assert res.flag_mismatches == ["theorem2"] and not res.ok


def test_resolve_catches_wrong_optimum():
    _, trace = audit_pair(star_graph(4), complete_graph(2))
    d = trace_to_dict(trace)
    d["gamma_product"] += 1
    d["gamma_set_product"].append(
        next(p for p in d["f"]["v0"] if p not in d["gamma_set_product"])
    )
    res = verify_trace(d)
    assert res.checks["gamma_witnesses"]  # certificate alone cannot see it
    res = verify_trace(d, resolve=True)
    assert not res.resolved["gamma_product"] and not res.ok


@pytest.mark.parametrize(
    "mutate",
    [
        lambda d: d.pop("N"),
        lambda d: d.update(schema="other/1"),
        lambda d: d["f"]["v0"].append([9, 9]),
        lambda d: d["f"]["v1"].append(d["f"]["v2"][0]),
        lambda d: d["g"].update(graph6="A"),
        lambda d: d["per_block"][0].update(i=5),
    ],
)
def test_schema_violations(k2_trace, mutate):
    d = copy.deepcopy(k2_trace)
    mutate(d)
    with pytest.raises(TraceFormatError):
        trace_from_dict(d)


def test_bad_json(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    with pytest.raises(TraceFormatError):
        load_trace(path)
