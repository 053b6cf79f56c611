from itertools import combinations

from hypothesis import strategies as st

from romanviz.graph import Graph


@st.composite
def graphs(draw, min_order=1, max_order=8):
    n = draw(st.integers(min_order, max_order))
    pairs = list(combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph(n, chosen)


def pytest_configure(config):
    config.acceptance_log = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "acceptance_log", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
