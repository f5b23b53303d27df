import itertools

import networkx as nx
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from spectrex.graph import Graph

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def graphs(draw, min_n=0, max_n=8):
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [p for p, c in zip(pairs, chosen) if c])


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def from_nx(h: nx.Graph) -> Graph:
    nodes = sorted(h.nodes())
    idx = {v: i for i, v in enumerate(nodes)}
    return Graph.from_edges(len(nodes), [(idx[u], idx[v]) for u, v in h.edges()])


@pytest.fixture(scope="session")
def atlas_by_order():
    """networkx graph atlas (all graphs up to 7 vertices) grouped by order."""
    out = {}
    for h in nx.graph_atlas_g():
        out.setdefault(h.number_of_nodes(), []).append(from_nx(h))
    return out


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
