import networkx as nx
import pytest

from powerdom.graph import Graph, enumerate_connected_graphs

ACCEPTANCE_LINES: list[str] = []


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.order))
    h.add_edges_from(g.edges)
    return h


def from_nx(h: nx.Graph) -> Graph:
    index = {v: i for i, v in enumerate(sorted(h.nodes))}
    return Graph.from_edges(len(index), [(index[u], index[v]) for u, v in h.edges])


@pytest.fixture(scope="session")
def connected_upto():
    """connected_upto(n): all connected graphs of order 1..n, cached per session."""
    cache: dict[int, list[Graph]] = {}

    def get(n: int) -> list[Graph]:
        for m in range(1, n + 1):
            if m not in cache:
                cache[m] = list(enumerate_connected_graphs(m))
        return [g for m in range(1, n + 1) for g in cache[m]]

    return get


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
