from itertools import combinations

import networkx as nx
import pytest

from vrcomplex.graph import build_graph

# Worked example: a fan of edges from vertex 2 plus the tetrahedron {0, 1, 2, 10}.
EXAMPLE_EDGES = [
    (2, 1), (2, 0), (1, 0), (2, 3), (2, 4), (2, 5), (2, 6),
    (2, 7), (2, 8), (2, 9), (2, 10), (10, 1), (0, 10),
]


def complete_graph(n):
    return build_graph(n, combinations(range(n), 2))


def networkx_cliques(g, d):
    """Independent oracle: all cliques with at most d + 1 vertices, canonical order."""
    G = nx.Graph()
    G.add_nodes_from(range(g.n))
    G.add_edges_from(g.edges())
    cliques = [tuple(sorted(c)) for c in nx.enumerate_all_cliques(G) if len(c) <= d + 1]
    return sorted(cliques, key=lambda s: (len(s), s))


@pytest.fixture
def example():
    return build_graph(11, EXAMPLE_EDGES)


# Acceptance verdicts, printed as one line each at the end of the session.
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
