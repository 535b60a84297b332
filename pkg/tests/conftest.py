import itertools

import numpy as np
import pytest
from hypothesis import strategies as st

from trifree.graph import Graph, TriColoring


def random_graph(n: int, p: float, seed: int) -> Graph:
    rng = np.random.default_rng(seed)
    return Graph(n, [(u, v) for u, v in itertools.combinations(range(n), 2) if rng.random() < p])


def random_tripartite(n: int, p: float, seed: int) -> tuple[Graph, TriColoring]:
    rng = np.random.default_rng(seed)
    colors = tuple(int(c) for c in rng.integers(0, 3, n))
    edges = [(u, v) for u, v in itertools.combinations(range(n), 2) if colors[u] != colors[v] and rng.random() < p]
    return Graph(n, edges), TriColoring(colors)


def is_triangle(g: Graph, t) -> bool:
    a, b, c = t
    return len({a, b, c}) == 3 and g.has_edge(a, b) and g.has_edge(a, c) and g.has_edge(b, c)


@st.composite
def graphs(draw, max_n=12):
    n = draw(st.integers(0, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph(n, [e for e, keep in zip(pairs, mask) if keep])


@st.composite
def colored_graphs(draw, max_n=12):
    n = draw(st.integers(0, max_n))
    colors = tuple(draw(st.lists(st.integers(0, 2), min_size=n, max_size=n)))
    pairs = [(u, v) for u, v in itertools.combinations(range(n), 2) if colors[u] != colors[v]]
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph(n, [e for e, keep in zip(pairs, mask) if keep]), TriColoring(colors)


@pytest.fixture
def k4():
    return Graph(4, itertools.combinations(range(4), 2))


def lacks_odd_cycle(g: Graph, length: int) -> bool:
    """No cycle of the given odd length, checked one biconnected block at a time."""
    import networkx as nx

    from trifree.oracles import has_cycle

    ng = nx.Graph(list(g.edges()))
    for comp in nx.biconnected_components(ng):
        block = ng.subgraph(comp)
        if len(comp) < length or nx.is_bipartite(block):
            continue
        ids = sorted(comp)
        pos = {v: i for i, v in enumerate(ids)}
        if has_cycle(Graph(len(ids), [(pos[u], pos[v]) for u, v in block.edges()]), length):
            return False
    return True


ACCEPTANCE: list[str] = []


def report_criterion(number: int, ok: bool, message: str) -> None:
    line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {message}"
    ACCEPTANCE.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
