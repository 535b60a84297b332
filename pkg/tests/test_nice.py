from fractions import Fraction

import pytest

from conftest import is_triangle, random_tripartite
from trifree.graph import Graph, TriColoring
from trifree.nice import (
    base_case_detect,
    ceil_power,
    detect_hfree,
    detect_nice_colored,
    list_nice,
    list_nice_colored,
    nice_cost_exponents,
    thresholds_nice,
)
from trifree.oracles import brute_triangles, count_colored_copies
from trifree.patterns import complete, complete_bipartite, cycle, find_nice_coloring


def planted_bipartite(m: int) -> tuple[Graph, TriColoring]:
    """K_{m,m} colored red/blue plus a disjoint rainbow triangle."""
    g = Graph(2 * m + 3, [(i, m + j) for i in range(m) for j in range(m)]
              + [(2 * m, 2 * m + 1), (2 * m + 1, 2 * m + 2), (2 * m, 2 * m + 2)])
    return g, TriColoring((0,) * m + (1,) * m + (0, 1, 2))


def test_ceil_power_exact():
    assert ceil_power(10000, Fraction(3, 4)) == 1000
    assert ceil_power(10001, Fraction(1, 2)) == 101
    assert ceil_power(8, Fraction(1, 3)) == 2
    assert ceil_power(9, Fraction(1, 3)) == 3
    assert ceil_power(5, Fraction(0)) == 1


def test_threshold_examples():
    n = 10000
    th = thresholds_nice(5, n, False).thresholds
    assert th == {5: ceil_power(n, Fraction(3, 4)), 4: ceil_power(n, Fraction(1, 2)), 3: 1}
    assert thresholds_nice(4, n, True).thresholds == {4: 1}
    assert thresholds_nice(3, n, False).thresholds == {3: 1}


def test_geometric_sum_identity_and_balanced_costs():
    for k in range(3, 13):
        for j in range(3, k + 1):
            assert sum(Fraction(1, 2**i) for i in range(j, k + 1)) == Fraction(1, 2 ** (j - 1)) - Fraction(1, 2**k)
        assert set(nice_cost_exponents(k, False)) == {3 - Fraction(1, 2 ** (k - 3))}
        if k >= 4:
            assert set(nice_cost_exponents(k, True)) == {3 - Fraction(1, 2 ** (k - 4))}


def test_base_case_rainbow_triangle_returns_none():
    g, c = random_tripartite(30, 0.5, 0)
    assert base_case_detect(g, c, complete(3), TriColoring((0, 1, 2))) is None


def test_base_case_path_rbr():
    # triangle 0(R) 1(B) 2(G); other blue vertices have exactly one red neighbor each
    edges = [(0, 1), (1, 2), (0, 2)]
    colors = [0, 1, 2]
    for i in range(4):
        b, r = 3 + 2 * i, 4 + 2 * i
        colors += [1, 0]
        edges += [(b, r), (b, 2), (r, 2)] if i else [(b, r), (b, 2)]
    g = Graph(len(colors), edges)
    c = TriColoring(tuple(colors))
    h = Graph(3, [(0, 1), (1, 2)])
    assert count_colored_copies(g, c, h, TriColoring((0, 1, 0))).hom_count == 0
    hit = base_case_detect(g, c, h, TriColoring((0, 1, 0)))
    assert hit is not None and is_triangle(g, hit)


def test_base_case_small_color_class():
    # reds 0, 1; blues 2..11; greens 12..21; triangle 0-2-12
    blues, greens = range(2, 12), range(12, 22)
    edges = [(0, 2), (0, 12), (2, 12), (1, 5)]
    edges += [(u, v) for u in blues for v in greens if (u + v) % 3]
    colors = (0, 0) + (1,) * 10 + (2,) * 10
    g = Graph(len(colors), edges)
    hit = base_case_detect(g, TriColoring(colors), Graph(3), TriColoring((0, 0, 0)))
    assert hit is not None and is_triangle(g, hit)


def test_detect_nice_colored_planted():
    h = cycle(5)
    cert = find_nice_coloring(h)
    g, c = planted_bipartite(40)
    found = sum(detect_nice_colored(g, c, h, cert.coloring, seed) is not None for seed in range(40))
    assert found >= 38


def test_detect_nice_colored_triangle_free():
    h = cycle(5)
    cert = find_nice_coloring(h)
    g = complete_bipartite(30, 30)
    c = TriColoring((0,) * 30 + (1,) * 30)
    assert all(detect_nice_colored(g, c, h, cert.coloring, s) is None for s in range(10))


@pytest.mark.parametrize("seed", range(12))
def test_soundness_on_arbitrary_colored_graphs(seed):
    g, c = random_tripartite(40, 0.3, seed)
    h = cycle(5)
    col = find_nice_coloring(h).coloring
    truth = set(brute_triangles(g))
    hit = detect_nice_colored(g, c, h, col, seed)
    assert hit is None or hit in truth
    assert set(list_nice_colored(g, c, h, col, seed)) <= truth


def _residual_is_free(g, c, h, col, embedded, alive) -> bool:
    keep = [v for v in h.vertices() if v not in embedded]
    sub_h = h.subgraph(keep)
    sub_c = TriColoring(tuple(col[v] for v in keep))
    verts = sorted(alive)
    sub_g = g.subgraph(verts)
    return count_colored_copies(sub_g, c.restrict(verts), sub_h, sub_c).hom_count == 0


@pytest.mark.parametrize("seed", range(8))
def test_recursion_preserves_freeness(seed):
    h = cycle(5)
    cert = find_nice_coloring(h)
    order = list(cert.deletion_order) + list(cert.leftover)
    for attempt in range(50):
        g, c = random_tripartite(15, 0.35, 100 * seed + attempt)
        if count_colored_copies(g, c, h, cert.coloring).hom_count == 0:
            break
    else:
        pytest.skip("no colored-C5-free sample")
    events = []
    detect_nice_colored(g, c, h, cert.coloring, seed, trace=events.append)
    depths = {e["depth"] for e in events}
    assert max(depths) <= len(order) - 3
    for e in events:
        assert _residual_is_free(g, c, h, cert.coloring, order[: e["depth"]], e["alive"])


def test_recursion_reaches_full_depth():
    h = cycle(5)
    cert = find_nice_coloring(h)
    m = 50
    g = Graph(3 * m, [(u, v) for u in range(3 * m) for v in range(u + 1, 3 * m) if u // m != v // m])
    c = TriColoring(tuple(v // m for v in range(3 * m)))
    events = []
    detect_nice_colored(g, c, h, cert.coloring, 0, trace=events.append)
    assert max(e["depth"] for e in events) == h.n - 3


def test_detect_hfree_end_to_end():
    g = complete_bipartite(30, 30)
    g = Graph(g.n + 3, list(g.edges()) + [(60, 61), (61, 62), (60, 62)])
    assert sum(detect_hfree(g, cycle(5), s, rounds=12) is not None for s in range(20)) >= 19
    assert detect_hfree(complete_bipartite(20, 20), cycle(5), 0, rounds=12) is None
    with pytest.raises(ValueError):
        detect_hfree(g, complete(4), 0)


def test_list_nice_finds_every_planted_triangle():
    edges = [(i, 20 + j) for i in range(20) for j in range(20) if (i + j) % 2]
    n = 40
    for _ in range(4):
        edges += [(n, n + 1), (n + 1, n + 2), (n, n + 2)]
        n += 3
    g = Graph(n, edges)
    truth = brute_triangles(g)
    assert len(truth) == 4
    runs = [list_nice(g, cycle(5), s) for s in range(10)]
    assert all(set(r) <= set(truth) for r in runs)
    assert sum(r == truth for r in runs) >= 9
    assert list_nice(complete_bipartite(10, 10), cycle(5), 1) == []
