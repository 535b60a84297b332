from fractions import Fraction

import numpy as np
import pytest

from conftest import random_tripartite
from trifree.attached import (
    _prepare,
    _split,
    attached_params,
    detect_attached,
    detect_colored_attached,
    list_attached,
    list_colored_attached,
    sparsify_attached,
    tau_exponent,
)
from trifree.graph import Graph, TriColoring
from trifree.nice import ceil_power
from trifree.oracles import brute_triangles, count_colored_copies
from trifree.patterns import builtin_pattern, complete, complete_bipartite, cycle

H7 = builtin_pattern("attached7")
CERT, _, LEFT, LEFT_COLORS, LEFT_CERT = _prepare(H7)


def planted(m: int, colored: bool = True):
    g = complete_bipartite(m, m)
    g = Graph(2 * m + 3, list(g.edges()) + [(2 * m, 2 * m + 1), (2 * m + 1, 2 * m + 2), (2 * m, 2 * m + 2)])
    return g, TriColoring((0,) * m + (1,) * m + (0, 1, 2))


def free_instances(count: int, n: int = 15, p: float = 0.45):
    out = []
    seed = 0
    while len(out) < count:
        g, c = random_tripartite(n, p, seed)
        seed += 1
        if brute_triangles(g) and count_colored_copies(g, c, LEFT, LEFT_COLORS).hom_count == 0:
            out.append((seed, g, c))
    return out


def test_params():
    assert tau_exponent(6) == Fraction(2) + Fraction(1, 32)
    p = attached_params(6, 100)
    assert p.tau == ceil_power(100, Fraction(65, 32))
    assert p.prefix == {}
    assert attached_params(3, 100).tau == 1
    assert set(attached_params(6, 100, s=2).prefix) == {7, 8}


def test_rainbow_triangle_pattern():
    g = complete_bipartite(10, 10)
    c = TriColoring((0,) * 10 + (1,) * 10)
    assert detect_colored_attached(g, c, complete(3), TriColoring((0, 1, 2)), 0) is None
    assert detect_attached(g, complete(3), 0, rounds=6) is None


def test_rejects_patterns_outside_class():
    with pytest.raises(ValueError):
        detect_attached(complete_bipartite(3, 3), cycle(5), 0)
    with pytest.raises(ValueError):
        detect_attached(complete_bipartite(3, 3), complete(4), 0)


@pytest.mark.parametrize("seed, g, c", free_instances(12))
def test_deleted_edges_avoid_triangles(seed, g, c):
    res = sparsify_attached(g, c, LEFT, LEFT_COLORS, seed, LEFT_CERT, listing=True)
    tri_edges = {e for a, b, d in brute_triangles(g) for e in ((a, b), (a, d), (b, d))}
    assert not set(res.deleted) & tri_edges
    assert set(res.triangles) <= set(brute_triangles(g))


def test_post_sparsification_budget():
    sp = _split(LEFT, LEFT_COLORS, LEFT_CERT)
    within = 0
    cases = free_instances(10)
    for seed, g, c in cases:
        res = sparsify_attached(g, c, LEFT, LEFT_COLORS, seed, LEFT_CERT, listing=True)
        left = count_colored_copies(res.graph, c, sp.sub, sp.sub_colors).hom_count
        within += left <= g.n**2 * attached_params(LEFT.n, g.n).tau
    assert within >= 0.95 * len(cases)


def test_colored_planted_and_free():
    g, c = planted(30)
    hits = [detect_colored_attached(g, c, LEFT, LEFT_COLORS, s) for s in range(20)]
    assert sum(h is not None for h in hits) >= 19
    assert all(h is None or h == (60, 61, 62) for h in hits)
    free = complete_bipartite(15, 15)
    assert detect_colored_attached(free, TriColoring((0,) * 15 + (1,) * 15), LEFT, LEFT_COLORS, 0) is None
    assert list_colored_attached(g, c, LEFT, LEFT_COLORS, 0) == [(60, 61, 62)]


@pytest.mark.parametrize("seed", range(8))
def test_soundness_on_arbitrary_graphs(seed):
    g, c = random_tripartite(30, 0.35, seed)
    truth = set(brute_triangles(g))
    hit = detect_colored_attached(g, c, LEFT, LEFT_COLORS, seed)
    assert hit is None or hit in truth
    assert set(list_colored_attached(g, c, LEFT, LEFT_COLORS, seed)) <= truth
    hit = detect_attached(g, H7, seed, rounds=4)
    assert hit is None or hit in truth


def test_uncolored_end_to_end():
    g, _ = planted(25)
    assert sum(detect_attached(g, H7, s, rounds=16) is not None for s in range(10)) >= 9
    assert detect_attached(complete_bipartite(12, 12), H7, 0, rounds=8) is None
    assert list_attached(g, H7, 0) == [(50, 51, 52)]
    assert list_attached(complete_bipartite(8, 8), H7, 0, rounds=4) == []
