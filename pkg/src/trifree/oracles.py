"""Slow, exhaustive reference answers: triangles, pattern copies, cycles."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .graph import Graph, Triangle, TriColoring


@dataclass(frozen=True)
class CopyCount:
    hom_count: int
    subgraph_count: int


def brute_triangles(g: Graph) -> list[Triangle]:
    """All triangles, sorted.  Each triple u<v<w is found once from its lowest edge."""
    out = []
    for u in g.vertices():
        higher = [v for v in g.neighbors(u) if v > u]
        for i, v in enumerate(higher):
            av = g.adj(v)
            for w in higher[i + 1:]:
                if w in av:
                    out.append(Triangle(u, v, w))
    return out


def has_triangle(g: Graph) -> bool:
    for u, v in g.edges():
        if g.adj(u) & g.adj(v):
            return True
    return False


def _pattern_order(h: Graph) -> list[int]:
    """Pivot order: highest degree first, then keep growing through mapped neighbors."""
    order: list[int] = []
    placed: set[int] = set()
    while len(order) < h.n:
        frontier = [v for v in h.vertices() if v not in placed and h.adj(v) & placed]
        pool = frontier or [v for v in h.vertices() if v not in placed]
        v = max(pool, key=lambda x: (len(h.adj(x) & placed), h.degree(x), -x))
        order.append(v)
        placed.add(v)
    return order


def iter_copies(
    g: Graph,
    h: Graph,
    c_g: Sequence[int] | None = None,
    c_h: Sequence[int] | None = None,
) -> Iterator[tuple[int, ...]]:
    """Yield every injective homomorphism h -> g as a tuple (image of each h vertex).

    With colorings given, images must also preserve colors.
    """
    if h.n == 0:
        yield ()
        return
    order = _pattern_order(h)
    back = [[u for u in h.neighbors(v) if order.index(u) < i] for i, v in enumerate(order)]
    phi = [-1] * h.n
    used: set[int] = set()
    all_vertices = list(g.vertices())

    def candidates(i: int):
        v = order[i]
        nb = back[i]
        if nb:
            anchor = min((phi[u] for u in nb), key=g.degree)
            pool = g.neighbors(anchor)
        else:
            pool = all_vertices
        for x in pool:
            if x in used:
                continue
            if c_g is not None and c_g[x] != c_h[v]:
                continue
            ax = g.adj(x)
            if all(phi[u] in ax for u in nb):
                yield x

    def rec(i: int):
        if i == h.n:
            yield tuple(phi)
            return
        v = order[i]
        for x in candidates(i):
            phi[v] = x
            used.add(x)
            yield from rec(i + 1)
            used.discard(x)
        phi[v] = -1

    yield from rec(0)


def _count(g, h, c_g=None, c_h=None) -> int:
    return sum(1 for _ in iter_copies(g, h, c_g, c_h))


def count_copies(g: Graph, h: Graph) -> CopyCount:
    hom = _count(g, h)
    aut = _count(h, h)
    return CopyCount(hom, hom // aut)


def count_colored_copies(g: Graph, c_g: TriColoring, h: Graph, c_h: TriColoring) -> CopyCount:
    """Color-preserving copies; the divisor is the color-preserving automorphism count of h."""
    c_g.require_proper(g)
    c_h.require_proper(h)
    hom = _count(g, h, c_g.colors, c_h.colors)
    aut = _count(h, h, c_h.colors, c_h.colors)
    return CopyCount(hom, hom // aut)


def copies_per_vertex(
    g: Graph, h: Graph, c_g: TriColoring | None = None, c_h: TriColoring | None = None
) -> list[int]:
    """Number of subgraph copies of h containing each vertex of g."""
    cg = c_g.colors if c_g is not None else None
    ch = c_h.colors if c_h is not None else None
    aut = _count(h, h, ch, ch)
    per = [0] * g.n
    for phi in iter_copies(g, h, cg, ch):
        for x in phi:
            per[x] += 1
    return [p // aut for p in per]


def heavy_vertices(per_vertex: Sequence[int], k: int, t: int, delta: int) -> list[int]:
    """Vertices lying in more than 2kt/delta copies."""
    return [v for v, cnt in enumerate(per_vertex) if cnt * delta > 2 * k * t]


def _canonical_cycle(path: Sequence[int]) -> tuple[int, ...]:
    i = path.index(min(path))
    rot = tuple(path[i:]) + tuple(path[:i])
    rev = (rot[0],) + tuple(reversed(rot[1:]))
    return min(rot, rev)


def find_cycles(g: Graph, length: int, anchor: tuple[int, int] | None = None) -> list[tuple[int, ...]]:
    """All simple cycles of the given length, each once, as canonical vertex tuples.

    A cycle is written starting at its smallest vertex and oriented so the
    second entry is smaller than the last.
    """
    if length < 3:
        raise ValueError("cycles have length at least 3")
    if anchor is not None:
        u, v = anchor
        if not g.has_edge(u, v):
            return []
        found = set()
        for path in _paths(g, v, u, length - 1, {v}):
            found.add(_canonical_cycle([u] + path[:-1]))
        return sorted(found)
    out = []
    for s in g.vertices():
        stack = [(s, [s])]
        while stack:
            x, path = stack.pop()
            if len(path) == length:
                if s in g.adj(x) and path[1] < path[-1]:
                    out.append(tuple(path))
                continue
            for y in g.neighbors(x):
                if y > s and y not in path:
                    stack.append((y, path + [y]))
    return sorted(out)


def _paths(g: Graph, start: int, target: int, steps: int, used: set[int]):
    """Simple paths of exactly ``steps`` edges from start to target (target last)."""
    if steps == 1:
        if target in g.adj(start):
            yield [start, target]
        return
    for y in g.neighbors(start):
        if y == target or y in used:
            continue
        used.add(y)
        for rest in _paths(g, y, target, steps - 1, used):
            yield [start] + rest
        used.discard(y)


def has_cycle(g: Graph, length: int) -> bool:
    """Early-exit cycle search, pruned by BFS distance back to the start."""
    from .graph import bfs_layers

    for s in g.vertices():
        dist = {}
        for i, layer in enumerate(bfs_layers(g, s).layers):
            for x in layer:
                dist[x] = i
        budget = length

        def rec(x, depth, path):
            if depth == budget:
                return s in g.adj(x)
            remaining = budget - depth
            for y in g.neighbors(x):
                if y > s and y not in path and dist.get(y, budget + 1) <= remaining:
                    path.add(y)
                    if rec(y, depth + 1, path):
                        return True
                    path.discard(y)
            return False

        if rec(s, 1, {s}):
            return True
    return False
