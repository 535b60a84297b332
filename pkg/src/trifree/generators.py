"""Seeded instance generators for each promised graph class."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field

import numpy as np

from .graph import Graph, TriColoring
from .oddcycle import SupersatInstance
from .oracles import has_cycle
from .patterns import cycle
from .rng import derive_rng


@dataclass
class GenSpec:
    family: str
    sizes: tuple[int, ...] = ()
    p: float = 0.5
    seed: int = 0
    plant: bool = False
    k: int = 2

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "GenSpec":
        d = dict(d)
        d["sizes"] = tuple(d.get("sizes", ()))
        return cls(**d)


def _bernoulli_pairs(rng, a: np.ndarray, b: np.ndarray, p: float) -> list[tuple[int, int]]:
    if len(a) == 0 or len(b) == 0:
        return []
    mask = rng.random((len(a), len(b))) < p
    i, j = np.nonzero(mask)
    return list(zip(a[i].tolist(), b[j].tolist()))


def gen_bipartite(n_a: int, n_b: int, p: float, seed) -> Graph:
    """Parts 0..n_a-1 and n_a..n_a+n_b-1, each cross pair present with probability p."""
    rng = derive_rng(seed, "gen-bipartite")
    a = np.arange(n_a)
    b = np.arange(n_a, n_a + n_b)
    return Graph(n_a + n_b, _bernoulli_pairs(rng, a, b, p))


def gen_tripartite(n_a: int, n_b: int, n_c: int, p: float, seed) -> tuple[Graph, TriColoring]:
    rng = derive_rng(seed, "gen-tripartite")
    parts = [np.arange(0, n_a), np.arange(n_a, n_a + n_b), np.arange(n_a + n_b, n_a + n_b + n_c)]
    edges = []
    for x, y in ((0, 1), (0, 2), (1, 2)):
        edges += _bernoulli_pairs(rng, parts[x], parts[y], p)
    colors = (0,) * n_a + (1,) * n_b + (2,) * n_c
    return Graph(n_a + n_b + n_c, edges), TriColoring(colors)


DISJOINT, ATTACH = "disjoint-component", "low-degree-attach"


def plant_triangle(g: Graph, mode: str = DISJOINT, seed=None, stubs: int = 1,
                   forbidden_cycles: tuple[int, ...] = (5,), attempts: int = 50) -> Graph:
    """Add a triangle on three new vertices n, n+1, n+2.

    In attach mode each new vertex also gets up to ``stubs`` edges into g,
    and the result is checked to contain none of the forbidden cycle lengths;
    a failing draw is retried and, after ``attempts`` draws, an error is raised.
    """
    n = g.n
    tri = [(n, n + 1), (n + 1, n + 2), (n, n + 2)]
    base = list(g.edges())
    if mode == DISJOINT:
        return Graph(n + 3, base + tri, _extend(g))
    if mode != ATTACH:
        raise ValueError(f"unknown plant mode {mode!r}")
    if n == 0:
        raise ValueError("attach mode needs a non-empty host")
    rng = derive_rng(seed, "plant-attach")
    for _ in range(attempts):
        extra = set()
        for t in range(3):
            for x in rng.integers(0, n, stubs).tolist():
                extra.add((x, n + t))
        out = Graph(n + 3, base + tri + sorted(extra), _extend(g))
        if not any(has_cycle(out, c) for c in forbidden_cycles):
            return out
    raise RuntimeError("could not attach a triangle without creating a forbidden cycle")


def _extend(g: Graph):
    if g.labels is None:
        return None
    top = max(g.labels, default=-1)
    return list(g.labels) + [top + 1, top + 2, top + 3]


def gen_blowup(base: Graph, part_sizes, p: float, seed) -> Graph:
    """Each base vertex becomes a part; each base edge becomes a p-random biclique."""
    sizes = [part_sizes] * base.n if isinstance(part_sizes, int) else list(part_sizes)
    if len(sizes) != base.n:
        raise ValueError("need one part size per base vertex")
    starts = np.concatenate([[0], np.cumsum(sizes)]).astype(int)
    rng = derive_rng(seed, "gen-blowup")
    edges = []
    for u, v in base.edges():
        edges += _bernoulli_pairs(rng, np.arange(starts[u], starts[u + 1]), np.arange(starts[v], starts[v + 1]), p)
    return Graph(int(starts[-1]), edges)


def gen_supersat(h: int, k: int, leaf_count: int, w_count: int, p: float, seed,
                 min_degree: bool = False) -> SupersatInstance:
    """Random tree with every leaf at depth h, and a random bipartite F between leaves and W.

    With ``min_degree`` each w is topped up to 2k^2 leaf neighbors (or all leaves if fewer).
    """
    if h > k or h < 1:
        raise ValueError("need 1 <= h <= k")
    rng = derive_rng(seed, "gen-supersat")
    parent: dict[int, int | None] = {0: None}
    level = [0]
    nxt_id = 1
    for d in range(1, h + 1):
        width = leaf_count if d == h else max(len(level), int(round(leaf_count ** (d / h))))
        width = max(width, len(level))
        new = []
        # every vertex of the previous level gets a child so all leaves sit at depth h
        owners = list(level) + rng.choice(level, width - len(level)).tolist()
        for o in owners:
            parent[nxt_id] = o
            new.append(nxt_id)
            nxt_id += 1
        level = new
    leaves = np.array(level)
    w = list(range(nxt_id, nxt_id + w_count))
    edges = [(a, b) for b, a in _bernoulli_pairs(rng, np.array(w), leaves, p)]
    if min_degree:
        floor = min(2 * k * k, len(leaves))
        by_w: dict[int, set[int]] = {x: set() for x in w}
        for a, b in edges:
            by_w[b].add(a)
        for x in w:
            missing = floor - len(by_w[x])
            if missing > 0:
                pool = [a for a in leaves.tolist() if a not in by_w[x]]
                by_w[x].update(rng.choice(pool, missing, replace=False).tolist())
        edges = sorted((a, b) for b, s in by_w.items() for a in s)
    return SupersatInstance(parent, w, sorted(edges))


# ---------------------------------------------------------------- odd-cycle-free block graphs


@dataclass
class OddFreeInstance:
    graph: Graph
    k: int
    blocks: list[tuple[str, tuple[int, ...]]] = field(default_factory=list)


def _small_block(rng, size: int) -> list[tuple[int, int]]:
    """A random connected graph on ``size`` vertices (dense enough to hold triangles)."""
    edges = {(i - 1, i) for i in range(1, size)}
    for i in range(size):
        for j in range(i + 2, size):
            if rng.random() < 0.6:
                edges.add((i, j))
    return sorted(edges)


def gen_oddfree(n: int, k: int, seed, triangles: bool = True, p: float = 0.5,
                short: bool = False) -> OddFreeInstance:
    """A C_{2k+1}-free graph built from blocks glued at single cut vertices.

    Every cycle lives inside one block, and each block kind avoids C_{2k+1}:
    bipartite blocks have no odd cycle, blocks with at most 2k vertices are
    too small, books (an edge plus common neighbors) only have 3- and
    4-cycles, and blowups of C_{2k+3} have no odd cycle shorter than 2k+3.
    Without ``triangles`` only bipartite and blowup blocks are used.  With
    ``short`` the small blocks have at most 4 vertices, so every odd cycle of
    length 5..2k+1 is excluded.
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    rng = derive_rng(seed, "gen-oddfree", k)
    edges: list[tuple[int, int]] = []
    blocks: list[tuple[str, tuple[int, ...]]] = []
    count = 0
    kinds = ["bipartite", "blowup"] + (["small", "book"] if triangles else [])

    def attach(size: int) -> list[int]:
        nonlocal count
        if count == 0:
            ids = list(range(size))
            count = size
        else:
            glue = int(rng.integers(0, count))
            ids = [glue] + list(range(count, count + size - 1))
            count += size - 1
        return ids

    while count < n:
        room = n - count + (1 if count else 0)
        kind = kinds[int(rng.integers(0, len(kinds)))]
        if room < 3:
            kind = "bipartite"
        if kind == "bipartite":
            a = int(rng.integers(1, max(2, room // 2) + 1))
            b = int(rng.integers(1, max(2, room - a) + 1)) if room - a >= 1 else 0
            if a + b > room or b == 0:
                a, b = 1, max(1, room - 1)
            ids = attach(a + b)
            local = [(i, a + j) for i in range(a) for j in range(b) if rng.random() < p or j == 0 or i == 0]
        elif kind == "small":
            size = int(rng.integers(3, min(4 if short else 2 * k, room) + 1))
            ids = attach(size)
            local = _small_block(rng, size)
        elif kind == "book":
            pages = int(rng.integers(1, max(1, min(room - 2, 6)) + 1))
            ids = attach(2 + pages)
            local = [(0, 1)] + [(x, 2 + i) for i in range(pages) for x in (0, 1)]
        else:
            m = 2 * k + 3
            if room < m:
                continue
            part = int(rng.integers(1, max(1, min(3, room // m)) + 1))
            ids = attach(m * part)
            local = list(gen_blowup(cycle(m), part, 1.0, int(rng.integers(0, 2**31))).edges())
        edges += [(ids[u], ids[v]) for u, v in local]
        blocks.append((kind, tuple(ids)))
    return OddFreeInstance(Graph(count, edges), k, blocks)
