"""Random 3-coloring (color coding) and triangle isolation (sieving)."""

from __future__ import annotations

import math
from typing import Iterator

from .graph import BLUE, GREEN, RED, Graph, TriColoring
from .rng import derive_rng, log2_ceil

ReductionOutput = list[tuple[Graph, TriColoring]]


def color_coding_round(g: Graph, seed: int | None, index: int) -> tuple[Graph, TriColoring]:
    """One round: i.i.d. uniform colors, monochromatic edges dropped."""
    rng = derive_rng(seed, "color-coding", index)
    colors = tuple(int(c) for c in rng.integers(0, 3, g.n))
    adj = [[u for u in g.adj(v) if colors[u] != colors[v]] for v in g.vertices()]
    return Graph.from_sets(adj, g.labels), TriColoring(colors)


def color_coding_rounds(g: Graph, seed: int | None, rounds: int | None = None, c_cc: int = 16) -> Iterator[tuple[Graph, TriColoring]]:
    if rounds is None:
        rounds = c_cc * log2_ceil(g.n)
    for i in range(rounds):
        yield color_coding_round(g, seed, i)


def color_coding(g: Graph, seed: int | None, rounds: int | None = None, c_cc: int = 16) -> ReductionOutput:
    """``c_cc * ceil(log2 n)`` properly 3-colored subgraphs unless ``rounds`` is given."""
    return list(color_coding_rounds(g, seed, rounds, c_cc))


def sieve_pass(g: Graph, c: TriColoring, seed: int | None, rep: int) -> ReductionOutput:
    """One pass over the (p, q) grid.

    Red vertices are kept with probability p = 2^-i, i = 0..ceil(log2 n); then
    green-blue edges are kept with probability q = 2^-j, j = 0..ceil(log2 n^2).
    Each (i, j) cell draws from its own stream.
    """
    n = max(g.n, 2)
    ip = math.ceil(math.log2(n))
    jq = math.ceil(math.log2(n * n))
    reds = c.color_class(RED)
    gb_edges = [(u, v) for u, v in g.edges() if {c[u], c[v]} == {GREEN, BLUE}]
    out = []
    for i in range(ip + 1):
        rng = derive_rng(seed, "sieve-red", rep, i)
        keep_red = {v for v, x in zip(reds, rng.random(len(reds))) if x < 2.0**-i}
        kept = [v for v in g.vertices() if c[v] != RED or v in keep_red]
        for j in range(jq + 1):
            rng_e = derive_rng(seed, "sieve-edge", rep, i, j)
            drop = [e for e, x in zip(gb_edges, rng_e.random(len(gb_edges))) if x >= 2.0**-j]
            sub = g.without_edges(drop).subgraph(kept)
            out.append((sub, c.restrict(kept)))
    return out


def sieving(g: Graph, c: TriColoring, seed: int | None, c_sv: int = 8, passes: int | None = None) -> ReductionOutput:
    c.require_proper(g)
    if passes is None:
        passes = c_sv * log2_ceil(g.n)
    out: ReductionOutput = []
    for rep in range(passes):
        out.extend(sieve_pass(g, c, seed, rep))
    return out
