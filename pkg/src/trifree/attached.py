"""Triangle detection and listing for patterns with one attached triangle.

The pattern has a triangle xyz whose vertex z touches only x and y, and the
rest h - z is nicely colorable.  Edges of g that look like xy and sit in many
copies of h - z cannot be in a triangle (that would complete h), so they are
found by sampling and deleted.  What is left has few copies of h - z and goes
to the copy-sensitive detector.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .graph import Graph, Triangle, TriColoring
from .nice import EmbedPlan, Embedder, ceil_power
from .patterns import (
    AttachedCertificate,
    NiceCertificate,
    attached_for_coloring,
    check_attached_triangle,
    is_nice,
    masks,
)
from .reductions import color_coding_rounds
from .rng import derive_rng, log2_ceil
from .sensitive import detect_sensitive, list_sensitive


@dataclass
class AttachedParams:
    tau: int
    samples: int
    prefix: dict[int, int]
    c_a: float = 8.0


def tau_exponent(k: int) -> Fraction:
    return Fraction(k - 4) + Fraction(1, 2 ** (k - 1))


def attached_params(k_left: int, n: int, s: int = 0, c_a: float = 8.0) -> AttachedParams:
    """``k_left`` is the size of the attached part; ``s`` prefix vertices sit above it."""
    n1 = max(n, 1)
    e = tau_exponent(k_left)
    tau = ceil_power(n1, e) if e >= 0 else 1
    samples = math.ceil(c_a * n1 ** (1 - 1 / 2 ** (k_left - 1)) * log2_ceil(n1))
    prefix = {k_left + j: max(1, ceil_power(n1, 1 - Fraction(1, 2 ** (k_left + j - 1)))) for j in range(1, s + 1)}
    return AttachedParams(tau, samples, prefix, c_a)


@dataclass
class _Split:
    """h - z renumbered, plus where x, y and the other vertices went."""

    sub: Graph
    sub_colors: TriColoring
    sub_cert: NiceCertificate
    x: int
    y: int
    rest: list[int]


def _split(h: Graph, c_h: TriColoring, cert: AttachedCertificate) -> _Split:
    keep = sorted(cert.subpattern)
    pos = {v: i for i, v in enumerate(keep)}
    sub = h.subgraph(keep)
    sub_colors = c_h.restrict(keep)
    sub_cert = is_nice(sub, sub_colors)
    if sub_cert is None:
        raise ValueError("attached certificate does not leave a nicely colored remainder")
    x, y, _ = cert.triangle
    rest = [pos[v] for v in keep if v not in (x, y)]
    return _Split(sub, sub_colors, sub_cert, pos[x], pos[y], rest)


def _colored_certificate(h: Graph, c_h: TriColoring, cert: AttachedCertificate | None) -> AttachedCertificate:
    if cert is None:
        cert = attached_for_coloring(h, c_h.colors)
    if cert is None or cert.s != 0 or cert.coloring != c_h or not cert.replay(h):
        raise ValueError("pattern coloring has no attached triangle covering every vertex")
    return cert


def _adjacency_matrix(g: Graph) -> np.ndarray:
    a = np.zeros((g.n, g.n), dtype=bool)
    for u, v in g.edges():
        a[u, v] = a[v, u] = True
    return a


def _copy_rows(a, col, sp: _Split, us, vs, sets):
    """First row of each edge's sample block that, with the edge as xy, holds a copy of h - z.

    ``sets`` has shape (edges, rows, k - 3).  Returns -1 where no row works.
    """
    e, rows, r = sets.shape
    if r == 0:
        return np.zeros(e, dtype=np.int64)
    srt = np.sort(sets, axis=2)
    base = np.all(srt[:, :, 1:] != srt[:, :, :-1], axis=2) if r > 1 else np.ones((e, rows), dtype=bool)
    base &= np.all(sets != us[:, None, None], axis=2) & np.all(sets != vs[:, None, None], axis=2)
    h = sp.sub
    hc = sp.sub_colors.colors
    hit = np.zeros((e, rows), dtype=bool)
    for perm in itertools.permutations(range(r)):
        ok = base.copy()
        img = [sets[:, :, p] for p in perm]
        for i, hv in enumerate(sp.rest):
            m = img[i]
            ok &= col[m] == hc[hv]
            if h.has_edge(hv, sp.x):
                ok &= a[m, us[:, None]]
            if h.has_edge(hv, sp.y):
                ok &= a[m, vs[:, None]]
        for i, j in itertools.combinations(range(r), 2):
            if h.has_edge(sp.rest[i], sp.rest[j]):
                ok &= a[img[i], img[j]]
        hit |= ok
    first = np.argmax(hit, axis=1)
    return np.where(hit.any(axis=1), first, -1)


@dataclass
class SparsifyResult:
    graph: Graph
    triangles: list[Triangle]
    deleted: list[tuple[int, int]]


def sparsify_attached(g: Graph, c_g: TriColoring, h: Graph, c_h: TriColoring, seed=None,
                      certificate: AttachedCertificate | None = None, c_a: float = 8.0,
                      listing: bool = False, labels: tuple = (), budget: int = 1 << 21) -> SparsifyResult:
    """Delete xy-like edges that sample into a copy of h - z, checking each for a triangle first.

    Triangles are reported in g's own ids.  In detection mode the pass stops
    at the first triangle; deletions are applied once at the end of the pass.
    """
    c_g.require_proper(g)
    cert = _colored_certificate(h, c_h, certificate)
    sp = _split(h, c_h, cert)
    n = g.n
    k = h.n
    r = k - 3
    params = attached_params(k, n, 0, c_a)
    col = np.asarray(c_g.colors, dtype=np.int64)
    a = _adjacency_matrix(g)
    cx, cy = c_h[cert.triangle[0]], c_h[cert.triangle[1]]
    pairs = []
    for u, v in g.edges():
        if c_g[u] == cx and c_g[v] == cy:
            pairs.append((u, v))
        elif c_g[v] == cx and c_g[u] == cy:
            pairs.append((v, u))
    exhaustive = params.samples >= math.comb(n, r)
    if exhaustive:
        combos = list(itertools.combinations(range(n), r))
        fixed = np.array(combos, dtype=np.int64).reshape(len(combos), r)
    rows = len(fixed) if exhaustive else params.samples
    rng = derive_rng(seed, "attached-sample", *labels)
    chunk = max(1, budget // max(1, rows * max(r, 1)))
    found: list[Triangle] = []
    deleted: list[tuple[int, int]] = []
    for start in range(0, len(pairs), chunk):
        block = pairs[start:start + chunk]
        us = np.array([p[0] for p in block], dtype=np.int64)
        vs = np.array([p[1] for p in block], dtype=np.int64)
        if exhaustive:
            sets = np.broadcast_to(fixed, (len(block), rows, r))
        else:
            sets = rng.integers(0, max(n, 1), size=(len(block), rows, r))
        first = _copy_rows(a, col, sp, us, vs, sets)
        for i, row in enumerate(first.tolist()):
            if row < 0:
                continue
            u, v = block[i]
            # any vertex closing a triangle on uv lies inside this copy when g is colored-h-free
            closed = False
            for w in sorted(set(sets[i, row].tolist())):
                if a[w, u] and a[w, v]:
                    found.append(Triangle.of(u, v, w))
                    closed = True
                    if not listing:
                        return SparsifyResult(g, found, deleted)
            if not closed:
                deleted.append((min(u, v), max(u, v)))
    return SparsifyResult(g.without_edges(deleted), found, deleted)


def _run_colored(g, c_g, h, c_h, seed, certificate, c_a, listing, labels):
    """Triangles in g's local ids (labels are ignored here)."""
    g = Graph.from_sets(g._adj)
    cert = _colored_certificate(h, c_h, certificate)
    sp = _split(h, c_h, cert)
    res = sparsify_attached(g, c_g, h, c_h, seed, cert, c_a, listing, labels)
    if res.triangles and not listing:
        return res.triangles[:1]
    tau = attached_params(h.n, g.n, 0, c_a).tau
    t = max(g.n, 1) ** 2 * tau
    if listing:
        rest = list_sensitive(res.graph, c_g, sp.sub, sp.sub_colors, t, seed,
                              certificate=sp.sub_cert, labels=labels + ("sensitive",))
        return sorted(set(res.triangles) | set(rest))
    hit = detect_sensitive(res.graph, c_g, sp.sub, sp.sub_colors, t, seed,
                           certificate=sp.sub_cert, labels=labels + ("sensitive",))
    return [] if hit is None else [hit]


def _check(g: Graph, tris: list[Triangle]) -> list[Triangle]:
    for tri in tris:
        if not tri.is_in(g):
            raise AssertionError(f"internal error: {tri} is not a triangle of the input")
    return tris


def detect_colored_attached(g: Graph, c_g: TriColoring, h: Graph, c_h: TriColoring, seed=None,
                            certificate: AttachedCertificate | None = None, c_a: float = 8.0,
                            labels: tuple = ()) -> Triangle | None:
    """Colored detection when the whole colored pattern is a nice part plus one attached triangle."""
    c_g.require_proper(g)
    tris = _check(g, _run_colored(g, c_g, h, c_h, seed, certificate, c_a, False, labels))
    return g.original_triangle(tris[0]) if tris else None


def list_colored_attached(g: Graph, c_g: TriColoring, h: Graph, c_h: TriColoring, seed=None,
                          certificate: AttachedCertificate | None = None, c_a: float = 8.0,
                          labels: tuple = ()) -> list[Triangle]:
    c_g.require_proper(g)
    tris = _check(g, _run_colored(g, c_g, h, c_h, seed, certificate, c_a, True, labels))
    return sorted(g.original_triangle(t) for t in tris)


def _prepare(h: Graph):
    cert = check_attached_triangle(h)
    if cert is None:
        raise ValueError("pattern not in attached-triangle class")
    left_ids = sorted(set(range(h.n)) - set(cert.deletion_order))
    left = h.subgraph(left_ids)
    left_colors = cert.coloring.restrict(left_ids)
    left_cert = attached_for_coloring(left, left_colors.colors)
    if left_cert is None or left_cert.s != 0:
        raise AssertionError("internal error: attached leftover lost its certificate")
    return cert, masks(h), left, left_colors, left_cert


def _run_attached(g, h, seed, c_cc, c_a, rounds, listing):
    cert, h_masks, left, left_colors, left_cert = _prepare(h)
    params = attached_params(left.n, g.n, cert.s, c_a)
    found: set[Triangle] = set()
    for i, (gi, ci) in enumerate(color_coding_rounds(g, seed, rounds, c_cc)):
        plan = EmbedPlan(h_masks, cert.coloring.colors, list(cert.deletion_order), list(left_colors.colors), True)
        eng = _LeafEmbedder(gi, ci, plan, params.prefix, left, left_colors, left_cert, c_a, listing, seed, (i,))
        hit = eng.run()
        if listing:
            found.update(gi.original_triangle(t) for t in eng.found)
        elif hit is not None:
            return _check(g, [gi.original_triangle(hit)])
    return _check(g, sorted(found))


class _LeafEmbedder(Embedder):
    def __init__(self, g, c_g, plan, thresholds, left, left_colors, left_cert, c_a, listing, seed, labels):
        super().__init__(g, c_g.colors, plan, thresholds, 16.0 if listing else 8.0, listing, seed, labels)
        self.g = g
        self.c_g = c_g
        self.left = left
        self.left_colors = left_colors
        self.left_cert = left_cert
        self.c_a = c_a

    def _base(self, alive, t, path=()):
        keep = sorted(alive)
        sub = self.g.subgraph(keep)
        c_sub = self.c_g.restrict(keep)
        tris = _run_colored(sub, c_sub, self.left, self.left_colors, self.seed, self.left_cert, self.c_a,
                            self.listing, self.labels + ("leaf",) + path)
        return self._emit([Triangle.of(keep[a], keep[b], keep[c]) for a, b, c in tris])


def detect_attached(g: Graph, h: Graph, seed=None, c_cc: int = 16, c_a: float = 8.0,
                    rounds: int | None = None) -> Triangle | None:
    """Color coding, the certificate's embedding prefix, then the colored attached routine."""
    tris = _run_attached(g, h, seed, c_cc, c_a, rounds, False)
    return tris[0] if tris else None


def list_attached(g: Graph, h: Graph, seed=None, c_cc: int = 16, c_a: float = 8.0,
                  rounds: int | None = None) -> list[Triangle]:
    return _run_attached(g, h, seed, c_cc, c_a, rounds, True)
