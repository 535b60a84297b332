"""Triangle detection and listing in H-free graphs for nicely colorable H.

The recursion embeds pattern vertices one at a time, in the order a
NiceCertificate deletes them.  At each level the colored core is peeled at a
degree threshold (listing the triangles it touches), then vertices of the
embedded vertex's color are sampled; each sample restricts the color class of
its pattern neighbors to its own neighborhood and the recursion continues on
the smaller pattern.  Small patterns end in a cleanup with a constant threshold.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .graph import RED, Graph, Triangle, TriColoring, colored_cleanup
from .patterns import NiceCertificate, find_nice_coloring, is_nice, masks
from .reductions import color_coding_rounds
from .rng import derive_rng, log2_ceil

Trace = Callable[[dict], None]


def ceil_power(n: int, e: Fraction) -> int:
    """Smallest integer x >= n**e, computed exactly for rational e >= 0."""
    e = Fraction(e)
    if e < 0:
        raise ValueError("exponent must be non-negative")
    if n <= 1 or e == 0:
        return 1
    p, q = e.numerator, e.denominator
    target = n**p
    x = max(1, math.ceil(n ** float(e)))
    while x > 1 and (x - 1) ** q >= target:
        x -= 1
    while x**q < target:
        x += 1
    return x


def nice_exponent(j: int, has_triangle: bool) -> Fraction:
    base = 4 if has_triangle else 3
    return 1 - Fraction(1, 2 ** (j - base))


def nice_cost_exponents(k: int, has_triangle: bool) -> list[Fraction]:
    """Exponent of n in each unrolled recursion term n^{2+i} D_{k-i} / prod_{j<i} D_{k-j}."""
    base = 4 if has_triangle else 3
    x = {j: 1 - nice_exponent(j, has_triangle) for j in range(base, k + 1)}
    out = []
    for i in range(k - base + 1):
        e = 2 + i + (1 - x[k - i]) - sum(1 - x[k - j] for j in range(i))
        out.append(e)
    return out


@dataclass
class NiceParams:
    thresholds: dict[int, int]
    c_s: float = 8.0
    mode: str = "detect"


def thresholds_nice(k: int, n: int, pattern_has_triangle: bool, c_s: float = 8.0, mode: str = "detect") -> NiceParams:
    base = 4 if pattern_has_triangle else 3
    if k < base:
        raise ValueError(f"pattern size {k} is below the base size {base}")
    th = {j: max(1, ceil_power(n, nice_exponent(j, pattern_has_triangle))) for j in range(base, k + 1)}
    return NiceParams(th, c_s, mode)


# ---------------------------------------------------------------- shared engine


@dataclass
class EmbedPlan:
    """Which pattern vertices get embedded, in order, and what is left for the base case."""

    h_adj: list[int]
    h_colors: tuple[int, ...]
    embed: list[int]
    base_colors: list[int]
    has_triangle: bool

    @classmethod
    def from_certificate(cls, h: Graph, cert: NiceCertificate, base_size: int) -> "EmbedPlan":
        adj = masks(h)
        colors = cert.coloring.colors
        seq = list(cert.deletion_order) + list(cert.leftover)
        cut = max(0, len(seq) - base_size)
        base = [colors[v] for v in seq[cut:]]
        base += [RED] * (base_size - len(base))  # isolated padding keeps an h-free graph free
        return cls(adj, colors, seq[:cut], base, bool(cert.leftover))


class Embedder:
    """Runs the recursive embedding on one properly colored graph.

    ``t`` is None for the H-free variant; otherwise it is the copy budget
    that the sensitive variant divides as it descends.
    """

    def __init__(self, g: Graph, colors: Sequence[int], plan: EmbedPlan, thresholds: dict[int, int],
                 c_s: float, listing: bool, seed, labels: tuple = (), t: int | None = None,
                 trace: Trace | None = None):
        self.adj = g._adj
        self.colors = list(colors)
        self.plan = plan
        self.thresholds = thresholds
        self.c_s = c_s
        self.listing = listing
        self.seed = seed
        self.labels = labels
        self.t = t
        self.trace = trace
        self.log_n = log2_ceil(g.n)
        self.found: set[Triangle] = set()
        self.n_vertices = g.n

    def run(self) -> Triangle | None:
        return self._rec(set(range(self.n_vertices)), 0, self.t, ())

    def _emit(self, tris: list[Triangle]) -> Triangle | None:
        for tri in tris:
            a, b, c = tri
            if not (b in self.adj[a] and c in self.adj[a] and c in self.adj[b]):
                raise AssertionError(f"internal error: {tri} is not a triangle")
        if self.listing:
            self.found.update(tris)
            return None
        return tris[0] if tris else None

    def _rec(self, alive: set[int], pos: int, t: int | None, path: tuple, sample: int | None = None) -> Triangle | None:
        plan = self.plan
        size = len(plan.embed) - pos + len(plan.base_colors)
        if self.trace is not None:
            self.trace({"depth": pos, "pattern": tuple(plan.embed[pos:]), "alive": frozenset(alive), "t": t,
                        "path": path, "sample": sample})
        if pos == len(plan.embed):
            return self._base(alive, t, path)
        delta = self.thresholds[size]
        alive = set(alive)
        hit = self._emit(colored_cleanup(self.adj, self.colors, alive, delta, self.listing))
        if hit is not None:
            return hit
        v = plan.embed[pos]
        rest = 0
        for u in plan.embed[pos + 1:]:
            rest |= 1 << u
        base_vertices_mask = ((1 << len(plan.h_colors)) - 1) & ~sum(1 << u for u in plan.embed[: pos + 1])
        nb = plan.h_adj[v] & (rest | base_vertices_mask)
        color_v = plan.h_colors[v]
        cls = sorted(u for u in alive if self.colors[u] == color_v)
        if nb == 0:
            return self._isolated(alive, pos, t, path, cls, size)
        c_star = plan.h_colors[(nb & -nb).bit_length() - 1]
        if not cls:
            return None
        ell = math.ceil(self.c_s * len(cls) / delta * self.log_n)
        if ell >= len(cls):
            samples = cls
        else:
            rng = derive_rng(self.seed, "embed", *self.labels, *path)
            samples = [cls[i] for i in rng.integers(0, len(cls), ell)]
        t_next = None if t is None else (2 * size * t) // delta
        for i, s in enumerate(samples):
            ns = self.adj[s]
            sub = {u for u in alive if u != s and (self.colors[u] != c_star or u in ns)}
            hit = self._rec(sub, pos + 1, t_next, path + (i,), s)
            if hit is not None:
                return hit
        return None

    def _isolated(self, alive, pos, t, path, cls, size) -> Triangle | None:
        # the embedded vertex has no pattern neighbors left: any spare vertex of its color completes a copy
        if len(cls) >= size:
            t_next = None if t is None else (t * size) // (len(cls) - size + 1)
            return self._rec(alive, pos + 1, t_next, path + (0,))
        # tiny color class: every triangle uses one of its vertices, so check them all
        tris = []
        for s in cls:
            ns = [u for u in self.adj[s] if u in alive]
            for i, u in enumerate(ns):
                au = self.adj[u]
                for w in ns[i + 1:]:
                    if w in au:
                        tris.append(Triangle.of(s, u, w))
                        if not self.listing:
                            return self._emit(tris)
        return self._emit(tris)

    def _base(self, alive: set[int], t: int | None, path: tuple = ()) -> Triangle | None:
        plan = self.plan
        cols = plan.base_colors
        if t is None:
            if plan.has_triangle:
                bound = 1
            elif len(set(cols)) == 3:
                return None
            else:
                bound = 1 if len(set(cols)) == 2 else 2
        else:
            bound = t + 1 if plan.has_triangle else t
        # remove every vertex with at most `bound` neighbors in some other class
        alive = set(alive)
        return self._emit(colored_cleanup(self.adj, self.colors, alive, bound + 1, self.listing))


# ---------------------------------------------------------------- public API


def _nice_certificate(h: Graph, c_h: TriColoring, certificate: NiceCertificate | None) -> NiceCertificate:
    if certificate is not None:
        if certificate.coloring != c_h or not certificate.replay(h):
            raise ValueError("certificate does not replay on the pattern")
        return certificate
    cert = is_nice(h, c_h)
    if cert is None:
        raise ValueError("pattern coloring is not nice")
    return cert


def _run_nice(g, c_g, h, c_h, seed, params, certificate, listing, trace, labels=()):
    c_g.require_proper(g)
    cert = _nice_certificate(h, c_h, certificate)
    has_tri = bool(cert.leftover)
    base = 4 if has_tri else 3
    k = max(h.n, base)
    if params is None:
        params = thresholds_nice(k, g.n, has_tri, c_s=16.0 if listing else 8.0)
    plan = EmbedPlan.from_certificate(h, cert, base)
    eng = Embedder(g, c_g.colors, plan, params.thresholds, params.c_s, listing, seed, labels, None, trace)
    hit = eng.run()
    return hit, eng.found


def base_case_detect(g: Graph, c_g: TriColoring, h: Graph, c_h: TriColoring) -> Triangle | None:
    """Constant-threshold cleanup for a nicely colored 3-vertex pattern or a 4-vertex one with a triangle."""
    cert = _nice_certificate(h, c_h, None)
    has_tri = bool(cert.leftover)
    if not (h.n == 3 or (h.n == 4 and has_tri)):
        raise ValueError("base case needs 3 vertices, or 4 vertices including a triangle")
    hit, _ = _run_nice(g, c_g, h, c_h, None, None, cert, False, None)
    return None if hit is None else g.original_triangle(hit)


def detect_nice_colored(g: Graph, c_g: TriColoring, h: Graph, c_h: TriColoring, seed=None,
                        params: NiceParams | None = None, certificate: NiceCertificate | None = None,
                        trace: Trace | None = None, labels: tuple = ()) -> Triangle | None:
    """A triangle of the colored graph, or None; any answer is a genuine triangle."""
    hit, _ = _run_nice(g, c_g, h, c_h, seed, params, certificate, False, trace, labels)
    return None if hit is None else g.original_triangle(hit)


def list_nice_colored(g: Graph, c_g: TriColoring, h: Graph, c_h: TriColoring, seed=None,
                      params: NiceParams | None = None, certificate: NiceCertificate | None = None,
                      trace: Trace | None = None, labels: tuple = ()) -> list[Triangle]:
    _, found = _run_nice(g, c_g, h, c_h, seed, params, certificate, True, trace, labels)
    return sorted(g.original_triangle(t) for t in found)


def _require_nice(h: Graph) -> NiceCertificate:
    cert = find_nice_coloring(h)
    if cert is None:
        raise ValueError("pattern not nicely colorable")
    return cert


def detect_hfree(g: Graph, h: Graph, seed=None, c_cc: int = 16, c_s: float = 8.0,
                 rounds: int | None = None) -> Triangle | None:
    """Color-code g, then run the colored detector on every round until one reports."""
    cert = _require_nice(h)
    has_tri = bool(cert.leftover)
    params = thresholds_nice(max(h.n, 4 if has_tri else 3), g.n, has_tri, c_s=c_s)
    for i, (gi, ci) in enumerate(color_coding_rounds(g, seed, rounds, c_cc)):
        hit = detect_nice_colored(gi, ci, h, cert.coloring, seed, params, cert, labels=(i,))
        if hit is not None:
            if not hit.is_in(g):
                raise AssertionError(f"internal error: {hit} is not a triangle of the input")
            return hit
    return None


def list_nice(g: Graph, h: Graph, seed=None, c_cc: int = 16, c_s: float = 16.0,
              rounds: int | None = None) -> list[Triangle]:
    cert = _require_nice(h)
    has_tri = bool(cert.leftover)
    params = thresholds_nice(max(h.n, 4 if has_tri else 3), g.n, has_tri, c_s=c_s, mode="list")
    found: set[Triangle] = set()
    for i, (gi, ci) in enumerate(color_coding_rounds(g, seed, rounds, c_cc)):
        found.update(list_nice_colored(gi, ci, h, cert.coloring, seed, params, cert, labels=(i,)))
    return sorted(found)
