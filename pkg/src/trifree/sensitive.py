"""Detection and listing whose cost adapts to an upper bound t on pattern copies.

Same recursion as the H-free detector, but each level passes the budget
t' = floor(2 k' t / D) down to its branches and the thresholds depend on t.
The single-vertex (or triangle-plus-one) base case cleans up with threshold t.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .graph import Graph, Triangle, TriColoring
from .nice import EmbedPlan, Embedder, Trace, _nice_certificate, ceil_power
from .oracles import has_triangle as _graph_has_triangle
from .patterns import NiceCertificate, find_nice_coloring
from .reductions import color_coding_rounds
from .rng import derive_rng, log2_ceil

LOW, HIGH = "low", "high"


@dataclass
class SensitiveParams:
    thresholds: dict[int, int]
    t: int
    regime: str
    c_s: float = 8.0
    light_factor: int = 2


def crossover_exponent(k: int, pattern_has_triangle: bool) -> Fraction:
    if pattern_has_triangle:
        return Fraction(k - 5) + Fraction(1, 2 ** (k - 4))
    return Fraction(k - 2) + Fraction(1, 2 ** (k - 1))


def _at_most_power(t: int, n: int, e: Fraction) -> bool:
    """t <= n**e, exactly."""
    if t <= 0:
        return True
    if e < 0:
        return t * 1 <= 0
    return t**e.denominator <= n**e.numerator


def threshold_exponents(k: int, z, pattern_has_triangle: bool, regime: str) -> dict[int, Fraction]:
    """x_j with D_j = n^(1 - x_j).  ``z`` is log_n t (only used in the high regime)."""
    if pattern_has_triangle:
        js = range(5, k + 1)
        if regime == LOW:
            return {j: Fraction(1, 2 ** (j - 4)) for j in js}
        c = Fraction(2 ** (k - 4), 2 ** (k - 3) - 1)
        return {j: c * (k - 3 - z) / 2 ** (j - 4) for j in js}
    js = range(2, k + 1)
    if regime == LOW:
        return {j: Fraction(1, 2 ** (j - 1)) for j in js}
    c = Fraction(2 ** (k - 1), 2**k - 1)
    return {j: c * (k - z) / 2 ** (j - 1) for j in js}


def sensitive_cost_exponents(k: int, z, pattern_has_triangle: bool, regime: str) -> list:
    """Exponents of every term in the unrolled running time (three groups in order)."""
    x = threshold_exponents(k, z, pattern_has_triangle, regime)
    lo = 5 if pattern_has_triangle else 2
    total = sum(x.values())
    terms = [2 + total]
    for j in range(0, k - lo + 1):
        terms.append(3 + sum(x[k - i] for i in range(j)) - x[k - j])
    if pattern_has_triangle:
        terms.append(6 + z - k + 2 * total)
    else:
        terms.append(3 + z - k + 2 * total)
    return terms


def thresholds_sensitive(k: int, n: int, t: int, pattern_has_triangle: bool, c_s: float = 8.0) -> SensitiveParams:
    if t < 0:
        raise ValueError("t must be non-negative")
    n = max(n, 1)
    t = min(t, n**k)
    cross = crossover_exponent(k, pattern_has_triangle)
    regime = LOW if _at_most_power(t, n, cross) else HIGH
    if regime == LOW:
        x = threshold_exponents(k, 0, pattern_has_triangle, LOW)
        th = {j: min(n, max(1, ceil_power(n, 1 - xj))) for j, xj in x.items()}
    else:
        z = math.log(t) / math.log(n) if n > 1 else 0.0
        zmax = k - 3 if pattern_has_triangle else k
        z = min(z, zmax)
        x = threshold_exponents(k, Fraction(z).limit_denominator(10**9), pattern_has_triangle, HIGH)
        th = {j: min(n, max(1, math.ceil(n ** (1 - float(xj)) - 1e-9))) for j, xj in x.items()}
    return SensitiveParams(th, t, regime, c_s)


def estimate_t(g: Graph, h: Graph, seed=None, c_e: int = 4, chunk: int = 1 << 18) -> int:
    """Upper bound on copies of a triangle-free h from uniform k-tuple sampling.

    Draws c_e * n^2 * ceil(log2 n) ordered k-tuples.  If the first tuple that is
    a copy comes at index i, rounded down to a power of two, the bound is
    n^k * c_e * ceil(log2 n) / i; with no copy at all this is n^(k-2).
    """
    if _graph_has_triangle(h):
        raise ValueError("estimate_t needs a triangle-free pattern")
    n, k = g.n, h.n
    cap = n**k
    if n == 0 or k == 0:
        return cap
    log_n = log2_ceil(n)
    total = c_e * n * n * log_n
    rng = derive_rng(seed, "estimate-t")
    a = np.zeros((n, n), dtype=bool)
    for u, v in g.edges():
        a[u, v] = a[v, u] = True
    h_edges = list(h.edges())
    first = None
    done = 0
    while done < total:
        size = min(chunk, total - done)
        s = rng.integers(0, n, size=(size, k))
        ok = np.ones(size, dtype=bool)
        if k > 1:
            srt = np.sort(s, axis=1)
            ok &= np.all(srt[:, 1:] != srt[:, :-1], axis=1)
        for x, y in h_edges:
            ok &= a[s[:, x], s[:, y]]
        hits = np.flatnonzero(ok)
        if hits.size:
            first = done + int(hits[0]) + 1
            break
        done += size
    if first is None:
        return min(cap, n ** (k - 2) if k >= 2 else cap)
    bucket = 1 << (first.bit_length() - 1)
    return min(cap, -(-cap * c_e * log_n // bucket))


def _run_sensitive(g, c_g, h, c_h, t, seed, params, certificate, listing, trace, labels=()):
    c_g.require_proper(g)
    cert = _nice_certificate(h, c_h, certificate)
    has_tri = bool(cert.leftover)
    base = 4 if has_tri else 1
    k = max(h.n, base)
    t = min(int(t), max(g.n, 1) ** k)
    if params is None:
        params = thresholds_sensitive(k, g.n, t, has_tri, c_s=16.0 if listing else 8.0)
    plan = EmbedPlan.from_certificate(h, cert, base)
    eng = Embedder(g, c_g.colors, plan, params.thresholds, params.c_s, listing, seed, labels, t, trace)
    hit = eng.run()
    return hit, eng.found


def detect_sensitive(g: Graph, c_g: TriColoring, h: Graph, c_h: TriColoring, t: int, seed=None,
                     params: SensitiveParams | None = None, certificate: NiceCertificate | None = None,
                     trace: Trace | None = None, labels: tuple = ()) -> Triangle | None:
    """A triangle or None.  A wrong t can only cost completeness, never soundness."""
    hit, _ = _run_sensitive(g, c_g, h, c_h, t, seed, params, certificate, False, trace, labels)
    return None if hit is None else g.original_triangle(hit)


def list_sensitive(g: Graph, c_g: TriColoring, h: Graph, c_h: TriColoring, t: int, seed=None,
                   params: SensitiveParams | None = None, certificate: NiceCertificate | None = None,
                   trace: Trace | None = None, labels: tuple = ()) -> list[Triangle]:
    _, found = _run_sensitive(g, c_g, h, c_h, t, seed, params, certificate, True, trace, labels)
    return sorted(g.original_triangle(x) for x in found)


def _graph_budget(g: Graph, h: Graph, cert: NiceCertificate, t: int | None, seed) -> int:
    if t is not None:
        return t
    if cert.leftover:
        raise ValueError("patterns with a triangle need an explicit copy bound t")
    return estimate_t(g, h, seed)


def detect_sensitive_graph(g: Graph, h: Graph, t: int | None = None, seed=None, c_cc: int = 16,
                           rounds: int | None = None) -> Triangle | None:
    """Uncolored entry point: color coding, then the colored detector per round.

    Without ``t`` the bound comes from :func:`estimate_t` (triangle-free h only).
    """
    cert = find_nice_coloring(h)
    if cert is None:
        raise ValueError("pattern not nicely colorable")
    t = _graph_budget(g, h, cert, t, seed)
    for i, (gi, ci) in enumerate(color_coding_rounds(g, seed, rounds, c_cc)):
        hit = detect_sensitive(gi, ci, h, cert.coloring, t, seed, certificate=cert, labels=(i,))
        if hit is not None:
            if not hit.is_in(g):
                raise AssertionError(f"internal error: {hit} is not a triangle of the input")
            return hit
    return None


def list_sensitive_graph(g: Graph, h: Graph, t: int | None = None, seed=None, c_cc: int = 16,
                         rounds: int | None = None) -> list[Triangle]:
    cert = find_nice_coloring(h)
    if cert is None:
        raise ValueError("pattern not nicely colorable")
    t = _graph_budget(g, h, cert, t, seed)
    found: set[Triangle] = set()
    for i, (gi, ci) in enumerate(color_coding_rounds(g, seed, rounds, c_cc)):
        found.update(list_sensitive(gi, ci, h, cert.coloring, t, seed, certificate=cert, labels=(i,)))
    return sorted(found)
