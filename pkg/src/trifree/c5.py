"""Two sampling detectors specialized to C5-free (or C5-sparse) graphs.

Both look at radius-two balls around random vertices.  When an edge uw sits
two steps from v and u, w have different parents next to v, then v, the two
parents, u and w form a C5; so in a C5-free graph every such edge closes a
triangle with a common parent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .graph import Graph, OpCounter, Triangle
from .nice import ceil_power
from .rng import derive_rng, log2_ceil


def _verified(adj, a: int, b: int, c: int) -> Triangle:
    if not (b in adj[a] and c in adj[a] and c in adj[b]):
        raise AssertionError(f"internal error: {(a, b, c)} is not a triangle")
    return Triangle.of(a, b, c)


def _triangle_at(adj, v: int, alive) -> Triangle | None:
    """A triangle through v using alive vertices, by testing neighbor pairs."""
    nb = sorted(u for u in adj[v] if u in alive)
    for i, u in enumerate(nb):
        au = adj[u]
        for w in nb[i + 1:]:
            if w in au:
                return _verified(adj, v, u, w)
    return None


def detect_c5free_warmup(g: Graph, seed=None, c_w: float = 4.0) -> Triangle | None:
    """Peel vertices of degree below n^(2/3), then inspect two-hop balls of sampled vertices."""
    n = g.n
    if n < 3:
        return None
    adj = g._adj
    delta = ceil_power(n, Fraction(2, 3))
    alive = set(range(n))
    deg = {v: len(adj[v]) for v in alive}
    queue = sorted(v for v in alive if deg[v] < delta)
    queued = set(queue)
    while queue:
        v = queue.pop()
        hit = _triangle_at(adj, v, alive)
        if hit is not None:
            return g.original_triangle(hit)
        alive.discard(v)
        for u in adj[v]:
            if u in alive:
                deg[u] -= 1
                if deg[u] < delta and u not in queued:
                    queued.add(u)
                    queue.append(u)
    if not alive:
        return None
    pool = sorted(alive)
    ell = math.ceil(c_w * n / delta * log2_ceil(n))
    rng = derive_rng(seed, "c5-warmup")
    for v in (pool[i] for i in rng.integers(0, len(pool), ell)):
        hit = _triangle_at(adj, v, alive)
        if hit is not None:
            return g.original_triangle(hit)
        n1 = {u for u in adj[v] if u in alive}
        n2 = set()
        for u in n1:
            n2.update(w for w in adj[u] if w in alive)
        n2 -= n1
        n2.discard(v)
        for u in sorted(n2):
            for w in adj[u]:
                if w > u and w in n2:
                    # the common parent exists when g is C5-free; otherwise skip the edge
                    for p in sorted(n1 & adj[u] & adj[w]):
                        return g.original_triangle(_verified(adj, p, u, w))
    return None


@dataclass
class TwoHopBall:
    center: int
    delta: int
    l1: set[int]
    l2: set[int]
    parents: dict[int, int] = field(default_factory=dict)
    parent_lists: dict[int, list[int]] = field(default_factory=dict)
    triangle: Triangle | None = None


def _ball(adj, v: int, delta: int, counter: OpCounter | None = None) -> TwoHopBall:
    nv = adj[v]
    if counter is not None:
        counter.ops += len(nv)
    l1 = {u for u in nv if len(adj[u]) <= delta}
    ball = TwoHopBall(v, delta, l1, set())
    for u in sorted(l1):
        au = adj[u]
        if counter is not None:
            counter.ops += len(au)
        for x in sorted(au):
            if x in nv:
                ball.triangle = _verified(adj, v, u, x)
                return ball
            if x != v and len(adj[x]) <= delta:
                ball.parent_lists.setdefault(x, []).append(u)
    ball.parents = {x: len(ps) for x, ps in ball.parent_lists.items()}
    ball.l2 = set(ball.parents)
    return ball


def two_hop_ball(g: Graph, v: int, delta: int) -> TwoHopBall:
    """L1 = low-degree neighbors of v, L2 = low-degree neighbors of L1 other than v, with parent counts.

    If an edge inside N(v) shows up while scanning, ``triangle`` is set and L2 is left empty.
    """
    return _ball(g._adj, v, delta)


def ball_edges(g: Graph, ball: TwoHopBall) -> list[tuple[int, int]]:
    return sorted((u, w) for u in ball.l2 for w in g.adj(u) if u < w and w in ball.l2)


def parent_product_sum(g: Graph, ball: TwoHopBall) -> int:
    """Sum of p(u) p(w) over edges uw inside L2."""
    p = ball.parents
    return sum(p[u] * p[w] for u, w in ball_edges(g, ball))


def parent_min_sum(g: Graph, ball: TwoHopBall) -> int:
    p = ball.parents
    return sum(min(p[u], p[w]) for u, w in ball_edges(g, ball))


def min_sum_bound(n: int, t_v: int, delta: int, c_m: float = 4.0) -> float:
    """c_m n^(2/3) t_v^(1/3) delta, the light/heavy split bound on parent_min_sum."""
    return c_m * n ** (2 / 3) * t_v ** (1 / 3) * delta


def _ball_search(adj, v: int, delta: int, counter: OpCounter) -> Triangle | None:
    ball = _ball(adj, v, delta, counter)
    if ball.triangle is not None:
        return ball.triangle
    p = ball.parents
    l2 = ball.l2
    for u in sorted(l2):
        au = adj[u]
        counter.ops += len(au)
        for w in sorted(au):
            if w <= u or w not in l2:
                continue
            a, b = (u, w) if (p[u], u) <= (p[w], w) else (w, u)
            ab = adj[b]
            for s in ball.parent_lists[a]:
                counter.ops += 1
                if s in ab:
                    return _verified(adj, s, a, b)
        if counter.over():
            raise _Capped
    return None


class _Capped(Exception):
    pass


@dataclass
class C5Stats:
    budget: float = 0.0
    cap: float = 0.0
    copies: list[tuple[int, bool]] = field(default_factory=list)  # (ops, capped)

    @property
    def ops(self) -> int:
        return sum(o for o, _ in self.copies)


def c5_budget(n: int, m: int, c_l: float = 4.0, c_m: float = 4.0, t_hint: int | None = None) -> float:
    """Operation budget of one copy: sum over delta = 2^i of samples times the per-ball bound."""
    if n == 0:
        return 0.0
    t_hat = t_hint if t_hint is not None else min(n**5, int(m**2.5))
    log_n = log2_ceil(n)
    total = 0.0
    for i in range(log_n + 1):
        d = 2**i
        ell = math.ceil(c_l * n / d * log_n)
        total += ell * (n + 2 * n * d + c_m * n ** (2 / 3) * d * (max(t_hat, 0) / n) ** (1 / 3))
    return total


def detect_c5_sensitive(g: Graph, seed=None, c_r: int = 1, c_l: float = 4.0, c_m: float = 4.0,
                        t_hint: int | None = None, stats: C5Stats | None = None) -> Triangle | None:
    """Exponential search over the degree bound; each copy is stopped at ten times its budget.

    The answer of the first copy that stays under the cap is returned.
    """
    n = g.n
    if n < 3:
        return None
    adj = g._adj
    log_n = log2_ceil(n)
    budget = c5_budget(n, g.m, c_l, c_m, t_hint)
    if stats is not None:
        stats.budget = budget
        stats.cap = 10 * budget
    for copy in range(c_r * log_n):
        counter = OpCounter(10 * budget)
        try:
            hit = None
            for i in range(log_n + 1):
                d = 2**i
                ell = math.ceil(c_l * n / d * log_n)
                rng = derive_rng(seed, "c5-sensitive", copy, i)
                for v in rng.integers(0, n, ell).tolist():
                    hit = _ball_search(adj, v, d, counter)
                    if hit is not None or counter.over():
                        break
                if counter.over():
                    raise _Capped
                if hit is not None:
                    break
        except _Capped:
            if stats is not None:
                stats.copies.append((counter.ops, True))
            continue
        if stats is not None:
            stats.copies.append((counter.ops, False))
        return None if hit is None else g.original_triangle(hit)
    return None
