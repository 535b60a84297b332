"""Forbidden patterns: 3-colorings, nice colorings, attached triangles, classification.

Small patterns are handled through bitmask adjacency: ``adj[v]`` has bit u
set when uv is an edge.  Colorings are tuples of RED/BLUE/GREEN.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .graph import GREEN, RED, BLUE, Graph, TriColoring

Pattern = Graph

TRIVIALLY_SOLVABLE = "TriviallySolvable"
LOWER_BOUND = "LowerBound"
NICE_COLORING = "NiceColoring"
ATTACHED_TRIANGLE = "AttachedTriangle"
UNCLASSIFIED = "Unclassified"
CATEGORIES = (TRIVIALLY_SOLVABLE, LOWER_BOUND, NICE_COLORING, ATTACHED_TRIANGLE, UNCLASSIFIED)


def masks(h: Graph) -> list[int]:
    return [sum(1 << u for u in h.adj(v)) for v in h.vertices()]


def _bits(x: int) -> Iterator[int]:
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


# ---------------------------------------------------------------- colorings


def _colorings(adj: Sequence[int], k: int, first_occurrence: bool = False) -> Iterator[tuple[int, ...]]:
    """Proper colorings in radix order (vertex 0 most significant, RED < BLUE < GREEN).

    With ``first_occurrence`` only colorings whose colors appear for the first
    time in the order RED, BLUE, GREEN are produced; every coloring is a color
    permutation of exactly one of those.
    """
    col = [0] * k

    def rec(v: int, top: int):
        if v == k:
            yield tuple(col)
            return
        limit = min(2, top + 1) if first_occurrence else 2
        earlier = adj[v] & ((1 << v) - 1)
        for c in range(limit + 1):
            if any(col[u] == c for u in _bits(earlier)):
                continue
            col[v] = c
            yield from rec(v + 1, max(top, c))

    yield from rec(0, -1)


def proper_3colorings(h: Pattern) -> Iterator[TriColoring]:
    for c in _colorings(masks(h), h.n):
        yield TriColoring(c)


def is_3colorable(h: Pattern) -> bool:
    return next(_colorings(masks(h), h.n, True), None) is not None


# ---------------------------------------------------------------- deletion process


def _color_masks(colors: Sequence[int]) -> list[int]:
    cm = [0, 0, 0]
    for v, c in enumerate(colors):
        cm[c] |= 1 << v
    return cm


def _removable(adj, cm, alive, v) -> bool:
    nb = adj[v] & alive
    return nb == 0 or (nb & ~cm[0]) == 0 or (nb & ~cm[1]) == 0 or (nb & ~cm[2]) == 0


def _delete_to_fixpoint(adj, colors, alive: int) -> tuple[list[int], int]:
    """Repeatedly drop the lowest-id vertex whose alive neighborhood is monochromatic or empty."""
    cm = _color_masks(colors)
    order = []
    progress = True
    while progress:
        progress = False
        for v in _bits(alive):
            if _removable(adj, cm, alive, v):
                alive &= ~(1 << v)
                order.append(v)
                progress = True
                break
    return order, alive


def _triangle_of(adj, alive: int) -> tuple[int, int, int] | None:
    vs = list(_bits(alive))
    if len(vs) != 3:
        return None
    x, y, z = vs
    if adj[x] >> y & 1 and adj[x] >> z & 1 and adj[y] >> z & 1:
        return (x, y, z)
    return None


@dataclass(frozen=True)
class NiceCertificate:
    """Coloring plus the deletion order that empties the pattern or leaves one triangle.

    Vertex ids refer to the pattern the certificate was issued for; when issued
    for a subpattern the order only mentions that subpattern's vertices.
    """

    coloring: TriColoring
    deletion_order: tuple[int, ...]
    leftover: tuple[int, ...] = ()

    def replay(self, h: Pattern, vertices: Iterable[int] | None = None) -> bool:
        adj = masks(h)
        cm = _color_masks(self.coloring.colors)
        alive = sum(1 << v for v in (h.vertices() if vertices is None else vertices))
        if not self.coloring.is_proper(h):
            return False
        for v in self.deletion_order:
            if not alive >> v & 1 or not _removable(adj, cm, alive, v):
                return False
            alive &= ~(1 << v)
        if not self.leftover:
            return alive == 0
        return alive == sum(1 << v for v in self.leftover) and _triangle_of(adj, alive) == tuple(sorted(self.leftover))


@dataclass(frozen=True)
class AttachedCertificate:
    coloring: TriColoring
    deletion_order: tuple[int, ...]
    triangle: tuple[int, int, int]  # (x, y, z); z has degree 2 in the leftover
    subpattern: tuple[int, ...]  # leftover minus z
    nested: NiceCertificate

    @property
    def s(self) -> int:
        return len(self.deletion_order)

    def replay(self, h: Pattern) -> bool:
        adj = masks(h)
        cols = self.coloring.colors
        if not self.coloring.is_proper(h):
            return False
        cm = _color_masks(cols)
        alive = (1 << h.n) - 1
        for v in self.deletion_order:
            if not alive >> v & 1 or not _removable(adj, cm, alive, v):
                return False
            alive &= ~(1 << v)
        if any(_removable(adj, cm, alive, v) for v in _bits(alive)):
            return False
        x, y, z = self.triangle
        if not (alive >> z & 1) or adj[z] & alive != (1 << x) | (1 << y):
            return False
        if not adj[x] >> y & 1:
            return False
        rest = alive & ~(1 << z)
        if rest != sum(1 << v for v in self.subpattern):
            return False
        return self.nested.replay(h, self.subpattern) and self.nested.coloring == self.coloring


def _nice_for(adj, k, colors, alive=None) -> NiceCertificate | None:
    if alive is None:
        alive = (1 << k) - 1
    order, left = _delete_to_fixpoint(adj, colors, alive)
    if left == 0:
        return NiceCertificate(TriColoring(tuple(colors)), tuple(order), ())
    tri = _triangle_of(adj, left)
    if tri is not None:
        return NiceCertificate(TriColoring(tuple(colors)), tuple(order), tri)
    return None


def is_nice(h: Pattern, c: TriColoring) -> NiceCertificate | None:
    c.require_proper(h)
    return _nice_for(masks(h), h.n, c.colors)


def find_nice_coloring(h: Pattern) -> NiceCertificate | None:
    """First nice coloring in radix order.

    Niceness survives permuting the three colors, and the radix-first member
    of every color-permutation class is the one whose colors first appear as
    RED, BLUE, GREEN.  Scanning only those gives the same answer, six times faster.
    """
    adj = masks(h)
    for colors in _colorings(adj, h.n, first_occurrence=True):
        cert = _nice_for(adj, h.n, colors)
        if cert is not None:
            return cert
    return None


def attached_for_coloring(h: Pattern, colors: Sequence[int]) -> AttachedCertificate | None:
    """Attached-triangle certificate for one fixed coloring, or None."""
    return _attached_for(masks(h), h.n, tuple(colors))


def _attached_for(adj, k, colors) -> AttachedCertificate | None:
    order, left = _delete_to_fixpoint(adj, colors, (1 << k) - 1)
    for z in _bits(left):
        nb = adj[z] & left
        if bin(nb).count("1") != 2:
            continue
        x, y = _bits(nb)
        if not adj[x] >> y & 1:
            continue
        rest = left & ~(1 << z)
        nested = _nice_for(adj, k, colors, rest)
        if nested is None:
            continue
        return AttachedCertificate(
            TriColoring(colors), tuple(order), (x, y, z), tuple(_bits(rest)), nested
        )
    return None


def check_attached_triangle(h: Pattern) -> AttachedCertificate | None:
    adj = masks(h)
    for colors in _colorings(adj, h.n, first_occurrence=True):
        cert = _attached_for(adj, h.n, colors)
        if cert is not None:
            return cert
    return None


def verify_3k_property(h: Pattern) -> bool:
    """True iff every proper 3-coloring leaves some vertex with a monochromatic neighborhood."""
    adj = masks(h)
    full = (1 << h.n) - 1
    for colors in _colorings(adj, h.n, first_occurrence=True):
        cm = _color_masks(colors)
        if not any(_removable(adj, cm, full, v) for v in range(h.n)):
            return False
    return True


def triangle_count(h: Pattern) -> int:
    adj = masks(h)
    count = 0
    for v in range(h.n):
        for u in _bits(adj[v] >> (v + 1) << (v + 1)):
            count += bin(adj[v] & adj[u] & ~((1 << (u + 1)) - 1)).count("1")
    return count


# ---------------------------------------------------------------- classification


@dataclass(frozen=True)
class Category:
    name: str
    certificate: object = None
    detail: dict = field(default_factory=dict)

    def __str__(self) -> str:
        return self.name


def classify(h: Pattern) -> Category:
    if h.n <= 3:
        return Category(TRIVIALLY_SOLVABLE, detail={"reason": "subgraph of a triangle"})
    if not is_3colorable(h):
        return Category(LOWER_BOUND, detail={"reason": "not 3-colorable"})
    tri = triangle_count(h)
    if tri > 1:
        return Category(LOWER_BOUND, detail={"reason": "more than one triangle", "triangles": tri})
    nice = find_nice_coloring(h)
    if nice is not None:
        return Category(NICE_COLORING, nice)
    att = check_attached_triangle(h)
    if att is not None:
        return Category(ATTACHED_TRIANGLE, att)
    return Category(UNCLASSIFIED)


# ---------------------------------------------------------------- canonical form and enumeration


def refined_cells(adj: Sequence[int], k: int) -> list[int]:
    """Color refinement: an iso-invariant rank per vertex (equal ranks = same refined class)."""
    rank = [bin(a).count("1") for a in adj]
    while True:
        sig = [(rank[v], tuple(sorted(rank[u] for u in _bits(adj[v])))) for v in range(k)]
        order = sorted(set(sig))
        new = [order.index(x) for x in sig]
        if len(order) == len(set(rank)):
            return new
        rank = new


def canonical_code(adj: Sequence[int], k: int) -> tuple[int, list[int]]:
    """Least adjacency bitstring over the vertex orders that respect refined classes.

    Vertices are first split into classes by color refinement (degree, then
    multiset of neighbor classes, until stable).  Orders must list the classes
    in increasing rank; within that constraint the lexicographically least
    bitstring is found by branch-and-bound.  Bits are read column by column
    over the upper triangle (for j, for i < j), the graph6 order, so column j is
    settled once the first j+1 positions are.  Since the class ranks are
    iso-invariant, the code is equal exactly for isomorphic graphs.  Returns
    the code (first bit most significant) and one order attaining it.
    """
    if k <= 1:
        return 0, list(range(k))
    rank = refined_cells(adj, k)
    best_cols: list[int] = []
    best_order: list[int] = []
    order: list[int] = []
    cols: list[int] = []

    def twin_rep(v: int, free: int) -> bool:
        # skip v when a smaller free vertex has the same neighborhood (ignoring each other)
        for u in _bits(free):
            if u >= v:
                return True
            if (adj[u] & ~(1 << v)) == (adj[v] & ~(1 << u)):
                return False
        return True

    def rec(free: int):
        nonlocal best_cols, best_order
        j = len(order)
        tied = False
        if best_cols:
            if cols > best_cols[:j]:
                return
            tied = cols == best_cols[:j]
        if free == 0:
            if not best_cols or cols < best_cols:
                best_cols = cols[:]
                best_order = order[:]
            return
        options = []
        need = min(rank[v] for v in _bits(free))
        for v in _bits(free):
            if rank[v] != need or not twin_rep(v, free):
                continue
            col = 0
            for u in order:
                col = (col << 1) | (adj[v] >> u & 1)
            options.append((col, v))
        low = min(c for c, _ in options)
        if tied and low > best_cols[j]:
            return
        for col, v in options:
            if col == low:
                order.append(v)
                cols.append(col)
                rec(free & ~(1 << v))
                order.pop()
                cols.pop()

    rec((1 << k) - 1)
    code = 0
    for j, col in enumerate(best_cols):
        code = (code << j) | col
    return code, best_order


def _relabel(adj, order) -> list[int]:
    pos = {v: i for i, v in enumerate(order)}
    return [sum(1 << pos[u] for u in _bits(adj[v])) for v in order]


def canonical_form(h: Pattern) -> tuple[int, int]:
    """(k, code): equal exactly for isomorphic patterns."""
    return h.n, canonical_code(masks(h), h.n)[0]


def canonical_pattern(h: Pattern) -> Pattern:
    code, order = canonical_code(masks(h), h.n)
    return _from_masks(_relabel(masks(h), order))


def _from_masks(adj: Sequence[int]) -> Graph:
    return Graph.from_sets([list(_bits(a)) for a in adj])


def enumerate_patterns(n: int) -> list[Pattern]:
    """One graph per isomorphism class on n vertices, in canonical order.

    Each class on n-1 vertices is extended by a new vertex joined to every
    possible subset; the extension is canonicalized and deduplicated.
    """
    if n < 0 or n > 8:
        raise ValueError("enumeration supports 0 <= n <= 8")
    if n == 0:
        return [Graph(0)]
    layer = {0: [0]}
    for size in range(2, n + 1):
        nxt: dict[int, list[int]] = {}
        for base in layer.values():
            for subset in range(1 << (size - 1)):
                adj = [a | ((subset >> v & 1) << (size - 1)) for v, a in enumerate(base)]
                adj.append(subset)
                code, order = canonical_code(adj, size)
                if code not in nxt:
                    nxt[code] = _relabel(adj, order)
        layer = nxt
    return [_from_masks(layer[c]) for c in sorted(layer)]


# ---------------------------------------------------------------- named patterns


def cycle(k: int) -> Pattern:
    return Graph(k, [(i, (i + 1) % k) for i in range(k)])


def complete(k: int) -> Pattern:
    return Graph(k, [(i, j) for i in range(k) for j in range(i + 1, k)])


def path(k: int) -> Pattern:
    return Graph(k, [(i, i + 1) for i in range(k - 1)])


def double_c6() -> Pattern:
    """Two 6-cycles a_0..a_5, b_0..b_5 with a_i joined to b_i and b_{i+3}."""
    edges = []
    for i in range(6):
        edges.append((i, (i + 1) % 6))
        edges.append((6 + i, 6 + (i + 1) % 6))
        edges.append((i, 6 + i))
        edges.append((i, 6 + (i + 3) % 6))
    return Graph(12, edges)


def complete_bipartite(a: int, b: int) -> Pattern:
    return Graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


BUILTIN_PATTERNS = {
    "edge": lambda: path(2),
    "P3": lambda: path(3),
    "P4": lambda: path(4),
    "triangle": lambda: complete(3),
    "C3": lambda: cycle(3),
    "C4": lambda: cycle(4),
    "C5": lambda: cycle(5),
    "C6": lambda: cycle(6),
    "C7": lambda: cycle(7),
    "C9": lambda: cycle(9),
    "K4": lambda: complete(4),
    "K23": lambda: complete_bipartite(2, 3),
    "diamond": lambda: Graph(4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]),
    "paw": lambda: Graph(4, [(0, 1), (0, 2), (1, 2), (2, 3)]),
    "double-C6": double_c6,
    # smallest patterns that only have an attached-triangle certificate
    "attached7": lambda: Graph(7, [(0, 3), (0, 6), (1, 3), (1, 5), (2, 3), (2, 4), (4, 5), (4, 6), (5, 6)]),
}


def builtin_pattern(name: str) -> Pattern:
    try:
        return BUILTIN_PATTERNS[name]()
    except KeyError:
        raise ValueError(f"unknown pattern {name!r}; known: {', '.join(sorted(BUILTIN_PATTERNS))}") from None


__all__ = [
    "ATTACHED_TRIANGLE", "AttachedCertificate", "BUILTIN_PATTERNS", "CATEGORIES", "Category",
    "LOWER_BOUND", "NICE_COLORING", "NiceCertificate", "Pattern", "TRIVIALLY_SOLVABLE", "UNCLASSIFIED",
    "attached_for_coloring", "builtin_pattern", "canonical_code", "canonical_form", "canonical_pattern",
    "check_attached_triangle", "classify", "cycle", "complete", "double_c6", "enumerate_patterns",
    "find_nice_coloring", "is_3colorable", "is_nice", "masks", "path", "proper_3colorings",
    "triangle_count", "verify_3k_property", "RED", "BLUE", "GREEN",
]
