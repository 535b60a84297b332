"""Simple undirected graphs, 3-colorings, cores and BFS layering."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, NamedTuple, Sequence

RED, BLUE, GREEN = 0, 1, 2
COLOR_NAMES = ("RED", "BLUE", "GREEN")


class Triangle(NamedTuple):
    a: int
    b: int
    c: int

    @classmethod
    def of(cls, x: int, y: int, z: int) -> "Triangle":
        a, b, c = sorted((x, y, z))
        if a == b or b == c:
            raise ValueError(f"triangle needs three distinct vertices, got {(x, y, z)}")
        return cls(a, b, c)

    def is_in(self, g: "Graph") -> bool:
        return g.has_edge(self.a, self.b) and g.has_edge(self.a, self.c) and g.has_edge(self.b, self.c)

    def relabel(self, labels: Sequence[int]) -> "Triangle":
        return Triangle.of(labels[self.a], labels[self.b], labels[self.c])


class Graph:
    """Immutable simple graph on vertices 0..n-1.

    ``labels[i]`` is the id of local vertex ``i`` in the graph this one was
    cut out of, so answers found on subgraphs can be reported in original ids.
    """

    __slots__ = ("n", "_adj", "_sorted", "labels", "_m")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = (), labels: Sequence[int] | None = None):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge {(u, v)} out of range for n={n}")
            adj[u].add(v)
            adj[v].add(u)
        self._init(n, [frozenset(s) for s in adj], labels)

    def _init(self, n, adj, labels):
        self.n = n
        self._adj = adj
        self._sorted: list[tuple[int, ...] | None] = [None] * n
        self._m = sum(len(s) for s in adj) // 2
        if labels is not None:
            labels = tuple(labels)
            if len(labels) != n:
                raise ValueError("labels must have one entry per vertex")
        self.labels = labels

    @classmethod
    def from_sets(cls, adj: Sequence[Iterable[int]], labels: Sequence[int] | None = None) -> "Graph":
        """Build from trusted symmetric adjacency sets (no validation beyond symmetry of input)."""
        g = cls.__new__(cls)
        g._init(len(adj), [frozenset(s) for s in adj], labels)
        return g

    @property
    def m(self) -> int:
        return self._m

    def __len__(self) -> int:
        return self.n

    def vertices(self) -> range:
        return range(self.n)

    def adj(self, v: int) -> frozenset[int]:
        return self._adj[v]

    def neighbors(self, v: int) -> tuple[int, ...]:
        s = self._sorted[v]
        if s is None:
            s = self._sorted[v] = tuple(sorted(self._adj[v]))
        return s

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj[u]

    def edges(self) -> Iterator[tuple[int, int]]:
        for u in range(self.n):
            for v in self.neighbors(u):
                if u < v:
                    yield (u, v)

    def original(self, v: int) -> int:
        return v if self.labels is None else self.labels[v]

    def original_triangle(self, t: Triangle) -> Triangle:
        return t if self.labels is None else t.relabel(self.labels)

    def subgraph(self, vertices: Iterable[int]) -> "Graph":
        """Induced subgraph; vertices are renumbered in increasing order."""
        keep = sorted(set(vertices))
        index = {v: i for i, v in enumerate(keep)}
        adj = [[index[u] for u in self._adj[v] if u in index] for v in keep]
        return Graph.from_sets(adj, [self.original(v) for v in keep])

    def without_edges(self, removed: Iterable[tuple[int, int]]) -> "Graph":
        adj = [set(s) for s in self._adj]
        for u, v in removed:
            adj[u].discard(v)
            adj[v].discard(u)
        return Graph.from_sets(adj, self.labels)

    def adjacency_sets(self) -> list[set[int]]:
        """Mutable copy of the adjacency, for algorithms that delete as they go."""
        return [set(s) for s in self._adj]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self._adj == other._adj

    def __hash__(self) -> int:
        return hash((self.n, tuple(self.edges())))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class TriColoring:
    colors: tuple[int, ...]

    def __post_init__(self):
        if any(c not in (RED, BLUE, GREEN) for c in self.colors):
            raise ValueError("colors must be RED, BLUE or GREEN")

    @classmethod
    def of(cls, colors: Iterable[int]) -> "TriColoring":
        return cls(tuple(int(c) for c in colors))

    def __getitem__(self, v: int) -> int:
        return self.colors[v]

    def __len__(self) -> int:
        return len(self.colors)

    def is_proper(self, g: Graph) -> bool:
        if len(self.colors) != g.n:
            return False
        return all(self.colors[u] != self.colors[v] for u, v in g.edges())

    def require_proper(self, g: Graph) -> None:
        if len(self.colors) != g.n:
            raise ValueError(f"coloring has {len(self.colors)} entries, graph has {g.n} vertices")
        for u, v in g.edges():
            if self.colors[u] == self.colors[v]:
                raise ValueError(f"coloring is not proper: edge {(u, v)} is monochromatic")

    def restrict(self, vertices: Iterable[int]) -> "TriColoring":
        return TriColoring(tuple(self.colors[v] for v in sorted(set(vertices))))

    def color_class(self, c: int) -> list[int]:
        return [v for v, x in enumerate(self.colors) if x == c]


def third_color(a: int, b: int) -> int:
    return 3 - a - b


@dataclass
class BfsLayers:
    root: int
    layers: list[list[int]]
    parent: dict[int, int] = field(default_factory=dict)

    @property
    def depth(self) -> int:
        return len(self.layers) - 1


# ---------------------------------------------------------------- cores


def _peel(adj: Sequence[Iterable[int]], alive: set[int], delta: int) -> list[int]:
    """Bucket removal of vertices whose degree inside ``alive`` drops below delta.

    Mutates ``alive`` and returns the removal order.
    """
    deg = {v: sum(1 for u in adj[v] if u in alive) for v in alive}
    queue = deque(sorted(v for v in alive if deg[v] < delta))
    queued = set(queue)
    order = []
    while queue:
        v = queue.popleft()
        alive.discard(v)
        order.append(v)
        for u in adj[v]:
            if u in alive:
                deg[u] -= 1
                if deg[u] < delta and u not in queued:
                    queued.add(u)
                    queue.append(u)
    return order


def delta_core(g: Graph, delta: int) -> tuple[Graph, list[int]]:
    """Maximal induced subgraph of minimum degree >= delta, plus the removal order."""
    if delta < 1:
        raise ValueError("delta must be at least 1")
    alive = set(g.vertices())
    order = _peel(g._adj, alive, delta)
    return g.subgraph(alive), order


def colored_cleanup(
    adj: Sequence[Iterable[int]],
    colors: Sequence[int],
    alive: set[int],
    delta: int,
    listing: bool = False,
    counter: "OpCounter | None" = None,
) -> list[Triangle]:
    """Peel vertices with fewer than ``delta`` alive neighbors in some other class.

    Before a vertex leaves, the triangles through it that are still alive are
    looked up.  In detection mode the first hit is returned immediately (the
    peeling stops there); in listing mode every triangle is collected.
    ``alive`` is mutated into the colored core.
    """
    cnt: dict[int, list[int]] = {}
    for v in alive:
        row = [0, 0, 0]
        for u in adj[v]:
            if u in alive:
                row[colors[u]] += 1
        cnt[v] = row

    def low(v: int) -> bool:
        row = cnt[v]
        cv = colors[v]
        return any(row[c] < delta for c in (0, 1, 2) if c != cv)

    queue = deque(sorted(v for v in alive if low(v)))
    queued = set(queue)
    found: list[Triangle] = []
    while queue:
        v = queue.popleft()
        cv = colors[v]
        a, b = [c for c in (0, 1, 2) if c != cv]
        side_a = [u for u in adj[v] if u in alive and colors[u] == a]
        side_b = {u for u in adj[v] if u in alive and colors[u] == b}
        if len(side_a) > len(side_b):
            side_a, side_b = list(side_b), set(side_a)
        for u in side_a:
            if counter is not None:
                counter.ops += 1 + min(len(adj[u]), len(side_b))
            common = side_b.intersection(adj[u])
            for w in common:
                found.append(Triangle.of(v, u, w))
                if not listing:
                    return found
        alive.discard(v)
        for u in adj[v]:
            if u in alive:
                cnt[u][cv] -= 1
                if u not in queued and low(u):
                    queued.add(u)
                    queue.append(u)
    return found


def _require_coloring(g: Graph, c: TriColoring) -> None:
    c.require_proper(g)


def colored_delta_core(g: Graph, c: TriColoring, delta: int) -> Graph:
    if delta < 1:
        raise ValueError("delta must be at least 1")
    _require_coloring(g, c)
    alive = set(g.vertices())
    colored_cleanup(g._adj, c.colors, alive, delta, listing=True)
    return g.subgraph(alive)


def low_degree_cleanup(g: Graph, c: TriColoring, delta: int) -> tuple[list[Triangle], Graph]:
    """List every triangle touching a vertex outside the colored delta-core.

    Triangles come back in the ids of ``g`` (sorted, deduplicated); the core is
    an induced subgraph whose labels point back into ``g``.
    """
    if delta < 1:
        raise ValueError("delta must be at least 1")
    _require_coloring(g, c)
    alive = set(g.vertices())
    tris = colored_cleanup(g._adj, c.colors, alive, delta, listing=True)
    return sorted(set(tris)), g.subgraph(alive)


# ---------------------------------------------------------------- traversal


def bfs_layers(g: Graph, root: int, stop: Callable[[int, list[int]], bool] | None = None) -> BfsLayers:
    """Distance layers from ``root``; stops after the first layer i with stop(i, layer) true."""
    if not 0 <= root < g.n:
        raise ValueError(f"root {root} not in graph")
    return bfs_layers_adj(g._adj, root, stop)


def bfs_layers_adj(adj, root: int, stop=None, counter: "OpCounter | None" = None) -> BfsLayers:
    layers = [[root]]
    parent: dict[int, int] = {}
    seen = {root}
    if stop is not None and stop(0, layers[0]):
        return BfsLayers(root, layers, parent)
    while True:
        nxt = []
        for u in layers[-1]:
            nb = adj[u]
            if counter is not None:
                counter.ops += len(nb)
            for w in sorted(nb):
                if w not in seen:
                    seen.add(w)
                    parent[w] = u
                    nxt.append(w)
        if not nxt:
            break
        layers.append(nxt)
        if stop is not None and stop(len(layers) - 1, nxt):
            break
    return BfsLayers(root, layers, parent)


def degeneracy(g: Graph) -> tuple[int, list[int]]:
    """Smallest d such that min-degree elimination never removes a vertex of degree > d."""
    deg = [g.degree(v) for v in g.vertices()]
    maxdeg = max(deg, default=0)
    buckets: list[set[int]] = [set() for _ in range(maxdeg + 1)]
    for v, d in enumerate(deg):
        buckets[d].add(v)
    removed = [False] * g.n
    order = []
    d = 0
    lo = 0
    for _ in range(g.n):
        lo = max(0, lo - 1)
        while not buckets[lo]:
            lo += 1
        v = min(buckets[lo])
        buckets[lo].discard(v)
        removed[v] = True
        order.append(v)
        d = max(d, lo)
        for u in g.adj(v):
            if not removed[u]:
                buckets[deg[u]].discard(u)
                deg[u] -= 1
                buckets[deg[u]].add(u)
    return d, order


class OpCounter:
    """Deterministic operation counter (adjacency entries and edge probes touched)."""

    __slots__ = ("ops", "cap")

    def __init__(self, cap: float | None = None):
        self.ops = 0
        self.cap = cap

    def over(self) -> bool:
        return self.cap is not None and self.ops > self.cap
