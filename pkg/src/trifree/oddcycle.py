"""Deterministic triangle detection and listing in graphs without C_{2k+1}.

Each phase grows BFS layers from the lowest surviving vertex until a layer is
thin (|L_h| < n^{h/k}), searches the inner layers for triangles, deletes them,
and prunes edges into the thin layer that provably sit on a 2k-cycle (a
triangle on such an edge would have to use a cycle vertex, or the graph
would contain C_{2k+1}).
"""

from __future__ import annotations

import heapq
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable

from .graph import Graph, OpCounter, Triangle, _peel, bfs_layers_adj

# ---------------------------------------------------------------- generalized Chiba-Nishizeki


def _chiba(adj, inside: set[int], s: set[int], listing: bool, counter: OpCounter | None = None) -> list[Triangle]:
    """Triangles of G[inside] with at least two vertices in s.

    Repeatedly takes the vertex of s with fewest s-neighbors, pairs each of
    its s-neighbors with each of its other neighbors, then drops it.
    """
    s = set(s) & inside
    present = set(inside)
    sdeg = {v: sum(1 for u in adj[v] if u in s) for v in s}
    heap = [(d, v) for v, d in sdeg.items()]
    heapq.heapify(heap)
    found: list[Triangle] = []
    while heap:
        d, v = heapq.heappop(heap)
        if v not in s or sdeg[v] != d:
            continue
        s_nb = [u for u in adj[v] if u in s]
        all_nb = [u for u in adj[v] if u in present]
        if counter is not None:
            counter.ops += len(adj[v]) + len(s_nb) * len(all_nb)
        for a in s_nb:
            aa = adj[a]
            for b in all_nb:
                if b != a and b in aa and (b not in s or a < b):
                    found.append(Triangle.of(v, a, b))
                    if not listing:
                        return found
        s.discard(v)
        present.discard(v)
        for u in s_nb:
            sdeg[u] -= 1
            heapq.heappush(heap, (sdeg[u], u))
    return sorted(set(found))


def generalized_chiba(g: Graph, s: Iterable[int]) -> Triangle | None:
    """A triangle with at least two vertices in s, or None if there is none."""
    hit = _chiba(g._adj, set(g.vertices()), set(s), False)
    return g.original_triangle(hit[0]) if hit else None


def generalized_chiba_list(g: Graph, s: Iterable[int]) -> list[Triangle]:
    return sorted(g.original_triangle(t) for t in _chiba(g._adj, set(g.vertices()), set(s), True))


# ---------------------------------------------------------------- supersaturation


@dataclass
class SupersatInstance:
    """Rooted tree (parent map, root maps to None) with all leaves at depth h, plus F between leaves and W."""

    parent: dict[int, int | None]
    w: list[int]
    f_edges: list[tuple[int, int]]  # (leaf, w)
    _depth: dict[int, int] = field(default_factory=dict, repr=False)
    _children: dict[int, list[int]] = field(default_factory=dict, repr=False)
    _edges: frozenset | None = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        roots = [v for v, p in self.parent.items() if p is None]
        if len(roots) != 1:
            raise ValueError("tree needs exactly one root")
        self.root = roots[0]
        children: dict[int, list[int]] = {v: [] for v in self.parent}
        for v, p in self.parent.items():
            if p is not None:
                if p not in self.parent:
                    raise ValueError(f"parent {p} of {v} is not a tree vertex")
                children[p].append(v)
        for c in children.values():
            c.sort()
        depth = {self.root: 0}
        stack = [self.root]
        while stack:
            v = stack.pop()
            for c in children[v]:
                depth[c] = depth[v] + 1
                stack.append(c)
        if len(depth) != len(self.parent):
            raise ValueError("parent map is not a tree")
        leaves = [v for v in self.parent if not children[v]]
        hs = {depth[v] for v in leaves}
        if len(hs) != 1:
            raise ValueError("leaves are not all at the same depth")
        self.h = hs.pop()
        self.leaves = sorted(leaves)
        self._depth = depth
        self._children = children
        leaf_set = set(self.leaves)
        w_set = set(self.w)
        if w_set & set(self.parent):
            raise ValueError("W must be disjoint from the tree")
        for a, b in self.f_edges:
            if a not in leaf_set or b not in w_set:
                raise ValueError(f"F edge {(a, b)} does not join a leaf to W")

    def depth(self, v: int) -> int:
        return self._depth[v]

    def children(self, v: int) -> list[int]:
        return self._children[v]

    def root_path(self, leaf: int) -> list[int]:
        path = [leaf]
        while self.parent[path[-1]] is not None:
            path.append(self.parent[path[-1]])
        return path[::-1]

    def f_neighbors(self) -> dict[int, list[int]]:
        nb: dict[int, list[int]] = {w: [] for w in self.w}
        for a, b in self.f_edges:
            nb[b].append(a)
        for v in nb.values():
            v.sort()
        return nb

    def edge_set(self) -> frozenset[frozenset]:
        """Edges of the tree together with F (computed once)."""
        if self._edges is None:
            e = {frozenset((v, p)) for v, p in self.parent.items() if p is not None}
            e.update(frozenset(x) for x in self.f_edges)
            self._edges = frozenset(e)
        return self._edges


@dataclass(frozen=True)
class CyclePair:
    edge: tuple[int, int]  # (leaf, w)
    cycle: tuple[int, ...]


def lemma44_assign(inst: SupersatInstance, k: int, nbrs: dict[int, list[int]] | None = None) -> dict[int, int]:
    """Deepest tree vertex y per w whose subtree holds all but depth(y)*k of w's leaf neighbors.

    Phase i keys each leaf by its depth-i ancestor; w moves to its most
    common key whenever that key covers at least |N(w)| - i k neighbors.
    """
    if nbrs is None:
        nbrs = inst.f_neighbors()
    floor = 2 * k * k
    for w, nb in nbrs.items():
        if len(nb) < floor:
            raise ValueError(f"vertex {w} has degree {len(nb)} < {floor}")
    paths = {leaf: inst.root_path(leaf) for leaf in inst.leaves}
    f: dict[int, int] = {}
    for i in range(inst.h + 1):
        for w, nb in nbrs.items():
            counts = Counter(paths[x][i] for x in nb)
            best = min(counts.items(), key=lambda kv: (-kv[1], kv[0]))
            if best[1] >= len(nb) - i * k:
                f[w] = best[0]
    return f


def _in_subtree(path_of_leaf: list[int], y: int, depth_y: int) -> bool:
    return path_of_leaf[depth_y] == y


def supersaturation(inst: SupersatInstance, k: int) -> list[CyclePair]:
    """Edge/2k-cycle pairs, at least e(F)/k - O(k^2 (|L| + |W|)) of them."""
    h = inst.h
    if h > k:
        raise ValueError(f"tree height {h} exceeds k={k}")
    nbrs = inst.f_neighbors()
    floor = 2 * k * k
    nbrs = {w: nb for w, nb in nbrs.items() if len(nb) >= floor}
    if not nbrs:
        return []
    f = lemma44_assign(inst, k, nbrs)
    paths = {leaf: inst.root_path(leaf) for leaf in inst.leaves}
    # keep only the edges into each w's chosen subtree
    pruned: dict[int, list[int]] = {}
    for w, nb in nbrs.items():
        y = f[w]
        dy = inst.depth(y)
        pruned[w] = [x for x in nb if _in_subtree(paths[x], y, dy)]
    sizes = Counter()
    for w, nb in pruned.items():
        sizes[inst.depth(f[w])] += len(nb)
    # a cycle through depth j needs a path of length 2k - 2(h - j) - 2 >= 0
    feasible = [j for j in range(h) if h - j <= k - 1]
    if not feasible:
        return []
    j = max(feasible, key=lambda i: (sizes[i], -i))
    qlen = 2 * k - 2 * (h - j) - 2
    by_y: dict[int, list[int]] = {}
    for w in sorted(pruned):
        if inst.depth(f[w]) == j:
            by_y.setdefault(f[w], []).append(w)
    out: list[CyclePair] = []
    for y in sorted(by_y):
        zs = by_y[y]
        gy: dict[int, set[int]] = {}
        for w in zs:
            gy[w] = set(pruned[w])
            for x in pruned[w]:
                gy.setdefault(x, set()).add(w)
        # listing structure: neighbors sorted by the child of y above them
        keyed = {w: sorted(pruned[w], key=lambda x: (paths[x][j + 1], x)) for w in zs}
        alive = set(gy)
        _peel(gy, alive, 2 * k)
        core = {v: sorted(u for u in gy[v] if u in alive) for v in alive}
        zcore = [w for w in zs if w in alive]
        for w in zcore:
            for leaf in core[w]:
                out.append(_cycle_for(inst, paths, core, keyed, y, j, h, qlen, leaf, w))
    return out


def _cycle_for(inst, paths, core, keyed, y, j, h, qlen, leaf, w) -> CyclePair:
    q_path = [w]
    visited = {w, leaf}
    for _ in range(qlen):
        nxt = next(u for u in core[q_path[-1]] if u not in visited)
        q_path.append(nxt)
        visited.add(nxt)
    q = q_path[-1]
    z = paths[leaf][j + 1]
    other = next(x for x in keyed[q] if paths[x][j + 1] != z and x not in visited)
    up_other = paths[other][j:][::-1]  # other ... y
    up_leaf = paths[leaf][j + 1:]  # below y ... leaf
    cycle = [leaf] + q_path + up_other + up_leaf[:-1]
    return CyclePair((leaf, w), tuple(cycle))


def verify_cycle_pair(inst: SupersatInstance, pair: CyclePair, k: int) -> bool:
    """Simple closed walk of length 2k over tree and F edges, through the pair's edge."""
    c = pair.cycle
    if len(c) != 2 * k or len(set(c)) != len(c):
        return False
    edges = inst.edge_set()
    steps = {frozenset((c[i], c[(i + 1) % len(c)])) for i in range(len(c))}
    if any(e not in edges for e in steps):
        return False
    return frozenset(pair.edge) in steps


def supersat_lower_bound(inst: SupersatInstance, k: int, c_x: int = 5) -> float:
    """e(F)/k - c_x k^2 (|L| + |W|)."""
    return len(inst.f_edges) / k - c_x * k * k * (len(inst.leaves) + len(inst.w))


# ---------------------------------------------------------------- the phase loop


def _thin(size: int, i: int, n: int, k: int) -> bool:
    """size < n^(i/k), exactly."""
    return size**k < n**i


def _low_degree(d: int, n: int, k: int) -> bool:
    """d <= n^(1/k), exactly."""
    return d**k <= n


def _delete_vertex(adj, alive, v):
    for u in adj[v]:
        adj[u].discard(v)
    adj[v] = set()
    alive.discard(v)


def _pairs_through(adj, v) -> list[Triangle]:
    nb = sorted(adj[v])
    out = []
    for i, u in enumerate(nb):
        au = adj[u]
        for w in nb[i + 1:]:
            if w in au:
                out.append(Triangle.of(v, u, w))
    return out


def _common_parent(adj, x, y, upper) -> int | None:
    common = adj[x] & adj[y] & upper
    return min(common) if common else None


@dataclass
class OddStats:
    phases: int = 0
    low_degree: int = 0
    heights: list[int] = field(default_factory=list)
    pairs: int = 0


def detect_short_oddfree(g: Graph, k: int, counter: OpCounter | None = None) -> Triangle | None:
    """Triangle detection when g has no odd cycle of length 5..2k+1."""
    if k < 2:
        raise ValueError("k must be at least 2")
    n = g.n
    adj = g.adjacency_sets()
    alive = set(range(n))
    for v in range(n):
        if v not in alive:
            continue
        if _low_degree(len(adj[v]), n, k):
            if counter is not None:
                counter.ops += len(adj[v]) ** 2 + 1
            tris = _pairs_through(adj, v)
            if tris:
                return _report(g, tris[0])
            _delete_vertex(adj, alive, v)
            continue
        layers, _, h = _bfs_with_height(adj, v, n, k, counter)
        # an edge inside a layer below the thin one has a common parent one layer up
        for i in range(1, h):
            layer = set(layers[i])
            upper = set(layers[i - 1])
            for x in layers[i]:
                for y in adj[x]:
                    if y > x and y in layer:
                        p = _common_parent(adj, x, y, upper)
                        if p is not None:
                            return _report(g, Triangle.of(p, x, y))
        prev = set(layers[h - 1])
        for i in range(h - 1):
            for u in layers[i]:
                _delete_vertex(adj, alive, u)
        # a thin-layer vertex with two parents closes an even cycle; its parent edges carry no triangle
        for u in sorted(layers[h]):
            ps = adj[u] & prev
            if len(ps) >= 2:
                for p in ps:
                    adj[u].discard(p)
                    adj[p].discard(u)
    return None


def _report(g: Graph, tri: Triangle) -> Triangle:
    if not tri.is_in(g):
        raise AssertionError(f"internal error: {tri} is not a triangle of the input")
    return g.original_triangle(tri)


def _bfs_with_height(adj, v, n, k, counter):
    bfs = bfs_layers_adj(adj, v, lambda i, layer: i >= 1 and _thin(len(layer), i, n, k), counter)
    layers = bfs.layers
    if len(layers) >= 2 and _thin(len(layers[-1]), len(layers) - 1, n, k):
        h = len(layers) - 1
    else:
        layers = layers + [[]]  # BFS ran out: the next layer is empty, hence thin
        h = len(layers) - 1
    return layers, bfs.parent, h


def _odd_phases(g: Graph, k: int, listing: bool, counter: OpCounter | None, stats: OddStats | None):
    if k < 2:
        raise ValueError("k must be at least 2")
    n = g.n
    adj = g.adjacency_sets()
    alive = set(range(n))
    found: set[Triangle] = set()
    for v in range(n):
        if v not in alive:
            continue
        if stats is not None:
            stats.phases += 1
        if _low_degree(len(adj[v]), n, k):
            if stats is not None:
                stats.low_degree += 1
            if counter is not None:
                counter.ops += len(adj[v]) ** 2 + 1
            tris = _pairs_through(adj, v)
            if tris and not listing:
                return [tris[0]]
            found.update(tris)
            _delete_vertex(adj, alive, v)
            continue
        layers, parent, h = _bfs_with_height(adj, v, n, k, counter)
        if stats is not None:
            stats.heights.append(h)
        # (iii) triangles touching layers 0..h-2 live in some consecutive pair
        for i in range(h - 1):
            inside = set(layers[i]) | set(layers[i + 1])
            for s in (layers[i], layers[i + 1]):
                tris = _chiba(adj, inside, set(s), listing, counter)
                if tris and not listing:
                    return tris[:1]
                found.update(tris)
        # (v) prune edges between the last two layers that lie on a 2k-cycle
        pairs = _last_layer_pairs(adj, layers, parent, h, k, counter)
        if stats is not None:
            stats.pairs += len(pairs)
        for pair in pairs:
            a, b = pair.edge
            if b not in adj[a]:
                continue
            rest = [c for c in pair.cycle if c != a and c != b]
            tris = [Triangle.of(a, b, c) for c in rest if c in adj[a] and c in adj[b]]
            if tris and not listing:
                return tris[:1]
            found.update(tris)
            adj[a].discard(b)
            adj[b].discard(a)
        # (iv) layers 0..h-2 hold no remaining triangle
        for i in range(h - 1):
            for u in layers[i]:
                _delete_vertex(adj, alive, u)
    return sorted(found)


def _last_layer_pairs(adj, layers, parent, h, k, counter) -> list[CyclePair]:
    leaves = layers[h - 1]
    w = sorted(layers[h])
    if not w or h < 2:
        return []
    keep = set(leaves)
    frontier = set(leaves)
    while frontier:
        frontier = {parent[x] for x in frontier if x in parent} - keep
        keep |= frontier
    tree = {x: parent.get(x) for x in keep}
    leaf_set = set(leaves)
    f_edges = [(x, u) for u in w for x in sorted(adj[u]) if x in leaf_set]
    if counter is not None:
        counter.ops += len(f_edges) + len(keep)
    if not f_edges:
        return []
    inst = SupersatInstance(tree, w, f_edges)
    return supersaturation(inst, k)


def detect_oddfree(g: Graph, k: int, counter: OpCounter | None = None, stats: OddStats | None = None) -> Triangle | None:
    """Deterministic detection for C_{2k+1}-free g; any report is a genuine triangle."""
    tris = _odd_phases(g, k, False, counter, stats)
    return _report(g, tris[0]) if tris else None


def list_oddfree(g: Graph, k: int, counter: OpCounter | None = None, stats: OddStats | None = None) -> list[Triangle]:
    """Every triangle of a C_{2k+1}-free g (a subset of them otherwise)."""
    tris = _odd_phases(g, k, True, counter, stats)
    return sorted(_report(g, t) for t in tris)


def layer_degeneracy(g: Graph, k: int, roots: Iterable[int] | None = None) -> int:
    """Largest degeneracy of G[L_i], i <= k, over BFS layers from the given roots."""
    from .graph import degeneracy

    worst = 0
    for r in (g.vertices() if roots is None else roots):
        layers = bfs_layers_adj(g._adj, r, lambda i, layer: i >= k).layers
        for layer in layers[1:]:
            if len(layer) > 1:
                worst = max(worst, degeneracy(g.subgraph(layer))[0])
    return worst

