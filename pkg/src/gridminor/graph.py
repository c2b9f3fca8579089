"""Simple undirected graphs on vertices ``0..n-1``, generators and graph products.

Product graphs use a fixed row-major vertex encoding: the pair ``(a, b)`` with
``a`` a vertex of the first factor and ``b`` a vertex of the second factor is
vertex ``a * n2 + b`` of the product, where ``n2`` is the order of the second
factor.  Every construction in this package names host vertices through this
rule, so it must never change.

Conventions for degenerate inputs: the graph with zero vertices is allowed as
a value (it is connected, per :func:`is_connected`), but generators and
products reject empty inputs.
"""

from __future__ import annotations

import heapq
import json
import random
from collections import deque
from typing import Iterable, Iterator, Sequence

CARTESIAN = "cartesian"
STRONG = "strong"
LEXICOGRAPHIC = "lex"
PRODUCT_KINDS = (CARTESIAN, STRONG, LEXICOGRAPHIC)


class GraphError(ValueError):
    """Raised for malformed graphs or invalid generator parameters."""


class Graph:
    """An immutable simple undirected graph with vertex set ``range(n)``.

    Adjacency lists are sorted tuples.  Equality is structural (same ``n`` and
    same edge set), so a lazily evaluated :class:`ProductGraph` compares equal
    to the materialised graph with the same edges.
    """

    __slots__ = ("n", "_adj", "_edges")

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = ()):
        if n < 0:
            raise GraphError(f"negative vertex count {n}")
        adj: list[set[int]] = [set() for _ in range(n)]
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
            if v in adj[u]:
                raise GraphError(f"duplicate edge ({u}, {v})")
            adj[u].add(v)
            adj[v].add(u)
        self.n = n
        self._adj = tuple(tuple(sorted(a)) for a in adj)
        self._edges = None

    # -- basic queries -------------------------------------------------------

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.neighbors(u)

    def vertices(self) -> range:
        return range(self.n)

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        """All edges as ``(u, v)`` with ``u < v``, sorted lexicographically."""
        if self._edges is None:
            self._edges = tuple(
                (u, v) for u in range(self.n) for v in self.neighbors(u) if u < v
            )
        return self._edges

    @property
    def m(self) -> int:
        return len(self.edges)

    def max_degree(self) -> int:
        return max((self.degree(v) for v in range(self.n)), default=0)

    def degree_sequence(self) -> list[int]:
        return sorted((self.degree(v) for v in range(self.n)), reverse=True)

    def induced_is_connected(self, vertices: Iterable[int]) -> bool:
        """True iff the subgraph induced by ``vertices`` is connected (and nonempty)."""
        vs = set(vertices)
        if not vs:
            return False
        start = next(iter(vs))
        seen = {start}
        stack = [start]
        while stack:
            u = stack.pop()
            for w in self.neighbors(u):
                if w in vs and w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(vs)

    def induced_subgraph(self, vertices: Sequence[int]) -> Graph:
        """Induced subgraph relabelled so that ``vertices[i]`` becomes ``i``."""
        index = {v: i for i, v in enumerate(vertices)}
        if len(index) != len(vertices):
            raise GraphError("repeated vertex in induced_subgraph")
        edges = []
        for v in vertices:
            for w in self.neighbors(v):
                if w in index and index[v] < index[w]:
                    edges.append((index[v], index[w]))
        return Graph(len(vertices), edges)

    def add_edges(self, extra: Iterable[Sequence[int]]) -> Graph:
        new = {tuple(sorted((int(u), int(v)))) for u, v in extra}
        return Graph(self.n, sorted(set(self.edges) | new))

    # -- dunder --------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    # -- serialisation -------------------------------------------------------

    def to_dict(self, compact: bool = False) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.edges]}

    @classmethod
    def from_dict(cls, d: dict) -> Graph:
        if isinstance(d, dict) and "product" in d:
            try:
                g1, g2 = (Graph.from_dict(f) for f in d["factors"])
            except (KeyError, TypeError, ValueError) as exc:
                raise GraphError(f"malformed product JSON: {exc}") from exc
            return ProductGraph(g1, g2, d["product"])
        try:
            n = int(d["n"])
            edges = [(int(e[0]), int(e[1])) for e in d["edges"]]
        except (KeyError, TypeError, IndexError, ValueError) as exc:
            raise GraphError(f"malformed graph JSON: {exc}") from exc
        return cls(n, edges)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> Graph:
        try:
            d = json.loads(text)
        except json.JSONDecodeError as exc:
            raise GraphError(f"malformed graph JSON: {exc}") from exc
        return cls.from_dict(d)

    def vertex_label(self, v: int) -> str:
        return str(v)

    def to_dot(self, name: str = "G") -> str:
        lines = [f"graph {name} {{"]
        for v in range(self.n):
            lines.append(f'  {v} [label="{self.vertex_label(v)}"];')
        for u, v in self.edges:
            lines.append(f"  {u} -- {v};")
        lines.append("}")
        return "\n".join(lines) + "\n"


class ProductGraph(Graph):
    """One of the three products of two graphs, with adjacency computed on demand.

    Nothing of size ``n1 * n2`` is stored until :attr:`edges` is first read,
    which keeps hosts with hundreds of thousands of vertices cheap to query.
    """

    __slots__ = ("kind", "g1", "g2", "_cache")

    def __init__(self, g1: Graph, g2: Graph, kind: str):
        if kind not in PRODUCT_KINDS:
            raise GraphError(f"unknown product kind {kind!r}")
        if g1.n == 0 or g2.n == 0:
            raise GraphError("graph products need two nonempty factors")
        self.kind = kind
        self.g1 = g1
        self.g2 = g2
        self.n = g1.n * g2.n
        self._adj = None
        self._edges = None
        self._cache: dict[int, tuple[int, ...]] = {}

    def pair(self, v: int) -> tuple[int, int]:
        return divmod(v, self.g2.n)

    def vertex(self, a: int, b: int) -> int:
        return a * self.g2.n + b

    def neighbors(self, v: int) -> tuple[int, ...]:
        cached = self._cache.get(v)
        if cached is not None:
            return cached
        n2 = self.g2.n
        a, b = divmod(v, n2)
        out = [a * n2 + b2 for b2 in self.g2.neighbors(b)]
        if self.kind == CARTESIAN:
            out.extend(a2 * n2 + b for a2 in self.g1.neighbors(a))
        elif self.kind == STRONG:
            for a2 in self.g1.neighbors(a):
                out.append(a2 * n2 + b)
                out.extend(a2 * n2 + b2 for b2 in self.g2.neighbors(b))
        else:
            for a2 in self.g1.neighbors(a):
                out.extend(range(a2 * n2, a2 * n2 + n2))
        result = tuple(sorted(out))
        if len(self._cache) < 1 << 16:
            self._cache[v] = result
        return result

    def has_edge(self, u: int, v: int) -> bool:
        if u == v:
            return False
        n2 = self.g2.n
        a, b = divmod(u, n2)
        a2, b2 = divmod(v, n2)
        same1, adj1 = a == a2, self.g1.has_edge(a, a2)
        same2, adj2 = b == b2, self.g2.has_edge(b, b2)
        if self.kind == CARTESIAN:
            return (same1 and adj2) or (same2 and adj1)
        if self.kind == STRONG:
            return (same1 and adj2) or (same2 and adj1) or (adj1 and adj2)
        return adj1 or (same1 and adj2)

    def vertex_label(self, v: int) -> str:
        a, b = self.pair(v)
        return f"{a},{b}"

    def to_dict(self, compact: bool = False) -> dict:
        """Full edge list, or with ``compact`` just the kind and the two factors."""
        if not compact:
            return super().to_dict()
        return {"n": self.n, "product": self.kind, "factors": [self.g1.to_dict(), self.g2.to_dict()]}

    def materialize(self) -> Graph:
        return Graph(self.n, self.edges)

    def __repr__(self) -> str:
        return f"ProductGraph({self.kind}, n1={self.g1.n}, n2={self.g2.n})"


# -- generators --------------------------------------------------------------


def _require_positive(name: str, value: int) -> None:
    if not isinstance(value, int) or value < 1:
        raise GraphError(f"{name} must be a positive integer, got {value!r}")


def make_path(n: int) -> Graph:
    """The path ``P_n`` on ``n`` vertices ``0 - 1 - ... - n-1``."""
    _require_positive("n", n)
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def make_cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError("a cycle needs at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def make_complete(q: int) -> Graph:
    _require_positive("q", q)
    return Graph(q, [(i, j) for i in range(q) for j in range(i + 1, q)])


def make_star(l: int) -> Graph:
    """The star ``S_l``: root 0 adjacent to leaves ``1..l``."""
    _require_positive("l", l)
    return Graph(l + 1, [(0, i) for i in range(1, l + 1)])


def subdivided_star_vertex(p: int, i: int, j: int) -> int:
    """Id of ``v_{i,j}`` (arm ``i`` in ``1..l``, position ``j`` in ``1..p``) in ``S_{l,p}``.

    The root ``v_0`` is vertex 0.
    """
    return (i - 1) * p + j


def make_subdivided_star(l: int, p: int) -> Graph:
    """``S_{l,p}``: ``l`` arms, each a path of ``p`` vertices hanging off the root 0."""
    _require_positive("l", l)
    _require_positive("p", p)
    edges = []
    for i in range(1, l + 1):
        edges.append((0, subdivided_star_vertex(p, i, 1)))
        for j in range(1, p):
            edges.append((subdivided_star_vertex(p, i, j), subdivided_star_vertex(p, i, j + 1)))
    return Graph(1 + l * p, edges)


def grid_vertex(k: int, x: int, y: int) -> int:
    """Id of grid vertex ``(x, y)`` (column ``x``, row ``y``, both in ``1..k``)."""
    if not (1 <= x <= k and 1 <= y <= k):
        raise GraphError(f"({x}, {y}) is not a vertex of the {k}x{k} grid")
    return (y - 1) * k + (x - 1)


def grid_coord(k: int, v: int) -> tuple[int, int]:
    y, x = divmod(v, k)
    return x + 1, y + 1


def make_grid(k: int) -> Graph:
    """The ``k x k`` grid; vertex ``(x, y)`` has id ``(y-1)*k + (x-1)``."""
    _require_positive("k", k)
    edges = []
    for y in range(1, k + 1):
        for x in range(1, k + 1):
            v = grid_vertex(k, x, y)
            if x < k:
                edges.append((v, v + 1))
            if y < k:
                edges.append((v, v + k))
    return Graph(k * k, edges)


def make_caterpillar(spine: int, legs: int) -> Graph:
    """A path of ``spine`` vertices with ``legs`` pendant leaves on every spine vertex."""
    _require_positive("spine", spine)
    edges = [(i, i + 1) for i in range(spine - 1)]
    nxt = spine
    for i in range(spine):
        for _ in range(legs):
            edges.append((i, nxt))
            nxt += 1
    return Graph(nxt, edges)


def prufer_decode(seq: Sequence[int], n: int) -> list[tuple[int, int]]:
    """Edges of the labelled tree on ``n >= 2`` vertices with Prüfer sequence ``seq``."""
    if len(seq) != n - 2:
        raise GraphError(f"Prüfer sequence for n={n} must have length {n - 2}")
    degree = [1] * n
    for a in seq:
        degree[a] += 1
    leaves = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(leaves)
    edges = []
    for a in seq:
        leaf = heapq.heappop(leaves)
        edges.append((min(leaf, a), max(leaf, a)))
        degree[a] -= 1
        if degree[a] == 1:
            heapq.heappush(leaves, a)
    u, v = heapq.heappop(leaves), heapq.heappop(leaves)
    edges.append((u, v))
    return edges


def random_tree(n: int, seed: int) -> Graph:
    """A uniformly random labelled tree on ``n`` vertices, deterministic in ``seed``."""
    _require_positive("n", n)
    if n == 1:
        return Graph(1)
    if n == 2:
        return Graph(2, [(0, 1)])
    rng = random.Random(seed)
    seq = [rng.randrange(n) for _ in range(n - 2)]
    return Graph(n, prufer_decode(seq, n))


# -- products ----------------------------------------------------------------


def cartesian_product(g1: Graph, g2: Graph) -> ProductGraph:
    return ProductGraph(g1, g2, CARTESIAN)


def strong_product(g1: Graph, g2: Graph) -> ProductGraph:
    return ProductGraph(g1, g2, STRONG)


def lexicographic_product(g1: Graph, g2: Graph) -> ProductGraph:
    return ProductGraph(g1, g2, LEXICOGRAPHIC)


def product(g1: Graph, g2: Graph, kind: str) -> ProductGraph:
    return ProductGraph(g1, g2, kind)


# -- connectivity ------------------------------------------------------------


def bfs_order(g: Graph, source: int = 0) -> list[int]:
    seen = [False] * g.n
    seen[source] = True
    order = [source]
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for w in g.neighbors(u):
            if not seen[w]:
                seen[w] = True
                order.append(w)
                queue.append(w)
    return order


def components(g: Graph) -> list[list[int]]:
    seen = [False] * g.n
    comps = []
    for s in range(g.n):
        if not seen[s]:
            comp = bfs_order(g, s)
            for v in comp:
                seen[v] = True
            comps.append(sorted(comp))
    return comps


def is_connected(g: Graph) -> bool:
    """True iff ``g`` has at most one component; the empty graph counts as connected."""
    if g.n == 0:
        return True
    return len(bfs_order(g, 0)) == g.n


def is_tree(g: Graph) -> bool:
    return g.n >= 1 and g.m == g.n - 1 and is_connected(g)


def is_forest(g: Graph) -> bool:
    return g.m == g.n - len(components(g))


def spanning_tree_with_map(g: Graph, n: int) -> tuple[Graph, list[int]]:
    """Like :func:`spanning_tree_pruned`, also returning the kept original vertices.

    Tree vertex ``i`` is original vertex ``kept[i]``; ``kept`` is sorted.
    """
    if g.n == 0 or not is_connected(g):
        raise GraphError("spanning_tree_pruned needs a nonempty connected graph")
    if not (1 <= n <= g.n):
        raise GraphError(f"requested {n} tree vertices from a graph of order {g.n}")
    parent = {0: None}
    queue = deque([0])
    while queue:
        u = queue.popleft()
        for w in g.neighbors(u):
            if w not in parent:
                parent[w] = u
                queue.append(w)
    tree_adj: dict[int, set[int]] = {v: set() for v in parent}
    for v, p in parent.items():
        if p is not None:
            tree_adj[v].add(p)
            tree_adj[p].add(v)
    alive = set(parent)
    heap = [-v for v in alive if len(tree_adj[v]) == 1]
    heapq.heapify(heap)
    while len(alive) > n:
        v = -heapq.heappop(heap)
        if v not in alive or len(tree_adj[v]) != 1:
            continue
        alive.discard(v)
        (w,) = tree_adj.pop(v)
        tree_adj[w].discard(v)
        if len(tree_adj[w]) == 1:
            heapq.heappush(heap, -w)
    kept = sorted(alive)
    index = {v: i for i, v in enumerate(kept)}
    edges = sorted({tuple(sorted((index[v], index[w]))) for v in kept for w in tree_adj[v]})
    return Graph(len(kept), edges), kept


def spanning_tree_pruned(g: Graph, n: int) -> Graph:
    """An ``n``-vertex subtree of ``g``.

    Takes the BFS spanning tree from vertex 0 and repeatedly deletes the
    highest-id leaf.  Vertex ``i`` of the result is the ``i``-th smallest kept
    original vertex (see :func:`spanning_tree_with_map`).
    """
    return spanning_tree_with_map(g, n)[0]


def relabel(g: Graph, perm: Sequence[int]) -> Graph:
    """The graph with vertex ``v`` renamed ``perm[v]``."""
    return Graph(g.n, [(perm[u], perm[v]) for u, v in g.edges])


def iter_pairs(n1: int, n2: int) -> Iterator[tuple[int, int]]:
    for a in range(n1):
        for b in range(n2):
            yield a, b
