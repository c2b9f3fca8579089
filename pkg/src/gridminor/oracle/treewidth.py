"""Exact treewidth by subset dynamic programming, elimination-order heuristics and a decomposition checker.

The exact solver decides "is there an elimination ordering of width <= k" by a
breadth-first sweep over the vertex sets that can be eliminated first, with the
cost of eliminating ``v`` after ``S`` being ``|Q(S, v)|``: the vertices outside
``S ∪ {v}`` reachable from ``v`` through ``S``.  ``k`` runs upward from a
cheap lower bound until the sweep succeeds.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..graph import Graph
from .budget import EXHAUSTED, BudgetExhausted, Meter, SearchBudget, as_meter


def _masks(g: Graph) -> list[int]:
    adj = [0] * g.n
    for u, v in g.edges:
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return adj


def _bits(m: int):
    while m:
        low = m & -m
        yield low.bit_length() - 1
        m ^= low


# -- heuristics -------------------------------------------------------------


def elimination_width(g: Graph, order: list[int]) -> int:
    """Width of the elimination ordering (largest number of later neighbours in the fill-in graph)."""
    if g.n == 0:
        return -1
    adj = [set(g.neighbors(v)) for v in range(g.n)]
    width = 0
    for v in order:
        nb = adj[v]
        width = max(width, len(nb))
        for a in nb:
            adj[a].discard(v)
            adj[a].update(w for w in nb if w != a)
        adj[v] = set()
    return width


def _greedy_order(g: Graph, score) -> list[int]:
    adj = [set(g.neighbors(v)) for v in range(g.n)]
    alive = set(range(g.n))
    order = []
    while alive:
        v = min(alive, key=lambda u: (score(adj, u), u))
        nb = adj[v]
        for a in nb:
            adj[a].discard(v)
            adj[a].update(w for w in nb if w != a)
        alive.remove(v)
        adj[v] = set()
        order.append(v)
    return order


def _fill(adj, v) -> int:
    nb = list(adj[v])
    missing = 0
    for i, a in enumerate(nb):
        for b in nb[i + 1:]:
            if b not in adj[a]:
                missing += 1
    return missing


def min_degree_order(g: Graph) -> list[int]:
    return _greedy_order(g, lambda adj, u: len(adj[u]))


def min_fill_order(g: Graph) -> list[int]:
    return _greedy_order(g, _fill)


def treewidth_upper_bound(g: Graph) -> tuple[int, list[int]]:
    best = None
    for order in (min_fill_order(g), min_degree_order(g)):
        w = elimination_width(g, order)
        if best is None or w < best[0]:
            best = (w, order)
    return best


def treewidth_lower_bound(g: Graph) -> int:
    """Minor-min-width: contract a minimum-degree vertex into its lowest-degree neighbour, repeatedly."""
    if g.n == 0:
        return -1
    adj = {v: set(g.neighbors(v)) for v in range(g.n)}
    lb = 0
    while len(adj) > 1:
        v = min(adj, key=lambda u: (len(adj[u]), u))
        lb = max(lb, len(adj[v]))
        nb = adj.pop(v)
        if not nb:
            continue
        w = min(nb, key=lambda u: (len(adj[u]), u))
        for a in nb:
            adj[a].discard(v)
        for a in nb:
            if a != w:
                adj[a].add(w)
                adj[w].add(a)
    return lb


# -- tree decompositions ------------------------------------------------------


@dataclass(frozen=True)
class TreeDecomposition:
    bags: tuple[tuple[int, ...], ...]
    edges: tuple[tuple[int, int], ...]

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1


def decomposition_from_order(g: Graph, order: list[int]) -> TreeDecomposition:
    """Bag of ``v`` = ``v`` plus its later neighbours in the fill-in graph; parent = earliest of those."""
    if g.n == 0:
        return TreeDecomposition((), ())
    pos = {v: i for i, v in enumerate(order)}
    adj = [set(g.neighbors(v)) for v in range(g.n)]
    bags = []
    parent_vertex = []
    for v in order:
        nb = adj[v]
        bags.append(tuple(sorted({v} | nb)))
        parent_vertex.append(min(nb, key=pos.__getitem__) if nb else None)
        for a in nb:
            adj[a].discard(v)
            adj[a].update(w for w in nb if w != a)
        adj[v] = set()
    edges = []
    roots = []
    for i, p in enumerate(parent_vertex):
        if p is None:
            roots.append(i)
        else:
            edges.append((i, pos[p]))
    # one bag per component lacks a parent; chain those roots so the result is one tree
    for a, b in zip(roots, roots[1:]):
        edges.append((a, b))
    return TreeDecomposition(tuple(bags), tuple(sorted(tuple(sorted(e)) for e in edges)))


def check_tree_decomposition(g: Graph, td: TreeDecomposition) -> tuple[bool, str]:
    """(a) every vertex and every edge lies in a bag; (b) bags containing a vertex span a subtree."""
    nb = len(td.bags)
    if g.n == 0:
        return True, "ok"
    tree = Graph(nb, td.edges) if nb else Graph(0, [])
    if tree.m != nb - 1:
        return False, "decomposition tree has the wrong number of edges"
    from ..graph import is_connected

    if not is_connected(tree):
        return False, "decomposition tree is disconnected"
    where = [[] for _ in range(g.n)]
    for i, bag in enumerate(td.bags):
        for v in bag:
            if not 0 <= v < g.n:
                return False, f"bag {i} names vertex {v} outside the graph"
            where[v].append(i)
    for v in range(g.n):
        if not where[v]:
            return False, f"vertex {v} lies in no bag"
    bag_sets = [set(b) for b in td.bags]
    for u, v in g.edges:
        if not any(u in b and v in b for b in bag_sets):
            return False, f"edge {u}-{v} lies in no bag"
    for v in range(g.n):
        if not tree.induced_is_connected(where[v]):
            return False, f"bags containing {v} do not form a subtree"
    return True, "ok"


# -- exact ---------------------------------------------------------------------


@dataclass(frozen=True)
class TreewidthResult:
    status: str
    width: int | None
    order: tuple[int, ...] | None
    lower: int
    upper: int
    nodes: int
    elapsed: float

    def decomposition(self, g: Graph) -> TreeDecomposition:
        if self.order is None:
            raise ValueError("no ordering available")
        return decomposition_from_order(g, list(self.order))

    def to_dict(self) -> dict:
        return {
            "answer": self.width if self.status == "ok" else self.status,
            "status": self.status,
            "width": self.width,
            "order": list(self.order) if self.order is not None else None,
            "lower": self.lower,
            "upper": self.upper,
            "nodes": self.nodes,
            "elapsed": round(self.elapsed, 6),
        }


def _q_size(adj: list[int], s: int, v: int) -> int:
    inside = s | (1 << v)
    comp = 1 << v
    frontier = comp
    while frontier:
        grow = 0
        for u in _bits(frontier):
            grow |= adj[u]
        grow &= inside & ~comp
        comp |= grow
        frontier = grow
    reach = 0
    for u in _bits(comp):
        reach |= adj[u]
    return (reach & ~inside).bit_count()


def _decide(adj: list[int], n: int, k: int, meter: Meter) -> list[int] | None:
    full = (1 << n) - 1
    parent: dict[int, tuple[int, int] | None] = {0: None}
    level = [0]
    for size in range(n):
        nxt = []
        for s in level:
            if n - size <= k + 1:
                return _unwind(parent, s, full)
            for v in _bits(full & ~s):
                t = s | (1 << v)
                if t in parent:
                    continue
                meter.tick()
                if _q_size(adj, s, v) <= k:
                    parent[t] = (s, v)
                    nxt.append(t)
        if not nxt:
            return None
        level = nxt
    return _unwind(parent, full, full)


def _unwind(parent, s: int, full: int) -> list[int]:
    order = []
    cur = s
    while parent[cur] is not None:
        prev, v = parent[cur]
        order.append(v)
        cur = prev
    order.reverse()
    order.extend(_bits(full & ~s))
    return order


def treewidth_exact(g: Graph, budget: SearchBudget | Meter | None = None) -> TreewidthResult:
    """Exact treewidth with an optimal elimination ordering.  ``tw`` of the empty graph is -1."""
    meter = as_meter(budget if budget is not None else SearchBudget(max_host_vertices=18))
    n = g.n
    if n == 0:
        return TreewidthResult("ok", -1, (), -1, -1, 0, meter.elapsed)
    ub, ub_order = treewidth_upper_bound(g)
    lb = max(treewidth_lower_bound(g), 0)
    try:
        meter.check_host(n)
        adj = _masks(g)
        for k in range(lb, ub):
            order = _decide(adj, n, k, meter)
            if order is not None:
                return TreewidthResult("ok", k, tuple(order), k, k, meter.nodes, meter.elapsed)
            lb = k + 1
    except BudgetExhausted:
        return TreewidthResult(EXHAUSTED, None, tuple(ub_order), lb, ub, meter.nodes, meter.elapsed)
    return TreewidthResult("ok", ub, tuple(ub_order), ub, ub, meter.nodes, meter.elapsed)
