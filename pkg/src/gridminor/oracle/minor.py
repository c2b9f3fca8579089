"""Exhaustive minor containment and the exact grid-minor number.

For a connected host every model can be grown until it covers the whole host
(an unused vertex joins any neighbouring branch set), so ``H ⪯ G`` holds
exactly when some partition of ``V(G)`` into ``|V(H)|`` connected parts has a
quotient containing ``H`` as a spanning subgraph.  The search contracts host
edges one at a time, memoises the partitions it has seen, and checks
for a spanning monomorphism once exactly ``|V(H)|`` parts remain.

Pruning:

* every remaining contraction destroys at least one edge;
* a quotient vertex that is never merged again keeps at most its current
  degree, and ``r`` contractions touch at most ``2r`` vertices, which bounds
  how many low-degree vertices may survive;
* if the pattern has minimum degree ``d``, host vertices of degree below ``d``
  are contracted away for free (for ``d >= 3`` this includes degree-2
  vertices), since such a vertex can always be moved out of its branch set;
* before the main search, the pattern's degree-3 core (degree-2 vertices
  suppressed, degree-1 vertices removed) is searched first.  It is a minor of
  the pattern, so if the core does not fit the pattern does not either.

When a short search does not settle the question, separators are tried.  If
deleting ``Z`` splits the host, at most ``|Z|`` pattern vertices ``Y`` have
branch sets meeting ``Z`` and every component of ``H - Y`` must sit inside a
single component of ``G - Z``.  If no choice of ``Y`` admits such a placement
the answer is "no".  Candidate separators are the highest-degree vertices and,
for product hosts, the layers ``{c} x V(G2)`` over cut vertices ``c`` of a factor.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import combinations
from math import isqrt

from ..graph import Graph, ProductGraph, components, is_forest, make_grid
from ..models import MinorModel, validate_model
from .budget import EXHAUSTED, NO, YES, BudgetExhausted, Meter, SearchBudget, as_meter
from .treewidth import treewidth_lower_bound, treewidth_upper_bound


def _bits(m: int):
    while m:
        low = m & -m
        yield low.bit_length() - 1
        m ^= low


@dataclass(frozen=True)
class MinorResult:
    answer: str
    model: MinorModel | None
    nodes: int
    elapsed: float

    def to_dict(self) -> dict:
        out = {"answer": self.answer, "nodes": self.nodes, "elapsed": round(self.elapsed, 6)}
        if self.model is not None:
            out["witness"] = {str(x): list(self.model.branch_sets[x]) for x in range(self.model.pattern.n)}
        return out


# -- pattern side -------------------------------------------------------------


def degree3_core(pattern: Graph) -> Graph:
    """Suppress degree-2 vertices and delete vertices of degree <= 1 until none are left.

    The result is a minor of ``pattern`` (possibly empty) with minimum degree at least 3.
    """
    adj = {v: set(pattern.neighbors(v)) for v in range(pattern.n)}
    queue = [v for v in adj if len(adj[v]) <= 2]
    while queue:
        v = queue.pop()
        if v not in adj or len(adj[v]) > 2:
            continue
        nb = adj.pop(v)
        for w in nb:
            adj[w].discard(v)
        if len(nb) == 2:
            a, b = nb
            adj[a].add(b)
            adj[b].add(a)
        queue.extend(w for w in nb if len(adj[w]) <= 2)
    ids = sorted(adj)
    pos = {v: i for i, v in enumerate(ids)}
    edges = {(min(pos[u], pos[w]), max(pos[u], pos[w])) for u in ids for w in adj[u]}
    return Graph(len(ids), sorted(edges))


class _Pattern:
    __slots__ = ("h", "adj", "deg", "m", "mindeg", "allowed", "order", "prev", "later")

    def __init__(self, h: int, edges):
        self.h = h
        adj = [0] * h
        for u, v in edges:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        self.adj = adj
        self.deg = [a.bit_count() for a in adj]
        self.m = sum(self.deg) // 2
        self.mindeg = min(self.deg) if h else 0
        top = max(self.deg, default=0) + 1
        # allowed[d] = number of pattern vertices with degree < d
        self.allowed = [sum(1 for x in self.deg if x < d) for d in range(top + 1)]
        order = []
        placed = 0
        while len(order) < h:
            best = max(
                (x for x in range(h) if not placed >> x & 1),
                key=lambda x: ((adj[x] & placed).bit_count(), self.deg[x], -x),
            )
            order.append(best)
            placed |= 1 << best
        self.order = order
        pos = {x: i for i, x in enumerate(order)}
        self.prev = [[y for y in _bits(adj[x]) if pos[y] < pos[x]] for x in order]
        self.later = [[y for y in _bits(adj[x]) if pos[y] > pos[x]] for x in order]


def _has_perfect_matching(dom: list[int], xs: list[int]) -> bool:
    """Every pattern vertex in ``xs`` can get a distinct quotient vertex from its domain."""
    match: dict[int, int] = {}

    def augment(x: int, seen: int) -> int:
        for v in _bits(dom[x] & ~seen):
            seen |= 1 << v
            other = match.get(v)
            if other is None:
                match[v] = x
                return -1
            res = augment(other, seen)
            if res == -1:
                match[v] = x
                return -1
            seen = res
        return seen

    for x in xs:
        if augment(x, 0) != -1:
            return False
    return True


def _spanning_embedding(pat: _Pattern, qadj: list[int], meter: Meter) -> list[int] | None:
    """Bijection ``phi`` from pattern vertices onto quotient vertices that keeps every pattern edge.

    Constraint search: domains start from degree and neighbour-degree dominance,
    every assignment filters the remaining domains (injectivity and adjacency),
    the smallest domain is branched on first, and a bipartite matching over the
    domains must exist at every node.
    """
    h = pat.h
    padj, pdeg = pat.adj, pat.deg
    qdeg = [a.bit_count() for a in qadj]
    if any(a < b for a, b in zip(sorted(qdeg, reverse=True), sorted(pdeg, reverse=True))):
        return None
    psig = [sorted((pdeg[y] for y in _bits(padj[x])), reverse=True) for x in range(h)]
    qsig = [sorted((qdeg[w] for w in _bits(qadj[v])), reverse=True) for v in range(h)]
    dom = []
    for x in range(h):
        m = 0
        for v in range(h):
            if qdeg[v] >= pdeg[x] and all(a >= b for a, b in zip(qsig[v], psig[x])):
                m |= 1 << v
        if not m:
            return None
        dom.append(m)
    if not _has_perfect_matching(dom, list(range(h))):
        return None
    calls = 0
    checked = False

    def rec(dom: list[int], free: list[int]) -> list[int] | None:
        nonlocal calls, checked
        if not free:
            return [d.bit_length() - 1 for d in dom]
        meter.tick()
        calls += 1
        if calls == EMBED_PROBE and not checked:
            checked = True
            if _quotient_separator_refutes(pat, qadj, meter):
                raise _Refuted
        x = min(free, key=lambda y: (dom[y].bit_count(), -pdeg[y]))
        rest = [y for y in free if y != x]
        for v in _bits(dom[x]):
            bit = 1 << v
            nd = list(dom)
            nd[x] = bit
            nb = padj[x]
            qa = qadj[v]
            ok = True
            for y in rest:
                d = nd[y] & ~bit
                if nb >> y & 1:
                    d &= qa
                if not d:
                    ok = False
                    break
                nd[y] = d
            if not ok or not _has_perfect_matching(nd, rest):
                continue
            got = rec(nd, rest)
            if got is not None:
                return got
        return None

    try:
        return rec(dom, list(range(h)))
    except _Refuted:
        return None


class _Refuted(Exception):
    pass


EMBED_PROBE = 2000


def _mask_components(adj: list[int], within: int) -> list[int]:
    out = []
    left = within
    while left:
        comp = left & -left
        frontier = comp
        while frontier:
            grow = 0
            for u in _bits(frontier):
                grow |= adj[u]
            grow &= within & ~comp
            comp |= grow
            frontier = grow
        out.append(comp)
        left &= ~comp
    return out


def _edges_in(adj: list[int], mask: int) -> int:
    return sum((adj[u] & mask).bit_count() for u in _bits(mask)) // 2


def _quotient_separator_refutes(pat: _Pattern, qadj: list[int], meter: Meter) -> bool:
    """Spanning version of the separator test: pattern pieces must fill each host piece exactly."""
    h = pat.h
    padj = pat.adj
    full = (1 << h) - 1
    by_degree = sorted(range(h), key=lambda v: (-qadj[v].bit_count(), v))
    for t in range(1, min(MAX_SEPARATOR, h - 2) + 1):
        zmask = 0
        for v in by_degree[:t]:
            zmask |= 1 << v
        bins = _mask_components(qadj, full & ~zmask)
        if len(bins) < 2:
            continue
        sizes = [b.bit_count() for b in bins]
        bedges = [_edges_in(qadj, b) for b in bins]
        forest = [bedges[j] == sizes[j] - 1 for j in range(len(bins))]
        feasible = False
        for ys in combinations(range(h), t):
            meter.tick()
            rest = full
            for y in ys:
                rest &= ~(1 << y)
            pieces = _mask_components(padj, rest)
            info = sorted(((p.bit_count(), _edges_in(padj, p)) for p in pieces), reverse=True)
            if _exact_pack(info, sizes, bedges, forest):
                feasible = True
                break
        if not feasible:
            return True
    return False


def _exact_pack(info, sizes, bedges, forest) -> bool:
    room = list(sizes)
    eroom = list(bedges)

    def rec(i: int) -> bool:
        if i == len(info):
            return not any(room)
        size, e = info[i]
        seen = set()
        for j in range(len(room)):
            key = (room[j], eroom[j], forest[j])
            if key in seen or room[j] < size or eroom[j] < e:
                continue
            if forest[j] and e > size - 1:
                continue
            seen.add(key)
            room[j] -= size
            eroom[j] -= e
            if rec(i + 1):
                return True
            room[j] += size
            eroom[j] += e
        return False

    return rec(0)


# -- host side -------------------------------------------------------------------


class _SpanningSearch:
    """Connected host given as adjacency masks over a vertex subset; pattern as :class:`_Pattern`."""

    def __init__(self, adj: dict[int, int], pat: _Pattern, meter: Meter):
        self.pat = pat
        self.meter = meter
        self.seen: set = set()
        self.start_adj = adj
        self.classes = _twin_classes(adj)
        self.free = ~sum(self.classes)

    def _key(self, parts, u, v):
        """Memo key of the partition after merging ``u`` and ``v``, up to swapping twins.

        Swapping two twins is a host automorphism, so partitions that agree on
        the non-twin vertices of each part and on how many of each twin class
        every part holds are interchangeable.
        """
        merged = [p for x, p in parts.items() if x != u and x != v]
        merged.append(parts[u] | parts[v])
        if not self.classes:
            return frozenset(merged)
        free, classes = self.free, self.classes
        return tuple(sorted((p & free, tuple((p & c).bit_count() for c in classes)) for p in merged))

    def run(self) -> dict[int, int] | None:
        """Map pattern vertex -> part mask, or ``None`` when no model exists."""
        adj = dict(self.start_adj)
        parts = {v: 1 << v for v in adj}
        edges = sum(a.bit_count() for a in adj.values()) // 2
        found = self._rec(adj, parts, edges)
        return found

    def _reduce(self, adj, parts, edges):
        """Contract vertices whose degree is below the pattern's minimum degree (at most 2)."""
        limit = min(self.pat.mindeg, 3)
        if limit <= 0 or len(adj) <= self.pat.h:
            return adj, parts, edges
        todo = [v for v, a in adj.items() if a.bit_count() < limit]
        if not todo:
            return adj, parts, edges
        adj = dict(adj)
        parts = dict(parts)
        while todo and len(adj) > self.pat.h:
            v = todo.pop()
            if v not in adj:
                continue
            a = adj[v]
            if a.bit_count() >= limit or a == 0:
                continue
            w = (a & -a).bit_length() - 1
            edges = self._contract(adj, parts, w, v, edges)
            if adj[w].bit_count() < limit:
                todo.append(w)
            for x in _bits(adj[w]):
                if adj[x].bit_count() < limit:
                    todo.append(x)
        return adj, parts, edges

    @staticmethod
    def _contract(adj, parts, u, v, edges) -> int:
        """Merge ``v`` into ``u`` in place; returns the new edge count."""
        au, av = adj[u], adj[v]
        common = (au & av).bit_count()
        bu, bv = 1 << u, 1 << v
        for x in _bits(av & ~bu):
            adj[x] = (adj[x] & ~bv) | bu
        adj[u] = (au | av) & ~bu & ~bv
        del adj[v]
        parts[u] |= parts.pop(v)
        return edges - 1 - common

    def _rec(self, adj, parts, edges):
        self.meter.tick()
        pat = self.pat
        adj, parts, edges = self._reduce(adj, parts, edges)
        q = len(adj)
        r = q - pat.h
        if r < 0 or edges - r < pat.m:
            return None
        allowed = pat.allowed
        top = len(allowed)
        low = [0] * top
        for a in adj.values():
            d = a.bit_count()
            for dd in range(d + 1, top):
                low[dd] += 1
        for dd in range(top):
            if low[dd] - 2 * r > allowed[dd]:
                return None
        if r == 0:
            ids = sorted(adj)
            pos = {v: i for i, v in enumerate(ids)}
            qadj = [0] * q
            for i, v in enumerate(ids):
                for w in _bits(adj[v]):
                    qadj[i] |= 1 << pos[w]
            phi = _spanning_embedding(pat, qadj, self.meter)
            if phi is None:
                return None
            return {x: parts[ids[phi[x]]] for x in range(pat.h)}
        moves = []
        for u, a in adj.items():
            for v in _bits(a):
                if u < v:
                    moves.append(((a & adj[v]).bit_count(), u, v))
        moves.sort()
        for _, u, v in moves:
            key = self._key(parts, u, v)
            if key in self.seen:
                continue
            self.seen.add(key)
            nadj = dict(adj)
            nparts = dict(parts)
            ne = self._contract(nadj, nparts, u, v, edges)
            found = self._rec(nadj, nparts, ne)
            if found is not None:
                return found
        return None


def _twin_classes(adj: dict[int, int]) -> list[int]:
    """Masks of the twin classes with two or more members (same open or same closed neighbourhood)."""
    groups: dict[tuple[bool, int], int] = {}
    for v, a in adj.items():
        for key in ((False, a), (True, a | 1 << v)):
            groups[key] = groups.get(key, 0) | 1 << v
    return sorted(m for m in groups.values() if m & (m - 1))


def _masks_on(host: Graph, vertices) -> dict[int, int]:
    vs = set(vertices)
    out = {}
    for v in vs:
        m = 0
        for w in host.neighbors(v):
            if w in vs:
                m |= 1 << w
        out[v] = m
    return out


def _pattern_from(pattern: Graph, vertices: list[int]) -> tuple[_Pattern, list[int]]:
    pos = {v: i for i, v in enumerate(vertices)}
    edges = [(pos[u], pos[v]) for u, v in pattern.edges if u in pos and v in pos]
    return _Pattern(len(vertices), edges), vertices


class _ProbeLimit(Exception):
    pass


def _run_search(adj, pat: _Pattern, meter: Meter, probe: int | None):
    search = _SpanningSearch(adj, pat, meter)
    if probe is None:
        return search.run()
    stop = meter.nodes + probe
    orig_tick = meter.tick

    def tick(k=1):
        orig_tick(k)
        if meter.nodes > stop:
            raise _ProbeLimit

    search.meter = _TickProxy(meter, tick)
    return search.run()


class _TickProxy:
    __slots__ = ("_meter", "tick")

    def __init__(self, meter: Meter, tick):
        self._meter = meter
        self.tick = tick

    @property
    def nodes(self) -> int:
        return self._meter.nodes


PROBE_NODES = 20000
SUBGRAPH_PROBE = 1_000_000


def _subgraph_probe(adj: dict[int, int], sub: Graph, meter: Meter, cap: int) -> dict[int, int] | None:
    """Quick look for ``sub`` as a (not necessarily spanning) subgraph; ``None`` if none found within ``cap`` nodes.

    Only ever used to find "yes" answers early, so giving up is always safe.
    """
    h = sub.n
    deg = [sub.degree(x) for x in range(h)]
    order = [max(range(h), key=lambda x: (deg[x], -x))]
    placed = {order[0]}
    while len(order) < h:
        x = max((y for y in range(h) if y not in placed),
                key=lambda y: (sum(1 for z in sub.neighbors(y) if z in placed), deg[y], -y))
        order.append(x)
        placed.add(x)
    earlier = []
    seen_at = {x: i for i, x in enumerate(order)}
    for x in order:
        earlier.append([z for z in sub.neighbors(x) if seen_at[z] < seen_at[x]])
    hdeg = {v: a.bit_count() for v, a in adj.items()}
    everything = 0
    for v in adj:
        everything |= 1 << v
    cls_of = {}
    for c in _twin_classes(adj):
        for v in _bits(c):
            cls_of[v] = c
    phi: dict[int, int] = {}
    budget = [cap]

    def rec(i: int, used: int) -> bool:
        if i == h:
            return True
        budget[0] -= 1
        if budget[0] < 0:
            return False
        meter.tick()
        x = order[i]
        cand = everything & ~used
        for z in earlier[i]:
            cand &= adj[phi[z]]
        tried = set()
        for v in _bits(cand):
            if hdeg[v] < deg[x]:
                continue
            # unused twins are interchangeable, so one per class is enough
            c = cls_of.get(v)
            if c is not None:
                if c in tried:
                    continue
                tried.add(c)
            phi[x] = v
            if rec(i + 1, used | (1 << v)):
                return True
        phi.pop(x, None)
        return False

    if rec(0, 0):
        return {x: 1 << v for x, v in phi.items()}
    return None


def _connected_host_search(host: Graph, comp: list[int], pattern: Graph, pvertices: list[int],
                           meter: Meter) -> dict[int, tuple[int, ...]] | None:
    """Model of ``pattern[pvertices]`` inside the connected host component ``comp``."""
    if len(pvertices) > len(comp):
        return None
    pos = {v: i for i, v in enumerate(pvertices)}
    sub = Graph(len(pvertices), [(pos[u], pos[v]) for u, v in pattern.edges if u in pos and v in pos])
    adj = _masks_on(host, comp)
    if sub.m > sum(a.bit_count() for a in adj.values()) // 2:
        return None
    pat = _Pattern(sub.n, sub.edges)
    core = degree3_core(sub)
    cpat = _Pattern(core.n, core.edges) if 0 < core.n < sub.n else None

    def finish(found):
        if found is None:
            return None
        return {pvertices[x]: tuple(_bits(mask)) for x, mask in found.items()}

    found = _subgraph_probe(adj, sub, meter, SUBGRAPH_PROBE)
    if found is not None:
        return finish(found)
    try:
        if cpat is not None and _run_search(adj, cpat, meter, PROBE_NODES) is None:
            return None
        return finish(_run_search(adj, pat, meter, PROBE_NODES))
    except _ProbeLimit:
        pass
    if _separator_refutes(host, comp, sub, meter) or (cpat is not None and _separator_refutes(host, comp, core, meter)):
        return None
    if cpat is not None and _run_search(adj, cpat, meter, None) is None:
        return None
    return finish(_run_search(adj, pat, meter, None))


# -- separator refutation ------------------------------------------------------


def _induced_components(host: Graph, vertices) -> list[list[int]]:
    left = set(vertices)
    out = []
    while left:
        s = left.pop()
        comp = [s]
        stack = [s]
        while stack:
            u = stack.pop()
            for w in host.neighbors(u):
                if w in left:
                    left.remove(w)
                    comp.append(w)
                    stack.append(w)
        out.append(sorted(comp))
    return out


def _cut_vertices(g: Graph) -> list[int]:
    out = []
    for c in range(g.n):
        rest = [v for v in range(g.n) if v != c]
        if rest and not g.induced_is_connected(rest):
            out.append(c)
    return out


MAX_SEPARATOR = 6


def _candidate_separators(host: Graph, comp: list[int]) -> list[tuple[int, ...]]:
    cands: list[tuple[int, ...]] = []
    if isinstance(host, ProductGraph) and len(comp) == host.n:
        for c in _cut_vertices(host.g1):
            cands.append(tuple(host.vertex(c, b) for b in range(host.g2.n)))
        for c in _cut_vertices(host.g2):
            cands.append(tuple(host.vertex(a, c) for a in range(host.g1.n)))
    by_degree = sorted(comp, key=lambda v: (-host.degree(v), v))
    for t in range(1, min(MAX_SEPARATOR, len(comp) - 2) + 1):
        cands.append(tuple(by_degree[:t]))
    seen = set()
    out = []
    for z in cands:
        key = frozenset(z)
        if len(z) <= MAX_SEPARATOR and key not in seen:
            seen.add(key)
            out.append(z)
    return out


def _separator_refutes(host: Graph, comp: list[int], sub: Graph, meter: Meter) -> bool:
    for z in _candidate_separators(host, comp):
        zs = set(z)
        hcomps = _induced_components(host, [v for v in comp if v not in zs])
        if len(hcomps) < 2:
            continue
        if not _placement_exists(host, hcomps, len(z), sub, meter):
            return True
    return False


def _placement_exists(host: Graph, hcomps, z: int, sub: Graph, meter: Meter) -> bool:
    h = sub.n
    padj = [0] * h
    for u, v in sub.edges:
        padj[u] |= 1 << v
        padj[v] |= 1 << u
    sizes = [len(c) for c in hcomps]
    total = sum(sizes)
    graphs = [None] * len(hcomps)
    cache: dict[tuple[int, int], bool] = {}
    budget = SearchBudget(max_host_vertices=None, max_nodes=5000)

    def comp_graph(j):
        if graphs[j] is None:
            pos = {v: i for i, v in enumerate(hcomps[j])}
            edges = [(pos[u], pos[w]) for u in hcomps[j] for w in host.neighbors(u) if w in pos and pos[u] < pos[w]]
            graphs[j] = Graph(len(pos), edges)
        return graphs[j]

    def fits(j: int, mask: int) -> bool:
        key = (j, mask)
        got = cache.get(key)
        if got is None:
            cnt = mask.bit_count()
            if cnt > sizes[j]:
                got = False
            elif cnt <= 1:
                got = True
            else:
                vs = list(_bits(mask))
                pos = {v: i for i, v in enumerate(vs)}
                part = Graph(cnt, [(pos[u], pos[w]) for u in vs for w in _bits(padj[u] & mask) if u < w])
                got = has_minor(comp_graph(j), part, budget).answer != NO
            cache[key] = got
        return got

    t = min(z, h)
    full = (1 << h) - 1
    for ys in combinations(range(h), t):
        meter.tick()
        rest = full
        for y in ys:
            rest &= ~(1 << y)
        if rest.bit_count() > total:
            continue
        pcs = []
        left = rest
        while left:
            low = left & -left
            comp = low
            frontier = low
            while frontier:
                grow = 0
                for u in _bits(frontier):
                    grow |= padj[u]
                grow &= rest & ~comp
                comp |= grow
                frontier = grow
            pcs.append(comp)
            left &= ~comp
        pcs.sort(key=int.bit_count, reverse=True)
        if pcs and pcs[0].bit_count() > max(sizes):
            continue
        load = [0] * len(hcomps)

        def pack(i: int) -> bool:
            if i == len(pcs):
                return True
            tried = set()
            for j in range(len(hcomps)):
                cand = load[j] | pcs[i]
                sig = comp_graph(j)
                if load[j] == 0 and sig in tried:
                    continue
                if fits(j, cand):
                    if load[j] == 0:
                        tried.add(sig)
                    old = load[j]
                    load[j] = cand
                    if pack(i + 1):
                        return True
                    load[j] = old
            return False

        if pack(0):
            return True
    return False


def has_minor(host: Graph, pattern: Graph, budget: SearchBudget | Meter | None = None) -> MinorResult:
    """Decide ``pattern ⪯ host`` exhaustively.  "yes" answers carry a validated model."""
    meter = as_meter(budget)
    start_nodes = meter.nodes
    t0 = time.perf_counter()

    def done(answer, model=None):
        return MinorResult(answer, model, meter.nodes - start_nodes, time.perf_counter() - t0)

    h, n = pattern.n, host.n
    if h == 0:
        return done(YES, MinorModel(pattern, host, {}))
    if h > n or pattern.m > host.m:
        return done(NO)
    try:
        meter.check_host(n)
        if is_forest(host) and not is_forest(pattern):
            return done(NO)
        if pattern.m > 0 and treewidth_upper_bound(host)[0] < treewidth_lower_bound(pattern):
            return done(NO)
        sets = _search_components(host, pattern, meter)
    except BudgetExhausted:
        return done(EXHAUSTED)
    if sets is None:
        return done(NO)
    model = MinorModel(pattern, host, sets)
    report = validate_model(model)
    if not report:
        raise AssertionError(f"minor search produced an invalid model: {report.message}")
    return done(YES, model)


def _search_components(host: Graph, pattern: Graph, meter: Meter):
    hcomps = [sorted(c) for c in components(host)]
    pcomps = [sorted(c) for c in components(pattern)]
    if len(hcomps) == 1:
        return _connected_host_search(host, hcomps[0], pattern, list(range(pattern.n)), meter)
    # distribute pattern components over host components, biggest first
    pcomps.sort(key=len, reverse=True)
    cache: dict[tuple[int, frozenset], dict | None] = {}
    assign: list[int] = [-1] * len(pcomps)
    load = [0] * len(hcomps)

    def fits(j: int, members: frozenset):
        key = (j, members)
        if key not in cache:
            verts = sorted(v for i in members for v in pcomps[i])
            cache[key] = _connected_host_search(host, hcomps[j], pattern, verts, meter)
        return cache[key]

    def rec(i: int):
        if i == len(pcomps):
            out = {}
            for j in range(len(hcomps)):
                members = frozenset(a for a in range(len(pcomps)) if assign[a] == j)
                if members:
                    part = fits(j, members)
                    if part is None:
                        return None
                    out.update(part)
            return out
        for j in range(len(hcomps)):
            if load[j] + len(pcomps[i]) > len(hcomps[j]):
                continue
            assign[i] = j
            load[j] += len(pcomps[i])
            members = frozenset(a for a in range(i + 1) if assign[a] == j)
            if fits(j, members) is not None:
                res = rec(i + 1)
                if res is not None:
                    return res
            load[j] -= len(pcomps[i])
            assign[i] = -1
        return None

    return rec(0)


# -- grid-minor number -------------------------------------------------------------


@dataclass(frozen=True)
class GmResult:
    status: str
    value: int | None
    lower: int
    upper: int
    model: MinorModel | None
    nodes: int
    elapsed: float

    def to_dict(self) -> dict:
        out = {
            "answer": self.value if self.status == "ok" else self.status,
            "status": self.status,
            "lower": self.lower,
            "upper": self.upper,
            "nodes": self.nodes,
            "elapsed": round(self.elapsed, 6),
        }
        if self.model is not None:
            out["witness"] = {str(x): list(self.model.branch_sets[x]) for x in range(self.model.pattern.n)}
        return out


def gm_upper_bound(host: Graph) -> int:
    """Cheap bound: ``k^2 <= n``, ``2k(k-1) <= m``, forests have no 4-cycle minor, ``gm <= tw``."""
    if host.n == 0:
        return 0
    k = isqrt(host.n)
    while k > 1 and 2 * k * (k - 1) > host.m:
        k -= 1
    if is_forest(host):
        return 1
    return max(1, min(k, treewidth_upper_bound(host)[0]))


def gm_exact(host: Graph, budget: SearchBudget | Meter | None = None) -> GmResult:
    """Largest ``k`` with the ``k``-grid a minor of ``host``, searching ``k = 1, 2, ...``."""
    meter = as_meter(budget)
    t0 = time.perf_counter()
    start = meter.nodes
    if host.n == 0:
        return GmResult("ok", 0, 0, 0, None, 0, 0.0)
    upper = gm_upper_bound(host)
    lower = 1
    model = MinorModel(make_grid(1), host, {0: (0,)})
    for k in range(2, upper + 1):
        res = has_minor(host, make_grid(k), meter)
        if res.answer == YES:
            lower, model = k, res.model
        elif res.answer == NO:
            upper = k - 1
            break
        else:
            return GmResult(EXHAUSTED, None, lower, upper, model, meter.nodes - start, time.perf_counter() - t0)
    return GmResult("ok", lower, lower, lower, model, meter.nodes - start, time.perf_counter() - t0)
