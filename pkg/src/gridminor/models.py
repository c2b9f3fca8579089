"""Minor models (branch-set assignments), their composition, and brambles.

A model of a pattern ``H`` in a host ``G`` maps every vertex ``x`` of ``H`` to a
set ``B_x`` of host vertices such that

(i)   the sets are pairwise disjoint,
(ii)  every ``G[B_x]`` is connected, and
(iii) every pattern edge ``xy`` has a host edge between ``B_x`` and ``B_y``.

``validate_model`` reports the first failing clause together with a concrete
witness instead of a bare boolean.
"""

from __future__ import annotations

import json
from collections.abc import Mapping
from dataclasses import dataclass, field
from math import isqrt
from typing import Any, Callable, Iterator, Sequence

from .graph import (
    LEXICOGRAPHIC,
    Graph,
    GraphError,
    ProductGraph,
    bfs_order,
    cartesian_product,
    is_connected,
    is_forest,
    make_complete,
    make_grid,
)


class MalformedModelError(ValueError):
    """A model refers to vertices outside its graphs, or its keys do not match the pattern."""


class ModelError(ValueError):
    """A model operation received an argument that violates its contract."""


BranchSet = tuple[int, ...]


class LazyBranchSets(Mapping):
    """Read-only mapping from pattern vertex to branch set, computed on access."""

    def __init__(self, size: int, fn: Callable[[int], BranchSet]):
        self._size = size
        self._fn = fn

    def __getitem__(self, x: int) -> BranchSet:
        if not isinstance(x, int) or not 0 <= x < self._size:
            raise KeyError(x)
        return self._fn(x)

    def __iter__(self) -> Iterator[int]:
        return iter(range(self._size))

    def __len__(self) -> int:
        return self._size


@dataclass(frozen=True, eq=False)
class MinorModel:
    pattern: Graph
    host: Graph
    branch_sets: Mapping[int, BranchSet]

    def __post_init__(self):
        if not isinstance(self.branch_sets, LazyBranchSets):
            normal = {int(x): tuple(sorted(set(b))) for x, b in self.branch_sets.items()}
            object.__setattr__(self, "branch_sets", dict(sorted(normal.items())))

    def __getitem__(self, x: int) -> BranchSet:
        return self.branch_sets[x]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MinorModel):
            return NotImplemented
        return (
            self.pattern == other.pattern
            and self.host == other.host
            and dict(self.branch_sets) == dict(other.branch_sets)
        )

    def __repr__(self) -> str:
        return f"MinorModel(pattern={self.pattern!r}, host={self.host!r})"

    def used_vertices(self) -> int:
        return sum(len(self.branch_sets[x]) for x in range(self.pattern.n))

    def to_dict(self) -> dict:
        return {
            "pattern": self.pattern.to_dict(),
            "host": self.host.to_dict(compact=True),
            "branch_sets": {str(x): list(self.branch_sets[x]) for x in range(self.pattern.n)},
        }

    @classmethod
    def from_dict(cls, d: dict) -> MinorModel:
        try:
            pattern = Graph.from_dict(d["pattern"])
            host = Graph.from_dict(d["host"])
            sets = {int(x): [int(v) for v in b] for x, b in d["branch_sets"].items()}
        except (KeyError, TypeError, ValueError, AttributeError) as exc:
            raise MalformedModelError(f"malformed model JSON: {exc}") from exc
        return cls(pattern, host, sets)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))


def identity_model(g: Graph) -> MinorModel:
    return MinorModel(g, g, {v: (v,) for v in range(g.n)})


def subgraph_model(pattern: Graph, host: Graph, mapping: Sequence[int]) -> MinorModel:
    """Singleton branch sets ``B_x = {mapping[x]}``, e.g. for an embedded subgraph."""
    return MinorModel(pattern, host, {x: (mapping[x],) for x in range(pattern.n)})


# -- validation --------------------------------------------------------------


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    clause: str | None = None
    witness: Any = None
    message: str = ""

    def __bool__(self) -> bool:
        return self.ok

    def to_dict(self) -> dict:
        return {"ok": self.ok, "clause": self.clause, "witness": self.witness, "message": self.message}


OK = ValidationReport(True, message="ok")


def _check_references(m: MinorModel) -> None:
    keys = set(m.branch_sets)
    expected = set(range(m.pattern.n))
    if keys != expected:
        missing = sorted(expected - keys)[:5]
        extra = sorted(keys - expected)[:5]
        raise MalformedModelError(
            f"branch-set keys do not match pattern vertices (missing {missing}, extra {extra})"
        )
    for x in range(m.pattern.n):
        for v in m.branch_sets[x]:
            if not (isinstance(v, int) and 0 <= v < m.host.n):
                raise MalformedModelError(f"branch set of {x} names host vertex {v!r} outside 0..{m.host.n - 1}")


def _component_of(host: Graph, members: set[int], start: int) -> set[int]:
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for w in host.neighbors(u):
            if w in members and w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


def validate_model(m: MinorModel) -> ValidationReport:
    """Check clauses (i)-(iii); raises :class:`MalformedModelError` for bad references."""
    _check_references(m)
    host = m.host
    owner: dict[int, int] = {}
    sets = [m.branch_sets[x] for x in range(m.pattern.n)]
    for x, b in enumerate(sets):
        for v in b:
            y = owner.get(v)
            if y is not None:
                return ValidationReport(
                    False, "i", {"vertex": v, "pattern_vertices": [y, x]},
                    f"host vertex {v} lies in the branch sets of both {y} and {x}",
                )
            owner[v] = x
    for x, b in enumerate(sets):
        if not b:
            return ValidationReport(False, "ii", {"pattern_vertex": x, "branch_set": []},
                                    f"branch set of {x} is empty")
        members = set(b)
        comp = _component_of(host, members, b[0])
        if len(comp) != len(members):
            outside = sorted(members - comp)
            return ValidationReport(
                False, "ii",
                {"pattern_vertex": x, "component": sorted(comp)[:20], "unreached": outside[:20]},
                f"branch set of {x} is disconnected: {outside[0]} is not reachable from {b[0]}",
            )
    for x, y in m.pattern.edges:
        bx, by = sets[x], sets[y]
        if len(bx) > len(by):
            bx, x, y = by, y, x
        if not any(owner.get(w) == y for u in bx for w in host.neighbors(u)):
            return ValidationReport(
                False, "iii", {"pattern_edge": sorted((x, y))},
                f"no host edge joins the branch sets of {min(x, y)} and {max(x, y)}",
            )
    return OK


# -- composition -------------------------------------------------------------


def _same_graph(a: Graph, b: Graph) -> bool:
    if a is b:
        return True
    if isinstance(a, ProductGraph) and isinstance(b, ProductGraph):
        if a.kind == b.kind and _same_graph(a.g1, b.g1) and _same_graph(a.g2, b.g2):
            return True
    return a == b


def compose_models(inner: MinorModel, outer: MinorModel) -> MinorModel:
    """Model of ``inner.pattern`` in ``outer.host`` (transitivity of the minor relation)."""
    if not _same_graph(inner.host, outer.pattern):
        raise ModelError("inner.host and outer.pattern are different graphs")
    sets = {}
    for x in range(inner.pattern.n):
        acc: set[int] = set()
        for v in inner.branch_sets[x]:
            acc.update(outer.branch_sets[v])
        sets[x] = acc
    return MinorModel(inner.pattern, outer.host, sets)


def compose_chain(*models: MinorModel) -> MinorModel:
    out = models[0]
    for m in models[1:]:
        out = compose_models(out, m)
    return out


def lift_model_through_product(m: MinorModel, h: Graph, h_first: bool = False,
                               check: bool = True) -> MinorModel:
    """From a model of ``G1`` in ``G2`` build one of ``G1 □ H`` in ``G2 □ H``.

    The branch set of ``(x, w)`` is ``B_x × {w}``.  With ``h_first`` the factor
    order is swapped: ``H □ G1`` in ``H □ G2``.  Branch sets are produced lazily.
    """
    if check:
        report = validate_model(m)
        if not report:
            raise ModelError(f"cannot lift an invalid model: {report.message}")
    g1, g2 = m.pattern, m.host
    nh = h.n
    bs = m.branch_sets
    if not h_first:
        pattern, host = cartesian_product(g1, h), cartesian_product(g2, h)

        def branch(v: int) -> BranchSet:
            x, w = divmod(v, nh)
            return tuple(b * nh + w for b in bs[x])
    else:
        pattern, host = cartesian_product(h, g1), cartesian_product(h, g2)
        n1, n2 = g1.n, g2.n

        def branch(v: int) -> BranchSet:
            w, x = divmod(v, n1)
            return tuple(w * n2 + b for b in bs[x])

    return MinorModel(pattern, host, LazyBranchSets(pattern.n, branch))


def transpose_product_model(m: MinorModel) -> MinorModel:
    """Re-express a model hosted in ``A □ B`` as a model hosted in ``B □ A``."""
    host = m.host
    if not isinstance(host, ProductGraph):
        raise ModelError("host is not a product graph")
    swapped = ProductGraph(host.g2, host.g1, host.kind)
    na, nb = host.g1.n, host.g2.n

    def flip(v: int) -> int:
        a, b = divmod(v, nb)
        return b * na + a

    sets = {x: [flip(v) for v in m.branch_sets[x]] for x in range(m.pattern.n)}
    return MinorModel(m.pattern, swapped, sets)


def clique_minor_to_grid_model(m: MinorModel) -> MinorModel:
    """Turn a ``K_q`` model into a model of the ``floor(sqrt(q))`` grid in the same host.

    Grid vertex ``v`` (row-major id) uses the branch set of clique vertex ``v``.
    """
    q = m.pattern.n
    if q < 1 or m.pattern.m != q * (q - 1) // 2:
        raise ModelError("pattern is not a complete graph")
    k = isqrt(q)
    grid = make_grid(k)
    inner = MinorModel(grid, m.pattern, {v: (v,) for v in range(k * k)})
    return compose_models(inner, m)


# -- brambles ----------------------------------------------------------------


@dataclass(frozen=True)
class Bramble:
    host: Graph
    sets: tuple[tuple[int, ...], ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "sets", tuple(tuple(sorted(set(s))) for s in self.sets))


def _touch(host: Graph, a: Sequence[int], b: Sequence[int]) -> bool:
    sb = set(b)
    if sb.intersection(a):
        return True
    return any(w in sb for u in a for w in host.neighbors(u))


def validate_bramble(b: Bramble) -> ValidationReport:
    for i, s in enumerate(b.sets):
        if any(not 0 <= v < b.host.n for v in s):
            return ValidationReport(False, "reference", {"set": i}, f"set {i} names a vertex outside the host")
        if not b.host.induced_is_connected(s):
            return ValidationReport(False, "connected", {"set": i}, f"set {i} does not induce a connected subgraph")
    for i in range(len(b.sets)):
        for j in range(i + 1, len(b.sets)):
            if not _touch(b.host, b.sets[i], b.sets[j]):
                return ValidationReport(False, "touch", {"sets": [i, j]}, f"sets {i} and {j} do not touch")
    return OK


def _spanning_leaf(g: Graph) -> int:
    """Highest-id leaf of the BFS spanning tree from vertex 0 (0 itself if ``g`` is ``K_1``)."""
    parent = {0: None}
    for u in bfs_order(g, 0):
        for w in g.neighbors(u):
            if w not in parent:
                parent[w] = u
    has_child = {p for p in parent.values() if p is not None}
    leaves = [v for v in parent if v not in has_child and v != 0]
    if not leaves:
        return 0
    return max(leaves)


def product_bramble(g1: Graph, g2: Graph) -> Bramble:
    """The cross-shaped bramble in ``g1 □ g2`` certifying treewidth at least ``n``.

    ``v_i`` is a leaf of a spanning tree of ``g_i`` and ``g_i' = g_i - v_i``.
    The sets are the crosses ``({x} × V(g2')) ∪ (V(g1') × {y})`` for
    ``x ∈ V(g1'), y ∈ V(g2')``, the column ``{v_1} × V(g2)`` and the row
    ``V(g1') × {v_2}``.

    With a one-vertex factor the row set would be empty, so the two ends of
    a host edge are returned as singletons instead (order 2).  ``K_1 □ K_1``
    has no bramble of order 2 and raises.
    """
    if not (is_connected(g1) and is_connected(g2)):
        raise GraphError("product_bramble needs connected factors")
    host = cartesian_product(g1, g2)
    if g1.n < 2 or g2.n < 2:
        if host.n < 2:
            raise GraphError("K_1 □ K_1 has no bramble of order 2")
        u = 0
        return Bramble(host, ((u,), (host.neighbors(u)[0],)))
    v1, v2 = _spanning_leaf(g1), _spanning_leaf(g2)
    rest1 = [a for a in range(g1.n) if a != v1]
    rest2 = [b for b in range(g2.n) if b != v2]
    sets = []
    for x in rest1:
        for y in rest2:
            cross = {host.vertex(x, b) for b in rest2} | {host.vertex(a, y) for a in rest1}
            sets.append(cross)
    sets.append({host.vertex(v1, b) for b in range(g2.n)})
    sets.append({host.vertex(a, v2) for a in rest1})
    return Bramble(host, tuple(sets))


# -- edge density predicate ---------------------------------------------------


def _star_center(g: Graph) -> int | None:
    if g.n == 1 or g.m != g.n - 1:
        return None
    centers = [v for v in range(g.n) if g.degree(v) == g.n - 1]
    return centers[0] if centers else None


def minor_edge_density_check(m: MinorModel, t: int, delta: int) -> bool:
    """``|E(G)| < t|V(G)| + (delta - t)|V(H)|`` for a model of ``G`` in ``star · H``.

    The host must be a lexicographic :class:`ProductGraph` whose first factor
    is a star.  ``H`` must have treewidth at most ``t``; this is checked only
    for ``t == 1`` (where it means ``H`` is a forest).
    """
    host = m.host
    if not (isinstance(host, ProductGraph) and host.kind == LEXICOGRAPHIC and _star_center(host.g1) is not None):
        raise ModelError("host is not tagged as a star-lexicographic product")
    if not 1 <= t <= delta:
        raise ModelError("need 1 <= t <= delta")
    if m.pattern.max_degree() > delta:
        raise ModelError(f"pattern has maximum degree {m.pattern.max_degree()} > {delta}")
    h = host.g2
    if t == 1 and not is_forest(h):
        raise ModelError("t = 1 requires the second factor to be a forest")
    return m.pattern.m < t * m.pattern.n + (delta - t) * h.n


def complete_graph_model(q: int) -> MinorModel:
    return identity_model(make_complete(q))
