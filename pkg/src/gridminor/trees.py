"""Rooted trees: depths, heights, height classes and families of vertical paths.

Heights count vertices: a leaf has height 1 and ``h(v) = 1 + max h(child)``.
``H_i`` is the set of vertices of height ``i`` and ``n_i = |H_i|``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from math import ceil, pi
from typing import Iterable, Sequence

from .graph import Graph, GraphError, is_tree, make_subdivided_star, subdivided_star_vertex
from .models import MinorModel, validate_model

RELATED = "related"
UNRELATED = "unrelated"


class RootedTree:
    """A tree with a root, parent/children maps, depths and heights (all precomputed)."""

    __slots__ = ("tree", "root", "parent", "depth", "children", "heights", "_tin", "_tout", "order")

    def __init__(self, tree: Graph, root: int = 0):
        if not is_tree(tree):
            raise GraphError("RootedTree needs a connected acyclic graph")
        if not 0 <= root < tree.n:
            raise GraphError(f"root {root} is not a vertex")
        self.tree = tree
        self.root = root
        n = tree.n
        parent: list[int | None] = [None] * n
        depth = [0] * n
        children: list[list[int]] = [[] for _ in range(n)]
        order = [root]
        seen = [False] * n
        seen[root] = True
        for u in order:
            for w in sorted(tree.neighbors(u)):
                if not seen[w]:
                    seen[w] = True
                    parent[w] = u
                    depth[w] = depth[u] + 1
                    children[u].append(w)
                    order.append(w)
        heights = [1] * n
        for u in reversed(order):
            if children[u]:
                heights[u] = 1 + max(heights[c] for c in children[u])
        tin = [0] * n
        tout = [0] * n
        clock = 0
        stack = [(root, False)]
        while stack:
            u, done = stack.pop()
            if done:
                tout[u] = clock
                clock += 1
                continue
            tin[u] = clock
            clock += 1
            stack.append((u, True))
            for c in reversed(children[u]):
                stack.append((c, False))
        self.parent = tuple(parent)
        self.depth = tuple(depth)
        self.children = tuple(tuple(c) for c in children)
        self.heights = tuple(heights)
        self._tin = tin
        self._tout = tout
        self.order = tuple(order)

    @property
    def n(self) -> int:
        return self.tree.n

    def is_ancestor(self, a: int, b: int) -> bool:
        """True if ``a`` is an ancestor of ``b`` or equal to it."""
        return self._tin[a] <= self._tin[b] and self._tout[b] <= self._tout[a]

    def related(self, a: int, b: int) -> bool:
        return self.is_ancestor(a, b) or self.is_ancestor(b, a)

    def ancestors(self, v: int) -> list[int]:
        """Proper ancestors of ``v``, nearest first."""
        out = []
        p = self.parent[v]
        while p is not None:
            out.append(p)
            p = self.parent[p]
        return out

    def __repr__(self) -> str:
        return f"RootedTree(n={self.n}, root={self.root})"


def rooted(tree: Graph | RootedTree, root: int = 0) -> RootedTree:
    return tree if isinstance(tree, RootedTree) else RootedTree(tree, root)


def height(t: RootedTree, v: int) -> int:
    if not 0 <= v < t.n:
        raise GraphError(f"vertex {v} is not in the tree")
    return t.heights[v]


def height_class(t: RootedTree, i: int) -> list[int]:
    if i < 1:
        raise ValueError("height classes are indexed from 1")
    return [v for v in range(t.n) if t.heights[v] == i]


def height_histogram(t: RootedTree) -> list[tuple[int, int]]:
    """Pairs ``(i, n_i)`` for ``i = 1 .. h(root)``."""
    c = Counter(t.heights)
    return [(i, c.get(i, 0)) for i in range(1, t.heights[t.root] + 1)]


# -- vertical paths -----------------------------------------------------------------


@dataclass(frozen=True)
class VerticalPath:
    vertices: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.vertices)

    @property
    def upper(self) -> int:
        return self.vertices[0]

    @property
    def lower(self) -> int:
        return self.vertices[-1]

    def __iter__(self):
        return iter(self.vertices)

    def __len__(self) -> int:
        return len(self.vertices)


def check_vertical(t: RootedTree, path: Sequence[int]) -> bool:
    return len(path) > 0 and all(t.parent[b] == a for a, b in zip(path, path[1:]))


class VerticalPathSet:
    """Vertex-disjoint vertical paths with a certified pairwise relation matrix."""

    __slots__ = ("tree", "paths", "relation")

    def __init__(self, tree: RootedTree, paths: Iterable[Sequence[int]]):
        self.tree = tree
        self.paths = tuple(VerticalPath(tuple(p)) for p in paths)
        used: set[int] = set()
        for p in self.paths:
            if not check_vertical(tree, p.vertices):
                raise ValueError(f"{p.vertices} is not a vertical path")
            if used.intersection(p.vertices):
                raise ValueError("paths are not vertex-disjoint")
            used.update(p.vertices)
        k = len(self.paths)
        rel: list[list[str | None]] = [[None] * k for _ in range(k)]
        for i in range(k):
            for j in range(i + 1, k):
                r = classify_pair(tree, self.paths[i], self.paths[j])
                if r is None:
                    raise ValueError(f"paths {i} and {j} are neither completely related nor completely unrelated")
                rel[i][j] = rel[j][i] = r
        self.relation = tuple(tuple(row) for row in rel)

    def __len__(self) -> int:
        return len(self.paths)

    def __iter__(self):
        return iter(self.paths)

    def __getitem__(self, i: int) -> VerticalPath:
        return self.paths[i]

    def verify(self) -> bool:
        """Recheck disjointness, verticality and every matrix entry by brute force."""
        try:
            again = VerticalPathSet(self.tree, [p.vertices for p in self.paths])
        except ValueError:
            return False
        return again.relation == self.relation

    def truncated(self, order: int) -> VerticalPathSet:
        """Keep the top ``order`` vertices of every path (relations are inherited)."""
        if any(p.order < order for p in self.paths):
            raise ValueError("a path is shorter than the requested order")
        return VerticalPathSet(self.tree, [p.vertices[:order] for p in self.paths])


def classify_pair(t: RootedTree, p: VerticalPath, q: VerticalPath) -> str | None:
    pairs = [t.related(a, b) for a in p.vertices for b in q.vertices]
    if all(pairs):
        return RELATED
    if not any(pairs):
        return UNRELATED
    return None


# -- same-height paths and the subdivided star ------------------------------------------


def _descend(t: RootedTree, v: int, length: int) -> list[int]:
    """Vertical path of the given order starting at ``v``, always stepping to the smallest-id child one lower."""
    path = [v]
    while len(path) < length:
        u = path[-1]
        want = t.heights[u] - 1
        nxt = min(c for c in t.children[u] if t.heights[c] == want)
        path.append(nxt)
    return path


def unrelated_vertical_paths(t: RootedTree, i: int) -> tuple[VerticalPathSet, MinorModel]:
    """``n_i`` pairwise unrelated vertical paths of order ``i`` and a model of ``S_{n_i, i}`` in the tree.

    Path ``j`` descends from the ``j``-th vertex of ``H_i``.  Arm vertex
    ``v_{j,r}`` is the ``r``-th vertex of path ``j`` and the star's centre is
    the union of all proper ancestors of the path tops (connected: it is a
    union of root paths).  When the root itself has height ``i`` the centre is
    the subtree of a root child off the path; with no such child this raises.
    """
    cls = height_class(t, i)
    if not cls:
        raise ValueError(f"height class {i} is empty")
    paths = [_descend(t, v, i) for v in cls]
    vps = VerticalPathSet(t, paths)
    centre: set[int] = set()
    if t.root in cls:
        # the class is just the root; a child off the descending path can serve as the centre
        spare = [c for c in t.children[t.root] if c not in paths[0]]
        if not spare:
            raise ValueError(f"the root has height {i} and no spare child to form the star centre")
        stack = [spare[0]]
        while stack:
            u = stack.pop()
            centre.add(u)
            stack.extend(t.children[u])
    for v in cls:
        centre.update(t.ancestors(v))
    pattern = make_subdivided_star(len(cls), i)
    sets: dict[int, Iterable[int]] = {0: centre}
    for j, path in enumerate(paths, start=1):
        for r, v in enumerate(path, start=1):
            sets[subdivided_star_vertex(i, j, r)] = (v,)
    model = MinorModel(pattern, t.tree, sets)
    return vps, model


# -- the disjoint order-p paths --------------------------------------------------------


def height_bound(n: int, i: int) -> float:
    return 3 * n / (2 * (pi * i) ** 2)


def check_height_hypothesis(t: RootedTree, p: int) -> bool:
    """``n_i <= 3n / (2 (pi i)^2)`` for every ``i < p``."""
    c = Counter(t.heights)
    return all(c.get(i, 0) <= height_bound(t.n, i) for i in range(1, p))


def path_partition(t: RootedTree, p: int) -> tuple[list[int], list[int], list[list[int]]]:
    """``(L, S, P)`` for ``T' = {v : h(v) >= p}``.

    ``L`` are the non-root leaves of ``T'``, ``S`` the vertices with two or more
    children in ``T'`` and ``P`` holds, for each ``v in S ∪ L`` (sorted), the
    vertical path that climbs from ``v`` up to, but excluding, the nearest
    proper ancestor in ``S ∪ L`` (or up to the root).  Paths are top-to-bottom.
    """
    keep = [t.heights[v] >= p for v in range(t.n)]
    kids = [[c for c in t.children[v] if keep[c]] for v in range(t.n)]
    leaves = [v for v in range(t.n) if keep[v] and not kids[v] and v != t.root]
    splits = [v for v in range(t.n) if keep[v] and len(kids[v]) >= 2]
    marked = set(leaves) | set(splits)
    parts = []
    for v in sorted(marked):
        path = [v]
        u = t.parent[v]
        while u is not None and u not in marked:
            path.append(u)
            u = t.parent[u]
        path.reverse()
        parts.append(path)
    return leaves, splits, parts


def disjoint_p_paths(t: RootedTree, p: int) -> VerticalPathSet:
    """At least ``ceil(n / 4p)`` disjoint vertical paths of order ``p``, pairwise completely (un)related.

    Two families are built and the larger is returned: one path below every
    non-root leaf of ``T'`` (pairwise unrelated), and the order-``p`` chunks,
    cut from the lower end, of each path of :func:`path_partition`.  Every
    chunk vertex other than its lower end has exactly one child in ``T'``,
    which makes each pair of chunks completely related or completely unrelated.
    """
    if p < 1:
        raise ValueError("p must be positive")
    if not check_height_hypothesis(t, p):
        raise ValueError(f"height hypothesis fails for p = {p}")
    if t.n == 1:
        return VerticalPathSet(t, [[t.root]] if p == 1 else [])
    leaves, splits, parts = path_partition(t, p)
    if leaves and len(splits) >= len(leaves):
        raise AssertionError("more branching vertices than leaves in T'")
    by_leaf = [_descend(t, v, p) for v in leaves]
    chunks = []
    for body in parts:
        end = len(body)
        while end >= p:
            chunks.append(body[end - p:end])
            end -= p
    best = by_leaf if len(by_leaf) >= len(chunks) else chunks
    out = VerticalPathSet(t, best)
    need = ceil(t.n / (4 * p))
    if len(out) < need:
        raise AssertionError(f"only {len(out)} paths of order {p}, expected at least {need}")
    return out


def subdivided_star_model(t: RootedTree, paths: VerticalPathSet, order: int | None = None) -> MinorModel:
    """Model of ``S_{len(paths), order}`` in the tree using pairwise unrelated paths.

    Arms are the paths (top ``order`` vertices); the centre is the union of the
    proper ancestors of the path tops.
    """
    if not paths.paths:
        raise ValueError("no paths")
    if any(r == RELATED for row in paths.relation for r in row if r is not None):
        raise ValueError("paths must be pairwise unrelated")
    order = order or min(p.order for p in paths)
    tops = [p.upper for p in paths]
    centre: set[int] = set()
    for v in tops:
        centre.update(t.ancestors(v))
    if not centre:
        raise ValueError("a path starts at the root; no centre available")
    pattern = make_subdivided_star(len(paths), order)
    sets: dict[int, Iterable[int]] = {0: centre}
    for j, path in enumerate(paths, start=1):
        for r in range(1, order + 1):
            sets[subdivided_star_vertex(order, j, r)] = (path.vertices[r - 1],)
    model = MinorModel(pattern, t.tree, sets)
    report = validate_model(model)
    if not report:
        raise AssertionError(report.message)
    return model
