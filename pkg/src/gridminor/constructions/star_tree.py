"""Grids in products of a star with a tree: the bipartite Cartesian model and the strong diagonal strips."""

from __future__ import annotations

from math import isqrt

from ..graph import (
    Graph,
    GraphError,
    cartesian_product,
    grid_vertex,
    is_tree,
    make_grid,
    make_path,
    make_star,
    strong_product,
)
from ..models import MinorModel, ModelError, validate_model
from .certificate import GridModelCertificate


def star_root(s: Graph) -> int:
    """The centre of a star (vertex 0 for ``S_1``)."""
    if s.n < 2 or s.m != s.n - 1:
        raise GraphError("not a star")
    centres = [v for v in range(s.n) if s.degree(v) == s.n - 1]
    if not centres:
        raise GraphError("not a star")
    return centres[0]


def _is_independent(g: Graph, part) -> bool:
    inside = set(part)
    return not any(u in inside and v in inside for u, v in g.edges)


def bipartite_in_star_tree(gbip: Graph, partition, s: Graph, t: Graph) -> MinorModel:
    """Model of a bipartite graph in ``s □ t``.

    ``A``-vertices take whole leaf copies ``{f(v)} × V(t)`` and ``B``-vertices
    take single root-copy vertices ``(r, g(w))``; ``f`` and ``g`` are the
    order-preserving injections into the sorted leaves and into ``0, 1, ...``.
    """
    a_part, b_part = (sorted(set(p)) for p in partition)
    if sorted(a_part + b_part) != list(range(gbip.n)) or set(a_part) & set(b_part):
        raise GraphError("partition does not split the vertex set")
    if not (_is_independent(gbip, a_part) and _is_independent(gbip, b_part)):
        raise GraphError("partition classes are not independent sets")
    if not is_tree(t):
        raise GraphError("second factor must be a tree")
    r = star_root(s)
    leaves = [v for v in range(s.n) if v != r]
    if len(leaves) < len(a_part):
        raise GraphError(f"star has {len(leaves)} leaves, need {len(a_part)}")
    if t.n < len(b_part):
        raise GraphError(f"tree has {t.n} vertices, need {len(b_part)}")
    host = cartesian_product(s, t)
    nt = t.n
    sets = {}
    for i, v in enumerate(a_part):
        sets[v] = range(leaves[i] * nt, leaves[i] * nt + nt)
    for j, w in enumerate(b_part):
        sets[w] = (r * nt + j,)
    model = MinorModel(gbip, host, sets)
    report = validate_model(model)
    if not report:
        raise ModelError(f"bipartite model failed validation: {report.message}")
    return model


def grid_bipartition(k: int) -> tuple[list[int], list[int]]:
    """Colour classes of the ``k``-grid by parity of ``x + y``; the even class is the larger."""
    even, odd = [], []
    for y in range(1, k + 1):
        for x in range(1, k + 1):
            (even if (x + y) % 2 == 0 else odd).append(grid_vertex(k, x, y))
    return even, odd


def grid_in_star_tree_cartesian(t: Graph, s: Graph | None = None) -> GridModelCertificate:
    """The ``floor(sqrt(2n))``-grid in ``s □ t`` for an ``n``-vertex tree ``t``.

    ``s`` defaults to the star with ``n + 1`` leaves; any star with at least
    ``ceil(k^2 / 2)`` leaves is accepted.
    """
    if not is_tree(t):
        raise GraphError("t must be a tree")
    n = t.n
    k = isqrt(2 * n)
    if s is None:
        s = make_star(n + 1)
    a_part, b_part = grid_bipartition(k)
    model = bipartite_in_star_tree(make_grid(k), (a_part, b_part), s, t)
    return GridModelCertificate(k, model, "star-tree-cart", {"n": n, "leaves": s.n - 1, "A": len(a_part), "B": len(b_part)})


# -- strong product with a path ---------------------------------------------------


def strong_grid_side(n: int) -> int:
    """``floor(sqrt(5(n - 2) / 2))`` computed in integers."""
    if n < 2:
        return 0
    return isqrt(5 * (n - 2) // 2)


def _diagonal(k: int, i: int) -> list[tuple[int, int]]:
    """``D_i = {(x, y) : y - x = k - i - 1}`` sorted by ``x``; empty outside ``0 .. 2k-2``."""
    d = k - i - 1
    return [(x, x + d) for x in range(1, k + 1) if 1 <= x + d <= k]


def _match(cands: list[list[int]]) -> list[int] | None:
    """Distinct representatives for the candidate lists (augmenting paths), or ``None``."""
    owner: dict[int, int] = {}

    def augment(i: int, seen: set[int]) -> bool:
        for q in cands[i]:
            if q in seen:
                continue
            seen.add(q)
            if q not in owner or augment(owner[q], seen):
                owner[q] = i
                return True
        return False

    for i in range(len(cands)):
        if not augment(i, set()):
            return None
    out = [0] * len(cands)
    for q, i in owner.items():
        out[i] = q
    return out


def _strip_positions(k: int, c: int) -> dict[tuple[int, int], tuple[int, int]]:
    """Row (0 for the centre copy, 1 for the first leaf) and relative path position of each strip vertex.

    The strip is ``D_c ∪ ... ∪ D_{c+3}``.  The middle diagonals ``D_{c+1}``
    (``u_x``) and ``D_{c+2}`` (``w_x``) form the zigzag ``w_x, u_x, w_{x+1}, ...``
    and sit on the leaf row at positions ``2x + 1`` and ``2x``.  Every outer
    vertex goes on the centre row within distance one of each of its middle
    neighbours; positions come from a matching that stays inside the zigzag's
    range when it can and otherwise overhangs by as little as possible.
    """
    out = {}
    for x, y in _diagonal(k, c + 1):
        out[(x, y)] = (1, 2 * x + 1)
    for x, y in _diagonal(k, c + 2):
        out[(x, y)] = (1, 2 * x)
    outer = _diagonal(k, c) + _diagonal(k, c + 3)
    if not out:
        for j, v in enumerate(outer):
            out[v] = (0, j)
        return out
    lo = min(p for _, p in out.values())
    hi = max(p for _, p in out.values())
    near = []
    for x, y in outer:
        ps = [out[w][1] for w in ((x - 1, y), (x + 1, y), (x, y - 1), (x, y + 1)) if w in out]
        near.append(set(range(max(ps) - 1, min(ps) + 2)) if ps else None)
    for extra in range(0, 5):
        for left in range(extra + 1):
            window = range(lo - left, hi + extra - left + 1)
            cands = [sorted(window) if s is None else sorted(s.intersection(window)) for s in near]
            picked = _match(cands)
            if picked is not None:
                for v, q in zip(outer, picked):
                    out[v] = (0, q)
                return out
    raise AssertionError(f"no placement for strip {c}")


def _layout(k: int, shift: int):
    """Strips ``a`` with first diagonal ``shift + 5a`` and their path ranges, laid end to end."""
    strips = []
    a = -((shift + 3) // 5)
    while shift + 5 * a <= 2 * k - 2:
        c = shift + 5 * a
        pos = _strip_positions(k, c)
        lo = min(p for _, p in pos.values())
        hi = max(p for _, p in pos.values())
        strips.append((a, c, pos, lo, hi))
        a += 1
    length = sum(hi - lo + 1 for *_, lo, hi in strips)
    return strips, length


def alpha(k: int, shift: int) -> int:
    """``|∪_a D_{shift+5a+1} ∪ D_{shift+5a+2}|``: the vertices placed on the first leaf row."""
    return sum(len(_diagonal(k, i)) for i in range(2 * k - 1) if (i - shift) % 5 in (1, 2))


def grid_in_star_path_strong(n: int) -> GridModelCertificate:
    """The ``floor(sqrt(5(n-2)/2))``-grid in ``S_{2k+1} ⊠ P_n``.

    Diagonals are grouped in fives: four consecutive diagonals form a strip
    embedded vertex by vertex into the centre row and the first leaf row,
    and the fifth is skipped.  A skipped vertex ``x_i`` (``i``-th on its
    diagonal) takes a whole leaf row ``v_{2i}`` (or ``v_{2i+1}`` for odd
    strips) over the two neighbouring strips' path ranges.
    """
    if n < 3:
        raise GraphError("grid_in_star_path_strong needs n >= 3")
    k = strong_grid_side(n)
    grid = make_grid(k)
    leaves = 2 * k + 1
    host = strong_product(make_star(leaves), make_path(n))
    if k == 1:
        model = MinorModel(grid, host, {0: (0,)})
        return GridModelCertificate(1, model, "star-path-strong", {"n": n, "k": 1, "leaves": leaves, "shift": 0})
    choice = None
    for shift in range(5):
        if 5 * alpha(k, shift) > 2 * k * k:
            continue
        strips, length = _layout(k, shift)
        if length <= n:
            choice = (shift, strips, length)
            break
    if choice is None:
        raise ModelError(f"no diagonal shift fits the strips into a path of {n} vertices")
    shift, strips, length = choice
    sets: dict[int, list[int]] = {}
    start: dict[int, int] = {}
    span: dict[int, range] = {}
    at = 0
    for a, c, pos, lo, hi in strips:
        start[a] = at - lo
        span[a] = range(at, at + hi - lo + 1)
        at += hi - lo + 1
        for (x, y), (row, p) in pos.items():
            sets[grid_vertex(k, x, y)] = [row * n + start[a] + p]
    for a, c, *_ in strips:
        skipped = _diagonal(k, c + 4)
        cols = list(span.get(a, ())) + list(span.get(a + 1, ()))
        for i, (x, y) in enumerate(skipped, start=1):
            leaf = 2 * i + (a % 2)
            sets[grid_vertex(k, x, y)] = [leaf * n + q for q in cols]
    first = strips[0][0]
    for i, (x, y) in enumerate(_diagonal(k, strips[0][1] - 1), start=1):
        leaf = 2 * i + ((first - 1) % 2)
        sets[grid_vertex(k, x, y)] = [leaf * n + q for q in span[first]]
    model = MinorModel(grid, host, sets)
    report = validate_model(model)
    if not report:
        raise ModelError(f"strong strip model failed validation: {report.message}")
    params = {"n": n, "k": k, "leaves": leaves, "shift": shift, "alpha": alpha(k, shift), "path_used": length}
    return GridModelCertificate(k, model, "star-path-strong", params)
