"""The ``floor(sqrt(3n-2))``-grid as a subgraph of ``P_3 · P_n``."""

from __future__ import annotations

from math import isqrt

from ..graph import GraphError, grid_vertex, lexicographic_product, make_grid, make_path
from ..models import ModelError
from .certificate import SubgraphEmbedding


def lex_grid_side(n: int) -> int:
    return isqrt(3 * n - 2)


def diagonal_classes(k: int) -> tuple[list[int], list[list[int]], list[list[int]]]:
    """``S``, and the path components of ``A`` and ``B``, as grid vertex ids.

    ``D_i = {(x, x+i)}``.  ``S`` collects ``i ≡ 0 (mod 3)``; the
    remaining diagonals pair up as ``D_{3j+1}, D_{3j+2}``, each pair a zigzag path,
    giving the components of ``A`` (``i > 0``) and ``B`` (``i < 0``).
    Each component is listed in path order.
    """
    def diag(i):
        return [(x, x + i) for x in range(1, k + 1) if 1 <= x + i <= k]

    s, a, b = [], [], []
    for i in range(-(k - 1), k):
        if i % 3 == 0:
            s.extend(grid_vertex(k, x, y) for x, y in diag(i))
    for j in range(-k, k):
        lo, hi = 3 * j + 1, 3 * j + 2
        d1, d2 = diag(lo), diag(hi)
        if not d1 and not d2:
            continue
        # (x, x+lo) and (x, x+hi) share x; (x, x+hi) and (x+1, x+hi) share y
        walk = []
        for x in range(1, k + 1):
            for y in (x + lo, x + hi):
                if 1 <= y <= k:
                    walk.append(grid_vertex(k, x, y))
        (a if lo > 0 else b).append(walk)
    return s, a, b


def grid_subgraph_in_P3_lex_path(n: int) -> SubgraphEmbedding:
    """Embed the ``k``-grid, ``k = floor(sqrt(3n-2))``, into ``P_3 · P_n``.

    ``P_3 = (a, s, b)`` has ``a = 0, s = 1, b = 2``.  ``S`` goes anywhere in
    the ``s`` copy; the zigzag paths of ``A`` and ``B`` are laid end to end
    along the ``a`` and ``b`` copies.
    """
    if n < 1:
        raise GraphError("n must be positive")
    k = lex_grid_side(n)
    grid = make_grid(k)
    host = lexicographic_product(make_path(3), make_path(n))
    s, a, b = diagonal_classes(k)
    sizes = (len(s), sum(map(len, a)), sum(map(len, b)))
    if sorted([*s, *(v for c in a for v in c), *(v for c in b for v in c)]) != list(range(k * k)):
        raise ModelError("diagonal classes do not partition the grid")
    in_a = {v for c in a for v in c}
    in_b = {v for c in b for v in c}
    if any((u in in_a and v in in_b) or (u in in_b and v in in_a) for u, v in grid.edges):
        raise ModelError("a grid edge joins A and B")
    if max(sizes) > -(-k * k // 3) or max(sizes) > n:
        raise ModelError(f"class sizes {sizes} exceed ceil(k^2/3) or n")
    phi = [0] * (k * k)
    for j, v in enumerate(s):
        phi[v] = n + j
    for copy, comps in ((0, a), (2, b)):
        at = 0
        for comp in comps:
            for v in comp:
                phi[v] = copy * n + at
                at += 1
    params = {"n": n, "k": k, "S": sizes[0], "A": sizes[1], "B": sizes[2]}
    emb = SubgraphEmbedding(grid, host, tuple(phi), "lex-embed", params)
    report = emb.check()
    if not report:
        raise ModelError(f"lex embedding failed: {report.message}")
    return emb
