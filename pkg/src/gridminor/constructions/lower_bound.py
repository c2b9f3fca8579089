"""Driver for the ``Ω(sqrt n)`` grid minor in ``G1 □ G2``.

Both factors are pruned to ``n``-vertex trees.  The side with the smaller
``p_b = min{i : n_i(T_b) >= 3n / (2 (pi i)^2)}`` supplies a subdivided star.
Short arms (``p <= 5``) lead to a complete minor through the star lemma;
long arms feed the star-times-star construction.  Every intermediate model
is composed out to the original host, so the certificate names vertices of
``G1 □ G2`` directly.
"""

from __future__ import annotations

from math import ceil, isqrt

from ..graph import Graph, GraphError, cartesian_product, is_connected, make_grid, make_star, make_subdivided_star, \
    spanning_tree_with_map, subdivided_star_vertex
from ..models import (
    MinorModel,
    ModelError,
    clique_minor_to_grid_model,
    compose_chain,
    lift_model_through_product,
    subgraph_model,
    transpose_product_model,
    validate_model,
)
from ..trees import RootedTree, check_height_hypothesis, disjoint_p_paths, height_bound, height_histogram, \
    unrelated_vertical_paths
from .certificate import GridModelCertificate
from .clique import clique_in_product
from .star_star import grid_in_tree_star_product


def threshold_height(t: RootedTree) -> int:
    """``min{i : n_i(T) >= 3n / (2 (pi i)^2)}``; it exists because the bounds sum to ``n / 4``."""
    for i, count in height_histogram(t):
        if count >= height_bound(t.n, i):
            return i
    raise AssertionError("height threshold missing")


class _Side:
    """One factor: the original graph, its pruned tree and the tree-in-graph model."""

    def __init__(self, g: Graph, n: int):
        self.graph = g
        tree, kept = spanning_tree_with_map(g, n)
        self.tree = tree
        self.rooted = RootedTree(tree)
        self.embed = subgraph_model(tree, g, kept)
        self.p = threshold_height(self.rooted)


def _star_in_side(side: _Side, leaves: int, i: int) -> MinorModel:
    """``S_leaves`` in the side's graph: leaf ``j`` takes arm ``j`` of ``S_{n_i, i}``."""
    _, sub = unrelated_vertical_paths(side.rooted, i)
    big = sub.pattern
    arms = {j: [subdivided_star_vertex(i, j, r) for r in range(1, i + 1)] for j in range(1, leaves + 1)}
    inner = MinorModel(make_star(leaves), big, {0: (0,), **arms})
    return compose_chain(inner, sub, side.embed)


def _subdivided_in_side(side: _Side, leaves: int, order: int, i: int) -> MinorModel:
    """``S_{leaves, order}`` in the side's graph, as a subgraph of ``S_{n_i, i}`` (needs ``order <= i``)."""
    _, sub = unrelated_vertical_paths(side.rooted, i)
    pattern = make_subdivided_star(leaves, order)
    sets = {0: (0,)}
    for a in range(1, leaves + 1):
        for j in range(1, order + 1):
            sets[subdivided_star_vertex(order, a, j)] = (subdivided_star_vertex(i, a, j),)
    inner = MinorModel(pattern, sub.pattern, sets)
    return compose_chain(inner, sub, side.embed)


def _finish(grid_in_mid: MinorModel, tree_side: _Side, star_model: MinorModel, star_is_first: bool) -> MinorModel:
    """Push a grid model in ``T_Y □ S`` out to ``G1 □ G2``."""
    steps = [
        grid_in_mid,
        lift_model_through_product(tree_side.embed, star_model.pattern, check=False),
        lift_model_through_product(star_model, tree_side.graph, h_first=True, check=False),
    ]
    out = compose_chain(*steps)
    return transpose_product_model(out) if star_is_first else out


def _clique_route(star_side: _Side, tree_side: _Side, ell: int, i: int, star_is_first: bool, host) -> tuple[int, MinorModel]:
    if ell <= 1:
        return 1, MinorModel(make_grid(1), host, {0: (0,)})
    small, kept = spanning_tree_with_map(tree_side.graph, ell)
    clique = clique_in_product(small)
    grid = clique_minor_to_grid_model(clique)
    star = _star_in_side(star_side, ell, i)
    # clique lives in small □ S_ell; first widen small to the whole tree-side graph
    widen = lift_model_through_product(subgraph_model(small, tree_side.graph, kept), star.pattern, check=False)
    out = compose_chain(grid, widen, lift_model_through_product(star, tree_side.graph, h_first=True, check=False))
    if star_is_first:
        out = transpose_product_model(out)
    return isqrt(ell), out


def omega_sqrt_n_grid(g1: Graph, g2: Graph, best: bool = True) -> GridModelCertificate:
    """A grid model in ``g1 □ g2`` built the way the lower-bound argument goes.

    With ``best`` the clique route is also tried with the largest height
    class of each side, and the biggest grid found is returned; the
    parameters record every branch that was reached.
    """
    if g1.n == 0 or g2.n == 0 or not (is_connected(g1) and is_connected(g2)):
        raise GraphError("omega_sqrt_n_grid needs nonempty connected factors")
    n = min(g1.n, g2.n)
    host = cartesian_product(g1, g2)
    sides = (_Side(g1, n), _Side(g2, n))
    p1, p2 = sides[0].p, sides[1].p
    star_idx = 0 if p1 < p2 else 1
    star_side, tree_side = sides[star_idx], sides[1 - star_idx]
    pst = star_side.p
    ell = ceil(height_bound(n, pst))
    tried = []
    params = {"n": n, "p1": p1, "p2": p2, "star_factor": star_idx + 1, "ell": ell}
    chosen = None

    if pst <= 5:
        k, model = _clique_route(star_side, tree_side, ell, pst, star_idx == 0, host)
        tried.append({"branch": "clique", "k": k, "ell": ell, "height": pst, "star_factor": star_idx + 1})
        chosen = (k, model, tried[-1])
    else:
        p = pst // 6
        s = isqrt(min(ell // 5, n // (4 * pst)))
        while s >= 1 and (5 * s * s > ell or s * s * 4 * pst > n):
            s -= 1
        entry = {"branch": "star-times-star", "p": p, "s": s, "height": pst, "star_factor": star_idx + 1}
        if s >= 1 and check_height_hypothesis(tree_side.rooted, pst):
            paths = disjoint_p_paths(tree_side.rooted, pst)
            cert = grid_in_tree_star_product(tree_side.rooted, paths, s, p)
            star = _subdivided_in_side(star_side, 5 * s * s, 2 * p, pst)
            model = _finish(cert.model, tree_side, star, star_idx == 0)
            entry["k"] = s * p
            chosen = (s * p, model, entry)
        else:
            entry["k"] = 0
        tried.append(entry)

    if best:
        for idx in (0, 1):
            side, other = sides[idx], sides[1 - idx]
            hist = height_histogram(side.rooted)
            i, count = max(hist, key=lambda ic: (ic[1], -ic[0]))
            if count <= 1:
                continue
            k, model = _clique_route(side, other, count, i, idx == 0, host)
            tried.append({"branch": "clique", "k": k, "ell": count, "height": i, "star_factor": idx + 1})
            if chosen is None or (best and k > chosen[0]):
                chosen = (k, model, tried[-1])
    if chosen is None or chosen[0] < 1:
        chosen = (1, MinorModel(make_grid(1), host, {0: (0,)}), {"branch": "trivial", "k": 1})
    k, model, entry = chosen
    report = validate_model(model)
    if not report:
        raise ModelError(f"lower-bound model failed validation: {report.message}")
    params.update({"branch": entry["branch"], "branches": tried, "best": best})
    return GridModelCertificate(k, model, "lower-bound", params)
