"""The ``sp``-grid in ``T □ S_{5s^2, 2p}`` from ``s^2`` disjoint vertical paths of order ``6p``.

Coordinates: path ``i`` is ``p_{i,1} .. p_{i,6p}`` (top first), arm ``a`` of
the subdivided star is ``v_{a,1} .. v_{a,2p}`` and ``v_{a,0}`` stands for the
centre ``v_0``.  ``cell(i, r, c)`` is the host vertex ``(p_{i,r}, v_{i,c})``.

Each ``p × p`` subgrid ``G_i`` sits in ``P_i □ A_i`` with local vertex
``(x, y)`` at ``cell(i, p+x, y)``.  Boundary vertices grow nested L-shaped
escape paths that end in the centre copy at ``p_{i,1..4p}`` (left, top,
right and bottom sides in that order), leaving ``p_{i,4p+1..6p}`` free.

Neighbouring subgrids are joined through arms reserved for ``G_i``:
``s^2 + 4i - 3`` and ``s^2 + 4i - 2`` for the left side, ``s^2 + 4i - 1`` and
``s^2 + 4i`` for the top side.  A connection from terminal ``u`` to
terminal ``w`` inside arm ``a`` at level ``ρ`` climbs ``{u} × v_{a,1..ρ}``,
follows the tree path from ``u`` to ``w`` in the copy ``T × {v_{a,ρ}}`` and
descends ``{w} × v_{a,ρ..1}``.  Levels are a topological order of the
constraint "a tree path may not cross a terminal whose column rises to its
level".  When that order has a cycle (unrelated paths on the left side,
for instance) the connection is relayed through ``p`` spare centre-copy
vertices of ``P_i``, with one arm on each side of the relay.
"""

from __future__ import annotations

from graphlib import CycleError, TopologicalSorter

from ..graph import cartesian_product, grid_vertex, make_grid, make_subdivided_star, subdivided_star_vertex
from ..models import MinorModel, ModelError, validate_model
from ..trees import RootedTree, VerticalPathSet
from .certificate import GridModelCertificate


def tree_path(t: RootedTree, u: int, w: int) -> list[int]:
    left, right = [u], [w]
    while left[-1] != right[-1]:
        if t.depth[left[-1]] >= t.depth[right[-1]]:
            left.append(t.parent[left[-1]])
        else:
            right.append(t.parent[right[-1]])
    return left + right[-2::-1]


def _levels(t: RootedTree, pairs: list[tuple[int, int]]) -> list[int] | None:
    """Level (1-based) of each connection, or ``None`` when the constraints are cyclic."""
    where = {}
    for k, (u, w) in enumerate(pairs):
        where[u] = k
        where[w] = k
    ts = TopologicalSorter({k: set() for k in range(len(pairs))})
    for k, (u, w) in enumerate(pairs):
        for v in tree_path(t, u, w):
            j = where.get(v)
            if j is not None and j != k:
                ts.add(k, j)
    try:
        order = list(ts.static_order())
    except CycleError:
        return None
    level = [0] * len(pairs)
    for rank, k in enumerate(order, start=1):
        level[k] = rank
    return level


def grid_in_tree_star_product(t: RootedTree, paths: VerticalPathSet, s: int, p: int) -> GridModelCertificate:
    if s < 1 or p < 1:
        raise ModelError("s and p must be positive")
    q = s * s
    if len(paths) < q:
        raise ModelError(f"need {q} paths, got {len(paths)}")
    use = VerticalPathSet(t, [path.vertices for path in paths.paths[:q]])
    if any(path.order < 6 * p for path in use):
        raise ModelError(f"every path needs order at least {6 * p}")
    use = use.truncated(6 * p)
    ell = 5 * q
    star = make_subdivided_star(ell, 2 * p)
    host = cartesian_product(t.tree, star)
    width = star.n
    P = [None] + [(None,) + path.vertices for path in use]

    def arm(a: int, c: int) -> int:
        return 0 if c == 0 else subdivided_star_vertex(2 * p, a, c)

    def at(tree_vertex: int, a: int, c: int) -> int:
        return tree_vertex * width + arm(a, c)

    def cell(i: int, r: int, c: int) -> int:
        return at(P[i][r], i, c)

    k_side = s * p
    sets: dict[int, set[int]] = {v: set() for v in range(k_side * k_side)}

    def gv(i: int, x: int, y: int) -> int:
        row, col = divmod(i - 1, s)
        return grid_vertex(k_side, col * p + x, row * p + y)

    # subgrids and escape paths
    for i in range(1, q + 1):
        for x in range(1, p + 1):
            for y in range(1, p + 1):
                sets[gv(i, x, y)].add(cell(i, p + x, y))
        for k in range(1, p + 1):
            left = [(r, k) for r in range(p, p - k, -1)] + [(p - k + 1, c) for c in range(k - 1, -1, -1)]
            top = [(p + k, 0)]
            right = [(r, k) for r in range(2 * p + 1, 2 * p + k + 1)] + [(2 * p + k, c) for c in range(k - 1, -1, -1)]
            ck = 2 * p - k + 1
            bottom = ([(p + k, c) for c in range(p + 1, ck + 1)]
                      + [(r, ck) for r in range(p + k + 1, 4 * p - k + 2)]
                      + [(4 * p - k + 1, c) for c in range(ck - 1, -1, -1)])
            for (x, y), route in (((1, k), left), ((k, 1), top), ((p, k), right), ((k, p), bottom)):
                sets[gv(i, x, y)].update(cell(i, r, c) for r, c in route)

    def wire(a: int, pairs, owners) -> bool:
        level = _levels(t, pairs)
        if level is None:
            return False
        for (u, w), rho, x in zip(pairs, level, owners):
            b = sets[x]
            b.update(at(u, a, c) for c in range(1, rho + 1))
            b.update(at(v, a, rho) for v in tree_path(t, u, w))
            b.update(at(w, a, c) for c in range(1, rho + 1))
        return True

    log = []

    def stitch(i: int, side: str, owners, src, dst, arms, spare):
        pairs = list(zip(src, dst))
        if wire(arms[0], pairs, owners):
            log.append((i, side, "direct"))
            return
        for relays in (spare, spare[::-1]):
            first = list(zip(src, relays))
            second = list(zip(relays, dst))
            if _levels(t, first) is not None and _levels(t, second) is not None:
                wire(arms[0], first, owners)
                wire(arms[1], second, owners)
                for r, x in zip(relays, owners):
                    sets[x].add(at(r, arms[0], 0))
                log.append((i, side, "relay"))
                return
        raise ModelError(f"no wiring for the {side} side of subgrid {i}")

    for i in range(1, q + 1):
        row, col = divmod(i - 1, s)
        if col > 0:
            j = i - 1
            stitch(i, "left",
                   [gv(i, 1, k) for k in range(1, p + 1)],
                   [P[i][p - k + 1] for k in range(1, p + 1)],
                   [P[j][2 * p + k] for k in range(1, p + 1)],
                   (q + 4 * i - 3, q + 4 * i - 2),
                   [P[i][4 * p + k] for k in range(1, p + 1)])
        if row > 0:
            j = i - s
            stitch(i, "top",
                   [gv(i, k, 1) for k in range(1, p + 1)],
                   [P[i][p + k] for k in range(1, p + 1)],
                   [P[j][4 * p - k + 1] for k in range(1, p + 1)],
                   (q + 4 * i - 1, q + 4 * i),
                   [P[i][5 * p + k] for k in range(1, p + 1)])
    model = MinorModel(make_grid(k_side), host, sets)
    report = validate_model(model)
    if not report:
        raise ModelError(f"star-times-star model failed validation: {report.message}")
    params = {"s": s, "p": p, "ell": ell, "arm_order": 2 * p,
              "stitches": [{"subgrid": i, "side": side, "mode": mode} for i, side, mode in log]}
    return GridModelCertificate(k_side, model, "star-times-star", params)
