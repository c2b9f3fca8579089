"""A complete minor in the product of a connected graph with a star."""

from __future__ import annotations

from ..graph import Graph, GraphError, cartesian_product, is_connected, make_complete, make_star
from ..models import MinorModel, ModelError, validate_model


def clique_in_product(g: Graph) -> MinorModel:
    """Model of ``K_n`` in ``g □ S_n`` for a connected ``n``-vertex ``g``.

    With star root ``y_0 = 0`` and leaves ``y_i = i``, the branch set of
    clique vertex ``i`` is the whole leaf copy ``V(g) × {y_i}`` plus the
    single root-copy vertex ``(v_i, y_0)`` where ``v_i`` is vertex ``i - 1``.
    """
    if g.n == 0 or not is_connected(g):
        raise GraphError("clique_in_product needs a nonempty connected graph")
    n = g.n
    host = cartesian_product(g, make_star(n))
    width = n + 1
    sets = {}
    for i in range(1, n + 1):
        sets[i - 1] = [v * width + i for v in range(n)] + [(i - 1) * width]
    model = MinorModel(make_complete(n), host, sets)
    report = validate_model(model)
    if not report:
        raise ModelError(f"clique model failed validation: {report.message}")
    return model
