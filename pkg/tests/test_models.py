import json
import random

import pytest

from gridminor.constructions import grid_in_star_tree_cartesian
from gridminor.graph import (
    Graph,
    GraphError,
    cartesian_product,
    lexicographic_product,
    make_complete,
    make_grid,
    make_path,
    make_star,
    random_tree,
    strong_product,
)
from gridminor.models import (
    Bramble,
    MalformedModelError,
    MinorModel,
    ModelError,
    clique_minor_to_grid_model,
    complete_graph_model,
    compose_models,
    identity_model,
    lift_model_through_product,
    minor_edge_density_check,
    product_bramble,
    subgraph_model,
    transpose_product_model,
    validate_bramble,
    validate_model,
)
from oracles import brute_hitting_set


def contraction_model(host: Graph, rng: random.Random, parts: int) -> MinorModel:
    """Grow ``parts`` connected blobs in a connected host and return the quotient's model."""
    owner = {}
    seeds = rng.sample(range(host.n), parts)
    frontier = []
    for i, s in enumerate(seeds):
        owner[s] = i
        frontier.append(s)
    while frontier:
        u = frontier.pop(rng.randrange(len(frontier)))
        for w in host.neighbors(u):
            if w not in owner and rng.random() < 0.7:
                owner[w] = owner[u]
                frontier.append(w)
    sets = {i: [v for v, o in owner.items() if o == i] for i in range(parts)}
    edges = {tuple(sorted((owner[u], owner[v]))) for u, v in host.edges
             if u in owner and v in owner and owner[u] != owner[v]}
    return MinorModel(Graph(parts, sorted(edges)), host, sets)


def test_identity_model_ok():
    for g in (make_grid(3), make_star(4), Graph(1)):
        assert validate_model(identity_model(g))


def test_clause_i_shared_vertex():
    m = MinorModel(make_path(2), make_path(3), {0: [0, 1], 1: [1, 2]})
    r = validate_model(m)
    assert not r and r.clause == "i" and r.witness["vertex"] == 1


def test_clause_ii_disconnected_and_empty():
    r = validate_model(MinorModel(make_path(2), make_path(3), {0: [0, 2], 1: [1]}))
    assert r.clause == "ii" and r.witness["pattern_vertex"] == 0
    r = validate_model(MinorModel(make_path(2), make_path(3), {0: [], 1: [1]}))
    assert r.clause == "ii"


def test_clause_iii_uncovered_edge():
    r = validate_model(MinorModel(make_path(2), make_path(3), {0: [0], 1: [2]}))
    assert r.clause == "iii" and r.witness["pattern_edge"] == [0, 1]


def test_malformed_references_are_not_clause_failures():
    with pytest.raises(MalformedModelError):
        validate_model(MinorModel(make_path(2), make_path(3), {0: [0], 1: [7]}))
    with pytest.raises(MalformedModelError):
        validate_model(MinorModel(make_path(2), make_path(3), {0: [0]}))
    with pytest.raises(MalformedModelError):
        MinorModel.from_dict({"pattern": {"n": 1, "edges": []}})


def test_json_round_trip():
    m = MinorModel(make_path(2), make_path(3), {0: [1, 0], 1: [2]})
    d = json.loads(m.to_json())
    assert d["branch_sets"] == {"0": [0, 1], "1": [2]}
    assert MinorModel.from_dict(d) == m


def test_compose_identities_and_k4():
    m = MinorModel(make_path(2), make_path(3), {0: [0, 1], 1: [2]})
    assert compose_models(identity_model(m.pattern), m) == m
    assert compose_models(m, identity_model(m.host)) == m
    c4_in_k4 = MinorModel(make_grid(2), make_complete(4), {v: [v] for v in range(4)})
    k4_in_strong = MinorModel(make_complete(4), strong_product(make_path(2), make_path(2)),
                              {v: [v] for v in range(4)})
    assert validate_model(compose_models(c4_in_k4, k4_in_strong))
    with pytest.raises(ModelError):
        compose_models(m, identity_model(make_path(5)))


def test_compose_random():
    rng = random.Random(11)
    for seed in range(40):
        n = rng.randint(6, 14)
        pairs = ((rng.randrange(n), rng.randrange(n)) for _ in range(n))
        host = random_tree(n, seed).add_edges((u, v) for u, v in pairs if u != v)
        outer = contraction_model(host, rng, rng.randint(3, n - 1))
        inner = contraction_model(outer.pattern, rng, rng.randint(1, outer.pattern.n))
        assert validate_model(outer)
        assert validate_model(inner)
        assert validate_model(compose_models(inner, outer))


def test_lift_through_product():
    p2_in_p3 = MinorModel(make_path(2), make_path(3), {0: [0, 1], 1: [2]})
    lifted = lift_model_through_product(p2_in_p3, make_path(2))
    assert lifted.pattern.n == 4 and lifted.host.n == 6
    assert validate_model(lifted)
    assert dict(lift_model_through_product(identity_model(make_path(3)), make_star(2)).branch_sets) == \
        {v: (v,) for v in range(9)}
    flipped = lift_model_through_product(p2_in_p3, make_star(2), h_first=True)
    assert validate_model(flipped)
    with pytest.raises(ModelError):
        lift_model_through_product(MinorModel(make_path(2), make_path(3), {0: [0], 1: [2]}), make_path(2))


def test_lift_random():
    rng = random.Random(5)
    for seed in range(25):
        host = random_tree(rng.randint(4, 8), seed)
        m = contraction_model(host, rng, rng.randint(2, host.n))
        h = random_tree(rng.randint(1, 6), seed + 50)
        assert validate_model(lift_model_through_product(m, h))
        assert validate_model(lift_model_through_product(m, h, h_first=True))


def test_transpose():
    m = grid_in_star_tree_cartesian(make_path(4)).model
    t = transpose_product_model(m)
    assert t.host.g1 == m.host.g2 and validate_model(t)
    with pytest.raises(ModelError):
        transpose_product_model(identity_model(make_path(2)))


def test_subgraph_model():
    m = subgraph_model(make_path(3), make_grid(2), [0, 1, 3])
    assert validate_model(m)


@pytest.mark.parametrize("q,k", [(1, 1), (4, 2), (10, 3)])
def test_clique_to_grid(q, k):
    m = clique_minor_to_grid_model(complete_graph_model(q))
    assert m.pattern == make_grid(k) and validate_model(m)


def test_clique_to_grid_rejects_non_clique():
    with pytest.raises(ModelError):
        clique_minor_to_grid_model(identity_model(make_path(3)))


class TestBrambles:
    def test_validate_examples(self):
        assert validate_bramble(Bramble(make_path(1), ((0,),)))
        r = validate_bramble(Bramble(make_path(4), ((0,), (3,))))
        assert not r and r.clause == "touch"
        assert validate_bramble(Bramble(make_path(3), ((0, 2),))).clause == "connected"

    @pytest.mark.parametrize("a,b", [(2, 2), (3, 3), (2, 4), (4, 3)])
    def test_product_bramble_paths(self, a, b):
        br = product_bramble(make_path(a), make_path(b))
        assert validate_bramble(br)
        assert brute_hitting_set(br.sets, br.host.n) >= min(a, b) + 1

    def test_product_bramble_trees(self):
        for seed in range(15):
            t1, t2 = random_tree(4 + seed % 2, seed), random_tree(4, seed + 9)
            br = product_bramble(t1, t2)
            assert validate_bramble(br)
            assert brute_hitting_set(br.sets, br.host.n) >= min(t1.n, t2.n) + 1

    def test_degenerate_factors(self):
        br = product_bramble(Graph(1), make_path(3))
        assert validate_bramble(br) and len(br.sets) == 2
        with pytest.raises(GraphError):
            product_bramble(Graph(1), Graph(1))
        with pytest.raises(GraphError):
            product_bramble(Graph(2), make_path(2))


class TestEdgeDensity:
    def test_grid_in_star_lex_tree(self):
        # the Cartesian model is also a model in the lexicographic host (same vertex ids)
        for n in (2, 5, 8, 13):
            t = random_tree(n, n)
            cert = grid_in_star_tree_cartesian(t)
            lex = MinorModel(cert.model.pattern, lexicographic_product(cert.model.host.g1, t),
                             cert.model.branch_sets)
            assert validate_model(lex)
            assert minor_edge_density_check(lex, 1, 4)
            k = cert.k
            assert 2 * k * (k - 1) < k * k + 3 * n

    def test_single_vertex(self):
        host = lexicographic_product(make_star(2), make_path(3))
        m = MinorModel(Graph(1), host, {0: [0]})
        assert minor_edge_density_check(m, 1, 4)

    def test_rejects_untagged_host(self):
        m = identity_model(cartesian_product(make_star(2), make_path(2)))
        with pytest.raises(ModelError):
            minor_edge_density_check(m, 1, 4)
