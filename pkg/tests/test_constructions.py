import json
import random
from math import isqrt, sqrt

import pytest

from gridminor.constructions import (
    GridModelCertificate,
    SubgraphEmbedding,
    bipartite_in_star_tree,
    certificate_from_dict,
    check_embedding,
    clique_in_product,
    diagonal_classes,
    grid_bipartition,
    grid_in_star_path_strong,
    grid_in_star_tree_cartesian,
    grid_in_tree_star_product,
    grid_subgraph_in_P3_lex_path,
    omega_sqrt_n_grid,
    star_root,
    threshold_height,
    tree_path,
)
from gridminor.graph import (
    Graph,
    GraphError,
    make_caterpillar,
    make_complete,
    make_cycle,
    make_grid,
    make_path,
    make_star,
    make_subdivided_star,
    random_tree,
    subdivided_star_vertex,
)
from gridminor.models import MalformedModelError, ModelError
from gridminor.trees import RootedTree, VerticalPathSet, disjoint_p_paths
from oracles import embedding_ok, labelled_connected_graphs, model_ok, random_bipartite


def independent(cert):
    if isinstance(cert, SubgraphEmbedding):
        return embedding_ok(cert.pattern, cert.host, cert.map)
    m = cert.model if isinstance(cert, GridModelCertificate) else cert
    return model_ok(m.pattern, m.host, m.branch_sets)


class TestClique:
    def test_all_small_connected_graphs(self):
        for n in range(1, 6):
            for g in labelled_connected_graphs(n):
                m = clique_in_product(g)
                assert m.pattern == make_complete(n) and independent(m)

    def test_rejects_disconnected(self):
        with pytest.raises(GraphError):
            clique_in_product(Graph(3, [(0, 1)]))


class TestBipartite:
    def test_random_cases(self):
        rng = random.Random(17)
        for _ in range(50):
            g, (a, b) = random_bipartite(rng)
            s = make_star(max(1, len(a)))
            t = random_tree(max(1, len(b)), rng.randrange(999))
            assert independent(bipartite_in_star_tree(g, (a, b), s, t))

    def test_errors(self):
        g = make_path(3)
        with pytest.raises(GraphError):
            bipartite_in_star_tree(g, ([0, 1], [2]), make_star(2), make_path(2))
        with pytest.raises(GraphError):
            bipartite_in_star_tree(g, ([0, 2], [1]), make_star(1), make_path(2))
        with pytest.raises(GraphError):
            bipartite_in_star_tree(make_cycle(4), ([0, 2], [1, 3]), make_star(2), make_path(1))

    def test_star_root(self):
        assert star_root(make_star(5)) == 0 and star_root(make_star(1)) == 0
        with pytest.raises(GraphError):
            star_root(make_path(4))

    def test_grid_bipartition(self):
        even, odd = grid_bipartition(5)
        assert len(even) == 13 and len(odd) == 12


class TestCartesianStarTree:
    @pytest.mark.parametrize("n", range(2, 65))
    def test_exact_side(self, n):
        cert = grid_in_star_tree_cartesian(random_tree(n, n))
        assert cert.k == isqrt(2 * n)
        assert cert.check() and independent(cert)

    def test_smallest_star_that_fits(self):
        t = make_path(8)
        cert = grid_in_star_tree_cartesian(t, make_star(8))
        assert cert.k == 4 and independent(cert)
        with pytest.raises(GraphError):
            grid_in_star_tree_cartesian(t, make_star(7))


class TestStrongStarPath:
    @pytest.mark.parametrize("n", range(3, 61))
    def test_exact_side(self, n):
        cert = grid_in_star_path_strong(n)
        assert cert.k == int(sqrt(5 * (n - 2) / 2) + 1e-9)
        assert cert.model.host.g1.n == 2 * cert.k + 2
        assert cert.check() and independent(cert)

    def test_too_short(self):
        with pytest.raises(GraphError):
            grid_in_star_path_strong(2)


class TestLex:
    @pytest.mark.parametrize("n", list(range(1, 80)) + [150, 399, 400])
    def test_exact_side(self, n):
        emb = grid_subgraph_in_P3_lex_path(n)
        assert emb.k == isqrt(3 * n - 2)
        assert emb.pattern == make_grid(emb.k)
        assert emb.check() and independent(emb)

    def test_diagonal_classes_partition(self):
        for k in range(1, 12):
            s, a, b = diagonal_classes(k)
            flat = s + [v for c in a + b for v in c]
            assert sorted(flat) == list(range(k * k))
            grid = make_grid(k)
            for comp in a + b:
                assert all(grid.has_edge(u, v) for u, v in zip(comp, comp[1:]))

    def test_embedding_checker(self):
        host = make_path(3)
        assert not check_embedding(make_path(2), host, [0, 0])
        assert check_embedding(make_path(2), host, [0, 2]).clause == "edge"
        with pytest.raises(MalformedModelError):
            check_embedding(make_path(2), host, [0, 9])


def arm_paths(t, arms, order, per_arm):
    """Split each arm of a spider rooted at its centre into vertical chunks of ``order``."""
    out = []
    for a in range(1, arms + 1):
        for c in range(per_arm):
            out.append([subdivided_star_vertex(order * per_arm, a, c * order + j) for j in range(1, order + 1)])
    return VerticalPathSet(t, out)


class TestStarTimesStar:
    @pytest.mark.parametrize("s", [1, 2, 3])
    @pytest.mark.parametrize("p", [1, 2])
    def test_unrelated_arms(self, s, p):
        t = RootedTree(make_subdivided_star(s * s, 6 * p))
        cert = grid_in_tree_star_product(t, arm_paths(t, s * s, 6 * p, 1), s, p)
        assert cert.k == s * p and cert.check() and independent(cert)

    @pytest.mark.parametrize("s", [1, 2, 3])
    @pytest.mark.parametrize("p", [1, 2])
    def test_single_path(self, s, p):
        q = s * s
        t = RootedTree(make_path(6 * p * q))
        paths = VerticalPathSet(t, [list(range(6 * p * i, 6 * p * (i + 1))) for i in range(q)])
        cert = grid_in_tree_star_product(t, paths, s, p)
        assert cert.k == s * p and independent(cert)

    @pytest.mark.parametrize("p", [1, 2])
    def test_mixed_relations(self, p):
        t = RootedTree(make_subdivided_star(3, 18 * p))
        cert = grid_in_tree_star_product(t, arm_paths(t, 3, 6 * p, 3), 3, p)
        assert cert.k == 3 * p and independent(cert)
        assert {st["mode"] for st in cert.parameters["stitches"]} <= {"direct", "relay"}

    def test_from_disjoint_paths(self):
        from gridminor.trees import check_height_hypothesis

        used = 0
        for seed in range(8):
            rng = random.Random(seed)
            # a long spine with a few long legs keeps every small height class thin
            edges = [(i, i + 1) for i in range(999)]
            nxt = 1000
            for _ in range(rng.randint(3, 9)):
                prev = rng.randrange(1000)
                for _ in range(rng.randint(60, 150)):
                    edges.append((prev, nxt))
                    prev, nxt = nxt, nxt + 1
            g = Graph(nxt, edges)
            t = RootedTree(g)
            if not check_height_hypothesis(t, 6):
                continue
            paths = disjoint_p_paths(t, 6)
            s = min(isqrt(len(paths)), 3)
            assert independent(grid_in_tree_star_product(t, paths, s, 1))
            used += 1
        assert used >= 3

    def test_preconditions(self):
        t = RootedTree(make_path(12))
        paths = VerticalPathSet(t, [list(range(6))])
        with pytest.raises(ModelError):
            grid_in_tree_star_product(t, paths, 2, 1)
        with pytest.raises(ModelError):
            grid_in_tree_star_product(t, paths, 1, 2)
        with pytest.raises(ModelError):
            grid_in_tree_star_product(t, paths, 0, 1)

    def test_tree_path(self):
        t = RootedTree(make_subdivided_star(2, 2))
        assert tree_path(t, 2, 4) == [2, 1, 0, 3, 4]
        assert tree_path(t, 1, 1) == [1]


class TestLowerBound:
    @pytest.mark.parametrize("n", [20, 50, 100, 200])
    def test_random_trees(self, n):
        for seed in range(5):
            g1, g2 = random_tree(n, seed), random_tree(n, seed + 100)
            cert = omega_sqrt_n_grid(g1, g2)
            assert cert.check() and independent(cert)
            assert cert.model.host.g1 == g1 and cert.model.host.g2 == g2

    def test_unequal_and_cyclic_factors(self):
        cert = omega_sqrt_n_grid(make_grid(4), random_tree(30, 1))
        assert cert.parameters["n"] == 16 and independent(cert)
        cert = omega_sqrt_n_grid(make_cycle(9), make_caterpillar(4, 2))
        assert independent(cert)

    def test_star_times_star_branch(self):
        # long legs push the threshold height past 5
        spine, legs, leg = 1164, 6, 6
        edges = [(i, i + 1) for i in range(spine - 1)]
        nxt = spine
        for i in range(legs):
            prev = 0
            for _ in range(leg):
                edges.append((prev, nxt))
                prev, nxt = nxt, nxt + 1
        g = Graph(nxt, edges)
        cert = omega_sqrt_n_grid(g, g, best=False)
        assert any(b["branch"] == "star-times-star" for b in cert.parameters["branches"])
        assert cert.check()

    def test_best_never_smaller(self):
        for seed in range(6):
            g1, g2 = random_tree(60, seed), random_tree(60, seed + 7)
            assert omega_sqrt_n_grid(g1, g2).k >= omega_sqrt_n_grid(g1, g2, best=False).k

    def test_threshold_exists(self):
        for seed in range(30):
            t = RootedTree(random_tree(1 + seed * 7, seed))
            assert 1 <= threshold_height(t) <= t.heights[t.root]

    def test_rejects_disconnected(self):
        with pytest.raises(GraphError):
            omega_sqrt_n_grid(Graph(2), make_path(2))


class TestCertificates:
    def roundtrip(self, cert):
        back = certificate_from_dict(json.loads(cert.to_json()))
        assert type(back) is type(cert) and back.k == cert.k
        assert back.check()
        return back

    def test_round_trips(self):
        self.roundtrip(grid_in_star_tree_cartesian(make_path(6)))
        self.roundtrip(grid_in_star_path_strong(12))
        self.roundtrip(grid_subgraph_in_P3_lex_path(9))
        self.roundtrip(omega_sqrt_n_grid(random_tree(20, 1), random_tree(20, 2)))

    def test_tampering_is_caught(self):
        d = json.loads(grid_in_star_tree_cartesian(make_path(6)).to_json())
        d["branch_sets"]["0"] = d["branch_sets"]["1"]
        assert not certificate_from_dict(d).check()
        d = json.loads(grid_subgraph_in_P3_lex_path(9).to_json())
        d["map"][0] = d["map"][1]
        assert certificate_from_dict(d).check().clause == "injective"

    def test_wrong_k_is_caught(self):
        cert = grid_in_star_tree_cartesian(make_path(6))
        assert GridModelCertificate(cert.k + 1, cert.model, "x").check().clause == "pattern"

    @pytest.mark.parametrize("bad", [[], {"kind": "mystery"}, {"kind": "grid-model"}, {"kind": "subgraph-embedding", "map": []}])
    def test_malformed(self, bad):
        with pytest.raises(MalformedModelError):
            certificate_from_dict(bad)
