import json
import random

import pytest

from gridminor.graph import (
    Graph,
    GraphError,
    ProductGraph,
    cartesian_product,
    components,
    grid_coord,
    grid_vertex,
    is_connected,
    is_forest,
    is_tree,
    lexicographic_product,
    make_caterpillar,
    make_complete,
    make_cycle,
    make_grid,
    make_path,
    make_star,
    make_subdivided_star,
    product,
    random_tree,
    relabel,
    spanning_tree_pruned,
    spanning_tree_with_map,
    strong_product,
    subdivided_star_vertex,
)


def rule_edges(g1, g2, kind):
    """Product edges straight from the adjacency rules, with the row-major encoding."""
    n2 = g2.n
    out = set()
    for a in range(g1.n):
        for b in range(n2):
            for c in range(g1.n):
                for d in range(n2):
                    u, v = a * n2 + b, c * n2 + d
                    if u >= v:
                        continue
                    e1, e2 = g1.has_edge(a, c), g2.has_edge(b, d)
                    if kind == "cartesian":
                        ok = (a == c and e2) or (b == d and e1)
                    elif kind == "strong":
                        ok = (a == c and e2) or (b == d and e1) or (e1 and e2)
                    else:
                        ok = e1 or (a == c and e2)
                    if ok:
                        out.add((u, v))
    return out


def small_graphs(count=25, seed=3):
    rng = random.Random(seed)
    out = [Graph(1), make_path(2), make_star(3), make_cycle(4), make_complete(4)]
    while len(out) < count:
        n = rng.randint(1, 5)
        edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.5]
        out.append(Graph(n, edges))
    return out


class TestGraph:
    def test_simple_undirected(self):
        g = Graph(4, [(3, 2), (1, 0)])
        assert g.edges == ((0, 1), (2, 3))
        assert g.neighbors(0) == (1,) and g.neighbors(1) == (0,)
        with pytest.raises(GraphError):
            Graph(2, [(0, 1), (1, 0)])

    @pytest.mark.parametrize("edges", [[(0, 0)], [(0, 5)], [(-1, 0)]])
    def test_rejects_bad_edges(self, edges):
        with pytest.raises(GraphError):
            Graph(3, edges)

    def test_json_round_trip_is_canonical(self):
        g = Graph(4, [(3, 2), (0, 1), (1, 3)])
        d = json.loads(g.to_json())
        assert d == {"n": 4, "edges": [[0, 1], [1, 3], [2, 3]]}
        assert Graph.from_json(g.to_json()) == g

    def test_product_descriptor_round_trip(self):
        h = strong_product(make_star(3), make_path(4))
        d = h.to_dict(compact=True)
        assert d["product"] == "strong" and d["n"] == 16
        back = Graph.from_dict(d)
        assert isinstance(back, ProductGraph) and back.edges == h.edges
        assert Graph.from_dict(h.to_dict()) == h.materialize()

    def test_malformed_json(self):
        with pytest.raises(GraphError):
            Graph.from_dict({"n": 3})

    def test_dot_labels(self):
        dot = cartesian_product(make_path(2), make_path(2)).to_dot()
        assert dot.startswith("graph G {")
        assert '3 [label="1,1"]' in dot
        assert "0 -- 1;" in dot


class TestGenerators:
    @pytest.mark.parametrize("k,n,m", [(1, 1, 0), (2, 4, 4), (4, 16, 24)])
    def test_grid_counts(self, k, n, m):
        g = make_grid(k)
        assert (g.n, g.m) == (n, m)

    def test_grid_rule_and_coords(self):
        k = 4
        g = make_grid(k)
        for u in range(g.n):
            for v in range(g.n):
                (x1, y1), (x2, y2) = grid_coord(k, u), grid_coord(k, v)
                assert g.has_edge(u, v) == (abs(x1 - x2) + abs(y1 - y2) == 1)
        assert grid_vertex(k, 1, 1) == 0 and grid_vertex(k, 4, 4) == 15
        assert make_grid(2) == Graph(4, [(0, 1), (0, 2), (1, 3), (2, 3)])

    def test_grid_zero_rejected(self):
        with pytest.raises(GraphError):
            make_grid(0)

    @pytest.mark.parametrize("l,seq", [(1, [1, 1]), (3, [3, 1, 1, 1]), (5, [5, 1, 1, 1, 1, 1])])
    def test_star(self, l, seq):
        assert make_star(l).degree_sequence() == seq

    def test_star_zero_rejected(self):
        with pytest.raises(GraphError):
            make_star(0)

    def test_subdivided_star(self):
        g = make_subdivided_star(2, 3)
        assert (g.n, g.m) == (7, 6)
        assert g.degree_sequence().count(1) == 2
        assert g.has_edge(0, subdivided_star_vertex(3, 2, 1))
        assert g.has_edge(subdivided_star_vertex(3, 2, 2), subdivided_star_vertex(3, 2, 3))
        # S_{1,n-1} is P_n and S_{n,1} is S_n, with the same ids here
        assert make_subdivided_star(1, 5) == make_path(6)
        assert make_subdivided_star(4, 1) == make_star(4)
        with pytest.raises(GraphError):
            make_subdivided_star(0, 2)

    def test_caterpillar(self):
        g = make_caterpillar(3, 2)
        assert g.n == 9 and is_tree(g)

    def test_random_tree(self):
        assert random_tree(1, 0).n == 1
        assert random_tree(2, 0).edges == ((0, 1),)
        assert random_tree(10, 7).edges == random_tree(10, 7).edges
        for seed in range(30):
            t = random_tree(25, seed)
            assert t.m == 24 and is_connected(t)
        with pytest.raises(GraphError):
            random_tree(0, 1)

    def test_prufer_uniform_on_small_n(self):
        # four vertices: 16 labelled trees, each should show up
        seen = {random_tree(4, s).edges for s in range(400)}
        assert len(seen) == 16


class TestProducts:
    @pytest.mark.parametrize("kind", ["cartesian", "strong", "lex"])
    def test_rules_match_enumeration(self, kind):
        gs = small_graphs(12)
        for g1 in gs[:6]:
            for g2 in gs[6:]:
                assert set(product(g1, g2, kind).edges) == rule_edges(g1, g2, kind)

    def test_edge_counts(self):
        for g1 in small_graphs(8):
            for g2 in small_graphs(8, seed=9):
                n1, m1, n2, m2 = g1.n, g1.m, g2.n, g2.m
                assert cartesian_product(g1, g2).m == n1 * m2 + n2 * m1
                assert strong_product(g1, g2).m == n1 * m2 + n2 * m1 + 2 * m1 * m2
                assert lexicographic_product(g1, g2).m == m1 * n2 * n2 + n1 * m2

    def test_nesting(self):
        for g1 in small_graphs(6):
            for g2 in small_graphs(6, seed=5):
                c = set(cartesian_product(g1, g2).edges)
                s = set(strong_product(g1, g2).edges)
                x = set(lexicographic_product(g1, g2).edges)
                assert c <= s <= x

    def test_examples(self):
        assert cartesian_product(make_path(4), make_path(4)).materialize() == make_grid(4)
        g = make_cycle(5)
        for kind in ("cartesian", "strong", "lex"):
            assert product(Graph(1), g, kind).materialize() == g
        assert cartesian_product(make_star(3), make_path(4)).m == 24
        assert strong_product(make_path(2), make_path(2)).materialize() == make_complete(4)
        assert strong_product(make_path(4), make_path(4)).m == 42
        assert lexicographic_product(make_star(1), make_path(2)).materialize() == make_complete(4)
        assert lexicographic_product(make_path(3), make_path(2)).m == 11

    def test_encoding_is_row_major(self):
        h = cartesian_product(make_path(3), make_star(2))
        assert h.vertex(2, 1) == 7 and h.pair(7) == (2, 1)
        assert sorted(h.vertex(a, b) for a in range(3) for b in range(3)) == list(range(9))

    def test_commutativity(self):
        g1, g2 = make_path(3), make_star(2)
        swap = [b * g1.n + a for a in range(g1.n) for b in range(g2.n)]
        for kind in ("cartesian", "strong"):
            assert relabel(product(g1, g2, kind).materialize(), swap) == product(g2, g1, kind).materialize()
        # not so for the lexicographic product: the edge counts already differ
        a = lexicographic_product(make_star(2), make_path(2))
        b = lexicographic_product(make_path(2), make_star(2))
        assert a.m != b.m

    def test_empty_factor_rejected(self):
        with pytest.raises(GraphError):
            cartesian_product(Graph(0), make_path(2))
        with pytest.raises(GraphError):
            product(make_path(2), make_path(2), "tensor")


class TestConnectivity:
    def test_basic(self):
        assert is_connected(Graph(1))
        assert is_connected(Graph(0))
        assert not is_connected(Graph(2))
        assert is_connected(make_grid(3))
        assert components(Graph(3, [(0, 2)])) == [[0, 2], [1]]
        assert is_forest(Graph(3)) and not is_forest(make_cycle(3))

    def test_spanning_tree_pruned(self):
        t = random_tree(9, 4)
        assert spanning_tree_pruned(t, 9) == t
        assert spanning_tree_pruned(make_grid(3), 1).n == 1
        g = make_grid(3)
        tree, kept = spanning_tree_with_map(g, 5)
        assert tree.n == 5 and is_tree(tree)
        assert all(g.has_edge(kept[u], kept[v]) for u, v in tree.edges)
        with pytest.raises(GraphError):
            spanning_tree_pruned(Graph(2), 1)
        with pytest.raises(GraphError):
            spanning_tree_pruned(g, 10)

    def test_spanning_tree_many(self):
        for seed in range(20):
            rng = random.Random(seed)
            n = rng.randint(2, 12)
            g = random_tree(n, seed).add_edges([(u, v) for u in range(n) for v in range(u + 1, n)
                                                 if rng.random() < 0.2])
            for size in range(1, n + 1):
                tree, kept = spanning_tree_with_map(g, size)
                assert is_tree(tree) and kept == sorted(kept)
                assert all(g.has_edge(kept[u], kept[v]) for u, v in tree.edges)
