from math import ceil, pi

import pytest

from gridminor.graph import Graph, GraphError, make_path, make_star, make_subdivided_star, random_tree
from gridminor.models import validate_model
from gridminor.trees import (
    RELATED,
    UNRELATED,
    RootedTree,
    check_height_hypothesis,
    check_vertical,
    classify_pair,
    disjoint_p_paths,
    height,
    height_class,
    height_histogram,
    path_partition,
    subdivided_star_model,
    unrelated_vertical_paths,
)
from oracles import trees_up_to_iso


def binary_tree(depth):
    n = 2 ** (depth + 1) - 1
    return Graph(n, [((v - 1) // 2, v) for v in range(1, n)])


def brute_heights(t: RootedTree):
    """Longest downward vertex count by explicit enumeration of descending walks."""
    out = []
    for v in range(t.n):
        best, stack = 0, [(v, 1)]
        while stack:
            u, d = stack.pop()
            best = max(best, d)
            stack.extend((c, d + 1) for c in t.children[u])
        out.append(best)
    return out


class TestRootedTree:
    def test_parent_depth_invariants(self):
        for seed in range(10):
            t = RootedTree(random_tree(30, seed), seed % 30)
            assert t.depth[t.root] == 0 and t.parent[t.root] is None
            for v in range(t.n):
                if v != t.root:
                    assert t.tree.has_edge(v, t.parent[v])
                    assert t.depth[v] == t.depth[t.parent[v]] + 1

    def test_rejects_non_trees(self):
        with pytest.raises(GraphError):
            RootedTree(Graph(3, [(0, 1)]))
        with pytest.raises(GraphError):
            RootedTree(make_path(3), 5)

    def test_ancestors(self):
        t = RootedTree(make_path(5))
        assert t.ancestors(3) == [2, 1, 0]
        assert t.is_ancestor(1, 4) and not t.is_ancestor(4, 1) and t.related(4, 1)


class TestHeights:
    def test_examples(self):
        assert height(RootedTree(make_path(7)), 0) == 7
        t = RootedTree(random_tree(20, 3))
        assert all(height(t, v) == 1 for v in range(t.n) if not t.children[v])
        assert height(RootedTree(make_subdivided_star(3, 2)), 0) == 3
        with pytest.raises(GraphError):
            height(t, 99)

    def test_classes(self):
        t = RootedTree(random_tree(40, 8))
        assert set(height_class(t, 1)) == {v for v in range(t.n) if not t.children[v]}
        assert sum(c for _, c in height_histogram(t)) == t.n
        s = RootedTree(make_star(4))
        assert height_histogram(s) == [(1, 4), (2, 1)]
        with pytest.raises(ValueError):
            height_class(t, 0)

    def test_against_enumeration(self):
        for n in range(1, 9):
            for g in trees_up_to_iso(n):
                for r in range(n):
                    t = RootedTree(g, r)
                    assert list(t.heights) == brute_heights(t)


class TestUnrelatedPaths:
    def test_leaves(self):
        t = RootedTree(binary_tree(3))
        paths, model = unrelated_vertical_paths(t, 1)
        assert len(paths) == 8 and validate_model(model)
        assert model.pattern == make_subdivided_star(8, 1)

    def test_binary_depth_three(self):
        paths, model = unrelated_vertical_paths(RootedTree(binary_tree(3)), 2)
        assert len(paths) == 4 and validate_model(model)

    def test_root_only_class_without_spare_child(self):
        # P_n rooted at an end: S_{1,n} has n + 1 vertices, one too many for P_n
        with pytest.raises(ValueError):
            unrelated_vertical_paths(RootedTree(make_path(5)), 5)

    def test_empty_class(self):
        with pytest.raises(ValueError):
            unrelated_vertical_paths(RootedTree(make_path(3)), 9)

    def test_exhaustive_small_trees(self):
        for n in range(1, 13):
            for g in trees_up_to_iso(n):
                for r in range(n):
                    t = RootedTree(g, r)
                    for i, count in height_histogram(t):
                        if i == t.heights[r] and len(t.children[r]) <= 1:
                            continue  # the raising case above
                        paths, model = unrelated_vertical_paths(t, i)
                        assert len(paths) == count == len(height_class(t, i))
                        assert all(p.order == i for p in paths)
                        assert all(classify_pair(t, p, q) == UNRELATED
                                   for a, p in enumerate(paths) for q in paths.paths[a + 1:])
                        assert validate_model(model)

    def test_subdivided_star_model(self):
        t = RootedTree(binary_tree(3))
        paths, _ = unrelated_vertical_paths(t, 2)
        assert validate_model(subdivided_star_model(t, paths))
        assert validate_model(subdivided_star_model(t, paths, order=1))


class TestHypothesis:
    def test_examples(self):
        for n in (3, 10, 40):
            t = RootedTree(make_path(n))
            assert check_height_hypothesis(t, 1)
            for p in range(1, n + 1):
                expect = all(1 <= 3 * n / (2 * pi * pi * i * i) for i in range(1, p))
                assert check_height_hypothesis(t, p) == expect
        for n in (1, 5, 30):
            assert not check_height_hypothesis(RootedTree(make_star(n)), 2)


def feasible_ps(t):
    return [p for p in range(1, t.n + 1) if check_height_hypothesis(t, p)]


def recheck(t, paths, p):
    used = set()
    for path in paths:
        assert path.order == p
        assert check_vertical(t, path.vertices)
        assert used.isdisjoint(path.vertices)
        used.update(path.vertices)
    for a in range(len(paths)):
        for b in range(len(paths)):
            if a == b:
                continue
            cross = [t.related(x, y) for x in paths[a].vertices for y in paths[b].vertices]
            truth = RELATED if all(cross) else UNRELATED if not any(cross) else None
            assert truth is not None
            assert paths.relation[a][b] == truth


class TestDisjointPaths:
    def test_path_singletons(self):
        t = RootedTree(make_path(9))
        assert len(disjoint_p_paths(t, 1)) == 9

    def test_path_of_eight(self):
        # T' drops the height-1 leaf, so seven vertices remain for chunks of two
        t = RootedTree(make_path(8))
        paths = disjoint_p_paths(t, 2)
        assert len(paths) == 3 >= ceil(8 / 8)
        recheck(t, paths, 2)

    def test_hypothesis_enforced(self):
        with pytest.raises(ValueError):
            disjoint_p_paths(RootedTree(make_star(6)), 2)

    def test_bound_and_relations(self):
        for seed in range(120):
            n = 2 + seed % 50
            t = RootedTree(random_tree(n, seed), seed % n)
            for p in feasible_ps(t):
                paths = disjoint_p_paths(t, p)
                assert len(paths) >= ceil(n / (4 * p))
                recheck(t, paths, p)

    def test_split_vertices_fewer_than_leaves(self):
        for seed in range(60):
            t = RootedTree(random_tree(40, seed))
            for p in feasible_ps(t):
                leaves, splits, parts = path_partition(t, p)
                if leaves:
                    assert len(splits) < len(leaves)
                assert sorted(v for part in parts for v in part) == \
                    sorted(v for v in range(t.n) if t.heights[v] >= p)
