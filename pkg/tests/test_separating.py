import random

import pytest

from xenoclass import (EdgeClass, Partition, classify_tree_edges,
                       induced_partition, is_separating,
                       maximal_separating_set, parse_newick, vertex_coloring)
from xenoclass.oracle import enumerate_separating_sets
from xenoclass.separating import format_edge_set, parse_edge_set

from conftest import random_binary_tree


class TestInducedPartition:
    def test_empty_h(self):
        t = parse_newick("((a,b)X,c)R;")
        assert induced_partition(t, []).as_set() == {frozenset("abc")}

    def test_all_edges(self):
        t = parse_newick("(a,b,c)R;")
        p = induced_partition(t, list(t.edges()))
        assert p.as_set() == {frozenset("a"), frozenset("b"), frozenset("c")}

    def test_single_cut(self, tree_c, p2):
        h = [tree_c.resolve_edge_key("Y")]
        assert induced_partition(tree_c, h).as_set() == p2.as_set()
        assert is_separating(tree_c, h, p2)

    def test_roundtrip_random(self):
        rng = random.Random(5)
        for _ in range(30):
            t = random_binary_tree(rng.randrange(3, 25), rng)
            h = [v for v in t.edges() if rng.random() < 0.4]
            assert is_separating(t, h, induced_partition(t, h))


class TestHStar:
    def test_tree_c_unique(self, tree_c, p2):
        hstar = maximal_separating_set(vertex_coloring(tree_c, p2))
        assert hstar == {tree_c.resolve_edge_key("Y")}

    def test_tree_q_three_sets(self, tree_q, p2):
        hstar = maximal_separating_set(vertex_coloring(tree_q, p2))
        assert hstar == {tree_q.resolve_edge_key("X"),
                         tree_q.resolve_edge_key("Y")}

    def test_incompatible_raises(self, tree_p, p2):
        with pytest.raises(ValueError, match="not compatible"):
            maximal_separating_set(vertex_coloring(tree_p, p2))

    def test_hstar_is_maximum(self):
        # H* separates, and every separating set is a subset of it
        rng = random.Random(6)
        for _ in range(25):
            t = random_binary_tree(rng.randrange(3, 9), rng)
            h = [v for v in t.edges() if rng.random() < 0.4]
            p = induced_partition(t, h)
            hstar = maximal_separating_set(vertex_coloring(t, p))
            assert is_separating(t, hstar, p)
            for s in enumerate_separating_sets(t, p):
                assert s <= hstar


class TestEdgeClasses:
    def test_tree_c(self, tree_c, p2):
        classes = classify_tree_edges(tree_c, p2)
        names = {tree_c.edge_name(v): c for v, c in classes.items()}
        assert names == {
            "Y": EdgeClass.ESSENTIAL,
            "Z": EdgeClass.FORBIDDEN, "a": EdgeClass.FORBIDDEN,
            "a'": EdgeClass.FORBIDDEN, "b": EdgeClass.FORBIDDEN,
            "b'": EdgeClass.FORBIDDEN,
        }

    def test_tree_q(self, tree_q, p2):
        classes = classify_tree_edges(tree_q, p2)
        names = {tree_q.edge_name(v): c for v, c in classes.items()}
        assert names["X"] is EdgeClass.AMBIGUOUS
        assert names["Y"] is EdgeClass.AMBIGUOUS
        assert all(c is EdgeClass.FORBIDDEN
                   for e, c in names.items() if e not in "XY")

    def test_incompatible_returns_none(self, tree_p, p2):
        assert classify_tree_edges(tree_p, p2) is None

    def test_indiscrete_partition(self):
        t = parse_newick("((a,b)X,c)R;")
        p = Partition.from_classes([["a", "b", "c"]])
        classes = classify_tree_edges(t, p)
        assert set(classes.values()) == {EdgeClass.FORBIDDEN}


class TestEdgeSetIO:
    def test_roundtrip(self, tree_c):
        h = {tree_c.resolve_edge_key("Y"), tree_c.vertex_of_leaf("a")}
        text = format_edge_set(tree_c, h)
        assert parse_edge_set(tree_c, text.splitlines()) == h

    def test_comments_ignored(self, tree_c):
        lines = ["# transfer edges", "Y  # the cherry", ""]
        assert parse_edge_set(tree_c, lines) == {tree_c.resolve_edge_key("Y")}
