import itertools
import random

import pytest

from xenoclass import (basic_refinement_step, induced_partition,
                       is_refinement, parse_newick, star_refinement,
                       urs_tree, vertex_coloring, y_set)
from xenoclass.refine import find_uncolored_step
from xenoclass.tree import TreeError, contract_edges

from conftest import random_binary_tree


class TestYSet:
    def test_tree_p(self, tree_p, p2):
        assert y_set(tree_p, p2) == {0}  # lca(A)=U has the B-colored edge U->b

    def test_tree_m_empty(self, tree_m, p2):
        assert y_set(tree_m, p2) == set()

    def test_tree_c_empty(self, tree_c, p2):
        assert y_set(tree_c, p2) == set()

    def test_not_r_compatible(self, tree_x, p2):
        with pytest.raises(ValueError):
            y_set(tree_x, p2)


class TestBasicStep:
    def test_groups_children(self, tree_m):
        r = tree_m.root
        x = {tree_m.vertex_of_leaf("a"), tree_m.vertex_of_leaf("a'")}
        out = basic_refinement_step(tree_m, r, x)
        assert out.clusters() == tree_m.clusters() | {frozenset({"a", "a'"})}

    def test_adds_exactly_one_cluster(self):
        t = parse_newick("(a,b,c,d,e)R;")
        kids = t.children[t.root]
        out = basic_refinement_step(t, t.root, set(kids[1:4]))
        assert len(out.clusters()) == len(t.clusters()) + 1
        assert is_refinement(out, t)

    def test_improper_subset_rejected(self, tree_q):
        with pytest.raises(TreeError, match="proper"):
            basic_refinement_step(tree_q, tree_q.root,
                                  set(tree_q.children[tree_q.root]))

    def test_too_small_rejected(self, tree_m):
        with pytest.raises(TreeError, match="size"):
            basic_refinement_step(tree_m, tree_m.root,
                                  {tree_m.vertex_of_leaf("a")})


class TestStarRefinement:
    def test_tree_p(self, tree_p, p2):
        out = star_refinement(tree_p, p2)
        assert out.clusters() == parse_newick("(((a,a')W,b)U,b')R;").clusters()
        assert vertex_coloring(out, p2).compatible

    def test_noop_when_y_empty(self, tree_m, tree_c, p2):
        assert star_refinement(tree_m, p2) == tree_m
        assert star_refinement(tree_c, p2) == tree_c

    def test_refines_and_repairs(self):
        # random r-compatible instances built by contracting compatible
        # binary trees
        rng = random.Random(31)
        done = 0
        while done < 60:
            t = random_binary_tree(rng.randrange(4, 14), rng)
            h = [v for v in t.edges() if rng.random() < 0.4]
            p = induced_partition(t, h)
            inner = t.inner_edges()
            doomed = [v for v in inner if rng.random() < 0.4]
            tt = contract_edges(t, doomed) if doomed else t
            out = star_refinement(tt, p)
            assert is_refinement(out, tt)
            assert vertex_coloring(out, p).compatible
            done += 1


class TestUrsTree:
    def test_tree_m_resolves_to_q(self, tree_m, tree_q, p2):
        assert urs_tree(tree_m, p2).clusters() == tree_q.clusters()

    def test_tree_p(self, tree_p, p2):
        out = urs_tree(tree_p, p2)
        assert out.clusters() == parse_newick("(((a,a')W,b)U,b')R;").clusters()

    def test_binary_fixed_point(self, tree_c, p2):
        assert urs_tree(tree_c, p2) == tree_c

    def test_no_step_left_exhaustive(self):
        # certify the block-based step search against plain subset
        # enumeration on the output
        rng = random.Random(32)
        done = 0
        while done < 40:
            t = random_binary_tree(rng.randrange(4, 10), rng)
            h = [v for v in t.edges() if rng.random() < 0.4]
            p = induced_partition(t, h)
            doomed = [v for v in t.inner_edges() if rng.random() < 0.5]
            tt = contract_edges(t, doomed) if doomed else t
            out = urs_tree(tt, p)
            assert find_uncolored_step(out, p) is None
            clusters = out.clusters_by_vertex()
            for u in out.preorder():
                kids = out.children[u]
                if len(kids) < 3:
                    continue
                for r in range(2, len(kids)):
                    for combo in itertools.combinations(kids, r):
                        w = frozenset().union(*(clusters[v] for v in combo))
                        straddles = any(c & w and c - w for c in p.classes)
                        assert straddles, (out.newick(), sorted(w))
            done += 1

    def test_added_clusters_uncolored(self):
        rng = random.Random(33)
        for _ in range(40):
            t = random_binary_tree(rng.randrange(4, 12), rng)
            h = [v for v in t.edges() if rng.random() < 0.4]
            p = induced_partition(t, h)
            doomed = [v for v in t.inner_edges() if rng.random() < 0.4]
            tt = contract_edges(t, doomed) if doomed else t
            out = urs_tree(tt, p)
            assert vertex_coloring(out, p).compatible
            for w in out.clusters() - tt.clusters():
                assert not any(c & w and c - w for c in p.classes)
