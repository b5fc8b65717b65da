"""Exact brute-force reference implementations.

Everything here works by exhaustive enumeration straight from the
definitions: separating sets are found by trying subsets, refinements by
expanding every polytomy in every possible way.  The fast classifiers
are certified against these oracles on small instances; nothing in this
module is meant to be fast.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .ancestry import build_index
from .classify import PairClass
from .fitch import fitch_graph, quotient
from .partition import Partition, vertex_coloring
from .separating import EdgeClass, induced_partition
from .tree import RootedTree, tree_from_hierarchy


class BudgetError(RuntimeError):
    """Enumeration would exceed the oracle budget."""


@dataclass(frozen=True)
class OracleBudget:
    max_leaves: int = 8
    max_degree: int = 4
    max_refinements: int = 100_000

    def check_tree(self, tree: RootedTree) -> None:
        n = len(tree.leaf_set())
        if n > self.max_leaves:
            raise BudgetError(f"{n} leaves exceeds budget {self.max_leaves}")


DEFAULT_BUDGET = OracleBudget()


# ---------------------------------------------------------------------- #
# Separating sets
# ---------------------------------------------------------------------- #

def _candidate_edges(tree: RootedTree, partition: Partition) -> list[int]:
    """Edges lying on no within-class path; every separating set is a
    subset of these (deleting a within-class path edge would split that
    class)."""
    clusters = tree.clusters_by_vertex()
    out = []
    for v in tree.edges():
        c = clusters[v]
        if not any(a & c and a - c for a in partition.classes):
            out.append(v)
    return out


def enumerate_separating_sets(tree: RootedTree, partition: Partition,
                              budget: OracleBudget = DEFAULT_BUDGET,
                              ) -> list[frozenset[int]]:
    """All H with induced_partition(tree, H) = partition; empty list iff
    the pair is incompatible."""
    budget.check_tree(tree)
    cand = _candidate_edges(tree, partition)
    if len(cand) > 20:
        raise BudgetError(f"2^{len(cand)} candidate subsets")

    order = tree.preorder()
    parent = tree.parent
    leaf_vs = tree.leaves()
    cls = [partition.class_of[lab] for lab in tree.leaf_labels()]
    k = len(partition)
    comp = [0] * tree.n_vertices

    def separates(hset: frozenset[int]) -> bool:
        # leaves grouped by T - H component must biject onto the classes
        for v in order:
            p = parent[v]
            comp[v] = v if p < 0 or v in hset else comp[p]
        comp_class: dict[int, int] = {}
        class_comp = [-1] * k
        for lv, c in zip(leaf_vs, cls):
            r = comp[lv]
            prev = comp_class.get(r)
            if prev is None:
                if class_comp[c] != -1:
                    return False
                comp_class[r] = c
                class_comp[c] = r
            elif prev != c:
                return False
        return True

    out = []
    for r in range(len(cand) + 1):
        for combo in itertools.combinations(cand, r):
            h = frozenset(combo)
            if separates(h):
                out.append(h)
    return out


def oracle_edge_classes(tree: RootedTree, partition: Partition,
                        budget: OracleBudget = DEFAULT_BUDGET,
                        ) -> dict[int, EdgeClass]:
    """Definitional edge classes: membership across all separating sets."""
    sets = enumerate_separating_sets(tree, partition, budget)
    if not sets:
        raise ValueError("tree and partition are not compatible")
    out = {}
    for v in tree.edges():
        cnt = sum(1 for h in sets if v in h)
        if cnt == len(sets):
            out[v] = EdgeClass.ESSENTIAL
        elif cnt == 0:
            out[v] = EdgeClass.FORBIDDEN
        else:
            out[v] = EdgeClass.AMBIGUOUS
    return out


def _pair_presence(tree: RootedTree, partition: Partition,
                   sets: Sequence[frozenset[int]],
                   ) -> dict[tuple[int, int], tuple[int, int]]:
    """(present count, total) per ordered class pair across `sets`."""
    k = len(partition)
    index = build_index(tree)
    counts = {(a, b): 0 for a in range(k) for b in range(k) if a != b}
    for h in sets:
        arcs = quotient(fitch_graph(tree, h, index), partition)
        for ab in arcs:
            counts[ab] += 1
    return {ab: (c, len(sets)) for ab, c in counts.items()}


def _classify_counts(counts: dict[tuple[int, int], tuple[int, int]],
                     ) -> dict[tuple[int, int], PairClass]:
    out = {}
    for ab, (c, total) in counts.items():
        if c == total:
            out[ab] = PairClass.ESSENTIAL
        elif c == 0:
            out[ab] = PairClass.FORBIDDEN
        else:
            out[ab] = PairClass.AMBIGUOUS
    return out


def oracle_pair_classes(tree: RootedTree, partition: Partition,
                        budget: OracleBudget = DEFAULT_BUDGET,
                        ) -> dict[tuple[int, int], PairClass]:
    """Definitional pair classes: quotient-arc presence across all
    separating sets of the tree itself."""
    sets = enumerate_separating_sets(tree, partition, budget)
    if not sets:
        raise ValueError("tree and partition are not compatible")
    return _classify_counts(_pair_presence(tree, partition, sets))


# ---------------------------------------------------------------------- #
# Refinements
# ---------------------------------------------------------------------- #

def _grouping_trees(items: tuple[int, ...]) -> Iterator[tuple]:
    """All rooted trees on the labeled `items` (>= 2 children per inner
    vertex), as nested tuples; includes the flat star."""
    if len(items) == 1:
        yield items[0]
        return

    def partitions_into_blocks(seq: tuple[int, ...]) -> Iterator[list[tuple[int, ...]]]:
        if not seq:
            yield []
            return
        first, rest = seq[0], seq[1:]
        for r in range(len(rest) + 1):
            for others in itertools.combinations(rest, r):
                block = (first,) + others
                remainder = tuple(x for x in rest if x not in others)
                for tail in partitions_into_blocks(remainder):
                    yield [block] + tail

    for blocks in partitions_into_blocks(items):
        if len(blocks) < 2:
            if len(items) >= 2:
                continue
        subtrees = [list(_grouping_trees(b)) if len(b) > 1 else [b[0]]
                    for b in blocks]
        for combo in itertools.product(*subtrees):
            yield tuple(combo)


def _nested_clusters(nested, clusters_by_vertex, acc: set[frozenset[str]]
                     ) -> frozenset[str]:
    """Collect the leaf-label cluster of every inner node of a nested
    grouping (child vertices appear as ints)."""
    if isinstance(nested, int):
        return clusters_by_vertex[nested]
    parts = [_nested_clusters(x, clusters_by_vertex, acc) for x in nested]
    c = frozenset().union(*parts)
    acc.add(c)
    return c


def enumerate_refinements(tree: RootedTree,
                          budget: OracleBudget = DEFAULT_BUDGET,
                          ) -> Iterator[RootedTree]:
    """All refinements of `tree` (itself included), built by expanding
    each polytomy into every rooted tree over its children."""
    budget.check_tree(tree)
    for v in tree.preorder():
        if len(tree.children[v]) > budget.max_degree:
            raise BudgetError(
                f"vertex of degree {len(tree.children[v])} exceeds budget "
                f"{budget.max_degree}")
    clusters_by_vertex = tree.clusters_by_vertex()
    base = tree.clusters()
    leaf_order = tree.leaf_labels()
    polytomies = [v for v in tree.preorder() if len(tree.children[v]) >= 3]
    options = [list(_grouping_trees(tuple(tree.children[v])))
               for v in polytomies]
    total = 1
    for opt in options:
        total *= len(opt)
        if total > budget.max_refinements:
            raise BudgetError(f"more than {budget.max_refinements} refinements")
    for combo in itertools.product(*options):
        extra: set[frozenset[str]] = set()
        for nested in combo:
            _nested_clusters(nested, clusters_by_vertex, extra)
        yield tree_from_hierarchy(base | extra, leaf_order)


def enumerate_compatible_refinements(tree: RootedTree, partition: Partition,
                                     budget: OracleBudget = DEFAULT_BUDGET,
                                     ) -> list[RootedTree]:
    out = []
    for t in enumerate_refinements(tree, budget):
        if vertex_coloring(t, partition).compatible:
            out.append(t)
    return out


def oracle_rpair_classes(tree: RootedTree, partition: Partition,
                         budget: OracleBudget = DEFAULT_BUDGET,
                         ) -> dict[tuple[int, int], PairClass]:
    """Definitional r-pair classes: quotient-arc presence across all
    separating sets of all compatible refinements."""
    k = len(partition)
    counts = {(a, b): [0, 0] for a in range(k) for b in range(k) if a != b}
    any_refinement = False
    for t in enumerate_compatible_refinements(tree, partition, budget):
        sets = enumerate_separating_sets(t, partition, budget)
        any_refinement = any_refinement or bool(sets)
        index = build_index(t)
        for h in sets:
            arcs = quotient(fitch_graph(t, h, index), partition)
            for ab in counts:
                counts[ab][1] += 1
                if ab in arcs:
                    counts[ab][0] += 1
    if not any_refinement:
        raise ValueError("no refinement of the tree is compatible "
                         "with the partition")
    return _classify_counts({ab: (c, t) for ab, (c, t) in counts.items()})


# ---------------------------------------------------------------------- #
# Instance generation for the certification suites
# ---------------------------------------------------------------------- #

def enumerate_tree_shapes(n_leaves: int) -> list[RootedTree]:
    """All rooted phylogenetic tree shapes with exactly `n_leaves`
    leaves, labeled x0..x{n-1} left to right."""

    memo: dict[int, list[tuple]] = {}

    def shapes(n: int) -> list[tuple]:
        # a shape is () for a leaf, else a tuple of child shapes in
        # nondecreasing (size, shape) order (the canonical form)
        if n == 1:
            return [()]
        if n in memo:
            return memo[n]
        out: list[tuple] = []

        def extend(remaining: int, min_part: tuple,
                   parts: list[tuple]) -> None:
            if remaining == 0:
                if len(parts) >= 2:
                    out.append(tuple(parts))
                return
            # every part is a proper subtree, so at most n - 1 leaves
            for size in range(1, min(remaining, n - 1) + 1):
                for sub in shapes(size):
                    cand = (size, sub)
                    if cand < min_part:
                        continue
                    extend(remaining - size, cand, parts + [sub])

        extend(n, (0, ()), [])
        memo[n] = out
        return out

    def build(shape: tuple) -> RootedTree:
        parent: list[int] = []
        children: list[list[int]] = []
        labels: list[str | None] = []
        counter = itertools.count()

        def add(par: int, s: tuple) -> None:
            parent.append(par)
            children.append([])
            labels.append(None)
            v = len(parent) - 1
            if par >= 0:
                children[par].append(v)
            if s == ():
                labels[v] = f"x{next(counter)}"
            else:
                for sub in s:
                    add(v, sub)

        add(-1, shape)
        return RootedTree(parent, children, labels)

    return [build(s) for s in shapes(n_leaves) if s != ()]


def sample_compatible_partitions(tree: RootedTree, count: int,
                                 rng: random.Random,
                                 ) -> list[Partition]:
    """Distinct compatible partitions obtained from random edge subsets
    (every induced partition is compatible by construction)."""
    edges = list(tree.edges())
    seen: set[frozenset[frozenset[str]]] = set()
    out: list[Partition] = []
    attempts = 0
    while len(out) < count and attempts < count * 50:
        attempts += 1
        h = [v for v in edges if rng.random() < 0.5]
        p = induced_partition(tree, h)
        key = p.as_set()
        if key not in seen:
            seen.add(key)
            out.append(p)
    return out
