"""Refinement constructions: basic refinement steps, the star
refinement T*, and URS-trees.

An r-compatible pair that is not compatible can always be repaired by
resolving polytomies: grouping, below lca(A), the children whose edges
carry color A (the star refinement), and then exhausting *uncolored*
steps -- insertions of a cluster that straddles no class.  The resulting
URS-tree is compatible with the partition and is the tree on which
refinement-aware pair classes can be read off directly.
"""

from __future__ import annotations

from .ancestry import build_index
from .partition import (NONE, EdgeColoring, Partition, edge_coloring,
                        vertex_coloring)
from .tree import RootedTree, TreeError


def y_set(tree: RootedTree, partition: Partition,
          gamma: EdgeColoring | None = None) -> set[int]:
    """Classes A whose lca has a child edge colored by a different class
    (A is then "not resolved enough" in the tree)."""
    if gamma is None:
        gamma = edge_coloring(tree, partition)
    if not gamma.r_compatible:
        raise ValueError("no refinement of the tree is compatible "
                         "with the partition")
    out = set()
    for a in range(len(partition)):
        u = gamma.class_lca[a]
        for v in tree.children[u]:
            if gamma.color[v] != NONE and gamma.color[v] != a:
                out.add(a)
                break
    return out


def basic_refinement_step(tree: RootedTree, u: int,
                          x: set[int]) -> RootedTree:
    """Insert a new vertex below `u` gathering the child subset `x`
    (proper, size >= 2); adds exactly one cluster to the hierarchy."""
    kids = tree.children[u]
    if not kids:
        raise TreeError(f"vertex {u} is a leaf")
    if not x <= set(kids):
        raise TreeError("x is not a subset of the children of u")
    if len(x) < 2 or len(x) >= len(kids):
        raise TreeError("x must be a proper child subset of size >= 2")

    n = tree.n_vertices
    parent = list(tree.parent) + [u]
    children = [list(c) for c in tree.children] + [[]]
    labels = list(tree.labels) + [None]
    w = n
    # w takes the place of the first gathered child to keep child order
    # stable
    new_kids = []
    for v in kids:
        if v in x:
            parent[v] = w
            children[w].append(v)
            if w not in new_kids:
                new_kids.append(w)
        else:
            new_kids.append(v)
    children[u] = new_kids
    return RootedTree(parent, children, labels)


def star_refinement(tree: RootedTree, partition: Partition) -> RootedTree:
    """T*: for each class A in the y-set, group the A-colored child
    edges of lca(A) under a new vertex; the result is compatible with
    the partition."""
    t = tree
    while True:
        gamma = edge_coloring(t, partition)
        ys = y_set(t, partition, gamma)
        if not ys:
            return t
        a = min(ys)
        u = gamma.class_lca[a]
        x = {v for v in t.children[u] if gamma.color[v] == a}
        t = basic_refinement_step(t, u, x)


def _touch_blocks(tree: RootedTree, partition: Partition,
                  clusters: list[frozenset[str]], u: int,
                  ) -> list[tuple[list[int], set[int]]]:
    """Children of `u` grouped by the transitive closure of sharing a
    class; each block paired with the set of classes it touches."""
    kids = tree.children[u]
    touch = [{partition.class_of[x] for x in clusters[v]} for v in kids]
    block_of = list(range(len(kids)))

    def find(i: int) -> int:
        while block_of[i] != i:
            block_of[i] = block_of[block_of[i]]
            i = block_of[i]
        return i

    owner: dict[int, int] = {}
    for i, ts in enumerate(touch):
        for c in ts:
            if c in owner:
                ri, rj = find(i), find(owner[c])
                if ri != rj:
                    block_of[ri] = rj
            else:
                owner[c] = i
    groups: dict[int, tuple[list[int], set[int]]] = {}
    for i, v in enumerate(kids):
        members, classes = groups.setdefault(find(i), ([], set()))
        members.append(v)
        classes.update(touch[i])
    # deterministic: blocks ordered by first child position
    return [groups[r] for r in sorted(groups, key=lambda r: kids.index(groups[r][0][0]))]


def find_uncolored_step(tree: RootedTree, partition: Partition,
                        ) -> tuple[int, set[int]] | None:
    """First (preorder) uncolored basic refinement step, or None.

    A step's inserted cluster straddles no class iff its child set is a
    union of whole touch-blocks, each "closed" (every touched class
    fully inside the block).  Single closed blocks are preferred; two
    closed blocks are merged only when no single block qualifies.
    """
    clusters = tree.clusters_by_vertex()
    class_size = [len(c) for c in partition.classes]
    for u in tree.preorder():
        kids = tree.children[u]
        if len(kids) < 3:
            continue
        blocks = _touch_blocks(tree, partition, clusters, u, )
        closed = []
        for members, classes in blocks:
            inside = sum(len(clusters[v]) for v in members)
            if inside == sum(class_size[c] for c in classes):
                closed.append(members)
        for members in closed:
            if 2 <= len(members) < len(kids):
                return u, set(members)
        for i in range(len(closed)):
            for j in range(i + 1, len(closed)):
                merged = closed[i] + closed[j]
                if len(merged) < len(kids):
                    return u, set(merged)
    return None


def urs_tree(tree: RootedTree, partition: Partition) -> RootedTree:
    """A URS-tree: the star refinement with uncolored steps applied
    until none remains; compatible with the partition, and every added
    cluster is uncolored."""
    t = star_refinement(tree, partition)
    while True:
        step = find_uncolored_step(t, partition)
        if step is None:
            return t
        t = basic_refinement_step(t, *step)
