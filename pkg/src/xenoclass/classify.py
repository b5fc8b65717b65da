"""Directed classification of transfer-free class pairs.

For an ordered pair (A, B) of classes, a transfer edge *from A's
component into B's component* is essential / forbidden / ambiguous
according to whether every / no / some-but-not-all separating edge set
admits it.  Two flavors:

* :class:`PairClassifier` fixes the tree (compatible case) and decides
  pairs from the vertex coloring;
* :class:`RPairClassifier` quantifies over all compatible refinements of
  the tree (r-compatible case) and decides pairs from the edge coloring.

Both precompute lowest-colored-ancestor tables top-down, so individual
queries are O(1) after the linear build.
"""

from __future__ import annotations

import enum

from .ancestry import AncestryIndex, build_index
from .partition import (NONE, Partition, edge_coloring, vertex_coloring)
from .tree import RootedTree


class PairClass(enum.Enum):
    ESSENTIAL = "essential"
    FORBIDDEN = "forbidden"
    AMBIGUOUS = "ambiguous"


class PairClassifier:
    """O(1) classification of ordered class pairs on a compatible pair.

    Raises ValueError if the tree and partition are incompatible.
    """

    def __init__(self, tree: RootedTree, partition: Partition,
                 index: AncestryIndex | None = None):
        self.tree = tree
        self.partition = partition
        self.index = index if index is not None else build_index(tree)
        col = vertex_coloring(tree, partition, self.index)
        if not col.compatible:
            raise ValueError("tree and partition are not compatible")
        self.coloring = col
        self.class_lca = col.class_lca

        # lowest colored strict ancestor of each vertex (NONE at/above
        # the highest colored vertex)
        color = col.color
        parent = tree.parent
        lcsa = [NONE] * tree.n_vertices
        for v in tree.preorder():
            p = parent[v]
            if p >= 0:
                lcsa[v] = p if color[p] != NONE else lcsa[p]
        self._lcsa = lcsa

    def classify(self, a: int, b: int) -> PairClass:
        """Class of the ordered pair (a, b); class indices, a != b."""
        if a == b:
            raise ValueError("pair classes must be distinct")
        la = self.class_lca[a]
        lb = self.class_lca[b]
        lca = self.index.lca
        u = lca(la, lb)
        s = self._lcsa[lb]
        if s != NONE and lca(s, u) == u:
            # a colored vertex strictly above lca(B), at or below lca(A|B)
            return PairClass.ESSENTIAL
        if la != lb and lca(la, lb) == lb:
            # lca(A) strictly below lca(B)
            return PairClass.FORBIDDEN
        return PairClass.AMBIGUOUS

    def all_pairs(self) -> dict[tuple[int, int], PairClass]:
        k = len(self.partition)
        return {(a, b): self.classify(a, b)
                for a in range(k) for b in range(k) if a != b}


class RPairClassifier:
    """O(1) classification of ordered class pairs over all compatible
    refinements of the tree (r-essential / r-forbidden / r-ambiguous).

    Raises ValueError if no refinement is compatible.
    """

    def __init__(self, tree: RootedTree, partition: Partition,
                 index: AncestryIndex | None = None):
        self.tree = tree
        self.partition = partition
        self.index = index if index is not None else build_index(tree)
        col = edge_coloring(tree, partition, self.index)
        if not col.r_compatible:
            raise ValueError("no refinement of the tree is compatible "
                             "with the partition")
        self.coloring = col
        self.class_lca = col.class_lca

        # lowest colored edge (child key) on each vertex's root path
        color = col.color
        parent = tree.parent
        lce = [NONE] * tree.n_vertices
        for v in tree.preorder():
            p = parent[v]
            if p >= 0:
                lce[v] = v if color[v] != NONE else lce[p]
        self._lce = lce

    def classify(self, a: int, b: int) -> PairClass:
        """r-class of the ordered pair (a, b); class indices, a != b."""
        if a == b:
            raise ValueError("pair classes must be distinct")
        tree = self.tree
        index = self.index
        color = self.coloring.color
        la = self.class_lca[a]
        lb = self.class_lca[b]
        u = index.lca(la, lb)

        # essential (i): a colored edge on the path lca(B) .. lca(A|B)
        e = self._lce[lb]
        if e != NONE and e != u and index.lca(e, u) == u:
            return PairClass.ESSENTIAL
        # essential (ii): the edge above lca(A|B) and the one below it
        # toward lca(A) carry the same color
        if la != u and u != tree.root and color[u] != NONE:
            w = index.child_toward(u, la)
            if color[w] == color[u]:
                return PairClass.ESSENTIAL

        # forbidden: lca(A) strictly below lca(B) = lca(A|B), with the
        # edge from there toward lca(A) colored B
        if la != lb and lb == u:
            v = index.child_toward(lb, la)
            if color[v] == b:
                return PairClass.FORBIDDEN
        return PairClass.AMBIGUOUS

    def all_pairs(self) -> dict[tuple[int, int], PairClass]:
        k = len(self.partition)
        return {(a, b): self.classify(a, b)
                for a in range(k) for b in range(k) if a != b}
