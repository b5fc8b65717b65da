"""Leaf partitions, the vertex coloring, the edge coloring, and the
compatibility / r-compatibility verdicts.

The vertex coloring assigns class A to every vertex lying on a path
between two (possibly equal) members of A; it is well-defined exactly when
the tree and partition are compatible.  The edge coloring assigns A to
every edge on a path between two *distinct* members of A; it is
well-defined exactly when some refinement of the tree is compatible.
Both are computed by walking each leaf up toward a running class LCA, so
the total cost is linear in the number of leaves.  A vertex (edge) that
would receive two distinct colors yields the verdict compatible=False
(r_compatible=False) -- incompatibility is a result, not an error.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, TextIO

from .ancestry import AncestryIndex, build_index
from .tree import RootedTree

NONE = -1


class PartitionError(ValueError):
    """Partition axiom violation (empty class, missing or repeated leaf)."""


@dataclass(frozen=True)
class Partition:
    """Disjoint nonempty leaf-label classes covering the leaf set."""

    classes: tuple[frozenset[str], ...]
    class_of: dict[str, int] = field(compare=False, repr=False)

    @staticmethod
    def from_classes(classes: Iterable[Iterable[str]]) -> "Partition":
        cls = tuple(frozenset(c) for c in classes)
        class_of: dict[str, int] = {}
        for i, c in enumerate(cls):
            if not c:
                raise PartitionError(f"class {i} is empty")
            for x in c:
                if x in class_of:
                    raise PartitionError(f"leaf {x!r} occurs in classes "
                                         f"{class_of[x]} and {i}")
                class_of[x] = i
        return Partition(cls, class_of)

    def __len__(self) -> int:
        return len(self.classes)

    def as_set(self) -> frozenset[frozenset[str]]:
        return frozenset(self.classes)

    def support(self) -> frozenset[str]:
        return frozenset(self.class_of)

    @staticmethod
    def parse(stream: TextIO | Iterable[str]) -> "Partition":
        """One class per line, labels separated by tabs; blank lines and
        `#` comments ignored; class ids are 0-based line numbers of the
        retained lines."""
        classes = []
        for line in stream:
            line = line.rstrip("\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            classes.append([x for x in line.split("\t") if x])
        return Partition.from_classes(classes)

    def format(self) -> str:
        return "".join("\t".join(sorted(c)) + "\n" for c in self.classes)


def validate_partition(partition: Partition, tree: RootedTree) -> None:
    """Check the partition axioms against the tree's leaf set; raises
    :class:`PartitionError` naming the first violation.

    Emptiness and disjointness are enforced at construction, so only the
    covering axiom can fail here.
    """
    leaves = tree.leaf_set()
    support = partition.support()
    missing = leaves - support
    if missing:
        raise PartitionError(f"leaf {sorted(missing)[0]!r} is not covered "
                             "by any class")
    extra = support - leaves
    if extra:
        raise PartitionError(f"class member {sorted(extra)[0]!r} is not a "
                             "leaf of the tree")


@dataclass(frozen=True)
class VertexColoring:
    """Per-vertex class colors (NONE = uncolored) with per-class LCAs.

    `color` and `class_lca` are meaningful only if `compatible` is True.
    """

    tree: RootedTree
    partition: Partition
    color: list[int]
    class_lca: list[int]
    compatible: bool


@dataclass(frozen=True)
class EdgeColoring:
    """Per-edge class colors, indexed by child vertex (root slot = NONE)."""

    tree: RootedTree
    partition: Partition
    color: list[int]
    class_lca: list[int]
    r_compatible: bool


def _class_leaf_walk(tree: RootedTree, partition: Partition,
                     index: AncestryIndex, color_edges: bool,
                     ) -> tuple[list[int], list[int], bool]:
    """Shared walk for both colorings.

    For each class, leaves are walked up toward a running LCA.  With
    `color_edges` False the visited vertices (and the running LCA) are
    colored, with it True the traversed edges are colored.  Returns
    (colors, class LCAs, no-collision flag); aborts on first collision.
    """
    parent = tree.parent
    color = [NONE] * tree.n_vertices
    class_lca = [NONE] * len(partition)

    for a, members in enumerate(partition.classes):
        leaves = [tree.vertex_of_leaf(x) for x in members]
        cur = leaves[0]
        visited = {cur}
        if not color_edges:
            color[cur] = a
        for x in leaves[1:]:
            new = index.lca(x, cur)
            v = x
            while v != new and v not in visited:
                visited.add(v)
                if color[v] != NONE and color[v] != a:
                    return color, class_lca, False
                color[v] = a
                v = parent[v]
            if not color_edges and v == new and new not in visited:
                visited.add(new)
                if color[new] != NONE and color[new] != a:
                    return color, class_lca, False
                color[new] = a
            if cur != new:
                v = cur
                while v != new and (v == cur or v not in visited):
                    visited.add(v)
                    if color_edges or v != cur:
                        if color[v] != NONE and color[v] != a:
                            return color, class_lca, False
                        color[v] = a
                    v = parent[v]
            cur = new
        class_lca[a] = cur
    return color, class_lca, True


def vertex_coloring(tree: RootedTree, partition: Partition,
                    index: AncestryIndex | None = None) -> VertexColoring:
    """Compute the path-based vertex coloring and the compatibility
    verdict.  Singleton classes color their leaf only."""
    validate_partition(partition, tree)
    if index is None:
        index = build_index(tree)
    color, class_lca, ok = _class_leaf_walk(tree, partition, index,
                                            color_edges=False)
    return VertexColoring(tree, partition, color, class_lca, ok)


def edge_coloring(tree: RootedTree, partition: Partition,
                  index: AncestryIndex | None = None) -> EdgeColoring:
    """Compute the path-based edge coloring (keyed by child vertex) and
    the r-compatibility verdict."""
    validate_partition(partition, tree)
    if index is None:
        index = build_index(tree)
    color, class_lca, ok = _class_leaf_walk(tree, partition, index,
                                            color_edges=True)
    return EdgeColoring(tree, partition, color, class_lca, ok)
