"""Separating edge sets and the three-way classification of tree edges.

An edge set H is separating for (T, P) when the partition induced by
deleting H from T equals P.  For a compatible pair the separating sets
form an interval in the subset order: every separating H satisfies
H_min <= H <= H*, where H* is the unique maximal one.  Consequently each
edge is either *essential* (in every separating set), *forbidden* (in
none), or *ambiguous* (in some but not all), and the trichotomy is read
off the vertex coloring:

    essential  --  both endpoints colored, with different colors
    forbidden  --  both endpoints colored, with the same color
    ambiguous  --  at least one endpoint uncolored
"""

from __future__ import annotations

import enum
from typing import Iterable

from .ancestry import AncestryIndex
from .partition import (NONE, Partition, VertexColoring, vertex_coloring)
from .tree import RootedTree, TreeError


class EdgeClass(enum.Enum):
    ESSENTIAL = "essential"
    FORBIDDEN = "forbidden"
    AMBIGUOUS = "ambiguous"


def induced_partition(tree: RootedTree, h: Iterable[int]) -> Partition:
    """The leaf partition obtained by deleting the edges `h` (child-vertex
    keys): leaves share a class iff their path avoids `h`."""
    hset = set(h)
    comp = [0] * tree.n_vertices
    for v in tree.preorder():
        p = tree.parent[v]
        comp[v] = v if p < 0 or v in hset else comp[p]
    groups: dict[int, list[str]] = {}
    for x, v in zip(tree.leaf_labels(), tree.leaves()):
        groups.setdefault(comp[v], []).append(x)
    return Partition.from_classes(groups.values())


def is_separating(tree: RootedTree, h: Iterable[int],
                  partition: Partition) -> bool:
    """True iff deleting `h` induces exactly `partition`."""
    return induced_partition(tree, h).as_set() == partition.as_set()


def maximal_separating_set(coloring: VertexColoring) -> set[int]:
    """H*: every edge except those with equal nonempty endpoint colors.

    Requires a compatible coloring; raises ValueError otherwise.
    """
    if not coloring.compatible:
        raise ValueError("tree and partition are not compatible")
    tree = coloring.tree
    color = coloring.color
    return {v for v in tree.preorder()
            if tree.parent[v] >= 0
            and not (color[v] == color[tree.parent[v]] != NONE)}


def classify_edge(coloring: VertexColoring, v: int) -> EdgeClass:
    """Classify the edge keyed by child vertex `v`."""
    tree = coloring.tree
    p = tree.parent[v]
    if p < 0:
        raise TreeError(f"vertex {v} is the root and keys no edge")
    cv, cp = coloring.color[v], coloring.color[p]
    if cv != NONE and cp != NONE:
        return EdgeClass.ESSENTIAL if cv != cp else EdgeClass.FORBIDDEN
    return EdgeClass.AMBIGUOUS


def classify_tree_edges(tree: RootedTree, partition: Partition,
                        index: AncestryIndex | None = None,
                        ) -> dict[int, EdgeClass] | None:
    """All edge classes at once, keyed by child vertex; None when the
    pair is incompatible."""
    coloring = vertex_coloring(tree, partition, index)
    if not coloring.compatible:
        return None
    return {v: classify_edge(coloring, v)
            for v in tree.preorder() if tree.parent[v] >= 0}


def parse_edge_set(tree: RootedTree, lines: Iterable[str]) -> set[int]:
    """Edge set file: one edge key per line (child vertex label, or
    `@<preorder-index>` for unlabeled vertices); blanks and # comments
    ignored."""
    h = set()
    for line in lines:
        key = line.split("#", 1)[0].strip()
        if key:
            h.add(tree.resolve_edge_key(key))
    return h


def format_edge_set(tree: RootedTree, h: Iterable[int]) -> str:
    pos = tree.preorder_index
    return "".join(tree.edge_name(v) + "\n"
                   for v in sorted(h, key=lambda v: pos(v)))
