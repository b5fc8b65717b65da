"""Directed Fitch graphs, their symmetrization and quotient, and
recovery of a partition from a complete multipartite graph.

The Fitch graph of (T, H) has an arc (x, y) between leaves whenever the
path from lca(x, y) down to y crosses an edge of H.  Its symmetrization
is always complete multipartite, and the non-adjacency classes are
exactly the partition induced by deleting H.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable

from .ancestry import AncestryIndex, build_index
from .partition import Partition
from .tree import RootedTree


@dataclass(frozen=True)
class FitchGraph:
    """Directed xenology graph on leaf labels."""

    nodes: tuple[str, ...]
    arcs: frozenset[tuple[str, str]]


def fitch_graph(tree: RootedTree, h: Iterable[int],
                index: AncestryIndex | None = None,
                naive: bool = False) -> FitchGraph:
    """Arc (x, y) iff the path lca(x, y) -> y crosses `h` (child keys).

    The default implementation precomputes, for every leaf, the highest
    ancestor reachable without crossing `h`; each ordered pair then costs
    one LCA query.  `naive=True` scans the path explicitly instead (kept
    for differential testing).
    """
    if index is None:
        index = build_index(tree)
    hset = set(h)
    labels = tuple(tree.leaf_labels())
    leaf_vs = tree.leaves()

    arcs: set[tuple[str, str]] = set()
    if naive:
        parent = tree.parent
        for i, x in enumerate(leaf_vs):
            for j, y in enumerate(leaf_vs):
                if i == j:
                    continue
                u = index.lca(x, y)
                v = y
                while v != u:
                    if v in hset:
                        arcs.add((labels[i], labels[j]))
                        break
                    v = parent[v]
        return FitchGraph(labels, frozenset(arcs))

    top = [0] * tree.n_vertices
    for v in tree.preorder():
        p = tree.parent[v]
        top[v] = v if p < 0 or v in hset else top[p]
    depth = index.depth
    for i, x in enumerate(leaf_vs):
        for j, y in enumerate(leaf_vs):
            if i != j and depth[top[y]] > depth[index.lca(x, y)]:
                arcs.add((labels[i], labels[j]))
    return FitchGraph(labels, frozenset(arcs))


def symmetrize(graph: FitchGraph) -> set[frozenset[str]]:
    """Undirected edge {x, y} for each arc in either direction."""
    return {frozenset(a) for a in graph.arcs}


def quotient(graph: FitchGraph, partition: Partition,
             checked: bool = True) -> frozenset[tuple[int, int]]:
    """Arc set of the quotient digraph on class ids.

    With `checked`, verifies that arc presence is uniform across all
    representative pairs of each class pair and raises ValueError on a
    violation (the quotient is then not well defined).
    """
    cls = partition.class_of
    present: dict[tuple[int, int], bool] = {}
    if checked:
        for x in graph.nodes:
            for y in graph.nodes:
                a, b = cls[x], cls[y]
                if a == b:
                    continue
                has = (x, y) in graph.arcs
                prev = present.setdefault((a, b), has)
                if prev != has:
                    raise ValueError(
                        f"quotient not well defined: class pair ({a},{b}) "
                        f"disagrees on representatives (e.g. {x!r}->{y!r})")
        return frozenset(ab for ab, has in present.items() if has)
    return frozenset((cls[x], cls[y]) for x, y in graph.arcs
                     if cls[x] != cls[y])


def partition_from_graph(nodes: Iterable[str],
                         edges: Iterable[frozenset[str]]) -> Partition:
    """Parts of a complete multipartite graph = classes of non-adjacency.

    Raises ValueError with a witness triple (x, y, z) where x-y and y-z
    are non-edges but x-z is an edge, if the input is not complete
    multipartite.
    """
    node_list = list(dict.fromkeys(nodes))
    edge_set = {frozenset(e) for e in edges}
    adj = {x: set() for x in node_list}
    for e in edge_set:
        pair = sorted(e)
        if len(pair) != 2:
            raise ValueError(f"bad undirected edge {pair}")
        x, y = pair
        adj[x].add(y)
        adj[y].add(x)

    # group by non-adjacency, then verify transitivity
    part_of: dict[str, int] = {}
    classes: list[list[str]] = []
    for x in node_list:
        for i, c in enumerate(classes):
            if x not in adj[c[0]]:
                c.append(x)
                part_of[x] = i
                break
        else:
            part_of[x] = len(classes)
            classes.append([x])
    for x in node_list:
        for y in node_list:
            if x < y and part_of[x] == part_of[y] and y in adj[x]:
                # x joined via its class representative z
                z = classes[part_of[x]][0]
                raise ValueError(
                    "graph is not complete multipartite: witness "
                    f"({x!r}, {z!r}, {y!r}) with {x!r}-{z!r} and "
                    f"{z!r}-{y!r} non-adjacent but {x!r}-{y!r} adjacent")
    return Partition.from_classes(classes)


# ---------------------------------------------------------------------- #
# Serialization
# ---------------------------------------------------------------------- #

def graph_to_json(graph: FitchGraph) -> str:
    return json.dumps({"nodes": list(graph.nodes),
                       "arcs": sorted([x, y] for x, y in graph.arcs)})


def graph_to_dot(graph: FitchGraph) -> str:
    lines = ["digraph fitch {"]
    for x in graph.nodes:
        lines.append(f'  "{x}";')
    for x, y in sorted(graph.arcs):
        lines.append(f'  "{x}" -> "{y}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def parse_edge_list(lines: Iterable[str]) -> tuple[list[str], set[frozenset[str]]]:
    """Undirected edge-list text: `u<TAB>v` per line; a single label per
    line declares an isolated vertex; # comments and blanks ignored."""
    nodes: list[str] = []
    seen: set[str] = set()
    edges: set[frozenset[str]] = set()
    for line in lines:
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        fields = [f for f in body.split("\t") if f]
        if len(fields) > 2:
            raise ValueError(f"expected `u<TAB>v` or a single label: {body!r}")
        for f in fields:
            if f not in seen:
                seen.add(f)
                nodes.append(f)
        if len(fields) == 2:
            if fields[0] == fields[1]:
                raise ValueError(f"self-loop on {fields[0]!r}")
            edges.add(frozenset(fields))
    return nodes, edges
