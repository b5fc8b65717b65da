"""Rooted phylogenetic trees with Newick I/O and hierarchy operations.

Vertices are dense integer indices assigned in input order.  Edges are
identified everywhere by their child vertex, so an "edge set" is simply a
set of non-root vertex indices.  Trees are immutable after construction;
all transforming operations return new trees.
"""

from __future__ import annotations

import re
from typing import Iterable, Iterator, Sequence


class TreeError(ValueError):
    """Invalid tree structure or malformed Newick input."""


_LABEL_RE = re.compile(r"[A-Za-z0-9_.|'-]+")
_NUMBER_RE = re.compile(r"[+-]?\d+(\.\d*)?([eE][+-]?\d+)?")


class RootedTree:
    """A rooted phylogenetic tree: every inner vertex has >= 2 children,
    leaf labels are unique and nonempty, inner labels are optional.

    Attributes
    ----------
    parent   : list[int]   parent index, -1 for the root
    children : list[list[int]]   ordered child lists, [] for leaves
    labels   : list[str | None]  vertex labels (always set for leaves)
    root     : int
    """

    __slots__ = ("parent", "children", "labels", "root", "_leaf_index",
                 "_preorder", "_preorder_pos")

    def __init__(self, parent: Sequence[int], children: Sequence[Sequence[int]],
                 labels: Sequence[str | None]):
        n = len(parent)
        if n == 0:
            raise TreeError("empty tree")
        if not (len(children) == len(labels) == n):
            raise TreeError("inconsistent vertex arrays")
        self.parent = list(parent)
        self.children = [list(c) for c in children]
        self.labels = list(labels)

        roots = [v for v in range(n) if self.parent[v] == -1]
        if len(roots) != 1:
            raise TreeError(f"expected exactly one root, found {len(roots)}")
        self.root = roots[0]

        seen_labels: dict[str, int] = {}
        reached = 0
        stack = [self.root]
        visited = [False] * n
        while stack:
            v = stack.pop()
            if visited[v]:
                raise TreeError("cycle detected")
            visited[v] = True
            reached += 1
            kids = self.children[v]
            if kids:
                if len(kids) < 2:
                    raise TreeError(f"inner vertex {v} has a single child")
                for w in kids:
                    if self.parent[w] != v:
                        raise TreeError("parent/children arrays disagree")
                    stack.append(w)
            else:
                lab = self.labels[v]
                if not lab:
                    raise TreeError(f"leaf {v} has no label")
                if lab in seen_labels:
                    raise TreeError(f"duplicate leaf label {lab!r}")
                seen_labels[lab] = v
        if reached != n:
            raise TreeError("tree is not connected")
        self._leaf_index = seen_labels
        order: list[int] = []
        stack = [self.root]
        while stack:
            v = stack.pop()
            order.append(v)
            stack.extend(reversed(self.children[v]))
        self._preorder = order
        pos = [0] * n
        for i, v in enumerate(order):
            pos[v] = i
        self._preorder_pos = pos

    # ------------------------------------------------------------------ #
    # Basic queries
    # ------------------------------------------------------------------ #

    @property
    def n_vertices(self) -> int:
        return len(self.parent)

    def is_leaf(self, v: int) -> bool:
        return not self.children[v]

    def leaves(self) -> list[int]:
        """Leaf vertices in preorder."""
        return [v for v in self._preorder if not self.children[v]]

    def leaf_labels(self) -> list[str]:
        return [self.labels[v] for v in self.leaves()]  # type: ignore[misc]

    def leaf_set(self) -> frozenset[str]:
        return frozenset(self._leaf_index)

    def vertex_of_leaf(self, label: str) -> int:
        try:
            return self._leaf_index[label]
        except KeyError:
            raise TreeError(f"unknown leaf label {label!r}") from None

    def preorder(self) -> list[int]:
        """Vertices in preorder (root first); children in stored order."""
        return list(self._preorder)

    def postorder(self) -> Iterator[int]:
        return reversed(self._preorder)

    def preorder_index(self, v: int) -> int:
        return self._preorder_pos[v]

    def edges(self) -> Iterator[int]:
        """All edges, keyed by child vertex."""
        return (v for v in range(self.n_vertices) if v != self.root)

    def inner_edges(self) -> list[int]:
        return [v for v in self.edges() if self.children[v]]

    # ------------------------------------------------------------------ #
    # Edge naming (CLI / file formats)
    # ------------------------------------------------------------------ #

    def edge_name(self, v: int) -> str:
        """Stable textual key for the edge above `v`: its vertex label if
        present, otherwise `@<preorder-index>`."""
        lab = self.labels[v]
        return lab if lab else f"@{self._preorder_pos[v]}"

    def resolve_edge_key(self, key: str) -> int:
        """Inverse of :meth:`edge_name` (also accepts `@i` for labeled
        vertices)."""
        if key.startswith("@"):
            try:
                i = int(key[1:])
                v = self._preorder[i]
            except (ValueError, IndexError):
                raise TreeError(f"bad edge key {key!r}") from None
        else:
            matches = [v for v in range(self.n_vertices) if self.labels[v] == key]
            if not matches:
                raise TreeError(f"no vertex labeled {key!r}")
            if len(matches) > 1:
                raise TreeError(f"ambiguous vertex label {key!r}")
            v = matches[0]
        if v == self.root:
            raise TreeError(f"{key!r} names the root, which has no edge above it")
        return v

    # ------------------------------------------------------------------ #
    # Clusters / hierarchy
    # ------------------------------------------------------------------ #

    def cluster_of(self, v: int) -> frozenset[str]:
        """Leaf-label set of the subtree rooted at `v`."""
        return self.clusters_by_vertex()[v]

    def clusters_by_vertex(self) -> list[frozenset[str]]:
        out: list[frozenset[str] | None] = [None] * self.n_vertices
        for v in self.postorder():
            if not self.children[v]:
                out[v] = frozenset((self.labels[v],))  # type: ignore[arg-type]
            else:
                acc: set[str] = set()
                for w in self.children[v]:
                    acc.update(out[w])  # type: ignore[arg-type]
                out[v] = frozenset(acc)
        return out  # type: ignore[return-value]

    def clusters(self) -> set[frozenset[str]]:
        """The hierarchy {L(T(v)) : v in V(T)} as a set of label sets."""
        return set(self.clusters_by_vertex())

    def __eq__(self, other: object) -> bool:
        """Structural equality: same shape, same labels, same child order."""
        if not isinstance(other, RootedTree):
            return NotImplemented
        return self.newick() == other.newick()

    def __hash__(self) -> int:
        return hash(self.newick())

    def __repr__(self) -> str:
        return f"RootedTree({self.newick()!r})"

    def newick(self) -> str:
        return write_newick(self)


# ---------------------------------------------------------------------- #
# Newick I/O
# ---------------------------------------------------------------------- #

def parse_newick(text: str) -> RootedTree:
    """Parse a single rooted Newick expression terminated by ';'.

    Branch lengths (`:<float>` after any label) are accepted and discarded.
    Grammar: tree := subtree ';' ; subtree := '(' subtree (',' subtree)+ ')'
    [label] | label.
    """
    s = text.strip()
    if not s:
        raise TreeError("empty Newick input")
    pos = 0
    parent: list[int] = []
    children: list[list[int]] = []
    labels: list[str | None] = []

    def new_vertex(par: int) -> int:
        parent.append(par)
        children.append([])
        labels.append(None)
        v = len(parent) - 1
        if par >= 0:
            children[par].append(v)
        return v

    def syntax_error(msg: str) -> TreeError:
        return TreeError(f"Newick syntax error at position {pos}: {msg}")

    def read_label() -> str | None:
        nonlocal pos
        m = _LABEL_RE.match(s, pos)
        if not m:
            return None
        pos = m.end()
        return m.group(0)

    def skip_branch_length() -> None:
        nonlocal pos
        if pos < len(s) and s[pos] == ":":
            pos += 1
            m = _NUMBER_RE.match(s, pos)
            if not m:
                raise syntax_error("expected branch length after ':'")
            pos = m.end()

    # iterative descent: stack holds open inner vertices
    stack: list[int] = []
    root = -1
    expect_subtree = True
    while pos < len(s):
        ch = s[pos]
        if ch.isspace():
            pos += 1
            continue
        if ch == "(":
            if not expect_subtree:
                raise syntax_error("unexpected '('")
            v = new_vertex(stack[-1] if stack else -1)
            if root < 0:
                root = v
            stack.append(v)
            pos += 1
        elif ch == ",":
            if expect_subtree or not stack:
                raise syntax_error("unexpected ','")
            pos += 1
            expect_subtree = True
        elif ch == ")":
            if expect_subtree or not stack:
                raise syntax_error("unexpected ')'")
            v = stack.pop()
            pos += 1
            labels[v] = read_label()
            skip_branch_length()
        elif ch == ";":
            if expect_subtree or stack:
                raise syntax_error("unexpected ';'")
            pos += 1
            if s[pos:].strip():
                raise syntax_error("trailing characters after ';'")
            break
        else:
            if not expect_subtree:
                raise syntax_error(f"unexpected character {ch!r}")
            lab = read_label()
            if lab is None:
                raise syntax_error(f"unexpected character {ch!r}")
            v = new_vertex(stack[-1] if stack else -1)
            if root < 0:
                root = v
            labels[v] = lab
            skip_branch_length()
            expect_subtree = False
            continue
        if ch in "()":
            expect_subtree = ch == "("
        if ch == ")":
            expect_subtree = False
    else:
        raise TreeError("Newick input not terminated by ';'")

    if root < 0:
        raise TreeError("empty Newick input")
    if not children[root]:
        raise TreeError("tree must have at least two leaves")
    return RootedTree(parent, children, labels)


def write_newick(tree: RootedTree) -> str:
    """Serialize preserving child order and labels; inner vertices without
    labels are written without a name."""
    parts: dict[int, str] = {}
    for v in tree.postorder():
        if tree.is_leaf(v):
            parts[v] = tree.labels[v]  # type: ignore[assignment]
        else:
            inner = ",".join(parts[w] for w in tree.children[v])
            parts[v] = f"({inner}){tree.labels[v] or ''}"
    return parts[tree.root] + ";"


# ---------------------------------------------------------------------- #
# Refinement / contraction
# ---------------------------------------------------------------------- #

def is_refinement(candidate: RootedTree, base: RootedTree) -> bool:
    """True iff every cluster of `base` is a cluster of `candidate`."""
    if candidate.leaf_set() != base.leaf_set():
        raise TreeError("leaf-label sets differ")
    return base.clusters() <= candidate.clusters()


def contract_edges(tree: RootedTree, edge_children: Iterable[int]) -> RootedTree:
    """Contract the given inner edges (keyed by child vertex): each listed
    child's children re-attach, in place, to its parent."""
    contract = set(edge_children)
    for v in contract:
        if v == tree.root:
            raise TreeError("cannot contract the root")
        if tree.is_leaf(v):
            raise TreeError(f"cannot contract leaf edge {tree.edge_name(v)!r}")

    # expand child lists top-down, splicing contracted vertices in place
    def expand(kids: list[int]) -> list[int]:
        out: list[int] = []
        for w in kids:
            if w in contract:
                out.extend(expand(tree.children[w]))
            else:
                out.append(w)
        return out

    keep = [v for v in range(tree.n_vertices) if v not in contract]
    remap = {v: i for i, v in enumerate(keep)}
    parent = [-1] * len(keep)
    children: list[list[int]] = [[] for _ in keep]
    labels: list[str | None] = [tree.labels[v] for v in keep]
    for v in keep:
        nv = remap[v]
        if tree.children[v]:
            kids = expand(tree.children[v])
            children[nv] = [remap[w] for w in kids]
            for w in kids:
                parent[remap[w]] = nv
    return RootedTree(parent, children, labels)


def tree_from_hierarchy(clusters: set[frozenset[str]],
                        leaf_order: Sequence[str]) -> RootedTree:
    """Build the unique tree whose cluster set equals `clusters`.

    The input must be a hierarchy on the leaves of `leaf_order` (laminar,
    containing the full set and all singletons).  Children are ordered by
    the first member leaf according to `leaf_order`.
    """
    leaves = list(leaf_order)
    full = frozenset(leaves)
    pos = {lab: i for i, lab in enumerate(leaves)}
    if full not in clusters:
        raise TreeError("hierarchy must contain the full leaf set")
    for lab in leaves:
        if frozenset((lab,)) not in clusters:
            raise TreeError(f"hierarchy must contain singleton {{{lab}}}")
    ordered = sorted(clusters, key=lambda c: (-len(c), min(pos[x] for x in c)))

    parent: list[int] = []
    children: list[list[int]] = []
    labels: list[str | None] = []
    cluster_vertex: dict[int, frozenset[str]] = {}

    def add(par: int, c: frozenset[str]) -> int:
        parent.append(par)
        children.append([])
        labels.append(next(iter(c)) if len(c) == 1 else None)
        v = len(parent) - 1
        if par >= 0:
            children[par].append(v)
        cluster_vertex[v] = c
        return v

    add(-1, full)
    for c in ordered[1:]:
        # smallest strict superset already added = the deepest vertex
        # whose cluster contains c
        best, best_v = None, -1
        for v, cv in cluster_vertex.items():
            if c < cv and (best is None or len(cv) < len(best)):
                best, best_v = cv, v
        if best is None:
            raise TreeError("not a laminar family")
        # c must be disjoint from its siblings; an overlap there is
        # exactly how a non-laminar pair surfaces under this insertion
        # order
        for w in children[best_v]:
            if c & cluster_vertex[w]:
                raise TreeError("not a laminar family")
        add(best_v, c)
    for v in range(len(parent)):
        children[v].sort(key=lambda w: min(pos[x] for x in cluster_vertex[w]))
    return RootedTree(parent, children, labels)
