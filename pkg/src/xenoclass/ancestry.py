"""Constant-time ancestry queries after near-linear preprocessing.

LCA uses the Euler tour + sparse-table RMQ scheme (O(n log n) build,
O(1) query).  Level-ancestor queries use long-path (ladder) decomposition
combined with power-of-two jump pointers, which answers LA(v, d) in O(1).
All traversals are iterative so deep caterpillar trees are safe.
"""

from __future__ import annotations

import numpy as np

from .tree import RootedTree


class AncestryIndex:
    """Immutable query structure over a fixed :class:`RootedTree`."""

    def __init__(self, tree: RootedTree):
        self.tree = tree
        n = tree.n_vertices

        depth = [0] * n
        order = tree.preorder()
        for v in order:
            p = tree.parent[v]
            if p >= 0:
                depth[v] = depth[p] + 1
        self.depth = depth

        # Euler tour (vertex repeated between consecutive children)
        tour: list[int] = []
        first = [-1] * n
        stack: list[tuple[int, int]] = [(tree.root, 0)]  # (vertex, next child)
        while stack:
            v, i = stack.pop()
            if i == 0:
                first[v] = len(tour)
            tour.append(v)
            kids = tree.children[v]
            if i < len(kids):
                stack.append((v, i + 1))
                stack.append((kids[i], 0))
        self._tour = np.asarray(tour, dtype=np.int32)
        self._first = first
        tour_depth = np.asarray([depth[v] for v in tour], dtype=np.int32)
        self._tour_depth = tour_depth

        m = len(tour)
        levels = max(1, m.bit_length() - 1) + 1
        st = np.empty((levels, m), dtype=np.int32)
        st[0] = np.arange(m, dtype=np.int32)
        for k in range(1, levels):
            half = 1 << (k - 1)
            span = m - (1 << k) + 1
            if span <= 0:
                st[k] = st[k - 1]
                continue
            left = st[k - 1, :span]
            right = st[k - 1, half:half + span]
            take_right = tour_depth[right] < tour_depth[left]
            st[k, :span] = np.where(take_right, right, left)
            st[k, span:] = st[k - 1, span:]
        self._st = st
        log2 = [0] * (m + 1)
        for i in range(2, m + 1):
            log2[i] = log2[i >> 1] + 1
        self._log2 = log2

        # jump pointers: _jump[k][v] = 2^k-th ancestor (root beyond top)
        parent_arr = np.asarray([p if p >= 0 else tree.root for p in tree.parent],
                                dtype=np.int32)
        max_depth = max(depth)
        jlevels = max(1, max_depth.bit_length())
        jump = np.empty((jlevels, n), dtype=np.int32)
        jump[0] = parent_arr
        for k in range(1, jlevels):
            jump[k] = jump[k - 1][jump[k - 1]]
        self._jump = jump

        # ladder decomposition from long-path (max-height) decomposition
        height = [0] * n
        top_child = [-1] * n
        for v in tree.postorder():
            best_h, best_c = -1, -1
            for w in tree.children[v]:
                if height[w] > best_h:
                    best_h, best_c = height[w], w
            if best_c >= 0:
                height[v] = best_h + 1
                top_child[v] = best_c
        ladder_of = [-1] * n
        pos_in_ladder = [0] * n
        ladders: list[list[int]] = []
        for v in order:
            p = tree.parent[v]
            if p >= 0 and top_child[p] == v:
                continue  # not a path top
            # collect the long path starting at v, then extend upward by
            # its own length
            path = []
            w = v
            while w >= 0:
                path.append(w)
                w = top_child[w]
            ext: list[int] = []
            w = tree.parent[v]
            for _ in range(len(path)):
                if w < 0:
                    break
                ext.append(w)
                w = tree.parent[w]
            ladder = ext[::-1] + path  # shallowest .. deepest
            lid = len(ladders)
            ladders.append(ladder)
            for i, u in enumerate(ladder[len(ext):], start=len(ext)):
                ladder_of[u] = lid
                pos_in_ladder[u] = i
        self._ladders = ladders
        self._ladder_of = ladder_of
        self._pos_in_ladder = pos_in_ladder

    # ------------------------------------------------------------------ #

    def lca(self, u: int, v: int) -> int:
        """Last common ancestor of vertices `u` and `v`."""
        n = self.tree.n_vertices
        if not (0 <= u < n and 0 <= v < n):
            raise IndexError(f"vertex out of range: {u}, {v}")
        if u == v:
            return u
        first = self._first
        l, r = first[u], first[v]
        if l > r:
            l, r = r, l
        k = self._log2[r - l + 1]
        st = self._st
        i = st[k, l]
        j = st[k, r - (1 << k) + 1]
        td = self._tour_depth
        idx = j if td[j] < td[i] else i
        return int(self._tour[idx])

    def is_ancestor(self, u: int, v: int) -> bool:
        """True iff v <= u in the tree order (u is an ancestor of v or v
        itself)."""
        return self.lca(u, v) == u

    def level_ancestor(self, v: int, d: int) -> int:
        """The unique ancestor of `v` at depth `d` (0 = root)."""
        dv = self.depth[v]
        if not 0 <= d <= dv:
            raise IndexError(f"depth {d} out of range for vertex {v} (depth {dv})")
        diff = dv - d
        if diff == 0:
            return v
        k = diff.bit_length() - 1
        u = int(self._jump[k, v])  # ancestor at depth dv - 2^k
        rest = self.depth[u] - d
        if rest == 0:
            return u
        lad = self._ladders[self._ladder_of[u]]
        return lad[self._pos_in_ladder[u] - rest]

    def child_toward(self, u: int, v: int) -> int:
        """The child w of `u` with v <= w; requires v strictly below u."""
        du = self.depth[u]
        if self.depth[v] <= du or self.lca(u, v) != u:
            raise ValueError(f"vertex {v} is not a strict descendant of {u}")
        return self.level_ancestor(v, du + 1)


def build_index(tree: RootedTree) -> AncestryIndex:
    return AncestryIndex(tree)
