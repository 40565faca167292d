"""Spanning-tree enumeration and broadcast-preserving tree extraction.

For caps >= 3 the minimum dominating k-broadcast cost of a connected graph
equals the minimum over its spanning trees.  ``min_over_spanning_trees``
verifies that by exhaustive enumeration; ``extract_broadcast_tree``
constructs, from an optimal witness, a single spanning tree on which the
witness still dominates, by pruning overlapping shortest-path ball trees.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .graph import Graph
from .solver import (
    Broadcast,
    GuardExceeded,
    NotDominatingError,
    NotOptimalError,
    is_dominating,
    solve,
)

DEFAULT_TREE_GUARD = 10**6


def spanning_tree_count(g: Graph) -> int:
    """Number of spanning trees via the Laplacian minor determinant,
    evaluated exactly in integer arithmetic (Bareiss elimination)."""
    g.require_connected("spanning tree count")
    n = g.n
    if n == 1:
        return 1
    lap = [[0] * n for _ in range(n)]
    for u, v in g.edges:
        lap[u][u] += 1
        lap[v][v] += 1
        lap[u][v] -= 1
        lap[v][u] -= 1
    # delete last row and column, then integer-exact determinant
    m = [row[: n - 1] for row in lap[: n - 1]]
    size = n - 1
    sign = 1
    prev = 1
    for i in range(size - 1):
        if m[i][i] == 0:
            swap = next((r for r in range(i + 1, size) if m[r][i] != 0), None)
            if swap is None:
                return 0
            m[i], m[swap] = m[swap], m[i]
            sign = -sign
        for r in range(i + 1, size):
            for c in range(i + 1, size):
                m[r][c] = (m[r][c] * m[i][i] - m[r][i] * m[i][c]) // prev
        prev = m[i][i]
    return sign * m[size - 1][size - 1]


def spanning_trees(g: Graph, guard: int = DEFAULT_TREE_GUARD) -> Iterator[Graph]:
    """Every spanning tree exactly once, by include/exclude branching on
    edges (include contracts, exclude deletes).

    The count is computed up front; exceeding ``guard`` raises before any
    tree is produced.  Deterministic order (edges sorted ascending,
    include-branch first).
    """
    g.require_connected("spanning tree enumeration")
    total = spanning_tree_count(g)
    if total > guard:
        raise GuardExceeded(f"{total} spanning trees exceed the guard {guard}")
    n = g.n
    edges = g.sorted_edges()

    def dsu_find(parent: list[int], x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def spans(idx_lists: list[list[int]]) -> bool:
        parent = list(range(n))
        comps = n
        for idxs in idx_lists:
            for idx in idxs:
                a = dsu_find(parent, edges[idx][0])
                b = dsu_find(parent, edges[idx][1])
                if a != b:
                    parent[a] = b
                    comps -= 1
        return comps == 1

    def rec(chosen: list[int], remaining: list[int]) -> Iterator[Graph]:
        if len(chosen) == n - 1:
            yield Graph(n, [edges[i] for i in chosen])
            return
        parent = list(range(n))
        for idx in chosen:
            a = dsu_find(parent, edges[idx][0])
            b = dsu_find(parent, edges[idx][1])
            parent[a] = b
        pick_pos = next(
            (
                pos
                for pos, idx in enumerate(remaining)
                if dsu_find(parent, edges[idx][0]) != dsu_find(parent, edges[idx][1])
            ),
            None,
        )
        if pick_pos is None:
            return
        pick = remaining[pick_pos]
        rest = remaining[:pick_pos] + remaining[pick_pos + 1 :]
        # every spanning tree of this subspace either uses pick or does not
        yield from rec(chosen + [pick], rest)
        if spans([chosen, rest]):
            yield from rec(chosen, rest)

    yield from rec([], list(range(len(edges))))


def min_over_spanning_trees(
    g: Graph, k: int, guard: int = DEFAULT_TREE_GUARD
) -> tuple[int, Graph]:
    """Minimum dominating k-broadcast cost over all spanning trees, plus the
    first tree attaining it.  The running minimum is passed down as a solver
    cutoff so later trees are abandoned as soon as they cannot improve."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    best_value: int | None = None
    best_tree: Graph | None = None
    for tree in spanning_trees(g, guard=guard):
        if best_value is None:
            res = solve(tree, k)
            best_value, best_tree = res.value, tree
        else:
            res = solve(tree, k, cutoff=best_value)
            if res is not None:
                best_value, best_tree = res.value, tree
    assert best_tree is not None
    return best_value, best_tree


# -- constructive extraction ---------------------------------------------------


@dataclass
class _BallTree:
    """Shortest-path tree spanning a broadcaster's ball, mutable under
    subtree deletion.  Distances from the root never change on deletion."""

    root: int
    parent: dict[int, int | None]
    children: dict[int, list[int]]
    depth: dict[int, int]

    def vertices(self) -> set[int]:
        return set(self.parent)

    def __contains__(self, v: int) -> bool:
        return v in self.parent

    def subtree(self, x: int) -> list[int]:
        out = [x]
        head = 0
        while head < len(out):
            out.extend(self.children[out[head]])
            head += 1
        return out

    def subtree_depth(self, x: int) -> int:
        return max(self.depth[y] - self.depth[x] for y in self.subtree(x))

    def delete_subtree(self, x: int) -> list[int]:
        removed = self.subtree(x)
        p = self.parent[x]
        if p is not None:
            self.children[p].remove(x)
        for y in removed:
            del self.parent[y]
            del self.children[y]
            del self.depth[y]
        return removed

    def edges(self) -> list[tuple[int, int]]:
        return [
            (v, p) for v, p in self.parent.items() if p is not None
        ]


def _ball_tree(g: Graph, root: int, power: int) -> _BallTree:
    """BFS shortest-path tree over the ball of ``power`` around ``root``;
    each vertex hangs from its smallest-id neighbor in the previous layer."""
    dist = g.distances()
    members = sorted(v for v in range(g.n) if dist[root][v] <= power)
    parent: dict[int, int | None] = {root: None}
    children: dict[int, list[int]] = {v: [] for v in members}
    depth = {root: 0}
    for v in members:
        if v == root:
            continue
        d = dist[root][v]
        par = min(w for w in g.adj[v] if dist[root][w] == d - 1)
        parent[v] = par
        depth[v] = int(d)
    for v in members:
        if v != root:
            children[parent[v]].append(v)
    for v in members:
        children[v].sort()
    return _BallTree(root, parent, children, depth)


def extract_broadcast_tree(g: Graph, f: Broadcast) -> Graph:
    """Build a spanning tree on which the optimal witness still dominates.

    Broadcasters are processed in ascending power (ties by id).  Their
    shortest-path ball trees are made pairwise disjoint: a tree containing a
    later root loses that rooted subtree; a tree containing an earlier root
    loses it too, unless the earlier broadcaster's power does not exceed the
    subtree depth, which would certify that the witness is not optimal and
    raises.  Remaining overlaps are resolved layer by layer from each root
    outward, comparing dangling subtree depths (ties keep the later tree).
    The resulting vertex sets partition the graph; connecting them with the
    smallest available graph edges yields the spanning tree.
    """
    g.require_connected("spanning tree extraction")
    if f.k < 3:
        raise ValueError(f"extraction is defined for caps >= 3, got {f.k}")
    if len(f.powers) != g.n:
        raise ValueError("broadcast domain does not match the graph")
    if not is_dominating(g, f):
        raise NotDominatingError("extraction requires a dominating broadcast")
    optimum = solve(g, f.k).value
    if f.cost != optimum:
        raise NotOptimalError(
            f"witness cost {f.cost} differs from the optimal value {optimum}"
        )

    if g.n == 1:
        return Graph(1, [])

    dist = g.distances()
    order = sorted(f.support, key=lambda v: (f.powers[v], v))
    powers = [f.powers[v] for v in order]
    trees = [_ball_tree(g, v, f.powers[v]) for v in order]
    m = len(order)

    # phase 1: no tree may contain another broadcaster's root
    for l in range(m):
        for i in range(m):
            if i == l:
                continue
            vi = order[i]
            if vi not in trees[l]:
                continue
            if i < l:
                # earlier root captured by a later, more powerful tree:
                # only possible for optimal witnesses when the dangling
                # subtree is strictly shallower than the earlier power
                b = trees[l].subtree_depth(vi)
                if powers[i] <= b:
                    raise NotOptimalError(
                        "witness admits a cheaper broadcast; optimality certificate failed"
                    )
            trees[l].delete_subtree(vi)

    # phase 2: resolve remaining overlaps against earlier trees, layer by layer
    owner: dict[int, int] = {}
    for i in range(m):
        ti = trees[i]
        while True:
            shared = [x for x in ti.vertices() if x in owner]
            if not shared:
                break
            j = min(ti.depth[x] for x in shared)
            layer = sorted(x for x in shared if ti.depth[x] == j)
            for x in layer:
                if x not in ti:
                    continue
                r = owner.get(x)
                if r is None:
                    continue
                tr = trees[r]
                d_r = tr.subtree_depth(x)
                d_i = ti.subtree_depth(x)
                if d_r <= d_i:
                    for y in tr.delete_subtree(x):
                        del owner[y]
                else:
                    ti.delete_subtree(x)
        for x in ti.vertices():
            owner[x] = i

    if len(owner) != g.n:
        raise RuntimeError(
            "extraction failed to partition the vertices; this indicates a bug"
        )
    for i, tree in enumerate(trees):
        for x in tree.vertices():
            if tree.depth[x] > powers[i]:
                raise RuntimeError("pruned tree exceeds its broadcaster's power")

    # phase 3: connect the disjoint trees with the smallest graph edges
    tree_edges: list[tuple[int, int]] = []
    for tree in trees:
        tree_edges.extend(tree.edges())
    parent = list(range(g.n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in tree_edges:
        parent[find(u)] = find(v)
    chosen = [tuple(sorted(e)) for e in tree_edges]
    for u, v in g.sorted_edges():
        if find(u) != find(v):
            parent[find(u)] = find(v)
            chosen.append((u, v))
    if len(chosen) != g.n - 1:
        raise RuntimeError("extraction did not produce a spanning tree")
    result = Graph(g.n, chosen)
    if not result.is_connected():
        raise RuntimeError("extraction produced a disconnected edge set")
    if not is_dominating(result, f):
        raise RuntimeError("witness stopped dominating on the extracted tree")
    return result
