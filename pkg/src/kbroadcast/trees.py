"""Tree generators, twin-leaf reduction, and exhaustive free-tree enumeration.

The enumeration produces exactly one representative per isomorphism class
(rooted level-sequence generation deduplicated by a centroid-rooted
canonical form).  Its independent test oracle, ``count_free_trees_bruteforce``,
walks every labeled tree through its sequence encoding and deduplicates
with a separately implemented center-rooted canonical string, so the two
sides share no code path.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product
from typing import Iterator

from .graph import Graph


def _require_tree(t: Graph, min_order: int = 1) -> None:
    if t.n < min_order:
        raise ValueError(f"tree of order >= {min_order} required, got {t.n}")
    if not t.is_tree():
        raise ValueError("input graph is not a tree")


def twin_free_reduction(t: Graph) -> Graph:
    """Delete all but the smallest-id leaf of every twin-leaf class.

    Twin leaves share a support vertex; removing the surplus ones preserves
    both the radius and the minimum dominating k-broadcast cost.  Vertices
    of the result are relabeled densely in increasing old-id order.
    """
    _require_tree(t, min_order=3)
    by_support: dict[int, list[int]] = {}
    for v in range(t.n):
        if t.degree(v) == 1:
            by_support.setdefault(t.adj[v][0], []).append(v)
    drop: set[int] = set()
    for leaves in by_support.values():
        drop.update(sorted(leaves)[1:])
    keep = [v for v in range(t.n) if v not in drop]
    remap = {old: new for new, old in enumerate(keep)}
    edges = [
        (remap[u], remap[v]) for u, v in t.edges if u not in drop and v not in drop
    ]
    return Graph(len(keep), edges)


def tight_example_tree(k: int) -> Graph:
    """The bound-attaining tree for cap ``k``: a spine of ``2k+1`` vertices
    with a pendant leaf at the first, the last, and every even spine
    position.  Order ``3k+3``, radius ``k+1``, optimum ``k+2``.

    Spine vertices get ids ``0..2k``; leaves follow in spine order.
    """
    if k < 3:
        raise ValueError(f"family requires k >= 3, got {k}")
    spine = 2 * k + 1
    edges = [(i, i + 1) for i in range(spine - 1)]
    # pendant positions: first, every even 1-based position, last
    attach = [0] + list(range(1, spine - 1, 2)) + [spine - 1]
    for t, a in enumerate(attach):
        edges.append((a, spine + t))
    return Graph(spine + len(attach), edges)


def make_path(n: int) -> Graph:
    if n < 1:
        raise ValueError("path needs at least 1 vertex")
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def make_spider(legs: tuple[int, ...]) -> Graph:
    """Paths of the given lengths glued at a common center (vertex 0)."""
    if not legs or any(leg < 1 for leg in legs):
        raise ValueError("spider needs legs of length >= 1")
    edges = []
    nxt = 1
    for leg in legs:
        prev = 0
        for _ in range(leg):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
    return Graph(nxt, edges)


def _sequence_to_edges(seq: tuple[int, ...], n: int) -> list[tuple[int, int]]:
    """Decode a length ``n-2`` sequence over 0..n-1 into a labeled tree."""
    degree = [1] * n
    for v in seq:
        degree[v] += 1
    edges = []
    # pointer scan: attach the smallest-id current leaf to each symbol
    ptr = 0
    leaf = -1
    for v in seq:
        if leaf == -1:
            while degree[ptr] != 1:
                ptr += 1
            leaf = ptr
        edges.append((leaf, v))
        degree[leaf] -= 1
        degree[v] -= 1
        if degree[v] == 1 and v < ptr:
            leaf = v
        else:
            leaf = -1
    last = [v for v in range(n) if degree[v] == 1]
    edges.append((last[0], last[1]))
    return edges


def random_tree(n: int, seed: int) -> Graph:
    """Uniform random labeled tree, decoded from a seeded random sequence."""
    if n < 1:
        raise ValueError("tree needs at least 1 vertex")
    if n == 1:
        return Graph(1, [])
    if n == 2:
        return Graph(2, [(0, 1)])
    rng = random.Random(seed)
    seq = tuple(rng.randrange(n) for _ in range(n - 2))
    return Graph(n, _sequence_to_edges(seq, n))


@dataclass(frozen=True)
class TreeFamilySpec:
    """Parameters for a generated tree family."""

    family: str  # "path" | "spider" | "random" | "extremal_tk"
    n: int | None = None
    legs: tuple[int, ...] | None = None
    seed: int | None = None
    k: int | None = None


def make_tree(spec: TreeFamilySpec) -> Graph:
    if spec.family == "path":
        if spec.n is None:
            raise ValueError("path family needs n")
        return make_path(spec.n)
    if spec.family == "spider":
        if not spec.legs:
            raise ValueError("spider family needs legs")
        return make_spider(spec.legs)
    if spec.family == "random":
        if spec.n is None or spec.seed is None:
            raise ValueError("random family needs n and seed")
        return random_tree(spec.n, spec.seed)
    if spec.family == "extremal_tk":
        if spec.k is None:
            raise ValueError("extremal family needs k")
        return tight_example_tree(spec.k)
    raise ValueError(f"unknown tree family {spec.family!r}")


# -- exhaustive enumeration of non-isomorphic trees ---------------------------

_ENUM_GUARD = 16


def _rooted_level_sequences(n: int) -> Iterator[list[int]]:
    """All canonical level sequences of rooted trees on ``n`` vertices
    (root at level 1), by the constant-time successor rule."""
    if n == 1:
        yield [1]
        return
    s = list(range(1, n + 1))
    while True:
        yield s
        p = max((i for i in range(n) if s[i] > 2), default=None)
        if p is None:
            return
        q = next(i for i in range(p - 1, -1, -1) if s[i] == s[p] - 1)
        t = s[:p]
        width = p - q
        while len(t) < n:
            t.append(t[len(t) - width])
        s = t


def _level_sequence_to_adj(seq: list[int]) -> list[list[int]]:
    n = len(seq)
    adj: list[list[int]] = [[] for _ in range(n)]
    last_at_level = {seq[0]: 0}
    for i in range(1, n):
        parent = last_at_level[seq[i] - 1]
        adj[parent].append(i)
        adj[i].append(parent)
        last_at_level[seq[i]] = i
    return adj


def _centroids(adj: list[list[int]]) -> list[int]:
    n = len(adj)
    if n == 1:
        return [0]
    size = [1] * n
    order: list[int] = []
    parent = [-1] * n
    stack = [0]
    seen = [False] * n
    seen[0] = True
    while stack:
        v = stack.pop()
        order.append(v)
        for w in adj[v]:
            if not seen[w]:
                seen[w] = True
                parent[w] = v
                stack.append(w)
    for v in reversed(order):
        if parent[v] != -1:
            size[parent[v]] += size[v]
    best: list[int] = []
    best_weight = n
    for v in range(n):
        weight = n - size[v]
        for w in adj[v]:
            if w != parent[v]:
                weight = max(weight, size[w])
        if weight < best_weight:
            best_weight = weight
            best = [v]
        elif weight == best_weight:
            best.append(v)
    return best


def _rooted_shape(adj: list[list[int]], root: int) -> tuple:
    """Nested-tuple canonical form of the tree rooted at ``root``."""

    def rec(v: int, parent: int) -> tuple:
        return tuple(sorted(rec(w, v) for w in adj[v] if w != parent))

    return rec(root, -1)


def canonical_form(t: Graph) -> tuple:
    """Isomorphism-complete canonical form of a free tree."""
    _require_tree(t)
    adj = [list(t.adj[v]) for v in range(t.n)]
    return min(_rooted_shape(adj, c) for c in _centroids(adj))


def free_trees(n: int) -> Iterator[Graph]:
    """Exactly one representative per isomorphism class of trees on ``n``
    vertices, in a deterministic order."""
    if not (1 <= n <= _ENUM_GUARD):
        raise ValueError(f"n must be in 1..{_ENUM_GUARD}, got {n}")
    seen: set[tuple] = set()
    for seq in _rooted_level_sequences(n):
        adj = _level_sequence_to_adj(seq)
        key = min(_rooted_shape(adj, c) for c in _centroids(adj))
        if key in seen:
            continue
        seen.add(key)
        edges = [(v, w) for v in range(n) for w in adj[v] if v < w]
        yield Graph(n, edges)


# -- brute-force oracle (independent of the generator above) -----------------


def _tree_bfs_farthest(adj: list[list[int]], start: int) -> tuple[int, list[int]]:
    """Farthest vertex from ``start`` in a tree, plus the BFS parent array."""
    parent = [-2] * len(adj)
    parent[start] = -1
    queue = [start]
    head = 0
    last = start
    while head < len(queue):
        v = queue[head]
        head += 1
        last = v
        for w in adj[v]:
            if parent[w] == -2:
                parent[w] = v
                queue.append(w)
    return last, parent


def _center_string(adj: list[list[int]], n: int) -> str:
    """Canonical parenthesis string rooted at the metric center(s).

    Centers come from the midpoint of a diameter path (two BFS sweeps, a
    tree-specific fact).  Kept deliberately separate from the
    centroid/tuple canonicalization so enumeration tests compare two
    independent implementations.
    """
    if n == 1:
        return "()"
    far, _ = _tree_bfs_farthest(adj, 0)
    other, parent = _tree_bfs_farthest(adj, far)
    path = [other]
    while parent[path[-1]] != -1:
        path.append(parent[path[-1]])

    def encode(v: int, par: int) -> str:
        parts = [encode(w, v) for w in adj[v] if w != par]
        parts.sort()
        return "(" + "".join(parts) + ")"

    length = len(path)
    if length % 2 == 1:
        return encode(path[length // 2], -1)
    # two centers: encode each half of the split center edge once; the extra
    # outer pair keeps this shape disjoint from single-center encodings
    c1, c2 = path[length // 2 - 1], path[length // 2]
    halves = [encode(c1, c2), encode(c2, c1)]
    halves.sort()
    return "(" + halves[0] + halves[1] + ")"


def count_free_trees_bruteforce(n: int) -> int:
    """Number of non-isomorphic trees on ``n`` vertices by decoding every
    length ``n-2`` sequence over 0..n-1 and deduplicating canonical strings.

    Exhaustive over all ``n^(n-2)`` labeled trees; use only for small ``n``.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if n <= 2:
        return 1
    shapes: set[str] = set()
    add = shapes.add
    vertex_range = range(n)
    for seq in product(vertex_range, repeat=n - 2):
        # inlined sequence decode straight into adjacency lists
        degree = [1] * n
        for v in seq:
            degree[v] += 1
        adj: list[list[int]] = [[] for _ in vertex_range]
        ptr = 0
        leaf = -1
        for v in seq:
            if leaf == -1:
                while degree[ptr] != 1:
                    ptr += 1
                leaf = ptr
            adj[leaf].append(v)
            adj[v].append(leaf)
            degree[leaf] -= 1
            degree[v] -= 1
            if degree[v] == 1 and v < ptr:
                leaf = v
            else:
                leaf = -1
        u = next(i for i in vertex_range if degree[i] == 1)
        w = next(i for i in range(u + 1, n) if degree[i] == 1)
        adj[u].append(w)
        adj[w].append(u)
        add(_center_string(adj, n))
    return len(shapes)
