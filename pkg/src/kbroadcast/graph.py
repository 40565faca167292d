"""Undirected simple graphs with cached metric and structural primitives.

Vertices are dense integer ids ``0..n-1``.  Graphs are immutable after
construction; every derived quantity (adjacency, distance matrix, ball
masks) is cached on the instance and safe to share between workers.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator

#: Sentinel distance between vertices in different components.  Kept as a
#: proper infinity so it never silently participates in integer arithmetic.
UNREACHABLE = math.inf

Edge = tuple[int, int]


class GraphFormatError(ValueError):
    """Malformed graph file content (message carries the line number)."""


class NotConnectedError(ValueError):
    """An operation that requires a connected graph got a disconnected one."""


def _norm_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


class Graph:
    """Undirected simple graph on vertices ``0..n-1``.

    Self-loops and duplicate edges are rejected.  Connectivity is not an
    invariant of the type; operations that need it check it themselves.
    """

    __slots__ = ("n", "edges", "labels", "adj", "_dist", "_ecc", "_ball_cache")

    def __init__(
        self,
        n: int,
        edges: Iterable[Edge],
        labels: dict[int, str] | None = None,
    ):
        if n < 1:
            raise ValueError(f"vertex count must be positive, got {n}")
        seen: set[Edge] = set()
        adj: list[list[int]] = [[] for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) has endpoint out of range 0..{n - 1}")
            e = _norm_edge(u, v)
            if e in seen:
                raise ValueError(f"duplicate edge ({e[0]}, {e[1]})")
            seen.add(e)
            adj[u].append(v)
            adj[v].append(u)
        self.n = n
        self.edges = frozenset(seen)
        self.labels = dict(labels) if labels else {}
        self.adj: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(a)) for a in adj)
        self._dist: tuple[tuple[float, ...], ...] | None = None
        self._ecc: tuple[float, ...] | None = None
        self._ball_cache: dict = {}

    # -- basic queries ---------------------------------------------------

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return _norm_edge(u, v) in self.edges

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Graph) and self.n == other.n and self.edges == other.edges
        )

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.num_edges})"

    # -- metric primitives -----------------------------------------------

    def bfs_distances(self, source: int) -> list[float]:
        """Hop distances from ``source``; UNREACHABLE marks other components."""
        dist: list[float] = [UNREACHABLE] * self.n
        dist[source] = 0
        queue = deque([source])
        while queue:
            u = queue.popleft()
            du = dist[u]
            for w in self.adj[u]:
                if dist[w] is UNREACHABLE:
                    dist[w] = du + 1
                    queue.append(w)
        return dist

    def distances(self) -> tuple[tuple[float, ...], ...]:
        """All-pairs BFS hop distances, cached."""
        if self._dist is None:
            self._dist = tuple(tuple(self.bfs_distances(v)) for v in range(self.n))
        return self._dist

    def is_connected(self) -> bool:
        return UNREACHABLE not in self.distances()[0]

    def require_connected(self, what: str = "operation") -> None:
        if not self.is_connected():
            raise NotConnectedError(f"{what} requires a connected graph")

    def eccentricities(self) -> tuple[float, ...]:
        if self._ecc is None:
            self._ecc = tuple(max(row) for row in self.distances())
        return self._ecc

    def is_tree(self) -> bool:
        return self.is_connected() and self.num_edges == self.n - 1


# -- parsing and serialization -------------------------------------------


def parse_graph(text: str) -> Graph:
    """Parse the graph file format: ``n m`` header then ``m`` edge lines.

    ``#`` begins a comment line.  Vertex ids are 0-based.
    """
    header: tuple[int, int] | None = None
    edges: list[Edge] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if header is None:
            if len(fields) != 2:
                raise GraphFormatError(f"line {lineno}: expected header 'n m'")
            try:
                n, m = int(fields[0]), int(fields[1])
            except ValueError:
                raise GraphFormatError(f"line {lineno}: non-integer header") from None
            if n < 1 or m < 0:
                raise GraphFormatError(f"line {lineno}: invalid header counts")
            header = (n, m)
            continue
        if len(fields) != 2:
            raise GraphFormatError(f"line {lineno}: expected edge 'u v'")
        try:
            u, v = int(fields[0]), int(fields[1])
        except ValueError:
            raise GraphFormatError(f"line {lineno}: non-integer edge endpoint") from None
        edges.append((u, v))
    if header is None:
        raise GraphFormatError("line 1: empty input, expected header 'n m'")
    n, m = header
    if len(edges) != m:
        raise GraphFormatError(f"header declares {m} edges but {len(edges)} given")
    try:
        return Graph(n, edges)
    except ValueError as exc:
        raise GraphFormatError(str(exc)) from None


def format_graph(g: Graph) -> str:
    """Serialize to the graph file format; inverse of :func:`parse_graph`."""
    lines = [f"{g.n} {g.num_edges}"]
    lines.extend(f"{u} {v}" for u, v in g.sorted_edges())
    return "\n".join(lines) + "\n"


# -- small constructors ----------------------------------------------------


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def star_graph(leaves: int) -> Graph:
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


# -- metrics ----------------------------------------------------------------


@dataclass(frozen=True)
class Metrics:
    """Eccentricity profile of a connected graph."""

    eccentricity: tuple[int, ...]
    radius: int
    diameter: int
    centers: tuple[int, ...]
    antipodal_pair: tuple[int, int]


def compute_metrics(g: Graph) -> Metrics:
    """Radius, diameter, centers and one antipodal pair (smallest-id ties)."""
    g.require_connected("metrics")
    ecc = tuple(int(e) for e in g.eccentricities())
    radius = min(ecc)
    diameter = max(ecc)
    centers = tuple(v for v in range(g.n) if ecc[v] == radius)
    dist = g.distances()
    antipodal = min(
        (u, v)
        for u in range(g.n)
        for v in range(u, g.n)
        if dist[u][v] == diameter
    )
    return Metrics(ecc, radius, diameter, centers, antipodal)


# -- structural report -------------------------------------------------------


@dataclass(frozen=True)
class Structure:
    """Cut-edges, leaves, supports and twin-leaf classes of a connected graph."""

    cut_edges: tuple[Edge, ...]
    leaves: tuple[int, ...]
    support_vertices: tuple[int, ...]
    twin_leaf_classes: tuple[tuple[int, ...], ...]
    is_tree: bool


def bridges(g: Graph) -> list[Edge]:
    """All cut-edges, via an iterative lowlink DFS."""
    n = g.n
    order = [-1] * n
    low = [0] * n
    result: list[Edge] = []
    counter = 0
    for root in range(n):
        if order[root] != -1:
            continue
        # stack entries: (vertex, parent, iterator over neighbors)
        stack = [(root, -1, iter(g.adj[root]))]
        order[root] = low[root] = counter
        counter += 1
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for w in it:
                if w == parent:
                    # simple graph: exactly one edge back to the parent
                    continue
                if order[w] == -1:
                    order[w] = low[w] = counter
                    counter += 1
                    stack.append((w, v, iter(g.adj[w])))
                    advanced = True
                    break
                low[v] = min(low[v], order[w])
            if not advanced:
                stack.pop()
                if stack:
                    pv = stack[-1][0]
                    low[pv] = min(low[pv], low[v])
                    if low[v] > order[pv]:
                        result.append(_norm_edge(pv, v))
    return sorted(result)


def analyze_structure(g: Graph) -> Structure:
    """Structural report; requires a connected graph."""
    g.require_connected("structure analysis")
    leaves = tuple(v for v in range(g.n) if g.degree(v) == 1)
    by_support: dict[int, list[int]] = {}
    for leaf in leaves:
        by_support.setdefault(g.adj[leaf][0], []).append(leaf)
    supports = tuple(sorted(by_support))
    classes = tuple(tuple(sorted(by_support[s])) for s in supports)
    return Structure(
        cut_edges=tuple(bridges(g)),
        leaves=leaves,
        support_vertices=supports,
        twin_leaf_classes=classes,
        is_tree=g.num_edges == g.n - 1,
    )


def split_components(
    g: Graph, e: Edge
) -> tuple[tuple[Graph, dict[int, int]], tuple[Graph, dict[int, int]]]:
    """Split a connected graph at a cut-edge into its two components.

    Returns each component as a standalone graph together with its
    old-id -> new-id map.  The component containing the smaller endpoint
    of ``e`` comes first.
    """
    g.require_connected("component split")
    e = _norm_edge(*e)
    if e not in g.edges:
        raise ValueError(f"({e[0]}, {e[1]}) is not an edge of the graph")
    if e not in set(bridges(g)):
        raise ValueError(f"({e[0]}, {e[1]}) is not a cut-edge")

    def component(start: int) -> tuple[Graph, dict[int, int]]:
        seen = {start}
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for w in g.adj[u]:
                if _norm_edge(u, w) == e:
                    continue
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        old = sorted(seen)
        remap = {o: i for i, o in enumerate(old)}
        sub_edges = [
            (remap[u], remap[v])
            for u, v in g.edges
            if u in seen and v in seen and _norm_edge(u, v) != e
        ]
        return Graph(len(old), sub_edges), remap

    first = component(e[0])
    second = component(e[1])
    return first, second


def connected_subgraph_vertices(g: Graph, start: int) -> set[int]:
    """Vertex set of the component containing ``start``."""
    seen = {start}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for w in g.adj[u]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return seen


def iter_vertices(mask: int) -> Iterator[int]:
    """Vertices set in a bitmask, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low
