"""Dominating k-broadcast semantics and two exact solvers.

A broadcast assigns every vertex a power in ``{0..k}``; it dominates the
graph when every vertex lies within distance ``p`` of some vertex with
power ``p >= 1``.  ``solve_bruteforce`` is an iterative-deepening
exhaustive oracle; ``solve`` is a branch-and-bound search that must agree
with it everywhere (and is tested to).
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

from .graph import Graph, compute_metrics, iter_vertices


class GuardExceeded(RuntimeError):
    """A configured resource guard (size, node or time budget) was exceeded.

    Carries partial progress: nodes expanded and the best upper bound found
    so far (None when no feasible solution was seen under a cutoff)."""

    def __init__(self, message: str, *, nodes: int | None = None,
                 best_cost: int | None = None):
        super().__init__(message)
        self.nodes = nodes
        self.best_cost = best_cost


class NotDominatingError(ValueError):
    """The broadcast was required to dominate the graph but does not."""


class NotOptimalError(ValueError):
    """The broadcast was required to be optimal but is not."""


@dataclass(frozen=True)
class Broadcast:
    """A power assignment ``vertex -> {0..k}`` with cap ``k``."""

    k: int
    powers: tuple[int, ...]

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"power cap must be >= 1, got {self.k}")
        for v, p in enumerate(self.powers):
            if not (0 <= p <= self.k):
                raise ValueError(f"power {p} at vertex {v} outside 0..{self.k}")

    @property
    def cost(self) -> int:
        return sum(self.powers)

    @property
    def support(self) -> tuple[int, ...]:
        """Vertices with positive power, ascending."""
        return tuple(v for v, p in enumerate(self.powers) if p > 0)

    def with_powers(self, updates: dict[int, int]) -> "Broadcast":
        new = list(self.powers)
        for v, p in updates.items():
            new[v] = p
        return Broadcast(self.k, tuple(new))


@dataclass(frozen=True)
class SolveStats:
    nodes: int
    method: str  # "bnb" or "oracle"
    elapsed: float


@dataclass(frozen=True)
class SolveResult:
    value: int
    witness: Broadcast
    stats: SolveStats


def _check_domain(g: Graph, f: Broadcast) -> None:
    if len(f.powers) != g.n:
        raise ValueError(
            f"broadcast defined on {len(f.powers)} vertices, graph has {g.n}"
        )


def is_dominating(g: Graph, f: Broadcast) -> bool:
    """True iff every vertex is within distance ``f(v)`` of some positive ``v``.

    Well-defined on disconnected graphs too: cross-component distances are
    infinite, so every component must host its own coverage.
    """
    _check_domain(g, f)
    dist = g.distances()
    support = [(v, p) for v, p in enumerate(f.powers) if p > 0]
    return all(
        any(dist[u][v] <= p for v, p in support) for u in range(g.n)
    )


def is_efficient(g: Graph, f: Broadcast) -> bool:
    """True iff each vertex is covered by exactly one broadcaster's ball."""
    _check_domain(g, f)
    if not is_dominating(g, f):
        raise NotDominatingError("efficiency is defined for dominating broadcasts")
    dist = g.distances()
    support = [(v, p) for v, p in enumerate(f.powers) if p > 0]
    return all(
        sum(1 for v, p in support if dist[u][v] <= p) == 1 for u in range(g.n)
    )


# -- ball masks -------------------------------------------------------------


def _ball_masks(g: Graph, cap: int) -> list[list[int]]:
    """``masks[v][p]`` = bitmask of vertices within distance ``p`` of ``v``,
    for ``p`` up to ``min(cap, ecc(v))``.  Cached on the graph."""
    cached = g._ball_cache.get(cap)
    if cached is not None:
        return cached
    dist = g.distances()
    ecc = g.eccentricities()
    masks: list[list[int]] = []
    for v in range(g.n):
        top = min(cap, int(ecc[v]))
        row = [0] * (top + 1)
        for u in range(g.n):
            d = dist[v][u]
            if d <= top:
                for p in range(int(d), top + 1):
                    row[p] |= 1 << u
        masks.append(row)
    g._ball_cache[cap] = masks
    return masks


# -- exhaustive oracle --------------------------------------------------------


def _supports(n: int, max_size: int):
    """All non-empty subsets of 0..n-1 with at most max_size elements, in
    lexicographic order of their ascending tuples."""

    def rec(prefix: tuple[int, ...], start: int):
        for v in range(start, n):
            cur = prefix + (v,)
            yield cur
            if len(cur) < max_size:
                yield from rec(cur, v + 1)

    yield from rec((), 0)


def _power_splits(slots: int, total: int, k: int):
    """All tuples of ``slots`` powers in 1..k summing to ``total``, in
    lexicographic order."""
    if slots == 1:
        if 1 <= total <= k:
            yield (total,)
        return
    hi = min(k, total - (slots - 1))
    for first in range(1, hi + 1):
        for rest in _power_splits(slots - 1, total - first, k):
            yield (first,) + rest


def solve_bruteforce(g: Graph, k: int, max_n: int = 16) -> SolveResult:
    """Exhaustive iterative deepening on total cost.

    Enumerates, for cost c = 1, 2, ..., every support set (lexicographic)
    and every power split (lexicographic), and returns the first dominating
    assignment found, which is therefore a lexicographically-least optimal
    witness.  Intended for small instances only.
    """
    g.require_connected("exhaustive search")
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if g.n > max_n:
        raise GuardExceeded(f"oracle guard: n={g.n} exceeds max_n={max_n}")
    started = time.perf_counter()
    n = g.n
    full = (1 << n) - 1
    masks = _ball_masks(g, k)
    checked = 0
    for cost in range(1, n + 1):
        for support in _supports(n, cost):
            # a support vertex must reach itself; powers are capped by k
            for powers in _power_splits(len(support), cost, k):
                checked += 1
                covered = 0
                for v, p in zip(support, powers):
                    row = masks[v]
                    covered |= row[p if p < len(row) else len(row) - 1]
                if covered == full:
                    values = [0] * n
                    for v, p in zip(support, powers):
                        values[v] = p
                    witness = Broadcast(k, tuple(values))
                    return SolveResult(
                        value=cost,
                        witness=witness,
                        stats=SolveStats(checked, "oracle", time.perf_counter() - started),
                    )
    raise AssertionError("all-ones assignment dominates; unreachable")


# -- branch and bound ---------------------------------------------------------


def _greedy_cover(
    n: int, full: int, pairs: list[tuple[int, int, int]]
) -> tuple[int, dict[int, int]]:
    """Greedy feasible cover: repeatedly take the (vertex, power) ball with
    the best new-coverage per unit cost; ties prefer smaller power, then
    smaller vertex id.  Raising an already-chosen vertex's power counts
    only the increase.  Returns (cost, assignment)."""
    covered = 0
    assignment: dict[int, int] = {}
    cost = 0
    while covered != full:
        best_key = None
        best = None
        for v, p, mask in pairs:
            delta = p - assignment.get(v, 0)
            if delta <= 0:
                continue
            new = (mask & ~covered).bit_count()
            if new == 0:
                continue
            key = (new / delta, -p, -v)
            if best_key is None or key > best_key:
                best_key = key
                best = (v, p, mask, delta)
        v, p, mask, delta = best
        assignment[v] = p
        covered |= mask
        cost += delta
    return cost, assignment


def _bipartition_cover(g: Graph) -> dict[int, int]:
    """Power 1 on the smaller BFS-tree bipartition class.

    Every vertex outside the class has a tree neighbor inside it, so this
    always dominates and costs at most floor(n/2) for n >= 2, realizing the
    classical cap constructively."""
    depth = g.bfs_distances(0)
    even = [v for v in range(g.n) if int(depth[v]) % 2 == 0]
    odd = [v for v in range(g.n) if int(depth[v]) % 2 == 1]
    chosen = odd if len(odd) < len(even) else even if len(even) < len(odd) else odd
    return {v: 1 for v in chosen}


class _LpBound:
    """Admissible lower bound from the LP relaxation of the covering problem.

    Built lazily; results are cached per uncovered-vertex bitmask.  The
    relaxation may use every (vertex, power) pair, which can only lower the
    optimum, so the bound stays admissible for any branch.
    """

    def __init__(self, n: int, pairs: list[tuple[int, int, int]]):
        import numpy as np

        self._np = np
        self.n = n
        self.costs = np.array([p for _, p, _ in pairs], dtype=float)
        cover = np.zeros((n, len(pairs)), dtype=float)
        for j, (_, _, mask) in enumerate(pairs):
            for u in iter_vertices(mask):
                cover[u, j] = 1.0
        self.cover = cover
        self.cache: dict[int, int] = {}

    def bound(self, uncovered: int) -> int:
        hit = self.cache.get(uncovered)
        if hit is not None:
            return hit
        from scipy.optimize import linprog

        rows = list(iter_vertices(uncovered))
        res = linprog(
            self.costs,
            A_ub=-self.cover[rows, :],
            b_ub=-self._np.ones(len(rows)),
            bounds=(0, None),
            method="highs",
        )
        if res.status != 0:  # pragma: no cover - covering LP is always feasible
            value = 0
        else:
            # shrink by a tolerance before rounding up so numerical noise
            # can only weaken the bound, never overshoot the true optimum
            value = max(0, math.ceil(res.fun - 1e-6))
        self.cache[uncovered] = value
        return value


def solve(
    g: Graph,
    k: int,
    *,
    cutoff: int | None = None,
    max_nodes: int | None = None,
    time_budget: float | None = None,
    lp_bound: bool = True,
    clamp: bool = True,
) -> SolveResult | None:
    """Exact branch-and-bound solver.

    Branches on an uncovered vertex farthest from the covered set, over all
    (vertex, power) balls that reach it.  The incumbent starts from a greedy
    cover, capped by the constructive floor(n/2) fallback; a node is pruned
    when its cost plus an admissible lower bound (greedy packing of
    uncovered vertices pairwise more than ``2k`` apart, strengthened by an
    LP relaxation when that does not already prune) cannot beat the
    incumbent.

    With ``cutoff`` given, searches only for solutions of cost < cutoff and
    returns None when there is none.  ``max_nodes`` and ``time_budget``
    (seconds) raise GuardExceeded carrying the partial progress rather than
    silently returning an inexact answer.  ``k`` above the radius is clamped
    for the search (never useful); pass ``clamp=False`` to disable, e.g. to
    test that very fact.
    """
    g.require_connected("solve")
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    started = time.perf_counter()
    n = g.n
    if n == 1:
        if cutoff is not None and cutoff <= 1:
            return None
        witness = Broadcast(k, (1,))
        return SolveResult(1, witness, SolveStats(0, "bnb", time.perf_counter() - started))

    met = compute_metrics(g)
    k_cap = min(k, met.radius) if clamp else k
    k_cap = max(k_cap, 1)
    dist = g.distances()
    full = (1 << n) - 1
    masks = _ball_masks(g, k_cap)

    # candidate (vertex, power, ball mask) choices, powers capped by ecc
    raw_pairs: list[tuple[int, int, int]] = []
    for v in range(n):
        row = masks[v]
        for p in range(1, len(row)):
            raw_pairs.append((v, p, row[p]))

    # drop globally dominated choices: another ball at most as expensive
    # covering at least as much (ties kept for the smallest vertex id)
    pairs: list[tuple[int, int, int]] = []
    for v, p, mask in raw_pairs:
        dominated = False
        for v2, p2, mask2 in raw_pairs:
            if (v2, p2) == (v, p):
                continue
            if p2 <= p and (mask2 | mask) == mask2:
                if p2 < p or mask2 != mask or v2 < v:
                    dominated = True
                    break
        if not dominated:
            pairs.append((v, p, mask))

    # vertices within 2*k_cap, for the packing bound
    near: list[int] = []
    for u in range(n):
        m = 0
        for w in range(n):
            if dist[u][w] <= 2 * k_cap:
                m |= 1 << w
        near.append(m)

    def packing_bound(uncovered: int) -> int:
        count = 0
        rem = uncovered
        while rem:
            u = (rem & -rem).bit_length() - 1
            count += 1
            rem &= ~near[u]
        return count

    lp = _LpBound(n, pairs) if lp_bound else None

    greedy_cost, greedy_assignment = _greedy_cover(n, full, pairs)
    fallback = _bipartition_cover(g)
    if len(fallback) < greedy_cost:
        greedy_cost, greedy_assignment = len(fallback), fallback
    if cutoff is not None and greedy_cost >= cutoff:
        best_cost = cutoff
        best_assignment: dict[int, int] | None = None
    else:
        best_cost = greedy_cost
        best_assignment = greedy_assignment

    # pairs covering each vertex, for branching
    coverers: list[list[tuple[int, int, int]]] = [[] for _ in range(n)]
    for v, p, mask in pairs:
        for u in iter_vertices(mask):
            coverers[u].append((v, p, mask))

    nodes = 0

    def branch_vertex(uncovered: int, assignment: list[tuple[int, int]]) -> int:
        # farthest uncovered vertex from the covered set; d(u, ball(v, p))
        # equals max(0, d(u, v) - p), so the assignment suffices
        best_u = -1
        best_d = -1.0
        for u in iter_vertices(uncovered):
            if assignment:
                d = min(max(0.0, dist[u][v] - p) for v, p in assignment)
            else:
                d = float("inf")
            if d > best_d:
                best_d = d
                best_u = u
        return best_u

    def dfs(covered: int, cost: int, assigned_mask: int, assignment: list[tuple[int, int]]):
        nonlocal nodes, best_cost, best_assignment
        nodes += 1
        if max_nodes is not None and nodes > max_nodes:
            raise GuardExceeded(
                f"node budget {max_nodes} exceeded",
                nodes=nodes,
                best_cost=best_cost if best_assignment is not None else None,
            )
        if (
            time_budget is not None
            and nodes % 64 == 0
            and time.perf_counter() - started > time_budget
        ):
            raise GuardExceeded(
                f"time budget {time_budget}s exceeded",
                nodes=nodes,
                best_cost=best_cost if best_assignment is not None else None,
            )
        uncovered = full & ~covered
        lb = packing_bound(uncovered)
        if cost + lb >= best_cost:
            return
        if lp is not None and uncovered.bit_count() >= 4:
            lb2 = lp.bound(uncovered)
            if cost + lb2 >= best_cost:
                return
        u = branch_vertex(uncovered, assignment)
        candidates = [
            (v, p, mask)
            for v, p, mask in coverers[u]
            if not (assigned_mask >> v) & 1
        ]
        candidates.sort(key=lambda t: (-(t[2] & ~covered).bit_count() / t[1], t[1], t[0]))
        for v, p, mask in candidates:
            child_cost = cost + p
            if child_cost >= best_cost:
                continue
            child_covered = covered | mask
            if child_covered == full:
                best_cost = child_cost
                best_assignment = dict(assignment + [(v, p)])
                continue
            assignment.append((v, p))
            dfs(child_covered, child_cost, assigned_mask | (1 << v), assignment)
            assignment.pop()

    dfs(0, 0, 0, [])

    elapsed = time.perf_counter() - started
    if best_assignment is None:
        return None
    values = [0] * n
    for v, p in best_assignment.items():
        values[v] = p
    witness = Broadcast(k, tuple(values))
    return SolveResult(best_cost, witness, SolveStats(nodes, "bnb", elapsed))


def domination_chain(g: Graph) -> list[int]:
    """Values of the minimum dominating k-broadcast cost for k = 1..radius."""
    g.require_connected("domination chain")
    met = compute_metrics(g)
    if met.radius < 1:
        raise ValueError("chain requires radius >= 1")
    return [solve(g, k).value for k in range(1, met.radius + 1)]


# -- witness post-processing ---------------------------------------------------


def normalize_leaf_zero(g: Graph, f: Broadcast) -> Broadcast:
    """Shift positive leaf powers onto their support vertices.

    Mirrors the exchange argument for optimal witnesses: a positive leaf's
    power moves to its (necessarily zero-valued) support without changing
    the cost, and coverage can only grow.  The input cost must equal the
    optimum for its cap; the result must dominate with value 0 on every
    leaf (except that on a 2-vertex graph one endpoint keeps the power).
    """
    g.require_connected("leaf normalization")
    _check_domain(g, f)
    opt = solve(g, f.k).value
    if f.cost != opt:
        raise NotOptimalError(f"cost {f.cost} differs from optimal value {opt}")
    powers = list(f.powers)
    while True:
        leaf = next(
            (
                v
                for v in range(g.n)
                if powers[v] > 0 and g.degree(v) == 1 and g.degree(g.adj[v][0]) > 1
            ),
            None,
        )
        if leaf is None:
            break
        support = g.adj[leaf][0]
        if powers[support] > 0:
            raise NotOptimalError(
                "positive leaf with positive support contradicts an optimal witness"
            )
        powers[support] = powers[leaf]
        powers[leaf] = 0
    result = Broadcast(f.k, tuple(powers))
    if not is_dominating(g, result):
        raise NotDominatingError("normalized broadcast does not dominate")
    return result


# -- witness JSON ---------------------------------------------------------------


def witness_to_json(result: SolveResult) -> dict:
    """Witness JSON object: positive powers only, sorted by vertex id."""
    f = result.witness
    return {
        "k": f.k,
        "value": result.value,
        "assignments": [
            {"vertex": v, "power": f.powers[v]} for v in f.support
        ],
    }


def witness_from_json(data: dict, n: int) -> Broadcast:
    """Rebuild a broadcast from witness JSON for a graph on ``n`` vertices."""
    values = [0] * n
    for item in data["assignments"]:
        values[item["vertex"]] = item["power"]
    f = Broadcast(data["k"], tuple(values))
    if f.cost != data["value"]:
        raise ValueError("witness value does not match the sum of powers")
    return f
