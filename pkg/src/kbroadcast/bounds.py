"""Closed-form upper bounds and exhaustive audits over tree corpora.

All ceiling arithmetic is exact integer division; nothing here touches
floating point, so tightness checks are reliable for arbitrarily large
orders.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .graph import Graph, compute_metrics, format_graph
from .solver import solve, solve_bruteforce
from .trees import free_trees


def ceildiv(a: int, b: int) -> int:
    """Exact ceiling of a/b for integers, b > 0."""
    if b <= 0:
        raise ValueError("denominator must be positive")
    return -(-a // b)


def limited_cap_bound(n: int, k: int) -> int:
    """The mid-regime bound: ceil((k+2)/(k+1) * n/3), exactly."""
    return ceildiv((k + 2) * n, 3 * (k + 1))


def upper_bound(n: int, k: int, r: int) -> int:
    """Three-case closed-form bound on the dominating k-broadcast cost.

    ``k >= r`` gives ceil(n/3); otherwise ``k == 1`` gives floor(n/2) and
    ``1 < k < r`` the mid-regime value.  When both the ``k=1`` and the
    ``k >= r`` cases apply, the latter wins: it is valid whenever the cap
    reaches the radius and is the tighter of the two.
    """
    if n < 1 or k < 1 or r < 0 or r > n:
        raise ValueError(f"inconsistent arguments n={n}, k={k}, r={r}")
    if k >= r:
        return ceildiv(n, 3)
    if k == 1:
        return n // 2
    return limited_cap_bound(n, k)


def ceiling_inequality_holds(a: int, b: int, c: int, d: int, n: int) -> bool:
    """Evaluate ``a + ceil(c(n-b)/d) <= ceil(cn/d)`` exactly.

    Preconditions: b, d positive and a/b <= c/d.  Under them the inequality
    always holds, so this doubles as a property-test target.
    """
    if b <= 0 or d <= 0:
        raise ValueError("b and d must be positive")
    if a * d > c * b:
        raise ValueError("precondition a/b <= c/d violated")
    return a + ceildiv(c * (n - b), d) <= ceildiv(c * n, d)


# -- reports ------------------------------------------------------------------


@dataclass(frozen=True)
class BoundRow:
    instance: str
    n: int
    radius: int
    k: int
    value: int
    bound: int
    tight: bool
    graph_text: str

    def to_json(self) -> str:
        return json.dumps(
            {
                "instance": self.instance,
                "n": self.n,
                "radius": self.radius,
                "k": self.k,
                "value": self.value,
                "bound": self.bound,
                "tight": self.tight,
            }
        )


@dataclass
class BoundReport:
    k: int
    max_n: int
    rows: list[BoundRow] = field(default_factory=list)
    violations: list[str] = field(default_factory=list)
    #: trees whose radius does not exceed k, checked against ceil(n/3)
    stabilized_checked: int = 0
    stabilized_violations: list[str] = field(default_factory=list)

    @property
    def tight_instances(self) -> list[BoundRow]:
        return [row for row in self.rows if row.tight]

    @property
    def max_ratio(self) -> float:
        return max((row.value / row.bound for row in self.rows), default=0.0)

    def to_jsonl(self) -> str:
        lines = [row.to_json() for row in self.rows]
        lines.append(
            json.dumps(
                {
                    "summary": True,
                    "k": self.k,
                    "max_n": self.max_n,
                    "instances": len(self.rows),
                    "violations": len(self.violations),
                    "tight": [row.instance for row in self.tight_instances],
                    "max_ratio": self.max_ratio,
                    "stabilized_checked": self.stabilized_checked,
                    "stabilized_violations": len(self.stabilized_violations),
                }
            )
        )
        return "\n".join(lines) + "\n"

    def to_table(self) -> str:
        header = f"{'instance':<12}{'n':>4}{'rad':>5}{'k':>4}{'value':>7}{'bound':>7}  tight"
        lines = [header, "-" * len(header)]
        for row in self.rows:
            lines.append(
                f"{row.instance:<12}{row.n:>4}{row.radius:>5}{row.k:>4}"
                f"{row.value:>7}{row.bound:>7}  {'*' if row.tight else ''}"
            )
        lines.append(
            f"{len(self.rows)} instances, {len(self.violations)} violations, "
            f"{len(self.tight_instances)} tight, max ratio {self.max_ratio:.4f}"
        )
        lines.append(
            f"{self.stabilized_checked} low-radius trees checked against ceil(n/3), "
            f"{len(self.stabilized_violations)} violations"
        )
        return "\n".join(lines) + "\n"


def _audit_one_tree(task: tuple[int, int, int, list[tuple[int, int]]]):
    n, idx, k, edges = task
    tree = Graph(n, edges)
    radius = compute_metrics(tree).radius
    value = solve(tree, k).value
    return n, idx, radius, value, format_graph(tree)


def audit_tree_bound(max_n: int, k: int, workers: int = 1) -> BoundReport:
    """Solve every non-isomorphic tree of order <= max_n exactly and audit
    the closed-form bound.

    Trees with radius > k form the report rows, checked against the
    mid-regime bound; trees with radius <= k are checked against ceil(n/3)
    separately, mirroring the case split of the closed form.  With
    ``workers > 1`` the per-tree solves fan out to a process pool; rows are
    assembled in instance order either way.
    """
    if k < 3:
        raise ValueError(f"tree bound audit requires k >= 3, got {k}")
    tasks = [
        (n, idx, k, sorted(tree.edges))
        for n in range(1, max_n + 1)
        for idx, tree in enumerate(free_trees(n))
    ]
    if workers > 1:
        from multiprocessing import Pool

        with Pool(workers) as pool:
            results = pool.map(_audit_one_tree, tasks, chunksize=16)
    else:
        results = [_audit_one_tree(task) for task in tasks]
    results.sort(key=lambda item: (item[0], item[1]))
    report = BoundReport(k=k, max_n=max_n)
    for n, idx, radius, value, graph_text in results:
        instance = f"n{n}t{idx}"
        if radius > k:
            bound = limited_cap_bound(n, k)
            report.rows.append(
                BoundRow(
                    instance=instance,
                    n=n,
                    radius=radius,
                    k=k,
                    value=value,
                    bound=bound,
                    tight=value == bound,
                    graph_text=graph_text,
                )
            )
            if value > bound:
                report.violations.append(instance)
        else:
            report.stabilized_checked += 1
            if value > ceildiv(n, 3):
                report.stabilized_violations.append(instance)
    return report


# -- chain audit -----------------------------------------------------------------


@dataclass(frozen=True)
class ChainReport:
    chain: tuple[int, ...]
    radius: int
    monotone: bool
    stabilized: bool
    domination_number: int
    broadcast_number: int

    @property
    def ok(self) -> bool:
        return self.monotone and self.stabilized

    def to_json(self) -> str:
        return json.dumps(
            {
                "chain": list(self.chain),
                "radius": self.radius,
                "monotone": self.monotone,
                "stabilized": self.stabilized,
                "domination_number": self.domination_number,
                "broadcast_number": self.broadcast_number,
            }
        )


def audit_chain(g: Graph, oracle_stabilization_max_n: int = 16) -> ChainReport:
    """Compute the full cost chain for k = 1..radius and audit it.

    Monotonicity is checked on the chain itself.  Stabilization (the value
    at cap radius+1 equals the value at the radius) is checked with an
    unclamped search, falling back to the exhaustive oracle on very small
    graphs, so the radius clamp inside the default solver cannot mask a
    failure.
    """
    g.require_connected("chain audit")
    met = compute_metrics(g)
    radius = max(met.radius, 1)
    chain = tuple(solve(g, k).value for k in range(1, radius + 1))
    monotone = all(chain[i] >= chain[i + 1] for i in range(len(chain) - 1))
    if g.n <= min(oracle_stabilization_max_n, 10):
        beyond = solve_bruteforce(g, radius + 1).value
    else:
        beyond = solve(g, radius + 1, clamp=False).value
    stabilized = beyond == chain[-1]
    return ChainReport(
        chain=chain,
        radius=radius,
        monotone=monotone,
        stabilized=stabilized,
        domination_number=chain[0],
        broadcast_number=chain[-1],
    )
