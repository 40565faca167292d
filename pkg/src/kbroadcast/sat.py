"""3-SAT reduction to the dominating k-broadcast decision problem.

Each variable becomes a gadget: vertices ``u_i`` and ``u'_i`` joined through
``k`` internally disjoint paths of ``k`` vertices whose far ends are leaves,
so every gadget leaf sits at distance exactly ``k`` from both literal
vertices and cannot be reached from outside.  Each clause becomes a path of
``k`` vertices whose head is adjacent to its three literal vertices.  The
formula is satisfiable iff the graph admits a dominating k-broadcast of
cost ``k * n_vars``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .graph import Graph
from .solver import Broadcast, NotDominatingError, is_dominating, solve


class CnfFormatError(ValueError):
    """Malformed DIMACS CNF content."""


class GadgetBudgetError(ValueError):
    """A broadcast within the cost threshold spreads a gadget's budget in a
    way the reduction forbids; signals a solver or construction bug."""


@dataclass(frozen=True)
class CnfFormula:
    """A 3-CNF formula; literals are DIMACS-style signed 1-based ints."""

    num_vars: int
    clauses: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        if self.num_vars < 0:
            raise CnfFormatError("negative variable count")
        for clause in self.clauses:
            if len(clause) != 3 or len(set(clause)) != 3:
                raise CnfFormatError(f"clause {clause} must have 3 distinct literals")
            for lit in clause:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise CnfFormatError(f"literal {lit} out of range")

    @property
    def num_clauses(self) -> int:
        return len(self.clauses)

    def evaluate(self, assignment: dict[int, bool]) -> bool:
        return all(
            any(assignment[abs(lit)] == (lit > 0) for lit in clause)
            for clause in self.clauses
        )

    def satisfying_assignment(self) -> dict[int, bool] | None:
        """Brute force over all 2^n assignments; None when unsatisfiable."""
        variables = list(range(1, self.num_vars + 1))
        for bits in product((False, True), repeat=self.num_vars):
            assignment = dict(zip(variables, bits))
            if self.evaluate(assignment):
                return assignment
        return None


def parse_dimacs(text: str) -> CnfFormula:
    """Parse DIMACS CNF; clauses are zero-terminated, 'c' lines are comments."""
    num_vars: int | None = None
    num_clauses: int | None = None
    clauses: list[tuple[int, ...]] = []
    current: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            fields = line.split()
            if len(fields) != 4 or fields[1] != "cnf":
                raise CnfFormatError(f"line {lineno}: bad header {line!r}")
            try:
                num_vars, num_clauses = int(fields[2]), int(fields[3])
            except ValueError:
                raise CnfFormatError(f"line {lineno}: non-integer header") from None
            continue
        if num_vars is None:
            raise CnfFormatError(f"line {lineno}: clause before 'p cnf' header")
        try:
            tokens = [int(tok) for tok in line.split()]
        except ValueError:
            raise CnfFormatError(f"line {lineno}: non-integer literal") from None
        for tok in tokens:
            if tok == 0:
                clauses.append(tuple(current))
                current = []
            else:
                current.append(tok)
    if num_vars is None:
        raise CnfFormatError("missing 'p cnf' header")
    if current:
        raise CnfFormatError("last clause is not zero-terminated")
    if num_clauses != len(clauses):
        raise CnfFormatError(
            f"header declares {num_clauses} clauses but {len(clauses)} given"
        )
    for clause in clauses:
        if len(clause) != 3:
            raise CnfFormatError(
                f"clause {' '.join(map(str, clause))} has {len(clause)} literals, need 3"
            )
    return CnfFormula(num_vars, tuple(clauses))  # type: ignore[arg-type]


@dataclass(frozen=True)
class ReductionInstance:
    """The reduction graph together with the vertex-role labeling."""

    graph: Graph
    k: int
    num_vars: int
    num_clauses: int
    roles: dict[int, str]
    positive_vertex: dict[int, int]  # variable -> u_i
    negative_vertex: dict[int, int]  # variable -> u'_i
    clause_head: dict[int, int]  # clause index (1-based) -> adjacent-path vertex
    clause_terminal: dict[int, int]  # clause index (1-based) -> far path vertex

    @property
    def threshold(self) -> int:
        return self.k * self.num_vars

    def gadget_vertices(self, i: int) -> range:
        base = (i - 1) * (self.k * self.k + 2)
        return range(base, base + self.k * self.k + 2)

    def literal_vertex(self, lit: int) -> int:
        return self.positive_vertex[lit] if lit > 0 else self.negative_vertex[-lit]

    def roles_json(self) -> list[dict]:
        return [
            {"vertex": v, "role": self.roles[v]} for v in sorted(self.roles)
        ]


def build_reduction(formula: CnfFormula, k: int) -> ReductionInstance:
    """Construct the reduction graph for cap ``k``.

    Vertex layout: gadgets first (per variable: ``u_i``, ``u'_i``, then the
    ``k`` internal paths), then one ``k``-vertex path per clause with the
    head adjacent to the clause's literal vertices.
    """
    if k < 3:
        raise ValueError(f"reduction requires k >= 3, got {k}")
    if formula.num_vars < 1:
        raise ValueError("reduction needs at least one variable")
    edges: list[tuple[int, int]] = []
    roles: dict[int, str] = {}
    positive: dict[int, int] = {}
    negative: dict[int, int] = {}
    gadget_size = k * k + 2
    for i in range(1, formula.num_vars + 1):
        base = (i - 1) * gadget_size
        u, u_neg = base, base + 1
        positive[i], negative[i] = u, u_neg
        roles[u] = f"u_{i}"
        roles[u_neg] = f"u'_{i}"
        for j in range(1, k + 1):
            start = base + 2 + (j - 1) * k
            for t in range(1, k + 1):
                roles[start + t - 1] = f"x_{i}_{j}_{t}"
            edges.append((u, start))
            edges.append((u_neg, start))
            for t in range(k - 1):
                edges.append((start + t, start + t + 1))
    clause_head: dict[int, int] = {}
    clause_terminal: dict[int, int] = {}
    offset = formula.num_vars * gadget_size
    for j, clause in enumerate(formula.clauses, start=1):
        base = offset + (j - 1) * k
        clause_head[j] = base
        clause_terminal[j] = base + k - 1
        roles[base] = f"chat_{j}"
        for t in range(1, k - 1):
            roles[base + t] = f"cpath_{j}_{t + 1}"
        roles[base + k - 1] = f"c_{j}"
        for t in range(k - 1):
            edges.append((base + t, base + t + 1))
        for lit in clause:
            v = positive[lit] if lit > 0 else negative[-lit]
            edges.append((v, base))
    n = offset + formula.num_clauses * k
    graph = Graph(n, edges)
    inst = ReductionInstance(
        graph=graph,
        k=k,
        num_vars=formula.num_vars,
        num_clauses=formula.num_clauses,
        roles=roles,
        positive_vertex=positive,
        negative_vertex=negative,
        clause_head=clause_head,
        clause_terminal=clause_terminal,
    )
    _check_sizes(inst)
    return inst


def _check_sizes(inst: ReductionInstance) -> None:
    k, n, m = inst.k, inst.num_vars, inst.num_clauses
    want_v = (k * k + 2) * n + k * m
    want_e = (k * k + k) * n + (k + 2) * m
    if inst.graph.n != want_v or inst.graph.num_edges != want_e:
        raise AssertionError(
            f"reduction size mismatch: {inst.graph.n}/{want_v} vertices, "
            f"{inst.graph.num_edges}/{want_e} edges"
        )


def assignment_to_broadcast(
    inst: ReductionInstance, assignment: dict[int, bool]
) -> Broadcast:
    """Power ``k`` on the true literal vertex of every variable, 0 elsewhere."""
    missing = [i for i in range(1, inst.num_vars + 1) if i not in assignment]
    if missing:
        raise ValueError(f"assignment is missing variables {missing}")
    powers = [0] * inst.graph.n
    for i in range(1, inst.num_vars + 1):
        v = inst.positive_vertex[i] if assignment[i] else inst.negative_vertex[i]
        powers[v] = inst.k
    return Broadcast(inst.k, tuple(powers))


def broadcast_to_assignment(inst: ReductionInstance, f: Broadcast) -> dict[int, bool]:
    """Extract a satisfying assignment from a within-threshold broadcast.

    Every gadget must spend exactly ``k`` (its leaves are unreachable from
    outside), with each literal vertex at power 0 or ``k``; other spreads
    within the threshold certify a bug.  A gadget may legitimately cover
    its leaves with unit powers inside the paths while its literal vertices
    are dominated from a neighboring gadget; such variables are
    unconstrained and default to False, which is safe because every clause
    terminal is dominated only by one of its own literal vertices at power
    exactly ``k``.
    """
    if len(f.powers) != inst.graph.n:
        raise ValueError("broadcast domain does not match the reduction graph")
    if f.cost > inst.threshold:
        raise ValueError(f"cost {f.cost} exceeds the threshold {inst.threshold}")
    assignment: dict[int, bool] = {}
    for i in range(1, inst.num_vars + 1):
        gadget = inst.gadget_vertices(i)
        spent = sum(f.powers[v] for v in gadget)
        u, u_neg = inst.positive_vertex[i], inst.negative_vertex[i]
        shape = (f.powers[u], f.powers[u_neg])
        if spent != inst.k or shape not in ((inst.k, 0), (0, inst.k), (0, 0)):
            raise GadgetBudgetError(
                f"gadget {i} spends {spent} with powers "
                f"u={f.powers[u]}, u'={f.powers[u_neg]}"
            )
        assignment[i] = f.powers[u] == inst.k
    if not is_dominating(inst.graph, f):
        raise NotDominatingError("broadcast does not dominate the reduction graph")
    return assignment


@dataclass(frozen=True)
class ReductionVerdict:
    satisfiable: bool
    value: int
    threshold: int

    @property
    def within_threshold(self) -> bool:
        return self.value <= self.threshold

    @property
    def equivalent(self) -> bool:
        return self.satisfiable == self.within_threshold


def _solve_componentwise(g: Graph, k: int) -> tuple[int, Broadcast]:
    """Exact optimum of a possibly disconnected graph: a broadcast dominates
    iff it dominates every component, so values add up.  (A formula with no
    clauses yields one component per gadget.)"""
    remaining = set(range(g.n))
    powers = [0] * g.n
    total = 0
    while remaining:
        start = min(remaining)
        seen = {start}
        queue = [start]
        while queue:
            v = queue.pop()
            for w in g.adj[v]:
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        remaining -= seen
        old = sorted(seen)
        remap = {o: i for i, o in enumerate(old)}
        sub = Graph(len(old), [(remap[u], remap[v]) for u, v in g.edges if u in seen and v in seen])
        res = solve(sub, k)
        total += res.value
        for o in old:
            powers[o] = res.witness.powers[remap[o]]
    return total, Broadcast(k, tuple(powers))


def verify_reduction(formula: CnfFormula, k: int) -> ReductionVerdict:
    """Check SAT <=> (optimal cost <= k * n_vars) by exact computation.

    SAT is decided by brute force over all assignments; the graph side by
    the exact solver (componentwise, since a clause-free formula leaves the
    gadgets disconnected).  When the cost lands within the threshold, the
    witness is additionally pulled back to an assignment and that
    assignment is verified to satisfy the formula.
    """
    inst = build_reduction(formula, k)
    sat_assignment = formula.satisfying_assignment()
    value, witness = _solve_componentwise(inst.graph, k)
    verdict = ReductionVerdict(
        satisfiable=sat_assignment is not None,
        value=value,
        threshold=inst.threshold,
    )
    if sat_assignment is not None:
        forward = assignment_to_broadcast(inst, sat_assignment)
        if not is_dominating(inst.graph, forward):
            raise AssertionError("satisfying assignment produced a non-dominating broadcast")
    if verdict.within_threshold:
        back = broadcast_to_assignment(inst, witness)
        if not formula.evaluate(back):
            raise AssertionError("witness pulled back to a non-satisfying assignment")
    return verdict
