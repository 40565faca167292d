"""Exact computation toolkit for dominating k-broadcasts on graphs."""

from .bounds import (
    BoundReport,
    BoundRow,
    ChainReport,
    audit_chain,
    audit_tree_bound,
    ceildiv,
    ceiling_inequality_holds,
    limited_cap_bound,
    upper_bound,
)
from .graph import (
    UNREACHABLE,
    Graph,
    GraphFormatError,
    Metrics,
    NotConnectedError,
    Structure,
    analyze_structure,
    bridges,
    compute_metrics,
    complete_graph,
    cycle_graph,
    format_graph,
    parse_graph,
    path_graph,
    split_components,
    star_graph,
)
from .sat import (
    CnfFormatError,
    CnfFormula,
    GadgetBudgetError,
    ReductionInstance,
    ReductionVerdict,
    assignment_to_broadcast,
    broadcast_to_assignment,
    build_reduction,
    parse_dimacs,
    verify_reduction,
)
from .solver import (
    Broadcast,
    GuardExceeded,
    NotDominatingError,
    NotOptimalError,
    SolveResult,
    SolveStats,
    domination_chain,
    is_dominating,
    is_efficient,
    normalize_leaf_zero,
    solve,
    solve_bruteforce,
    witness_from_json,
    witness_to_json,
)
from .spanning import (
    extract_broadcast_tree,
    min_over_spanning_trees,
    spanning_tree_count,
    spanning_trees,
)
from .trees import (
    TreeFamilySpec,
    canonical_form,
    count_free_trees_bruteforce,
    free_trees,
    make_path,
    make_spider,
    make_tree,
    random_tree,
    tight_example_tree,
    twin_free_reduction,
)

__version__ = "0.1.0"

__all__ = [
    "BoundReport",
    "BoundRow",
    "Broadcast",
    "ChainReport",
    "CnfFormatError",
    "CnfFormula",
    "GadgetBudgetError",
    "Graph",
    "GraphFormatError",
    "GuardExceeded",
    "Metrics",
    "NotConnectedError",
    "NotDominatingError",
    "NotOptimalError",
    "ReductionInstance",
    "ReductionVerdict",
    "SolveResult",
    "SolveStats",
    "Structure",
    "TreeFamilySpec",
    "UNREACHABLE",
    "analyze_structure",
    "assignment_to_broadcast",
    "audit_chain",
    "audit_tree_bound",
    "bridges",
    "broadcast_to_assignment",
    "build_reduction",
    "canonical_form",
    "ceildiv",
    "ceiling_inequality_holds",
    "complete_graph",
    "compute_metrics",
    "count_free_trees_bruteforce",
    "cycle_graph",
    "domination_chain",
    "extract_broadcast_tree",
    "format_graph",
    "free_trees",
    "is_dominating",
    "is_efficient",
    "limited_cap_bound",
    "make_path",
    "make_spider",
    "make_tree",
    "min_over_spanning_trees",
    "normalize_leaf_zero",
    "parse_dimacs",
    "parse_graph",
    "path_graph",
    "random_tree",
    "solve",
    "solve_bruteforce",
    "spanning_tree_count",
    "spanning_trees",
    "split_components",
    "star_graph",
    "tight_example_tree",
    "twin_free_reduction",
    "upper_bound",
    "verify_reduction",
    "witness_from_json",
    "witness_to_json",
]
