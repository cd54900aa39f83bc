"""Optimal connected coalition structures on graphs.

Solvers: exhaustive search for small graphs, leaf peeling on trees, cycle
folding on K4-minor-free graphs (and graphs whose blocks are series-parallel
or K4), and a separator-based divide and conquer for everything else. A
3-SAT reduction and the referees used by the tests live alongside.
"""

from .enumeration import (
    Solution,
    count_connected_structures,
    enumerate_connected_structures,
    enumerate_noncrossing,
    is_noncrossing,
    solve_bruteforce,
    structure_count_bound,
)
from .errors import (
    BudgetExceededError,
    CapExceededError,
    DisconnectedGraphError,
    GCSGError,
    GraphClassError,
    GraphFormatError,
)
from .graph import (
    Graph,
    GraphClass,
    SeparatorDecomposition,
    articulation_points,
    biconnected_components,
    canonical_structure,
    classify_graph,
    connected_components,
    find_separator,
    is_connected,
    is_connected_structure,
    is_series_parallel,
)
from .minorfree import find_reducible_cycle, solve_2connected_k4_free, solve_minor_free
from .sat import Cnf3, ReductionArtifact, decode_assignment, encode_assignment, reduce_3sat
from .separator import BoundaryEnumeration, SolverConfig, SolverStats, solve_separator
from .tree import solve_tree
from .valuation import (
    BoundaryConstraint,
    EdgeSumValuation,
    InducedValuation,
    TableValuation,
    Valuation,
    check_idm,
    evaluate,
    find_idm_violation,
    induced_valuation,
    normalize_singletons,
    structure_value,
)

__version__ = "0.1.0"
