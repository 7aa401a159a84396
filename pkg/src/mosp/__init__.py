"""Exact multi-objective shortest-path engine with an ordered-parallel solver.

Computes cost-unique Pareto-optimal path sets between a source and a goal
node in directed graphs with vector-valued edge costs.  Ships a sequential
baseline solver, a coordinator/worker parallel solver with configurable
queue ordering, multi-pop extraction, execution models and load
balancers, a brute-force oracle for verification, deterministic synthetic
instance generators, and a benchmark CLI.
"""

from .core import (Candidate, FrontierStore, LabelArena, dominates,
                   is_duplicate, lex_less, not_dominated, prune_set,
                   reconstruct_path)
from .graph import (GenParams, Graph, GraphFormatError, GraphValidationError,
                    build_graph, check_heuristic_consistency, compute_heuristic,
                    dump_graph, generate_synthetic, goal_reachable, load_graph,
                    parse_graph, write_graph)
from .oracle import (FrontDiff, OracleGuardError, brute_force_pareto,
                     compare_fronts)
from .parallel import (EXEC_MODELS, LB_POLICIES, ParallelEngine, RunConfig,
                       WorkerSlice, goal_owner, goal_stripe, iter_slice,
                       nbr_splitting, solve_parallel)
from .reporting import build_report, front_hash
from .results import SolveResult, Stats
from .sequential import (SeqState, expand_label, process_goal_label,
                         process_regular_candidate, solve_sequential)

__version__ = "0.1.0"

__all__ = [
    "Candidate", "EXEC_MODELS", "FrontDiff", "FrontierStore", "GenParams",
    "Graph", "GraphFormatError", "GraphValidationError", "LB_POLICIES",
    "LabelArena", "OracleGuardError", "ParallelEngine", "RunConfig",
    "SeqState", "SolveResult", "Stats", "WorkerSlice", "brute_force_pareto",
    "build_graph", "build_report", "check_heuristic_consistency",
    "compare_fronts", "compute_heuristic", "dominates", "dump_graph",
    "expand_label", "front_hash", "generate_synthetic", "goal_owner",
    "goal_reachable", "goal_stripe", "is_duplicate", "iter_slice", "lex_less",
    "load_graph", "nbr_splitting", "not_dominated", "parse_graph",
    "process_goal_label", "process_regular_candidate", "prune_set",
    "reconstruct_path", "solve_parallel", "solve_sequential", "write_graph",
]
