from .bundles import Measure, pareto_front, simplicity_bundle
from .combination import (
    CombinationSystem,
    Production,
    build_system,
    format_system,
    parse_system,
    read_system,
)
from .cosm import (
    CostAssociativity,
    PartialOrderCheck,
    PatternRecord,
    PatternScorer,
    SimplicityAssignment,
    build_subpattern_hierarchy,
    check_approx_cost_associativity,
    check_approx_partial_order,
    check_mutual_associativity,
    conditional_simplicity,
    cosm_residual,
    pattern_intensity,
    solve_cosm,
    subpattern_leq,
)
from .dags import DagRef, Leaf, Test, dag_size, eval_decision_dag, truth_table, xor_dag
from .random_systems import (
    OrderBoundTrial,
    random_associative_system,
    random_system,
    run_order_bound_check,
    order_bound_trial,
)

__all__ = [
    "CombinationSystem",
    "CostAssociativity",
    "DagRef",
    "Leaf",
    "Measure",
    "PartialOrderCheck",
    "PatternRecord",
    "PatternScorer",
    "Production",
    "SimplicityAssignment",
    "Test",
    "OrderBoundTrial",
    "build_subpattern_hierarchy",
    "build_system",
    "check_approx_cost_associativity",
    "check_approx_partial_order",
    "check_mutual_associativity",
    "conditional_simplicity",
    "cosm_residual",
    "dag_size",
    "eval_decision_dag",
    "format_system",
    "pareto_front",
    "parse_system",
    "pattern_intensity",
    "random_associative_system",
    "random_system",
    "read_system",
    "run_order_bound_check",
    "simplicity_bundle",
    "solve_cosm",
    "subpattern_leq",
    "order_bound_trial",
    "truth_table",
    "xor_dag",
]
