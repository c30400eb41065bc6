from .builtins import BUILTIN_PROBLEMS, MYOPIC, PATIENT, deceptive_chain, gridworld
from .cofo import (
    BEST_SO_FAR,
    ENTROPY_REDUCTION,
    GUIDANCE,
    OBJECTIVES,
    CofoDataset,
    CofoProblem,
    CofoResult,
    StepRecord,
    check_mutual_associativity,
    cofo_step,
    guidance_reward,
    guidance_value,
    onemax_problem,
    promising_set,
    run_cofo,
    seeded_cosm_problem,
    softmax_entropy,
)
from .dds import (
    DDSProblem,
    DPResult,
    Trajectory,
    concurrent_action_sets,
    estimate_action_values,
    reachable_states,
    run_greedy,
    run_policy,
    run_stochastic_dp,
    softmax,
    solve_exact_dp,
)

__all__ = [
    "BEST_SO_FAR",
    "BUILTIN_PROBLEMS",
    "CofoDataset",
    "CofoProblem",
    "CofoResult",
    "DDSProblem",
    "DPResult",
    "ENTROPY_REDUCTION",
    "GUIDANCE",
    "MYOPIC",
    "OBJECTIVES",
    "PATIENT",
    "StepRecord",
    "Trajectory",
    "check_mutual_associativity",
    "cofo_step",
    "concurrent_action_sets",
    "deceptive_chain",
    "estimate_action_values",
    "gridworld",
    "guidance_reward",
    "guidance_value",
    "onemax_problem",
    "promising_set",
    "reachable_states",
    "run_cofo",
    "run_greedy",
    "run_policy",
    "run_stochastic_dp",
    "seeded_cosm_problem",
    "softmax",
    "softmax_entropy",
    "solve_exact_dp",
]
