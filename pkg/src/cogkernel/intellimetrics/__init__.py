"""Environments, agents and Monte-Carlo intelligence measures."""

from .agents import (
    AGENT_KINDS,
    Agent,
    BruteForceAgent,
    ConstantAgent,
    GreedyAgent,
    OptimalAgent,
    RandomAgent,
    StepMeter,
    make_agent,
)
from .envs import (
    ENV_CLASSES,
    EnvironmentClass,
    EnvironmentSpec,
    dyadic_length,
    elias_gamma_length,
    tiny2_class,
)
from .jgc import JGCStep, joy_growth_choice, read_snapshots
from .measures import (
    Context,
    EpisodeStats,
    GoalSpec,
    IntelligenceEstimate,
    breadth_from_competence,
    context_stats,
    default_goals,
    efficient_pragmatic_intelligence,
    env_reward_goal,
    exact_mean,
    expected_reward,
    intellectual_breadth,
    observation_count_goal,
    pragmatic_contexts,
    pragmatic_intelligence,
    reach_state_goal,
    run_episode,
    universal_intelligence,
)
