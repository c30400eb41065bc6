import math

import numpy as np
import pytest

from cogkernel.decision import solve_exact_dp
from cogkernel.errors import BudgetTooLarge, NoAdmissibleContext, TooFewSnapshots, ZeroCompetence
from cogkernel.intellimetrics import (
    BruteForceAgent,
    ConstantAgent,
    EnvironmentClass,
    EnvironmentSpec,
    GoalSpec,
    OptimalAgent,
    RandomAgent,
    StepMeter,
    breadth_from_competence,
    default_goals,
    dyadic_length,
    efficient_pragmatic_intelligence,
    elias_gamma_length,
    expected_reward,
    intellectual_breadth,
    joy_growth_choice,
    make_agent,
    observation_count_goal,
    pragmatic_contexts,
    pragmatic_intelligence,
    reach_state_goal,
    tiny2_class,
    universal_intelligence,
)
from cogkernel.metagraph import Metagraph
from cogkernel.rng import stream

from oracles import exact_episode_value

ONE_STATE = EnvironmentSpec(((0, 0),), ((1.0, 0.0),))
TOGGLE = EnvironmentSpec(((1, 0), (0, 1)), ((0.5, 0.0), (1.0, 0.25)))
ZERO = EnvironmentSpec(((1, 0), (0, 1)), ((0.0, 0.0), (0.0, 0.0)))


def agent_probs(agent, env, horizon):
    agent.reset(env, horizon)
    return lambda history: agent.distribution(history, StepMeter())


def random_deterministic_env(seed):
    rng = np.random.default_rng(seed)
    nxt = tuple(tuple(int(v) for v in rng.integers(0, 2, 2)) for _ in range(2))
    base = tuple(tuple(float(v) / 8 for v in rng.integers(0, 9, 2)) for _ in range(2))
    return EnvironmentSpec(nxt, base)


class TestEnvironments:
    def test_codes(self):
        assert [elias_gamma_length(n) for n in (1, 2, 3, 4, 8)] == [1, 3, 3, 5, 7]
        assert dyadic_length(0.0) == 1 and dyadic_length(1.0) == 1 and dyadic_length(0.75) == 5
        assert dyadic_length(0.1) > 50
        with pytest.raises(ValueError):
            dyadic_length(1.5)

    def test_tiny2(self):
        cls = tiny2_class()
        assert len(cls) == 260
        assert math.fsum(cls.weights) == pytest.approx(1.0)
        one, two = cls.environments[0], cls.environments[4]
        assert one.description_length() == 6 and two.description_length() == 14
        assert cls.weights[0] / cls.weights[4] == 2.0**8

    def test_validation(self):
        with pytest.raises(ValueError):
            EnvironmentSpec(((0, 2),), ((0.0, 0.0),))
        with pytest.raises(ValueError):
            EnvironmentSpec(((0, 0),), ((1.5, 0.0),))

    def test_reward_summable(self):
        rng = np.random.default_rng(1)
        for env in tiny2_class().environments[::13]:
            for _ in range(5):
                s, total = env.start, 0.0
                for t in range(1, 40):
                    s, _, r = env.step(s, int(rng.integers(2)), t)
                    total += r
                assert total <= 1.0


class TestExpectedReward:
    def test_zero_env(self):
        assert expected_reward(ZERO, RandomAgent(), 6, 50, 1).mean == 0.0

    @pytest.mark.parametrize("horizon", [1, 3, 6, 12])
    def test_geometric_sum_exact(self, horizon):
        est = expected_reward(ONE_STATE, ConstantAgent(0), horizon, 37, 5)
        assert est.mean == 1 - 2.0**-horizon and est.stderr == 0.0

    def test_random_agent_against_enumeration(self):
        exact = exact_episode_value(TOGGLE, lambda h: np.array([0.5, 0.5]), 6)
        est = expected_reward(TOGGLE, RandomAgent(), 6, 4000, 11)
        assert abs(est.mean - exact) < 3 * est.stderr

    def test_stderr_scales(self):
        small = expected_reward(TOGGLE, RandomAgent(), 6, 100, 2).stderr
        large = expected_reward(TOGGLE, RandomAgent(), 6, 10_000, 2).stderr
        assert 5 < small / large < 20

    def test_deterministic_given_seed(self):
        a = expected_reward(TOGGLE, RandomAgent(), 6, 200, 9)
        b = expected_reward(TOGGLE, RandomAgent(), 6, 200, 9)
        assert a == b

    def test_bad_arguments(self):
        with pytest.raises(ValueError):
            expected_reward(TOGGLE, RandomAgent(), 0, 10, 1)


class TestUniversal:
    def test_zero_class(self):
        cls = EnvironmentClass.with_complexity_prior([ZERO, EnvironmentSpec(((0, 0),), ((0.0, 0.0),))])
        for kind in ("random", "greedy", "brute", "optimal"):
            assert universal_intelligence(cls, make_agent(kind), 4, 20, 1).value == 0.0

    def test_single_env_class(self):
        cls = EnvironmentClass((TOGGLE,), (1.0,))
        direct = expected_reward(TOGGLE, RandomAgent(), 5, 300, 4)
        assert universal_intelligence(cls, RandomAgent(), 5, 300, 4).value == direct.mean

    def test_optimal_dominates_per_environment(self):
        horizon = 6
        for env in tiny2_class().environments:
            best = solve_exact_dp(env.as_dds(horizon)).value
            for agent in (BruteForceAgent(), make_agent("greedy"), ConstantAgent(1)):
                value = exact_episode_value(env, agent_probs(agent, env, horizon), horizon)
                assert value <= best + 1e-15
            assert exact_episode_value(env, agent_probs(OptimalAgent(), env, horizon), horizon) == pytest.approx(best, abs=1e-15)

    def test_sampled_mode_when_contexts_exceed_trials(self):
        cls = tiny2_class()
        est = universal_intelligence(cls, OptimalAgent(), 6, 100, 3)
        exact = universal_intelligence(cls, OptimalAgent(), 6, 260, 3).value
        assert est.trials == 100 and abs(est.value - exact) < 4 * est.stderr + 1e-12


class DoubleEffortAgent(ConstantAgent):
    def distribution(self, history, meter):
        meter.tick()
        return super().distribution(history, meter)


class TestPragmatic:
    def test_idle_agent(self):
        stay = EnvironmentSpec(((0, 1), (1, 1)), ((0.0, 0.0), (0.0, 0.0)))
        cls = EnvironmentClass((stay,), (1.0,))
        goals = default_goals()
        assert pragmatic_intelligence(cls, goals, ConstantAgent(0), 30, 1).value == 0
        assert efficient_pragmatic_intelligence(cls, goals, ConstantAgent(0), 30, 1).value == 0

    def test_effort_ratio(self):
        cls = EnvironmentClass((TOGGLE,), (1.0,))
        goals = default_goals()
        plain = efficient_pragmatic_intelligence(cls, goals, ConstantAgent(0), 60, 2).value
        double = efficient_pragmatic_intelligence(cls, goals, DoubleEffortAgent(0), 60, 2).value
        assert plain > 0 and plain / double == pytest.approx(2.0, rel=1e-12)
        assert pragmatic_intelligence(cls, goals, ConstantAgent(0), 60, 2).value == pragmatic_intelligence(
            cls, goals, DoubleEffortAgent(0), 60, 2
        ).value

    def test_no_admissible_context(self):
        never = GoalSpec("never", lambda seg: 0.0, scales=())
        with pytest.raises(NoAdmissibleContext):
            pragmatic_intelligence(tiny2_class(), [never], RandomAgent(), 10, 1)

    def test_goal_rewards(self):
        seg = ((0, 1, 0.0),)
        assert reach_state_goal().step_reward(seg) == 0.5
        assert reach_state_goal().step_reward(seg + ((0, 1, 0.0),)) == 0.0
        assert observation_count_goal().step_reward(seg + ((0, 1, 0.0),)) == 0.25

    def test_brute_force_against_exhaustive(self):
        cls = tiny2_class()
        goals = default_goals()
        agent = BruteForceAgent()
        est = pragmatic_intelligence(cls, goals, agent, 10_000, 7).value
        exact = 0.0
        for c in pragmatic_contexts(cls, goals):
            env = cls.environments[c.env_index]
            exact += c.weight * exact_episode_value(env, agent_probs(agent, env, c.length), c.length, c.goal)
        assert abs(est - exact) <= 0.02 * exact


class TestBreadth:
    def test_bounds(self):
        assert breadth_from_competence([0.2, 0.3, 0.5], [0.0, 0.7, 0.0]) == 0.0
        assert breadth_from_competence([1, 1, 1, 1], [0.3] * 4) == pytest.approx(math.log(4), abs=1e-12)
        with pytest.raises(ZeroCompetence):
            breadth_from_competence([1, 1], [0, 0])

    def test_random_agent_four_contexts(self):
        envs = (TOGGLE, EnvironmentSpec(((1, 1), (0, 0)), ((0.25, 1.0), (0.5, 0.5))))
        cls = EnvironmentClass(envs, (0.5, 0.5))
        goals = (reach_state_goal(scales=(4,)), observation_count_goal(scales=(4,)))
        contexts = pragmatic_contexts(cls, goals)
        assert len(contexts) == 4
        # the random agent spends exactly one step per decision, so competence is V / 4
        exact = [
            exact_episode_value(cls.environments[c.env_index], lambda h: np.array([0.5, 0.5]), 4, c.goal) / 4 for c in contexts
        ]
        expected = breadth_from_competence([c.weight for c in contexts], exact)
        assert abs(intellectual_breadth(cls, goals, RandomAgent(), 8000, 3) - expected) < 0.05

    def test_breadth_at_most_log_contexts(self):
        cls = tiny2_class()
        goals = default_goals()
        h = intellectual_breadth(cls, goals, RandomAgent(), 1600, 1)
        assert 0 <= h <= math.log(len(pragmatic_contexts(cls, goals)))


class TestBruteForce:
    def test_converges_to_optimal(self):
        horizon = 60
        good = 0
        for seed in range(100):
            env = random_deterministic_env(seed)
            values = solve_exact_dp(env.as_dds(horizon)).state_values
            agent = BruteForceAgent()
            agent.reset(env, horizon)
            s, history, optimal = env.start, [], True
            for t in range(1, horizon + 1):
                a = int(np.argmax(agent.distribution(tuple(history), StepMeter())))
                if t > 50:
                    q = [env.base[s][b] * 2.0**-t + values[(t, env.next_state[s][b])] for b in range(2)]
                    optimal &= q[a] == max(q)
                s, o, r = env.step(s, a, t)
                history.append((a, o, r))
            good += optimal
        assert good >= 95

    def test_small_budget_below_optimal(self):
        horizon = 8
        alternating = EnvironmentSpec(((1, 0), (1, 0)), ((1.0, 0.0), (0.0, 1.0)))
        weak = exact_episode_value(alternating, agent_probs(BruteForceAgent(max_table_bits=1), alternating, horizon), horizon)
        assert weak < solve_exact_dp(alternating.as_dds(horizon)).value

    def test_zero_reward_first_table(self):
        agent = BruteForceAgent(optimistic=False)
        agent.reset(ZERO, 6)
        history = []
        s = 0
        for t in range(1, 7):
            p = agent.distribution(tuple(history), StepMeter())
            assert p[0] == 1.0
            s, o, r = ZERO.step(s, 0, t)
            history.append((0, o, r))

    def test_budget_limits(self):
        with pytest.raises(BudgetTooLarge):
            BruteForceAgent(max_table_bits=17)
        with pytest.raises(BudgetTooLarge):
            BruteForceAgent(max_table_bits=0).reset(TOGGLE, 4)

    def test_tables_enumerated(self):
        assert len(BruteForceAgent(max_table_bits=4).tables(2, 2)) == 2 + 4

    def test_distributions_sum_to_one(self):
        for agent in (RandomAgent(), make_agent("greedy"), BruteForceAgent(), OptimalAgent()):
            agent.reset(TOGGLE, 5)
            p = agent.distribution(((0, 1, 0.25),), StepMeter())
            assert p.sum() == pytest.approx(1.0)


def observation_graph(n, links=()):
    g = Metagraph()
    obs = [g.add_node("Observation") for _ in range(n)]
    for a, b in links:
        g.add_edge("Similarity", [obs[a], obs[b]])
    return g, obs


def with_triangles(g, k):
    for _ in range(k):
        a, b, c = (g.add_node("Concept") for _ in range(3))
        for x, y in ((a, b), (b, c), (c, a)):
            g.add_edge("Link", [x, y])
    return g


class TestJoyGrowthChoice:
    def test_identical(self):
        g = with_triangles(observation_graph(4)[0], 2)
        (step,) = joy_growth_choice([g, g.copy()])
        assert (step.joy, step.growth, step.choice) == (1.0, 0, 0.0)

    def test_new_motif(self):
        g = with_triangles(observation_graph(4)[0], 2)
        h = g.copy()
        for _ in range(2):
            a, b = h.add_node("Agent"), h.add_node("Tool")
            h.add_edge("Uses", [a, b])
        (step,) = joy_growth_choice([g, h])
        assert step.joy == 1.0 and step.growth >= 1

    def test_choice(self):
        before, _ = observation_graph(4)
        after, _ = observation_graph(4, [(0, 1), (2, 3)])
        (step,) = joy_growth_choice([before, after])
        assert step.choice == pytest.approx(1 / 3)
        (back,) = joy_growth_choice([after, before])
        assert back.choice == 0.0

    def test_too_few(self):
        with pytest.raises(TooFewSnapshots):
            joy_growth_choice([Metagraph()])

    def test_ranges(self):
        rng = np.random.default_rng(0)
        snaps = []
        g = Metagraph()
        for _ in range(5):
            g = g.copy()
            with_triangles(g, int(rng.integers(0, 2)))
            for _ in range(2):
                g.add_node("Observation")
            snaps.append(g)
        for step in joy_growth_choice(snaps):
            assert 0 <= step.joy <= 1 and step.growth >= 0 and step.choice >= 0
