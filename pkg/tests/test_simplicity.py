import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cogkernel.errors import (
    IndexOutOfRange,
    NoFinitePrimitive,
    NotAProduction,
    NotMutuallyAssociative,
    ParseError,
    UnreachableEntity,
    UnresolvedDagRef,
    ZeroSimplicity,
)
from cogkernel.simplicity import (
    CombinationSystem,
    DagRef,
    Leaf,
    Measure,
    PatternScorer,
    Production,
    Test as DagTest,
    build_subpattern_hierarchy,
    build_system,
    check_approx_cost_associativity,
    check_approx_partial_order,
    check_mutual_associativity,
    conditional_simplicity,
    cosm_residual,
    dag_size,
    eval_decision_dag,
    format_system,
    parse_system,
    pattern_intensity,
    random_associative_system,
    random_system,
    run_order_bound_check,
    simplicity_bundle,
    solve_cosm,
    subpattern_leq,
    truth_table,
    xor_dag,
)

from oracles import best_tree_costs


def ab_system(base_ab=math.inf, cost=0.5):
    system = build_system(["a", "b", "ab"], {(0, "a", "b"): (["ab"], cost)})
    return system, {"a": 1.0, "b": 1.0, "ab": base_ab}


def concat_system(max_len=4, cost=lambda y, z: 1.0, n_ops=1):
    words = ["".join(p) for k in range(1, max_len + 1) for p in __import__("itertools").product("ab", repeat=k)]
    prods = {}
    for op in range(n_ops):
        for y in words:
            for z in words:
                if len(y) + len(z) <= max_len:
                    prods[(op, y, z)] = Production((y + z,), cost(y, z) if n_ops == 1 else cost(op, y, z))
    return CombinationSystem(tuple(words), prods)


class TestCosm:
    def test_single_decomposition(self):
        system, base = ab_system()
        sol = solve_cosm(system, base)
        assert sol["ab"] == 2.5 and sol.via["ab"] == (0, "a", "b")
        assert solve_cosm(system, {**base, "ab": 2.0})["ab"] == 2.0

    def test_no_primitive(self):
        system, _ = ab_system()
        with pytest.raises(NoFinitePrimitive):
            solve_cosm(system, {})

    def test_unreachable_stays_infinite(self):
        system = build_system(["a", "b", "c"], {(0, "a", "c"): (["b"], 1.0)})
        sol = solve_cosm(system, {"a": 1.0})
        assert math.isinf(sol["b"]) and math.isinf(sol["c"])
        assert cosm_residual(system, sol) == 0

    def test_layered_against_tree_enumeration(self):
        rng = np.random.default_rng(3)
        for _ in range(60):
            system, base = random_system(rng, int(rng.integers(3, 13)), 2, 15, layered=True)
            sol = solve_cosm(system, base)
            assert sol.sigma == pytest.approx(best_tree_costs(system, base, 6), abs=1e-9)
            assert cosm_residual(system, sol) < 1e-9

    def test_cyclic_against_tree_enumeration(self):
        # an optimal tree never repeats an entity along a branch, so height n suffices
        rng = np.random.default_rng(4)
        for _ in range(60):
            system, base = random_system(rng, int(rng.integers(3, 10)), 2, 14)
            sol = solve_cosm(system, base)
            assert sol.sigma == pytest.approx(best_tree_costs(system, base, len(system.entities)), abs=1e-9)

    def test_restricted_ops(self):
        rng = np.random.default_rng(8)
        system, base = random_system(rng, 8, 3, 16)
        sol = solve_cosm(system, base, ops=[1])
        assert sol.sigma == pytest.approx(best_tree_costs(system, base, 8, ops={1}), abs=1e-9)
        assert cosm_residual(system, sol, ops=[1]) < 1e-9

    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 10**6), st.floats(0, 1))
    def test_lowering_costs_never_raises_sigma(self, seed, factor):
        system, base = random_system(np.random.default_rng(seed), 7, 2, 12)
        cheaper = CombinationSystem(
            system.entities, {k: Production(p.outputs, p.cost * factor) for k, p in system.productions.items()}
        )
        hi, lo = solve_cosm(system, base), solve_cosm(cheaper, base)
        assert all(lo[e] <= hi[e] + 1e-12 for e in system.entities)

    def test_context_is_free(self):
        system, base = ab_system()
        sol = conditional_simplicity(system, base, ["a"])
        assert sol["a"] == 0 and sol["ab"] == 1.5

    def test_multi_output(self):
        system = build_system(["a", "b", "c"], {(0, "a", "a"): (["b", "c"], 1.0)})
        sol = solve_cosm(system, {"a": 1.0})
        assert sol["b"] == sol["c"] == 3.0


class TestPatterns:
    def test_direct_value(self):
        system = build_system(["x", "y", "z"], {(0, "y", "z"): (["x"], 1.0)})
        assert pattern_intensity(system, {"x": 10, "y": 2, "z": 3}, "x", "y", "z", 0) == pytest.approx(0.4)
        assert pattern_intensity(system, {"x": 6, "y": 2, "z": 3}, "x", "y", "z", 0) == 0

    def test_errors(self):
        system = build_system(["x", "y", "z"], {(0, "y", "z"): (["x"], 1.0)})
        with pytest.raises(NotAProduction):
            pattern_intensity(system, {"x": 1, "y": 1, "z": 1}, "y", "y", "z", 0)
        with pytest.raises(ZeroSimplicity):
            pattern_intensity(system, {"x": 0, "y": 1, "z": 1}, "x", "y", "z", 0)
        with pytest.raises(UnreachableEntity):
            pattern_intensity(system, {"y": 1, "z": 1}, "x", "y", "z", 0)

    def test_subpattern_examples(self):
        system, base = ab_system(base_ab=10.0)
        ok, value = subpattern_leq(system, base, "a", "ab")
        assert ok and value == pytest.approx(0.75)
        assert subpattern_leq(system, base, "ab", "a") == (False, -math.inf)
        assert subpattern_leq(system, base, "b", "b")[0]
        assert build_subpattern_hierarchy(system, base) == [("a", "ab"), ("b", "ab")]
        assert build_subpattern_hierarchy(system, {**base, "ab": 2.0}) == []

    def test_repeated_motif_is_pattern(self):
        system = concat_system(3)
        base = {w: float(len(w) ** 2) for w in system.entities}
        scorer = PatternScorer(system, base)
        recs = [r for r in scorer.records() if r.x == "aaa"]
        assert {(r.y, r.z) for r in recs} == {("a", "aa"), ("aa", "a")}
        # oracle: sigma1 is the base cost, so I = (9 - |y|^2 - |z|^2 - 1) / 9 for every split
        for r in recs:
            assert r.intensity == pytest.approx((9 - len(r.y) ** 2 - len(r.z) ** 2 - 1) / 9)
        assert max(r.intensity for r in recs) > 0

    def test_hierarchy_depth_matches_composition_depth(self):
        words = ["a", "aa", "aaaa", "aaaaaaaa"]
        system = build_system(words, {(0, w, w): ([w + w], 0.5) for w in words[:-1]})
        base = {w: 3.0 * len(w) ** 2 for w in words}
        edges = build_subpattern_hierarchy(system, base)
        assert edges == [("a", "aa"), ("aa", "aaaa"), ("aaaa", "aaaaaaaa")]

    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 10**6))
    def test_intensity_at_most_one(self, seed):
        system, base = random_system(np.random.default_rng(seed), 8, 2, 14)
        scorer = PatternScorer(system, base)
        for r in scorer.records():
            assert r.intensity <= 1
            if r.intensity == 1:
                assert scorer.h(r.op, r.y, r.z) == 0

    def test_hierarchy_acyclic_when_antisymmetric(self):
        rng = np.random.default_rng(12)
        for _ in range(50):
            system, base, _ = random_associative_system(rng)
            check = check_approx_partial_order(system, base, math.inf, reference_ops=(0,))
            if not check.ok:
                continue
            edges = build_subpattern_hierarchy(system, base, reference_ops=(0,))
            order = {e: i for i, e in enumerate(system.entities)}
            graph = {e: [b for a, b in edges if a == e] for e in system.entities}
            state = {}

            def visit(v):
                state[v] = 1
                for w in graph[v]:
                    assert state.get(w) != 1
                    if w not in state:
                        visit(w)
                state[v] = 2

            for v in sorted(graph, key=order.get):
                if v not in state:
                    visit(v)


class TestAssociativity:
    def test_uniform_cost_has_zero_deviation(self):
        system = concat_system(4, cost=lambda y, z: 0.7)
        result = check_approx_cost_associativity(system)
        assert result.ok and result.deviation == 0 and result.triples > 0

    def test_length_cost_deviation_exhaustive(self):
        system = concat_system(4, cost=lambda y, z: float(len(y) + len(z)))
        result = check_approx_cost_associativity(system)
        # C1 - C2 = |z| - |x| for every triple that fits
        expected = max(
            abs(len(z) - len(x))
            for x in system.entities
            for y in system.entities
            for z in system.entities
            if len(x) + len(y) + len(z) <= 4
        )
        assert result.deviation == expected

    def test_outlier_operator_gives_large_deviation(self):
        system = concat_system(3, cost=lambda y, z: 100.0 if (y, z) == ("a", "b") else 1.0)
        result = check_approx_cost_associativity(system)
        assert result.deviation == 99.0 and result.witness == ("a", "a", "b")

    def test_non_associative_rejected(self):
        system = build_system(
            ["0", "1", "2", "3"],
            {(0, a, b): ([str(int(a) & int(b))], 1.0) for a in "0123" for b in "0123"}
            | {(1, a, b): ([str(int(a) | int(b))], 1.0) for a in "0123" for b in "0123"},
        )
        assert check_mutual_associativity(system) is not None
        with pytest.raises(NotMutuallyAssociative):
            check_approx_cost_associativity(system)

    def test_empty_relation_vacuous(self):
        system, base = ab_system(base_ab=1.0)
        check = check_approx_partial_order(system, base, 0.0)
        assert check.ok and check.relations == 0

    def test_adversarial_counterexample_reported(self):
        # x <= y and y <= z, yet x is a poor part of z and no cost-associativity bound holds
        system = build_system(
            ["x", "w", "y", "z", "v"],
            {(0, "x", "w"): (["y"], 0.0), (0, "y", "v"): (["z"], 0.0), (0, "x", "v"): (["z"], 50.0)},
        )
        base = {"x": 1.0, "w": 1.0, "y": 10.0, "v": 1.0, "z": 20.0}
        check = check_approx_partial_order(system, base, 0.5)
        assert not check.ok and check.counterexample[0] == "transitivity"

    def test_order_bound_small_run(self):
        trials = run_order_bound_check(60, seed=5)
        assert all(t.ok for t in trials)
        assert sum(t.chains for t in trials) > 0


class TestDags:
    def test_leaf_and_xor(self):
        assert truth_table(Leaf(7), 2) == [7, 7, 7, 7]
        assert truth_table(xor_dag(), 2) == [0, 1, 1, 0]
        assert dag_size(Leaf(1)) == 1

    def test_codd_composition(self):
        env = {"xor": xor_dag(0, 1)}
        codd = DagTest(DagRef("xor"), DagTest(2, Leaf(0), Leaf(1)), DagTest(2, Leaf(1), Leaf(0)))
        table = truth_table(codd, 3, env)
        assert table == [(b0 ^ b1 ^ b2) for b0 in (0, 1) for b1 in (0, 1) for b2 in (0, 1)]

    def test_errors(self):
        with pytest.raises(UnresolvedDagRef):
            eval_decision_dag(DagTest(DagRef("nope"), Leaf(0), Leaf(1)), [0])
        loop = {"a": DagTest(DagRef("a"), Leaf(0), Leaf(1))}
        with pytest.raises(UnresolvedDagRef):
            eval_decision_dag(loop["a"], [0], loop)
        with pytest.raises(IndexOutOfRange):
            eval_decision_dag(DagTest(3, Leaf(0), Leaf(1)), [0, 1])

    @settings(max_examples=60, deadline=None)
    @given(st.integers(0, 10**6))
    def test_random_dags_against_function_oracle(self, seed):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(1, 5))

        def build(depth):
            if depth == 0 or rng.random() < 0.3:
                v = int(rng.integers(0, 2))
                return Leaf(v), (lambda bits, v=v: v)
            var = int(rng.integers(0, n))
            (lo, flo), (hi, fhi) = build(depth - 1), build(depth - 1)
            return DagTest(var, lo, hi), (lambda bits: fhi(bits) if bits[var] else flo(bits))

        d, f = build(5)
        import itertools

        assert truth_table(d, n) == [f(bits) for bits in itertools.product((0, 1), repeat=n)]

    def test_shared_subdags_counted_once(self):
        shared = DagTest(1, Leaf(0), Leaf(1))
        assert dag_size(DagTest(0, shared, shared)) == 4


class TestBundles:
    def test_dominating_decomposition(self):
        system, base = ab_system(base_ab=10.0)
        bundle = simplicity_bundle(system, "ab", [Measure(base), Measure({k: 2 * v for k, v in base.items()})])
        assert bundle == [(2.5, 4.5)]

    def test_conflicting_measures(self):
        system = build_system(["a", "b", "ab"], {(0, "a", "b"): (["ab"], 1.0)})
        size = Measure({"a": 1.0, "b": 1.0, "ab": 5.0})
        runtime = Measure({"a": 1.0, "b": 1.0, "ab": 1.0}, op_cost=lambda op, y, z: 10.0)
        bundle = simplicity_bundle(system, "ab", [size, runtime])
        # exhaustive scan: primitive (5, 1) and composed (3, 12)
        assert bundle == [(3.0, 12.0), (5.0, 1.0)]

    @settings(max_examples=30, deadline=None)
    @given(st.integers(0, 10**6))
    def test_bundles_are_antichains(self, seed):
        rng = np.random.default_rng(seed)
        system, base = random_system(rng, 6, 2, 10, layered=True)
        other = {e: float(rng.uniform(0, 5)) for e in system.entities}
        for x in system.entities:
            b = simplicity_bundle(system, x, [Measure(base), Measure(other)])
            for u in b:
                for v in b:
                    assert u == v or not all(p <= q for p, q in zip(u, v))


class TestTextFormat:
    def test_parse_defaults_and_round_trip(self):
        system, base = parse_system("entity a base=1\nentity b\n# c\nop 0 a a -> b\n")
        assert math.isinf(base["b"]) and system.cost(0, "a", "a") == 0.0
        again, base2 = parse_system(format_system(system, base))
        assert again.productions == system.productions and base2 == base

    @pytest.mark.parametrize(
        "text",
        [
            "entity a base=x\n",
            "entity a\nentity a\n",
            "entity a\nop 0 a a b\n",
            "entity a\nop 0 a a -> c\n",
            "entity a\nop -1 a a -> a\n",
            "bogus\n",
            "entity a\nop 0 a a -> a cost=inf\n",
        ],
    )
    def test_parse_errors(self, text):
        with pytest.raises(ParseError):
            parse_system(text)
