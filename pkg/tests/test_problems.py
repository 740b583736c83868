import numpy as np
import pytest

import aggfw
from aggfw.bounds import compute_constants
from aggfw.problems import (
    Aggregate,
    DecisionProfile,
    aggregate_of,
    linearized_best_response,
    objective,
    zero_gradient_profile,
)


class TestAggregate:
    def test_rejects_non_finite_and_names_block(self):
        with pytest.raises(ValueError, match="block 1"):
            Aggregate(np.array([0.0, np.nan, 1.0]))

    def test_rejects_mismatched_block_dims(self):
        with pytest.raises(ValueError):
            Aggregate(np.array([1.0, 2.0, 3.0]), block_dims=(2, 2))

    def test_block_views_and_sqnorms(self):
        y = Aggregate(np.array([1.0, 2.0, 3.0, -1.0]), block_dims=(2, 1, 1))
        np.testing.assert_array_equal(y.block(0), [1.0, 2.0])
        np.testing.assert_array_equal(y.block(2), [-1.0])
        np.testing.assert_allclose(y.block_sqnorms(), [5.0, 9.0, 1.0])

    def test_arithmetic_keeps_blocks(self):
        a = Aggregate(np.array([1.0, 2.0]), block_dims=(1, 1))
        b = Aggregate(np.array([0.5, -1.0]), block_dims=(1, 1))
        np.testing.assert_array_equal((a + 2.0 * b).values, [2.0, 0.0])
        assert (a - b).block_dims == (1, 1)

    def test_arithmetic_rejects_overflow_to_non_finite(self):
        a = Aggregate(np.array([1e308]))
        with np.errstate(over="ignore"), pytest.raises(ValueError):
            _ = a + a


class TestAggregateOf:
    def test_single_agent_identity(self):
        # With N=1 the average reduces to the lone contribution.
        inst = aggfw.MiqpInstance(np.array([[2.0], [3.0]]), np.array([0.0, 0.0]))
        x = DecisionProfile((1,))
        np.testing.assert_array_equal(
            aggregate_of(inst, x).values, inst.contribution(0, 1).values
        )

    def test_all_zero_decisions_give_zero_aggregate(self, miqp_small):
        x = DecisionProfile((0,) * miqp_small.n_agents)
        np.testing.assert_array_equal(
            aggregate_of(miqp_small, x).values, np.zeros(miqp_small.n_blocks)
        )

    def test_matches_direct_matrix_average(self):
        # Oracle: the aggregate is the plain column average (1/4) A x.
        inst = aggfw.generate(2, 4, seed=9)
        x = DecisionProfile((1, 0, 1, 1))
        expected = inst.matrix @ np.array([1.0, 0.0, 1.0, 1.0]) / 4.0
        np.testing.assert_allclose(aggregate_of(inst, x).values, expected, atol=1e-15)

    def test_invalid_token_names_agent(self, miqp_small):
        bad = DecisionProfile((0,) * 2 + (7,) + (0,) * 7)
        with pytest.raises(ValueError, match="agent 2"):
            aggregate_of(miqp_small, bad)

    def test_affine_in_single_agent_swap(self, miqp_small):
        n = miqp_small.n_agents
        x = DecisionProfile((0, 1) * (n // 2))
        swapped = x.replace(3, 1 - x[3])
        diff = aggregate_of(miqp_small, swapped).values - aggregate_of(miqp_small, x).values
        expected = (
            miqp_small.contribution(3, swapped[3]).values
            - miqp_small.contribution(3, x[3]).values
        ) / n
        np.testing.assert_allclose(diff, expected, atol=1e-15)


class TestObjective:
    def test_balanced_signs_optimal_profile(self):
        inst = aggfw.BalancedSignsInstance(4)
        assert objective(inst, DecisionProfile((1, 1, -1, -1))) == pytest.approx(-1.0, abs=1e-15)

    def test_balanced_signs_all_ones(self):
        inst = aggfw.BalancedSignsInstance(4)
        # mean of squares = 1 and mean = 1, so J = -1 + 1 = 0.
        assert objective(inst, DecisionProfile((1, 1, 1, 1))) == pytest.approx(0.0, abs=1e-15)

    def test_matches_quadratic_formula(self):
        inst = aggfw.generate(3, 6, seed=13)
        x = np.array([1, 1, 0, 1, 0, 0])
        expected = float(np.sum((inst.matrix @ x - inst.target) ** 2)) / 36.0
        got = objective(inst, DecisionProfile(tuple(int(v) for v in x)))
        assert got == pytest.approx(expected, rel=1e-12)


class TestLinearizedBestResponse:
    def test_zero_gradient_ties_pick_canonical_decision(self, miqp_small):
        # At y = target/N the gradient vanishes and every agent ties; the
        # tie-break picks decision 0, so the best-response aggregate is 0.
        y = Aggregate(miqp_small.target / miqp_small.n_agents, miqp_small.block_dims)
        profile, ybar = linearized_best_response(miqp_small, y)
        assert profile.decisions == (0,) * miqp_small.n_agents
        np.testing.assert_array_equal(ybar.values, np.zeros(miqp_small.n_blocks))

    def test_positive_gradient_gives_all_zeros(self, miqp_small):
        # Entries of A are nonnegative, so a positive gradient makes
        # decision 1 strictly worse for every agent with a nonzero column.
        y = Aggregate(
            miqp_small.target / miqp_small.n_agents + 1.0, miqp_small.block_dims
        )
        profile, _ = linearized_best_response(miqp_small, y)
        assert profile.decisions == (0,) * miqp_small.n_agents

    def test_balanced_signs_matches_two_point_enumeration(self):
        inst = aggfw.BalancedSignsInstance(6)
        y = Aggregate(np.array([0.5, 0.0]), (1, 1))
        profile, _ = linearized_best_response(inst, y)
        grad = inst.f_grad(y)
        for i, decision in enumerate(profile.decisions):
            scores = {d: grad.dot(inst.contribution(i, d)) for d in (-1, 1)}
            assert scores[decision] == min(scores.values())
        # grad = (-1, 0): both decisions score -1, the tie goes to -1.
        assert profile.decisions == (-1,) * 6

    def test_step_one_optimality_exhaustive(self, table_instance):
        import itertools

        y = Aggregate(np.array([0.1, -0.4]), table_instance.block_dims)
        grad = table_instance.f_grad(y)
        xbar, ybar = linearized_best_response(table_instance, y)
        best = grad.dot(ybar)
        universes = [table_instance.decision_universe(i) for i in range(4)]
        for decisions in itertools.product(*universes):
            other = grad.dot(aggregate_of(table_instance, DecisionProfile(decisions)))
            assert best <= other + 1e-12


class TestBoundedDifferences:
    @pytest.mark.parametrize("seed", [0, 1, 2])
    def test_single_swap_bounded_by_c0_over_n(self, seed):
        inst = aggfw.generate(4, 8, seed=seed)
        constants = compute_constants(inst)
        rng = np.random.default_rng(seed)
        x = DecisionProfile(tuple(int(v) for v in rng.integers(0, 2, size=8)))
        base = objective(inst, x)
        for i in range(8):
            flipped = objective(inst, x.replace(i, 1 - x[i]))
            assert abs(flipped - base) <= constants.c0 / 8 + 1e-12

    def test_balanced_signs_swap_bound(self):
        inst = aggfw.BalancedSignsInstance(6)
        constants = compute_constants(inst)
        x = DecisionProfile((1, -1, 1, 1, -1, -1))
        base = objective(inst, x)
        for i in range(6):
            flipped = objective(inst, x.replace(i, -x[i]))
            assert abs(flipped - base) <= constants.c0 / 6 + 1e-12


class TestZeroGradientProfile:
    def test_miqp_start_is_all_zeros(self, miqp_small):
        assert zero_gradient_profile(miqp_small).decisions == (0,) * 10

    def test_balanced_start_is_all_minus_one(self):
        assert zero_gradient_profile(aggfw.BalancedSignsInstance(4)).decisions == (-1,) * 4
