import numpy as np
import pytest

from clockchain import (
    ClockSpec,
    McEstimate,
    PhaseBasis,
    born_probabilities,
    default_cost,
    eval_cost,
    evolve,
    DensityMatrix,
    kernels,
    mean_cost_analytic,
    observer_chain_exact,
    optimal_reference_state,
    reference_phase_state,
    run_experiment,
    sample_trajectory,
)

import structural_checks as sc

TWO_PI = 2.0 * np.pi


class _ForcedRng:
    """Stands in for a Generator and returns preset uniforms."""

    def __init__(self, values):
        self._values = np.asarray(values, dtype=float)

    def random(self, n):
        assert n == self._values.size
        return self._values.copy()


class TestSampleTrajectory:
    def test_forced_zero_inputs_hit_outcome_zero(self):
        ref = reference_phase_state(ClockSpec(7))
        record = sample_trajectory(_ForcedRng(np.zeros(3)), ref, 1)
        assert record.true_phase == 0.0
        (rnd,) = record.rounds
        assert rnd.orientation == 0.0 and rnd.outcome == 0
        assert rnd.estimate == 0.0 and rnd.cost == 0.0

    def test_record_shapes_and_ranges(self, rng):
        ref = optimal_reference_state(ClockSpec(5))
        record = sample_trajectory(rng, ref, 4)
        assert len(record.rounds) == 4
        assert 0.0 <= record.true_phase < TWO_PI
        for rnd in record.rounds:
            assert 0.0 <= rnd.estimate < TWO_PI
            assert 0 <= rnd.outcome <= 5

    def test_costs_match_eval_cost_exactly(self, rng):
        f = default_cost()
        ref = reference_phase_state(ClockSpec(6))
        for _ in range(25):
            record = sample_trajectory(rng, ref, 3, f=f)
            for rnd in record.rounds:
                assert rnd.cost == eval_cost(f, rnd.estimate - record.true_phase)

    def test_costs_with_delays_use_accrued_phase(self, rng):
        f = default_cost()
        delays = [0.9, 2.2]
        ref = reference_phase_state(ClockSpec(5))
        record = sample_trajectory(rng, ref, 3, f=f, delays=delays)
        accrued = record.true_phase + np.concatenate([[0.0], np.cumsum(delays)])
        for j, rnd in enumerate(record.rounds):
            assert rnd.cost == eval_cost(f, rnd.estimate - accrued[j])

    def test_same_rng_state_reproduces_record(self):
        ref = reference_phase_state(ClockSpec(4))
        rec_a = sample_trajectory(np.random.default_rng(99), ref, 3)
        rec_b = sample_trajectory(np.random.default_rng(99), ref, 3)
        assert rec_a == rec_b

    def test_rejects_bad_arguments(self, rng):
        ref = reference_phase_state(ClockSpec(2))
        with pytest.raises(ValueError):
            sample_trajectory(rng, ref, 0)
        with pytest.raises(ValueError):
            sample_trajectory(rng, ref, 2, delays=[0.1, 0.2])


class TestRunExperiment:
    def test_flat_n1_single_round_hits_unit_cost(self):
        est = run_experiment(reference_phase_state(ClockSpec(1)), 1, 100_000, seed=7)
        assert abs(est.mean_costs[0] - 1.0) <= 4.0 * est.stderrs[0]

    def test_flat_n5_four_observers(self):
        est = run_experiment(reference_phase_state(ClockSpec(5)), 4, 100_000, seed=42)
        target = np.array([mean_cost_analytic(5, j) for j in range(1, 5)])
        assert np.all(np.abs(est.mean_costs - target) <= 4.0 * est.stderrs)

    def test_deterministic_for_fixed_seed(self):
        ref = reference_phase_state(ClockSpec(3))
        a = run_experiment(ref, 2, 20_000, seed=5)
        b = run_experiment(ref, 2, 20_000, seed=5)
        assert np.array_equal(a.mean_costs, b.mean_costs)
        assert np.array_equal(a.stderrs, b.stderrs)
        assert a.seed == b.seed == 5

    def test_chunking_does_not_change_results(self):
        ref = optimal_reference_state(ClockSpec(6))
        a = run_experiment(ref, 3, 10_000, seed=11, chunk_size=10_000)
        b = run_experiment(ref, 3, 10_000, seed=11, chunk_size=617)
        assert np.array_equal(a.mean_costs, b.mean_costs)
        assert np.array_equal(a.stderrs, b.stderrs)

    def test_backends_agree_statistically_and_on_outcomes(self):
        ref = reference_phase_state(ClockSpec(4))
        results = {
            backend: run_experiment(ref, 2, 30_000, seed=8, backend=backend)
            for backend in kernels.available_backends()
        }
        values = list(results.values())
        for other in values[1:]:
            assert np.max(np.abs(values[0].mean_costs - other.mean_costs)) <= 1e-12

    def test_optimal_reference_matches_exact_chain(self):
        spec = ClockSpec(10)
        ref = optimal_reference_state(spec)
        est = run_experiment(ref, 1, 100_000, seed=31)
        exact = observer_chain_exact(ref, 1).costs[0]
        assert abs(est.mean_costs[0] - exact) <= 4.0 * est.stderrs[0]

    def test_rejects_zero_trials(self):
        with pytest.raises(ValueError):
            run_experiment(reference_phase_state(ClockSpec(1)), 1, 0)

    def test_single_trial_has_zero_stderr(self):
        est = run_experiment(reference_phase_state(ClockSpec(2)), 2, 1, seed=3)
        assert est.trials == 1
        assert np.array_equal(est.stderrs, [0.0, 0.0])

    def test_mcestimate_validation(self):
        with pytest.raises(ValueError):
            McEstimate(np.array([1.0]), np.array([-0.1]), 10, 0)
        with pytest.raises(ValueError):
            McEstimate(np.array([1.0, 2.0]), np.array([0.1]), 10, 0)


class TestDistributionalProperties:
    def test_estimator_error_independent_of_true_phase(self):
        sc.check_estimator_t_invariance()

    def test_delay_invariance_of_costs(self):
        sc.check_delay_invariance()

    def test_conditional_frequencies_match_born_rule(self):
        # fix t and alpha, randomise only the outcome selector
        spec = ClockSpec(6)
        ref = optimal_reference_state(spec)
        t, alpha = 2.3, 0.9
        trials = 100_000
        rng = np.random.default_rng(606)
        u = np.empty((trials, 3))
        u[:, 0] = t / TWO_PI
        u[:, 1] = alpha / TWO_PI
        u[:, 2] = rng.random(trials)
        f = default_cost()
        outcomes, _, _ = kernels.run_chain_batch(ref.amplitudes, u, f.w0, f.weights)
        freq = np.bincount(outcomes[:, 0], minlength=7) / trials
        rho = evolve(DensityMatrix.from_pure(ref), t)
        p = born_probabilities(rho, PhaseBasis.build(spec, alpha))
        bound = 4.0 * np.sqrt(p * (1.0 - p) / trials) + 2.0 / trials
        assert np.all(np.abs(freq - p) <= bound)

    @pytest.mark.parametrize("n,k", [(1, 2), (2, 5), (5, 5), (10, 5)])
    def test_mc_matches_exact_chain(self, n, k):
        ref = reference_phase_state(ClockSpec(n))
        est = run_experiment(ref, k, 100_000, seed=1000 + n)
        exact = observer_chain_exact(ref, k).costs
        assert np.all(np.abs(est.mean_costs - exact) <= 4.0 * est.stderrs)
