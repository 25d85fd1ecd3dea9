import numpy as np
import pytest

from clockchain import (
    ClockSpec,
    DensityMatrix,
    ObserverChainReport,
    apply_channel,
    apply_channel_quadrature,
    maximally_mixed,
    mean_cost_analytic,
    observer_chain_exact,
    optimal_reference_state,
    reference_phase_state,
    run_experiment,
)

from conftest import random_density
import structural_checks as sc


class TestApplyChannel:
    def test_flat_projector_n1(self):
        rho = DensityMatrix.from_pure(reference_phase_state(ClockSpec(1)))
        out = apply_channel(rho)
        assert np.allclose(out.entries, [[0.5, 0.25], [0.25, 0.5]], atol=1e-14)
        quad = apply_channel_quadrature(rho, 4)
        assert np.allclose(out.entries, quad.entries, atol=1e-12)

    def test_maximally_mixed_fixed_point(self):
        rho = maximally_mixed(ClockSpec(5))
        assert np.allclose(apply_channel(rho).entries, rho.entries, atol=1e-14)
        assert np.allclose(apply_channel_quadrature(rho, 12).entries, rho.entries,
                           atol=1e-12)

    def test_diagonal_becomes_uniform(self, rng):
        for n in (1, 3, 7):
            rho = random_density(ClockSpec(n), rng)
            out = apply_channel(rho)
            assert np.allclose(np.diag(out.entries).real, 1.0 / (n + 1), atol=1e-12)
            quad = apply_channel_quadrature(rho, 2 * n + 2)
            assert np.allclose(np.diag(quad.entries).real, 1.0 / (n + 1), atol=1e-12)

    def test_band_contraction_factors(self, rng):
        n = 6
        d = n + 1
        rho = random_density(ClockSpec(n), rng)
        out = apply_channel(rho)
        for band in range(d):
            before = np.trace(rho.entries, offset=band)
            after = np.trace(out.entries, offset=band)
            assert abs(after - before * (d - band) / d) <= 1e-13


class TestQuadratureOracle:
    def test_agreement_on_random_states(self, rng):
        for n in (1, 2, 4, 8, 16):
            spec = ClockSpec(n)
            for _ in range(10):
                rho = random_density(spec, rng)
                closed = apply_channel(rho).entries
                quad = apply_channel_quadrature(rho, 2 * n + 2).entries
                assert np.max(np.abs(closed - quad)) <= 1e-10

    def test_node_plateau(self, rng):
        n = 5
        rho = random_density(ClockSpec(n), rng)
        lean = apply_channel_quadrature(rho, 2 * n + 2).entries
        dense = apply_channel_quadrature(rho, 8 * n).entries
        assert np.max(np.abs(lean - dense)) <= 1e-12

    def test_rejects_coarse_grid(self):
        rho = maximally_mixed(ClockSpec(4))
        with pytest.raises(ValueError, match="nodes"):
            apply_channel_quadrature(rho, 9)


class TestChannelStructure:
    def test_trace_and_positivity(self, rng):
        sc.check_channel_trace_positivity(rng)

    def test_phase_covariance(self, rng):
        sc.check_channel_covariance(rng)

    def test_idempotent_limit(self):
        sc.check_channel_idempotent_limit()


class TestObserverChain:
    def test_flat_n1_first_three(self):
        report = observer_chain_exact(reference_phase_state(ClockSpec(1)), 3)
        assert np.allclose(report.costs, [1.0, 1.5, 1.75], atol=1e-12)
        assert report.reference == "flat-phase"

    def test_flat_n10_first_observer(self):
        report = observer_chain_exact(reference_phase_state(ClockSpec(10)), 1)
        assert report.costs[0] == pytest.approx(2.0 / 11.0, abs=1e-12)

    def test_closed_form_reproduction(self):
        sc.check_closed_form_reproduction()

    def test_optimal_reference_beats_flat_and_matches_mc(self):
        spec = ClockSpec(10)
        report = observer_chain_exact(optimal_reference_state(spec), 1)
        assert report.reference == "optimal"
        cost = report.costs[0]
        assert cost <= 2.0 / 11.0 + 1e-12
        # same order as the large-N asymptote
        assert 0.5 <= cost / (np.pi**2 / 121.0) <= 1.5
        mc = run_experiment(optimal_reference_state(spec), 1, 100_000, seed=2024)
        assert abs(mc.mean_costs[0] - cost) <= 4.0 * mc.stderrs[0]

    def test_store_states_are_valid_and_consistent(self):
        ref = reference_phase_state(ClockSpec(3))
        report = observer_chain_exact(ref, 4, store_states=True)
        assert len(report.states) == 4
        rho = DensityMatrix.from_pure(ref)
        for j, stored in enumerate(report.states):
            assert isinstance(stored, DensityMatrix)
            if j:
                rho = apply_channel(rho)
            assert np.allclose(stored.entries, rho.entries, atol=1e-14)

    def test_custom_reference_label(self, rng):
        from clockchain import SymmetricState
        state = SymmetricState.normalized(ClockSpec(4), rng.uniform(0.1, 1.0, size=5))
        assert observer_chain_exact(state, 2).reference == "custom"

    def test_chain_band_sums_stay_real(self):
        # reachable states: real nonnegative references and their channel images
        for make_ref in (reference_phase_state, optimal_reference_state):
            rho = DensityMatrix.from_pure(make_ref(ClockSpec(6)))
            for _ in range(5):
                sums = [np.trace(rho.entries, offset=k) for k in range(1, 7)]
                assert max(abs(c.imag) for c in sums) <= 1e-10
                assert all(c.real >= -1e-12 for c in sums)
                rho = apply_channel(rho)

    def test_rejects_bad_k(self):
        with pytest.raises(ValueError):
            observer_chain_exact(reference_phase_state(ClockSpec(2)), 0)

    def test_report_requires_monotone_costs(self):
        with pytest.raises(ValueError, match="nondecreasing"):
            ObserverChainReport(ClockSpec(1), "custom", [1.0, 0.5])

    def test_degenerate_single_level_clock(self):
        report = observer_chain_exact(reference_phase_state(ClockSpec(0)), 2)
        assert np.allclose(report.costs, [2.0, 2.0], atol=1e-14)


class TestAgainstAnalytic:
    @pytest.mark.parametrize("n", [1, 2, 5, 10, 50])
    def test_every_observer_matches(self, n):
        report = observer_chain_exact(reference_phase_state(ClockSpec(n)), 100)
        target = [mean_cost_analytic(n, j) for j in range(1, 101)]
        assert np.max(np.abs(report.costs - np.array(target))) <= 1e-10
