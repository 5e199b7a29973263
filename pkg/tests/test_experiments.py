import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from grover_zeta import (
    build_bundle,
    cycle_graph,
    density_experiment,
    fuzz_identities,
    identity_residuals,
    inject_phase_defect,
    mckay_density,
    orient_random,
    reference_bin_masses,
)
from grover_zeta.experiments import random_mixed_graph


class TestMcKayDensity:
    def test_value_at_zero(self):
        assert mckay_density(0.0, 2) == pytest.approx(math.sqrt(2) / (3 * math.pi), abs=1e-12)

    def test_support_boundary_and_outside(self):
        assert mckay_density(2 * math.sqrt(2), 2) == 0.0
        assert mckay_density(3.0, 2) == 0.0
        assert mckay_density(-5.0, 3) == 0.0

    def test_rejects_bad_q(self):
        with pytest.raises(ValueError):
            mckay_density(0.0, 0)

    @settings(max_examples=100, deadline=None)
    @given(lam=st.floats(-4.0, 4.0), q=st.integers(1, 5))
    def test_even(self, lam, q):
        assert mckay_density(lam, q) == pytest.approx(mckay_density(-lam, q), abs=1e-14)

    def test_vectorized(self):
        grid = np.linspace(-3, 3, 7)
        values = mckay_density(grid, 2)
        assert values.shape == grid.shape
        assert np.all(values >= 0)

    def test_reference_masses_sum_to_one(self):
        for q in (2, 3):
            edges = 0.25 * np.arange(-4 * (q + 1), 4 * (q + 1) + 1)
            masses = reference_bin_masses(edges, q)
            assert masses.sum() == pytest.approx(1.0, abs=1e-6)
            assert np.all(masses >= 0)


class TestDensityExperiment:
    def test_small_run_structure(self):
        report = density_experiment(2, [20, 40], bin_width=0.25, seed=123)
        assert report.sizes == [20, 40]
        for masses in report.empirical:
            assert masses.sum() == pytest.approx(1.0, abs=1e-12)
        assert report.reference.sum() == pytest.approx(1.0, abs=1e-6)
        assert len(report.l1_distance) == 2
        assert all(g is None or g >= 3 for g in report.girths)

    def test_deterministic(self):
        a = density_experiment(2, [20], seed=7)
        b = density_experiment(2, [20], seed=7)
        assert np.array_equal(a.empirical[0], b.empirical[0])
        assert a.l1_distance == b.l1_distance

    def test_infeasible_size_rejected(self):
        with pytest.raises(ValueError):
            density_experiment(2, [7], seed=0)  # 7 * 3 odd

    def test_rejects_small_q(self):
        with pytest.raises(ValueError):
            density_experiment(1, [10], seed=0)

    def test_spectrum_inside_degree_bound(self):
        report = density_experiment(2, [30], seed=5)
        # all mass lies inside [-(q+1), q+1] by construction of the bins
        assert report.bin_edges[0] == pytest.approx(-3.0)
        assert report.bin_edges[-1] == pytest.approx(3.0)

    def test_empirical_support_within_spectral_radius(self):
        # adjacency spectrum of a d-regular graph lies in [-d, d]
        from grover_zeta import adjacency_matrix, eigenvalues, random_regular_graph

        for seed in range(5):
            g = random_regular_graph(20, 3, seed=seed)
            spectrum = eigenvalues(adjacency_matrix(g), hermitian=True).values
            assert np.abs(spectrum).max() <= 3.0 + 1e-10


class TestFuzz:
    def test_healthy_run_all_green(self):
        summary = fuzz_identities(15, seed=0)
        assert summary.ok
        for name, stats_ in summary.checks.items():
            assert stats_.failed == 0, name
            assert stats_.passed > 0 or stats_.skipped > 0

    def test_two_hundred_cases_green_at_default_tolerances(self):
        summary = fuzz_identities(200, seed=314159)
        assert summary.ok, summary.failures[:5]
        for name, stats_ in summary.checks.items():
            assert stats_.failed == 0, name

    def test_single_case_on_small_seed(self):
        summary = fuzz_identities(1, seed=3)
        assert summary.ok
        assert summary.count == 1

    def test_check_subset_selection(self):
        summary = fuzz_identities(5, seed=1, checks=("determinant_identity",))
        assert list(summary.checks) == ["determinant_identity"]
        assert summary.ok

    def test_worst_residuals_are_tiny(self):
        summary = fuzz_identities(10, seed=2)
        for name, stats_ in summary.checks.items():
            if stats_.passed:
                assert stats_.worst <= 1e-7, name

    def test_rejects_bad_count(self):
        with pytest.raises(ValueError):
            fuzz_identities(0)

    def test_random_mixed_graph_connected(self):
        rng = np.random.default_rng(11)
        for _ in range(10):
            g = random_mixed_graph(rng)
            assert g.connected
            assert 4 <= g.n <= 10


class TestDefectInjection:
    def test_injected_defect_breaks_factorization(self):
        g = orient_random(cycle_graph(3), 1.0, phases="uniform", seed=3)
        bad = inject_phase_defect(g)
        residuals = identity_residuals(build_bundle(bad, check_table=False))
        assert residuals["factorization"] > 1e-3
        assert residuals["shift_involution"] > 1e-3
        # the clean graph passes the same checks
        clean = identity_residuals(build_bundle(g))
        assert max(clean.values()) <= 1e-12

    def test_requires_a_phased_arc(self, k4):
        with pytest.raises(ValueError):
            inject_phase_defect(k4)
