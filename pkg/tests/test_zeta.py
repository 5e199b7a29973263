import numpy as np
import pytest

from grover_zeta import (
    MixedGraph,
    Edge,
    build_bundle,
    complete_graph,
    ihara_reciprocal,
    orient_random,
    path_graph,
    poles_regular,
    random_regular_graph,
    regular_product_reciprocal,
    series_coefficients,
    spectral_match_distance,
    spectrum_via_mapping,
    transition_form_reciprocal,
    zeta_reciprocal,
    zeta_reciprocal_reduced,
)


def random_points(rng, count, radius=0.9):
    r = radius * np.sqrt(rng.uniform(size=count))
    phi = 2 * np.pi * rng.uniform(size=count)
    return r * np.exp(1j * phi)


class TestDeterminantForms:
    def test_at_zero_everything_is_one(self, k4, c3, petersen, k4_phased):
        for g in (k4, c3, petersen, k4_phased):
            assert zeta_reciprocal(g, 0.0) == pytest.approx(1.0)
            assert zeta_reciprocal_reduced(g, 0.0) == pytest.approx(1.0)

    def test_k2_closed_form(self, k2):
        b = build_bundle(k2)
        for u in (0.25, -0.4 + 0.3j, 0.7j):
            expected = 1.0 - u * u
            assert zeta_reciprocal(b, u) == pytest.approx(expected)
            assert zeta_reciprocal_reduced(b, u) == pytest.approx(expected)

    def test_c3_internal_consistency_at_half(self, c3):
        b = build_bundle(c3)
        direct = zeta_reciprocal(b, 0.5)
        reduced = zeta_reciprocal_reduced(b, 0.5)
        assert abs(direct - reduced) <= 1e-10 * (1 + abs(direct))

    def test_k4_two_phased_edges_twenty_points(self):
        g = orient_random(complete_graph(4), 2 / 6, phases="uniform", seed=13)
        b = build_bundle(g)
        rng = np.random.default_rng(99)
        for u in random_points(rng, 20):
            direct = zeta_reciprocal(b, u)
            reduced = zeta_reciprocal_reduced(b, u, check=False)
            assert abs(direct - reduced) <= 1e-9 * (1 + abs(direct))

    def test_reduced_form_check_runs_inline(self, cubic_phased):
        # check=True re-verifies against the direct determinant for |u| <= 0.95
        b = build_bundle(cubic_phased)
        for u in (0.3, -0.6 + 0.2j, 0.9):
            zeta_reciprocal_reduced(b, u, check=True)

    def test_regular_product_form(self, k4, k4_phased, petersen):
        rng = np.random.default_rng(3)
        for g in (k4, k4_phased, petersen):
            b = build_bundle(g)
            for u in random_points(rng, 5):
                direct = zeta_reciprocal(b, u)
                product = regular_product_reciprocal(b, u)
                assert abs(direct - product) <= 1e-8 * (1 + abs(direct))

    def test_transition_form_at_zero_phase(self, k4, c5):
        rng = np.random.default_rng(4)
        for g in (k4, c5):
            b = build_bundle(g)
            for u in random_points(rng, 5):
                direct = zeta_reciprocal(b, u)
                reduced = transition_form_reciprocal(b, u)
                assert abs(direct - reduced) <= 1e-9 * (1 + abs(direct))

    def test_tree_prefactor_is_pole_not_zero(self, k2):
        # m - n = -1: the reduced form divides by (1 - u^2) and still matches
        value = zeta_reciprocal_reduced(k2, 0.5)
        assert value == pytest.approx(0.75)


class TestIhara:
    def test_k4_golden_product(self, k4):
        for u in (0.1, 0.2, 0.3):
            golden = (1 - u * u) ** 2 * (1 - u) * (1 - 2 * u) * (1 + u + 2 * u * u) ** 3
            assert ihara_reciprocal(k4, u) == pytest.approx(golden, rel=1e-10)

    def test_cycle_graph_closed_form(self, c5):
        for u in (0.2, 0.5, -0.3):
            assert ihara_reciprocal(c5, u) == pytest.approx((1 - u**5) ** 2, rel=1e-10)

    def test_at_zero(self, petersen):
        assert ihara_reciprocal(petersen, 0.0) == pytest.approx(1.0)

    def test_preconditions(self, k4_phased):
        with pytest.raises(ValueError):
            ihara_reciprocal(path_graph(3), 0.1)  # md2 violated
        with pytest.raises(ValueError):
            ihara_reciprocal(k4_phased, 0.1)  # directed edges
        disconnected = MixedGraph(6, [Edge(0, 1), Edge(1, 2), Edge(0, 2),
                                      Edge(3, 4), Edge(4, 5), Edge(3, 5)])
        with pytest.raises(ValueError):
            ihara_reciprocal(disconnected, 0.1)


class TestSpectralMapping:
    def test_c3_expected_multiset(self, c3):
        result = spectrum_via_mapping(c3)
        omega = np.exp(2j * np.pi / 3)
        expected = np.array([1.0, 1.0, omega, omega, np.conj(omega), np.conj(omega)])
        assert spectral_match_distance(result.predicted, expected) <= 1e-7
        assert result.padding == 0

    def test_k2_tree_cancellation(self, k2):
        result = spectrum_via_mapping(k2)
        assert result.padding == -1
        assert spectral_match_distance(result.predicted, np.array([1.0, -1.0])) <= 1e-9

    def test_directed_k2_with_phase(self):
        g = MixedGraph(2, [Edge(0, 1, "directed", 1.1)])
        result = spectrum_via_mapping(g)
        assert spectral_match_distance(result.predicted, np.array([1.0, -1.0])) <= 1e-9

    def test_phased_cases(self, k4_phased, cubic_phased):
        for g in (k4_phased, cubic_phased):
            result = spectrum_via_mapping(g)
            assert result.max_distance <= 1e-7
            assert result.padding == g.m - g.n

    def test_requires_connected(self):
        disconnected = MixedGraph(6, [Edge(0, 1), Edge(1, 2), Edge(0, 2),
                                      Edge(3, 4), Edge(4, 5), Edge(3, 5)])
        with pytest.raises(ValueError):
            spectrum_via_mapping(disconnected)


class TestSeries:
    def test_c3_coefficients(self, c3):
        series = series_coefficients(c3, 6)
        assert np.allclose(series.coefficients[:3], [0.0, 0.0, 6.0], atol=1e-12)
        assert series.provenance == "trace"

    def test_k2_coefficients(self, k2):
        series = series_coefficients(k2, 4)
        assert np.allclose(series.coefficients, [0.0, 2.0, 0.0, 2.0], atol=1e-12)

    def test_loopless_first_coefficient_vanishes(self, k4, petersen, k4_phased):
        for g in (k4, petersen, k4_phased):
            assert abs(series_coefficients(g, 1).coefficients[0]) <= 1e-12

    def test_zero_phase_coefficients_real(self, petersen):
        series = series_coefficients(petersen, 8)
        assert np.abs(series.coefficients.imag).max() <= 1e-9

    def test_series_consistency_with_determinant(self, k4, cubic_phased):
        order = 10
        for g in (k4, cubic_phased):
            b = build_bundle(g)
            series = series_coefficients(b, order)
            for u in (0.3, 0.2 * np.exp(0.7j), -0.25):
                product = series.zeta_value(u) * zeta_reciprocal(b, u)
                bound = abs(u) ** (order + 1) * 2 * g.m * 3
                assert abs(product - 1.0) <= bound

    def test_radius_guard(self, k4):
        series = series_coefficients(k4, 3)
        with pytest.raises(ValueError):
            series.zeta_value(0.99)


class TestPoles:
    def test_k4_pole_set(self, k4):
        poleset = poles_regular(k4)
        expected = {
            (1.0, 0.0): 4,   # double pole from lambda = 3 plus m - n = 2 padding
            (-1.0, 0.0): 2,
            (-1 / 3, np.sqrt(8) / 3): 3,
            (-1 / 3, -np.sqrt(8) / 3): 3,
        }
        assert poleset.total_multiplicity == 12
        for loc, mult in poleset.poles:
            key = min(expected, key=lambda t: abs(complex(*t) - loc))
            assert abs(complex(*key) - loc) <= 1e-9
            assert expected[key] == mult

    def test_c3_pole_set(self, c3):
        poleset = poles_regular(c3)
        assert poleset.total_multiplicity == 6
        locs = sorted((loc.real, loc.imag) for loc, _ in poleset.poles)
        assert locs[0] == pytest.approx((-0.5, -np.sqrt(3) / 2))
        assert locs[-1] == pytest.approx((1.0, 0.0))

    def test_unit_circle_for_interior_eigenvalues(self, cubic_phased):
        poleset = poles_regular(cubic_phased)
        assert poleset.total_multiplicity == 2 * cubic_phased.m

    def test_rejects_irregular(self):
        with pytest.raises(ValueError):
            poles_regular(path_graph(4))

    def test_random_regular_phased_total(self):
        g = orient_random(random_regular_graph(10, 4, seed=2), 0.4, phases="uniform", seed=3)
        assert poles_regular(g).total_multiplicity == 2 * g.m
