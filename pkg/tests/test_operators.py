import numpy as np
import pytest

from grover_zeta import (
    DIRECTED,
    Edge,
    IdentityCheckError,
    MixedGraph,
    build_bundle,
    complete_graph,
    cycle_graph,
    eigenvalues,
    identity_residuals,
    ihara_edge_matrix,
    orient_random,
    path_graph,
    petersen_graph,
    positive_support,
    stats,
)

CORPUS_TOL = 1e-12


def corpus():
    return [
        complete_graph(2),
        cycle_graph(3),
        cycle_graph(4),
        complete_graph(4),
        petersen_graph(),
        path_graph(4),
        orient_random(complete_graph(4), 0.5, phases="uniform", seed=42),
        orient_random(petersen_graph(), 0.8, phases="uniform", seed=1),
        orient_random(cycle_graph(5), 1.0, phases="uniform", seed=2),
    ]


class TestBundleExamples:
    def test_k2_hand_evaluation(self, k2):
        b = build_bundle(k2)
        swap = np.array([[0.0, 1.0], [1.0, 0.0]])
        assert np.array_equal(b.coin, np.eye(2))
        assert np.array_equal(b.shift.real, swap) and np.all(b.shift.imag == 0)
        assert np.array_equal(b.grover, b.shift)
        assert np.array_equal(b.hermitian.real, swap)

    def test_k2_directed_with_phase(self):
        alpha = 0.8
        g = MixedGraph(2, [Edge(0, 1, DIRECTED, alpha)])
        b = build_bundle(g)
        # (S)_{e, e^-1} = e^{i theta(e^-1)} = e^{-i alpha} for the forward arc
        assert b.shift[0, 1] == pytest.approx(np.exp(-1j * alpha))
        assert b.shift[1, 0] == pytest.approx(np.exp(1j * alpha))
        assert b.hermitian[0, 1] == pytest.approx(np.exp(1j * alpha))
        assert b.hermitian[1, 0] == pytest.approx(np.exp(-1j * alpha))
        assert identity_residuals(b)["factorization"] <= CORPUS_TOL

    def test_c3_grover_entries_degree_two(self, c3):
        u = build_bundle(c3).grover
        for e in c3.arcs:
            for f in c3.arcs:
                expected = 0.0
                if f.terminus == e.origin:
                    expected = 0.0 if f.id == e.id ^ 1 else 1.0  # 2/2 - 1 vs 2/2
                assert u[e.id, f.id] == pytest.approx(expected, abs=1e-15)

    def test_isolated_vertex_rejected(self):
        with pytest.raises(ValueError):
            build_bundle(MixedGraph(3, [Edge(0, 1)]))


class TestAlgebraicIdentities:
    @pytest.mark.parametrize("idx", range(9))
    def test_residuals_small_on_corpus(self, idx):
        g = corpus()[idx]
        residuals = identity_residuals(build_bundle(g))
        for name, value in residuals.items():
            assert value <= CORPUS_TOL, f"{name} residual {value:.3e} on graph {idx}"

    def test_entry_table_check_is_contractual(self, k4_phased):
        # build_bundle itself raises if the two constructions disagree
        build_bundle(k4_phased, table_tol=1e-13)

    def test_theta_zero_reduction(self, k4):
        b = build_bundle(k4)
        assert np.array_equal(b.hermitian.real, b.adjacency)
        assert np.all(b.hermitian.imag == 0)
        assert np.array_equal(b.transition, b.adjacency / 3.0)
        assert np.all(b.grover.imag == 0)

    def test_phase_zero_directed_equals_undirected(self, c3):
        # a tournament orientation with zero phases is operator-equivalent to
        # the plain graph: H is real and equals A, and the walk matrix only
        # changes by the arc relabeling of the flipped edges
        g = orient_random(c3, 1.0, phases="zero", seed=5)
        b = build_bundle(g)
        b0 = build_bundle(c3)
        assert np.all(b.hermitian.imag == 0)
        assert np.array_equal(b.hermitian.real, b.adjacency)
        assert np.all(b.grover.imag == 0)
        from grover_zeta import eigenvalues, spectral_match_distance
        assert spectral_match_distance(eigenvalues(b.grover).values,
                                       eigenvalues(b0.grover).values) <= 1e-10

    def test_spectral_bound_regular(self, k4_phased):
        b = build_bundle(k4_phased)
        q = stats(k4_phased).regular_degree - 1
        vals = eigenvalues(b.hermitian, hermitian=True).values
        assert np.abs(vals).max() <= q + 1 + 1e-8

    def test_normalized_spectrum_in_unit_interval(self):
        for g in corpus():
            vals = eigenvalues(build_bundle(g).hermitian_normalized, hermitian=True).values
            assert np.abs(vals).max() <= 1.0 + 1e-10


class TestPositiveSupport:
    def test_sign_pattern(self):
        m = np.array([[0.5, -1.0], [0.0, 2.0]])
        assert np.array_equal(positive_support(m), np.array([[1.0, 0.0], [0.0, 1.0]]))

    def test_zero_matrix(self):
        assert np.array_equal(positive_support(np.zeros((3, 3))), np.zeros((3, 3)))

    def test_rejects_complex(self):
        with pytest.raises(ValueError):
            positive_support(np.array([[1.0 + 1e-6j]]))

    def test_c3_grover_support_is_edge_matrix(self, c3):
        b = build_bundle(c3)
        assert np.array_equal(positive_support(b.grover), ihara_edge_matrix(c3).T)


class TestIharaEdgeMatrix:
    def test_c3_one_continuation_per_arc(self, c3):
        m = ihara_edge_matrix(c3)
        assert np.array_equal(m.sum(axis=1), np.ones(6))

    def test_k4_row_sums_equal_q(self, k4):
        m = ihara_edge_matrix(k4)
        assert np.array_equal(m.sum(axis=1), np.full(12, 2.0))

    def test_path_violates_md2(self):
        with pytest.raises(ValueError, match="md2"):
            ihara_edge_matrix(path_graph(3))

    def test_rejects_directed(self, k4_phased):
        with pytest.raises(ValueError):
            ihara_edge_matrix(k4_phased)


def test_broken_phases_detected_by_entry_table(k4_phased):
    from grover_zeta import inject_phase_defect

    bad = inject_phase_defect(k4_phased)
    with pytest.raises(IdentityCheckError):
        build_bundle(bad)
