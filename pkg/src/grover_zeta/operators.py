"""Matrix operators of the twisted Grover walk on a mixed graph.

Builds, from one graph, the adjacency/degree/transition matrices, the
boundary matrix K (n x 2m), the coin C = 2 K*K - I, the phased arc-reversal
shift S, the twisted Grover matrix U = S C, the generalized Hermitian
adjacency matrix H (phases on directed edges, 1 on undirected), and its
degree normalization.  The algebra these satisfy (K K* = I, C^2 = S^2 = I,
U unitary, normalized H = K S K*) is what the zeta and trace-formula
modules rest on, so it is exposed as a residual report.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graphs import DIRECTED, MixedGraph
from .linalg import IdentityCheckError, as_matrix, max_abs

POSITIVE_SUPPORT_THRESHOLD = 1e-10


def adjacency_matrix(graph: MixedGraph) -> np.ndarray:
    a = np.zeros((graph.n, graph.n))
    for e in graph.edges:
        a[e.u, e.v] = 1.0
        a[e.v, e.u] = 1.0
    return a


@dataclass
class OperatorBundle:
    """All operator matrices of one mixed graph, in arc-id order.

    Matrix indices follow the arc ids of the graph (arc 2j, 2j+1 per edge);
    no reordering is applied, since every identity checked here is basis
    independent.
    """

    graph: MixedGraph
    adjacency: np.ndarray            # n x n, 0/1
    degrees: np.ndarray              # length n
    transition: np.ndarray           # n x n, random-walk matrix D^-1 A
    boundary: np.ndarray             # n x 2m, K[v, e] = 1/sqrt(deg v) if t(e) = v
    coin: np.ndarray                 # 2m x 2m, 2 K^T K - I
    shift: np.ndarray                # 2m x 2m, phased arc reversal
    grover: np.ndarray               # 2m x 2m, shift @ coin
    hermitian: np.ndarray            # n x n, phased Hermitian adjacency
    hermitian_normalized: np.ndarray  # n x n, D^-1/2 H D^-1/2

    @property
    def degree_matrix(self) -> np.ndarray:
        return np.diag(self.degrees.astype(float))


def build_bundle(graph: MixedGraph, check_table: bool = True, table_tol: float = 1e-12) -> OperatorBundle:
    """Construct every operator matrix from its definition.

    The Grover matrix is built as shift @ coin and independently re-derived
    from its closed-form entry table (2 e^{-i theta(e)} / deg t(f) on
    non-backtracking arc pairs with t(f) = o(e), and the 2/deg - 1 diagonal
    coin value on backtracks); the two constructions must agree entrywise.

    Raises ValueError on isolated vertices and IdentityCheckError when the
    entry-table cross-check fails.
    """
    n, m = graph.n, graph.m
    deg = graph.degrees.astype(float)
    if m == 0 or graph.degrees.min() == 0:
        raise ValueError("operator construction requires minimum degree >= 1")

    a = adjacency_matrix(graph)
    transition = a / deg[:, None]

    k = np.zeros((n, 2 * m))
    for arc in graph.arcs:
        k[arc.terminus, arc.id] = 1.0 / np.sqrt(deg[arc.terminus])
    coin = 2.0 * k.T @ k - np.eye(2 * m)

    shift = np.zeros((2 * m, 2 * m), dtype=complex)
    for arc in graph.arcs:
        partner = arc.id ^ 1
        shift[arc.id, partner] = np.exp(1j * graph.arcs[partner].theta)

    grover = shift @ coin.astype(complex)

    h = np.zeros((n, n), dtype=complex)
    for e in graph.edges:
        if e.kind == DIRECTED:
            h[e.u, e.v] = np.exp(1j * e.phase)
            h[e.v, e.u] = np.exp(-1j * e.phase)
        else:
            h[e.u, e.v] = 1.0
            h[e.v, e.u] = 1.0
    inv_sqrt = 1.0 / np.sqrt(deg)
    h_norm = inv_sqrt[:, None] * h * inv_sqrt[None, :]

    bundle = OperatorBundle(
        graph=graph,
        adjacency=a,
        degrees=graph.degrees.copy(),
        transition=transition,
        boundary=k,
        coin=coin,
        shift=shift,
        grover=grover,
        hermitian=h,
        hermitian_normalized=h_norm,
    )

    if check_table:
        gap = max_abs(grover - _grover_from_entry_table(graph))
        if gap > table_tol:
            raise IdentityCheckError(
                f"Grover matrix disagrees with its entry table by {gap:.3e}"
            )
    return bundle


def _grover_from_entry_table(graph: MixedGraph) -> np.ndarray:
    deg = graph.degrees.astype(float)
    two_m = 2 * graph.m
    u = np.zeros((two_m, two_m), dtype=complex)
    for e in graph.arcs:
        phase = np.exp(-1j * e.theta)
        for f_id in graph.arcs_in[e.origin]:
            # t(f) = o(e) by construction here
            if f_id == e.id ^ 1:
                u[e.id, f_id] = phase * (2.0 / deg[e.origin] - 1.0)
            else:
                u[e.id, f_id] = 2.0 * phase / deg[e.origin]
    return u


def identity_residuals(bundle: OperatorBundle) -> dict[str, float]:
    """Max elementwise deviation of each operator identity.

    Keys: boundary_isometry (K K* - I), coin_involution, shift_involution,
    grover_unitarity, hermiticity, and factorization (normalized Hermitian
    adjacency minus K S K*).  All are ~1e-15 for a valid graph; a broken
    phase assignment shows up in shift_involution and factorization.
    """
    k = bundle.boundary
    n = bundle.graph.n
    two_m = 2 * bundle.graph.m
    eye_n = np.eye(n)
    eye_2m = np.eye(two_m)
    s = bundle.shift
    u = bundle.grover
    h = bundle.hermitian
    return {
        "boundary_isometry": max_abs(k @ k.T - eye_n),
        "coin_involution": max_abs(bundle.coin @ bundle.coin - eye_2m),
        "shift_involution": max_abs(s @ s - eye_2m),
        "grover_unitarity": max_abs(u @ u.conj().T - eye_2m),
        "hermiticity": max_abs(h - h.conj().T),
        "factorization": max_abs(bundle.hermitian_normalized - k @ s @ k.T),
    }


def positive_support(m, threshold: float = POSITIVE_SUPPORT_THRESHOLD, imag_tol: float = 1e-12) -> np.ndarray:
    """Entrywise indicator of strictly positive entries of a real matrix.

    The threshold guards float noise around exact zeros (the 2/d - 1 coin
    value at degree 2); true positive entries are rationals no smaller than
    1/max-degree, far above it.
    """
    arr = as_matrix(m)
    if max_abs(arr.imag) > imag_tol:
        raise ValueError("positive support is only defined for real matrices")
    return (arr.real > threshold).astype(float)


def ihara_edge_matrix(graph: MixedGraph, bundle: OperatorBundle | None = None) -> np.ndarray:
    """Non-backtracking arc matrix B - J0 of a min-degree-2 undirected graph.

    B[e, f] = 1 iff t(e) = o(f) and J0 pairs each arc with its inverse, so
    the result has a 1 exactly on non-backtracking consecutive arc pairs.
    It must equal the positive support of the transposed Grover matrix;
    that equality is asserted here as part of the contract.
    """
    if not graph.is_undirected:
        raise ValueError("the edge matrix is defined for undirected graphs")
    if graph.m == 0 or graph.degrees.min() < 2:
        raise ValueError("the edge-matrix identity requires minimum degree >= 2 (md2)")
    two_m = 2 * graph.m
    b = np.zeros((two_m, two_m))
    for e in graph.arcs:
        for f_id in graph.arcs_out[e.terminus]:
            b[e.id, f_id] = 1.0
        b[e.id, e.id ^ 1] -= 1.0
    if bundle is None:
        bundle = build_bundle(graph)
    support = positive_support(bundle.grover.T)
    if not np.array_equal(support, b):
        raise IdentityCheckError(
            "positive support of the transposed Grover matrix differs from B - J0"
        )
    return b
