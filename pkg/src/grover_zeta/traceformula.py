"""Spectral angles, Fourier machinery, and numerical trace formulas.

For a connected (q+1)-regular mixed graph, every eigenvalue lambda of the
phased Hermitian adjacency matrix determines a spectral angle through
cos(theta) = lambda / (q+1); a trace formula equates a sum of an even test
function h over these angles with an identity term plus a weighted sum of
Fourier coefficients over prime cycle classes.

Trig polynomials h(theta) = a_0 + sum a_k cos(k theta) are the primary test
functions: their Fourier coefficients and integrals are exact and the cycle
sums truncate exactly, so any residual is a property of the formula itself,
not of quadrature.  The stated trace formulas are evaluated verbatim and
their residuals reported; the sum rule that is asserted is the one that
follows directly from the walk spectrum and the closed-walk counts N_p:

    sum_j h(theta_j) = n h^(0) + sum_p h^(p) [N_p - (m-n)(1 + (-1)^p)].
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .cycles import enumerate_prime_classes
from .graphs import MixedGraph, stats
from .linalg import IdentityCheckError, eigenvalues, trace_power
from .zeta import _as_bundle


@dataclass(frozen=True)
class TrigPolynomial:
    """Even trigonometric polynomial a_0 + sum_{k>=1} a_k cos(k theta).

    Even and 2-pi-periodic by construction; entire, so no analyticity strip
    needs tracking.  Fourier coefficients are exact: h^(0) = a_0 and
    h^(k) = a_k / 2 for 1 <= k <= degree, zero beyond.
    """

    coefficients: tuple

    def __post_init__(self):
        if len(self.coefficients) == 0:
            raise ValueError("need at least the constant coefficient")

    @classmethod
    def from_string(cls, text: str) -> "TrigPolynomial":
        return cls(tuple(float(tok) for tok in text.split(",")))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, theta) -> complex:
        total = complex(self.coefficients[0])
        for k in range(1, len(self.coefficients)):
            if self.coefficients[k] != 0.0:
                total += self.coefficients[k] * np.cos(k * theta)
        return complex(total)

    def fourier(self, k: int) -> complex:
        if k < 0:
            k = -k
        if k == 0:
            return complex(self.coefficients[0])
        if k <= self.degree:
            return complex(self.coefficients[k] / 2.0)
        return 0.0 + 0.0j


@dataclass(frozen=True)
class SampledTestFunction:
    """Even periodic test function known through point evaluation.

    Fourier coefficients use the uniform trapezoid rule on [0, 2 pi), which
    is spectrally accurate for smooth periodic functions.  Evenness,
    periodicity, and smoothness are the caller's responsibility.
    """

    func: object
    nodes: int = 256

    def fourier(self, k: int) -> complex:
        k = abs(k)
        if self.nodes < 4 * (k + 1):
            raise ValueError(f"need at least {4 * (k + 1)} nodes for coefficient {k}")
        grid = 2.0 * math.pi * np.arange(self.nodes) / self.nodes
        values = np.array([self.func(t) for t in grid], dtype=complex)
        return complex(np.mean(values * np.exp(1j * k * grid)))

    def __call__(self, theta) -> complex:
        return complex(self.func(theta))


def fourier_coeff(h, k: int) -> complex:
    """Fourier coefficient h^(k) = (1/2pi) integral of h(theta) e^{ik theta}."""
    return h.fourier(k)


@dataclass
class AngleSet:
    """Spectral angles with their source eigenvalues.

    Angles are real in [0, pi] for tempered eigenvalues and complex
    otherwise; tempered marks which.
    """

    angles: np.ndarray
    source: np.ndarray
    tempered: np.ndarray


def _require_connected_regular(graph: MixedGraph) -> int:
    st = stats(graph)
    if not graph.connected:
        raise ValueError("trace formulas require a connected graph")
    if st.regular_degree is None:
        raise ValueError("trace formulas require a regular graph")
    return st.regular_degree - 1


def grover_angles(g) -> AngleSet:
    """Angles theta_j = arccos(lambda_j / (q+1)) over the Hermitian spectrum.

    The eigenvalue bound |lambda| <= q+1 for regular mixed graphs keeps all
    angles real; lambda = q+1 maps to 0 and lambda = -(q+1) to pi.
    """
    bundle = _as_bundle(g)
    q = _require_connected_regular(bundle.graph)
    lam = eigenvalues(bundle.hermitian, hermitian=True).values
    ratio = np.clip(lam / (q + 1), -1.0, 1.0)
    angles = np.arccos(ratio)
    return AngleSet(
        angles=angles.astype(complex),
        source=lam,
        tempered=np.ones(len(lam), dtype=bool),
    )


def adjacency_angle(lam: float, q: int) -> tuple[complex, bool]:
    """Angle and temperedness of one adjacency eigenvalue.

    Tempered eigenvalues (|lambda| <= 2 sqrt(q)) give a real angle through
    lambda = 2 sqrt(q) cos(theta), with theta = 0 exactly at the boundary
    lambda = 2 sqrt(q).  The rest give real roots of q u^2 - lambda u + 1;
    the root inside the unit disk is kept and converted to the complex
    angle theta = -i log(sqrt(q) u), so test functions can still be
    evaluated at it.
    """
    bound = 2.0 * math.sqrt(q)
    if abs(lam) <= bound:
        return complex(math.acos(max(-1.0, min(1.0, lam / bound)))), True
    disc = math.sqrt(lam * lam - 4.0 * q)
    roots = ((lam - disc) / (2.0 * q), (lam + disc) / (2.0 * q))
    inner = min(roots, key=abs)
    return complex(-1j * np.log(complex(math.sqrt(q) * inner))), False


def ihara_angles(g) -> AngleSet:
    """Adjacency-spectrum angles lambda = 2 sqrt(q) cos(theta).

    Requires q >= 2: the tempered window degenerates at q = 1.
    """
    bundle = _as_bundle(g)
    q = _require_connected_regular(bundle.graph)
    if q < 2:
        raise ValueError("adjacency trace formula requires q >= 2")
    lam = eigenvalues(bundle.adjacency, hermitian=True).values
    angles = np.zeros(len(lam), dtype=complex)
    tempered = np.zeros(len(lam), dtype=bool)
    for i, lj in enumerate(lam):
        angles[i], tempered[i] = adjacency_angle(float(lj), q)
    return AngleSet(angles=angles, source=lam, tempered=tempered)


def oracle_spectral_sum(g, h: TrigPolynomial) -> complex:
    """Spectral sum of h reconstructed from closed-walk counts.

    Combines the walk spectrum decomposition (conjugate unit-circle pairs
    e^{+-i theta_j} plus 2(m-n) eigenvalues +-1) with N_p = Tr[(U^T)^p]:

        sum_j h(theta_j) = n h^(0) + sum_{p=1}^{deg h} h^(p) [N_p - (m-n)(1+(-1)^p)].

    Exact up to float roundoff for trig-polynomial h; this is the ground
    truth the trace-formula evaluations are asserted against.
    """
    if not isinstance(h, TrigPolynomial):
        raise ValueError("the spectral-sum oracle requires a trig-polynomial test function")
    bundle = _as_bundle(g)
    _require_connected_regular(bundle.graph)
    n, m = bundle.graph.n, bundle.graph.m
    ut = bundle.grover.T
    total = n * h.fourier(0)
    for p in range(1, h.degree + 1):
        hp = h.fourier(p)
        if hp == 0:
            continue
        n_p = trace_power(ut, p)
        total += hp * (n_p - (m - n) * (1 + (-1) ** p))
    return complex(total)


@dataclass
class TraceFormulaReport:
    """All the numbers of one trace-formula evaluation.

    formula_rhs is the right-hand side exactly as the formula states it
    (identity term plus cycle term); its residual against the spectral sum
    is reported but never asserted.  oracle_value re-derives the spectral
    sum from closed-walk counts and is asserted where applicable.
    truncation_bound is the tail bound of the cycle sum; zero for
    trig-polynomial test functions, whose Fourier tail vanishes.
    """

    lhs: complex
    identity_term: complex
    cycle_term: complex
    formula_rhs: complex
    formula_residual: complex
    oracle_value: complex | None
    oracle_residual: complex | None
    truncation_length: int
    truncation_bound: float
    lhs_all: complex | None = None


def _cycle_sum(graph: MixedGraph, h, max_degree: int, reduced_only: bool,
               class_weight) -> complex:
    """Sum over prime classes and powers k with k |C| <= degree of h."""
    if max_degree < 2:
        return 0.0 + 0.0j
    total = 0.0 + 0.0j
    for cls in enumerate_prime_classes(graph, max_degree, reduced_only=reduced_only):
        k = 1
        while k * cls.length <= max_degree:
            hk = h.fourier(k * cls.length)
            if hk != 0:
                total += cls.length * class_weight(cls, k) * hk
            k += 1
    return total


def evaluate_twisted_trace_formula(g, h: TrigPolynomial, max_length: int | None = None,
                                   oracle_tol: float = 1e-8) -> TraceFormulaReport:
    """Evaluate the twisted-walk trace formula on a (q+1)-regular graph, q > 1.

    lhs sums h over the Hermitian-spectrum angles.  The stated right-hand
    side is (m/2) (1/pi) integral_0^pi h + (1/2) sum over prime cycle
    classes of |C| w(C)^k h^(k|C|); both terms are computed exactly for
    trig-polynomial h.  The report carries the residual of that stated form
    (known to be nonzero already for h = 1) and the residual against the
    closed-walk oracle, which is asserted to vanish.
    """
    if not isinstance(h, TrigPolynomial):
        raise ValueError("trace-formula evaluation requires a trig-polynomial test function")
    bundle = _as_bundle(g)
    graph = bundle.graph
    q = _require_connected_regular(graph)
    if q <= 1:
        raise ValueError("the twisted trace formula assumes q > 1")
    degree = h.degree
    truncation = degree if max_length is None else max_length
    if truncation < degree:
        raise ValueError(f"truncation length {truncation} is below the test-function degree {degree}")

    angles = grover_angles(bundle)
    lhs = complex(np.sum([h(t) for t in angles.angles]))
    identity_term = (graph.m / 2.0) * h.fourier(0)
    cycle_term = 0.5 * _cycle_sum(
        graph, h, degree, reduced_only=False,
        class_weight=lambda cls, k: cls.weight ** k,
    )
    formula_rhs = identity_term + cycle_term
    oracle = oracle_spectral_sum(bundle, h)
    report = TraceFormulaReport(
        lhs=lhs,
        identity_term=complex(identity_term),
        cycle_term=complex(cycle_term),
        formula_rhs=complex(formula_rhs),
        formula_residual=complex(formula_rhs - lhs),
        oracle_value=oracle,
        oracle_residual=complex(oracle - lhs),
        truncation_length=truncation,
        truncation_bound=0.0,
    )
    if abs(report.oracle_residual) > oracle_tol:
        raise IdentityCheckError(
            f"spectral sum {lhs} disagrees with the closed-walk oracle {oracle}"
        )
    return report


def evaluate_grover_trace_formula(g, h: TrigPolynomial, max_length: int | None = None,
                                  oracle_tol: float = 1e-8) -> TraceFormulaReport:
    """Phase-free specialization of the twisted trace formula.

    Requires an all-undirected graph, where every cycle weight is real and
    the twisted evaluation reduces to the plain Grover one term by term.
    """
    bundle = _as_bundle(g)
    if not bundle.graph.is_undirected:
        raise ValueError("the phase-free trace formula requires an all-undirected graph")
    return evaluate_twisted_trace_formula(bundle, h, max_length=max_length, oracle_tol=oracle_tol)


def ahumada_kernel_integral(h, q: int, nodes: int = 2048) -> complex:
    """Composite trapezoid of sin^2(t) h(t) / ((q+1)^2 - 4q cos^2(t)) on [0, pi].

    The integrand extends to a smooth even 2-pi-periodic function and
    vanishes at both endpoints, so the uniform trapezoid rule is spectrally
    accurate here.
    """
    grid = np.linspace(0.0, math.pi, nodes)
    values = np.array([h(t) for t in grid], dtype=complex)
    kernel = np.sin(grid) ** 2 / ((q + 1) ** 2 - 4.0 * q * np.cos(grid) ** 2)
    integrand = kernel * values
    step = grid[1] - grid[0]
    total = step * (np.sum(integrand) - 0.5 * integrand[0] - 0.5 * integrand[-1])
    return complex(total)


def evaluate_ahumada(g, h: TrigPolynomial, max_length: int | None = None,
                     quad_nodes: int = 2048) -> TraceFormulaReport:
    """Evaluate the Ahumada trace formula for a (q+1)-regular graph, q >= 2.

    As stated, the left side sums h only over tempered adjacency angles
    (|lambda| <= 2 sqrt(q)); lhs_all additionally includes the complex
    angles of untempered eigenvalues, since the h = 1 sanity value n
    requires all of them.  The identity term is
    (2 n q (q+1) / pi) * kernel integral, evaluated by the trapezoid rule;
    the cycle term runs over reduced prime classes with weight
    q^{-k|C|/2}.  All residuals are reported, none asserted.
    """
    if not isinstance(h, TrigPolynomial):
        raise ValueError("the Ahumada evaluation requires a trig-polynomial test function")
    bundle = _as_bundle(g)
    graph = bundle.graph
    q = _require_connected_regular(graph)
    if q < 2:
        raise ValueError("the Ahumada trace formula requires q >= 2")
    degree = h.degree
    truncation = degree if max_length is None else max_length
    if truncation < degree:
        raise ValueError(f"truncation length {truncation} is below the test-function degree {degree}")

    angles = ihara_angles(bundle)
    lhs = complex(np.sum([h(t) for t, temp in zip(angles.angles, angles.tempered) if temp]))
    lhs_all = complex(np.sum([h(t) for t in angles.angles]))
    n = graph.n
    identity_term = (2.0 * n * q * (q + 1) / math.pi) * ahumada_kernel_integral(h, q, quad_nodes)
    cycle_term = _cycle_sum(
        graph, h, degree, reduced_only=True,
        class_weight=lambda cls, k: q ** (-k * cls.length / 2.0),
    )
    formula_rhs = identity_term + cycle_term
    return TraceFormulaReport(
        lhs=lhs,
        identity_term=complex(identity_term),
        cycle_term=complex(cycle_term),
        formula_rhs=complex(formula_rhs),
        formula_residual=complex(formula_rhs - lhs),
        oracle_value=None,
        oracle_residual=None,
        truncation_length=truncation,
        truncation_bound=0.0,
        lhs_all=lhs_all,
    )


@dataclass
class SeriesIdentityReport:
    """Coefficient comparison of the two log-derivative expansions.

    Index i of the coefficient arrays is the u^(i-1) Laurent coefficient
    (the first entry is the 1/u term, equal to n on both sides).
    """

    lhs_coefficients: np.ndarray
    rhs_coefficients: np.ndarray
    max_abs_diff: float


def _rational_identity_coefficients(n: int, q: int, order: int) -> np.ndarray:
    """Laurent coefficients of n (q u^2 - 1) / (u (u-1) (u+1)) for |u| < 1.

    Expanded honestly by convolving the geometric series of 1/(u-1) and
    1/(u+1) with the quadratic numerator and shifting for the 1/u factor.
    Returns orders -1 .. order as a dense array.
    """
    size = order + 3
    inv_u_minus_1 = -np.ones(size)                  # 1/(u-1) = -(1 + u + u^2 + ...)
    inv_u_plus_1 = np.array([(-1.0) ** k for k in range(size)])  # 1/(u+1)
    prod = np.convolve(inv_u_minus_1, inv_u_plus_1)[:size]
    numerator = np.zeros(size)
    numerator[0] = -n
    numerator[2] = n * q
    series = np.convolve(numerator, prod)[:size]     # n (q u^2 - 1) / ((u-1)(u+1))
    return series[: order + 2]                       # shift by 1/u: index i -> order i - 1


def log_derivative_series_check(g, order: int = 10) -> SeriesIdentityReport:
    """Coefficientwise check of the log-derivative identity behind the trace formula.

    For a connected (q+1)-regular graph, the negative log-derivative of the
    product form of the zeta function expands, per Hermitian eigenvalue
    root pair (u_j, 1/u_j), as 1/u + sum_k (u_j^{k+1} + u_j^{-(k+1)}) u^k;
    the determinant route expands as n (q u^2 - 1)/(u (u-1)(u+1)) plus
    sum_k N_k u^{k-1} with N_k the closed-walk counts.  Both Laurent
    expansions are computed independently and compared through the stated
    order.
    """
    bundle = _as_bundle(g)
    graph = bundle.graph
    q = _require_connected_regular(graph)
    n = graph.n
    lam = eigenvalues(bundle.hermitian, hermitian=True).values
    roots = [(lj + np.sqrt(complex(lj * lj - (q + 1) ** 2))) / (q + 1) for lj in lam]

    lhs = np.zeros(order + 2, dtype=complex)
    lhs[0] = n
    for k in range(0, order + 1):
        lhs[k + 1] = sum(u ** (k + 1) + u ** (-(k + 1)) for u in roots)

    rhs = _rational_identity_coefficients(n, q, order).astype(complex)
    ut = bundle.grover.T
    acc = np.eye(ut.shape[0], dtype=complex)
    for k in range(1, order + 2):
        acc = acc @ ut
        rhs[k] += np.trace(acc)  # N_k contributes to the u^{k-1} coefficient

    diff = float(np.abs(lhs - rhs).max())
    return SeriesIdentityReport(lhs_coefficients=lhs, rhs_coefficients=rhs, max_abs_diff=diff)
