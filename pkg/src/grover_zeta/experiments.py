"""Desk-scale statistical and fuzzing experiments over the identity suite.

Two drivers live here: a spectral-density experiment comparing eigenvalue
histograms of random regular graphs against the limiting density

    phi(x) = (q+1) / (2 pi) * sqrt(4q - x^2) / ((q+1)^2 - x^2),  |x| <= 2 sqrt(q),

and a batch fuzzer that generates random mixed graphs (random sizes,
orientation fractions, and phases) and runs every identity check the other
modules expose, reporting pass/fail counts and worst residuals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .cycles import (
    EnumerationBudgetError,
    closed_walk_weight_sums,
    euler_log_coefficients,
    transition_table,
)
from .graphs import Edge, GenerationError, MixedGraph, girth, orient_random, random_regular_graph, stats
from .linalg import IdentityCheckError, eigenvalues
from .operators import adjacency_matrix, build_bundle, identity_residuals
from .zeta import poles_regular, series_coefficients, spectrum_via_mapping, zeta_reciprocal, zeta_reciprocal_reduced


def mckay_density(lam, q: int):
    """Limiting spectral density of large random (q+1)-regular graphs.

    Zero outside |lam| <= 2 sqrt(q), including at the support boundary.
    Accepts scalars or arrays.
    """
    if q < 1:
        raise ValueError("q must be >= 1")
    lam_arr = np.asarray(lam, dtype=float)
    radicand = 4.0 * q - lam_arr**2
    inside = radicand > 0.0
    values = np.zeros_like(lam_arr)
    np.divide(
        (q + 1) / (2.0 * math.pi) * np.sqrt(np.where(inside, radicand, 0.0)),
        (q + 1) ** 2 - lam_arr**2,
        out=values,
        where=inside,
    )
    return values if values.ndim else float(values)


def reference_bin_masses(bin_edges, q: int, points: int = 10) -> np.ndarray:
    """Integral of the limiting density over each bin, by 10-point Gauss rules.

    Each bin is clipped to the support and integrated in the angle variable
    lam = 2 sqrt(q) sin(psi), which removes the square-root behaviour at the
    support edge, so the fixed-order rule is accurate to machine precision.
    """
    edges = np.asarray(bin_edges, dtype=float)
    bound = 2.0 * math.sqrt(q)
    nodes, weights = np.polynomial.legendre.leggauss(points)
    masses = np.zeros(len(edges) - 1)
    psi_edges = np.arcsin(np.clip(edges / bound, -1.0, 1.0))
    for i in range(len(masses)):
        lo, hi = psi_edges[i], psi_edges[i + 1]
        if hi <= lo:
            continue
        half = 0.5 * (hi - lo)
        mid = 0.5 * (hi + lo)
        psi = mid + half * nodes
        integrand = (q + 1) / (2.0 * math.pi) * 4.0 * q * np.cos(psi) ** 2 / (
            (q + 1) ** 2 - 4.0 * q * np.sin(psi) ** 2
        )
        masses[i] = half * np.dot(weights, integrand)
    return masses


@dataclass
class DensityReport:
    """Histogram-vs-density comparison for one q and several graph sizes."""

    q: int
    sizes: list
    bin_edges: np.ndarray
    reference: np.ndarray
    empirical: list          # normalized histogram per size
    l1_distance: list        # sum |empirical - reference| per size
    girths: list
    seed: object = None


def density_experiment(q: int, sizes, bin_width: float = 0.25, seed=None) -> DensityReport:
    """Sample one random (q+1)-regular graph per size and histogram its spectrum.

    Bins of the given width are aligned to zero and cover [-(q+1), q+1],
    which contains the whole adjacency spectrum of a (q+1)-regular graph.
    Each size draws from its own RNG stream spawned from (seed, index), so
    runs are deterministic and sizes are independent.
    """
    if q < 2:
        raise ValueError("density experiment requires q >= 2")
    d = q + 1
    for n in sizes:
        if n * d % 2 != 0:
            raise ValueError(f"size {n} is infeasible for degree {d} (n*d must be even)")
    half_bins = math.ceil(d / bin_width)
    edges = bin_width * np.arange(-half_bins, half_bins + 1)
    reference = reference_bin_masses(edges, q)

    streams = np.random.SeedSequence(seed).spawn(len(sizes))
    empirical, l1s, girths = [], [], []
    for n, stream in zip(sizes, streams):
        graph = random_regular_graph(n, d, seed=stream)
        spectrum = eigenvalues(adjacency_matrix(graph), hermitian=True).values
        clipped = np.clip(spectrum, edges[0], edges[-1])
        hist, _ = np.histogram(clipped, bins=edges)
        masses = hist / float(n)
        empirical.append(masses)
        l1s.append(float(np.abs(masses - reference).sum()))
        girths.append(girth(graph))
    return DensityReport(
        q=q,
        sizes=list(sizes),
        bin_edges=edges,
        reference=reference,
        empirical=empirical,
        l1_distance=l1s,
        girths=girths,
        seed=seed,
    )


# ---------------------------------------------------------------------------
# Identity fuzzing
# ---------------------------------------------------------------------------

ALL_CHECKS = (
    "determinant_identity",
    "operator_algebra",
    "spectral_mapping",
    "walk_counts",
    "euler_product",
    "spectral_bounds",
)

DEFAULT_CHECK_TOLERANCES = {
    "determinant_identity": 1e-9,
    "operator_algebra": 1e-10,
    "spectral_mapping": 1e-7,
    "walk_counts": 1e-9,
    "euler_product": 1e-9,
    "spectral_bounds": 1e-8,
}


@dataclass
class CheckStats:
    passed: int = 0
    failed: int = 0
    skipped: int = 0
    worst: float = 0.0

    def record(self, ok: bool, residual: float) -> None:
        if ok:
            self.passed += 1
        else:
            self.failed += 1
        self.worst = max(self.worst, residual)

    def skip(self) -> None:
        self.skipped += 1


@dataclass
class FuzzSummary:
    count: int
    seed: object
    checks: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def random_mixed_graph(rng: np.random.Generator, n_low: int = 4, n_high: int = 10,
                       max_attempts: int = 200) -> MixedGraph:
    """A random connected mixed graph with random orientations and phases.

    Half the draws are random regular graphs (degree 2..4), half are sparse
    binomial graphs; a uniform fraction of edges is then directed with
    uniform phases.  Densities stay modest so the walk-enumeration oracles
    remain affordable.
    """
    for _ in range(max_attempts):
        n = int(rng.integers(n_low, n_high + 1))
        if rng.random() < 0.5:
            feasible = [d for d in (2, 3, 4) if d < n and n * d % 2 == 0]
            d = int(rng.choice(feasible))
            try:
                base = random_regular_graph(n, d, seed=rng)
            except GenerationError:
                continue
        else:
            p = min(0.45, 2.8 / (n - 1))
            edges = [
                Edge(i, j)
                for i in range(n)
                for j in range(i + 1, n)
                if rng.random() < p
            ]
            if not edges:
                continue
            base = MixedGraph(n, edges)
            if base.degrees.min() < 1:
                continue
        if not base.connected:
            continue
        fraction = float(rng.uniform())
        return orient_random(base, fraction, phases="uniform", seed=rng)
    raise GenerationError(f"failed to draw a connected graph in {max_attempts} attempts")


def _estimate_walk_work(graph: MixedGraph, depth: int) -> int:
    branch = max((len(row) for row in transition_table(graph)), default=0)
    return 2 * graph.m * (branch ** max(depth - 1, 0) + 1)


def fuzz_identities(count: int, seed=None, checks=ALL_CHECKS, u_samples: int = 5,
                    walk_order: int = 6, walk_budget: int = 400_000,
                    tolerances=None) -> FuzzSummary:
    """Generate random mixed graphs and run the whole identity suite on each.

    Checks: the determinant identity at random points |u| <= 0.9, the
    operator algebra residuals, the spectral mapping of the walk matrix,
    closed-walk counts against matrix traces, the Euler-product coefficient
    assembly, and the eigenvalue bounds and pole structure.  Failures are
    data, not exceptions; the summary carries counts and worst residuals.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    tol = dict(DEFAULT_CHECK_TOLERANCES)
    if tolerances:
        tol.update(tolerances)
    rng = np.random.default_rng(seed)
    summary = FuzzSummary(count=count, seed=seed,
                          checks={name: CheckStats() for name in checks})

    for case in range(count):
        graph = random_mixed_graph(rng)
        st = stats(graph)
        try:
            bundle = build_bundle(graph)
        except IdentityCheckError as exc:
            for name in checks:
                summary.checks[name].skip()
            summary.failures.append(f"case {case}: bundle construction failed: {exc}")
            continue

        if "determinant_identity" in checks:
            worst = 0.0
            for _ in range(u_samples):
                u = 0.9 * math.sqrt(rng.uniform()) * np.exp(2j * math.pi * rng.uniform())
                direct = zeta_reciprocal(bundle, u)
                reduced = zeta_reciprocal_reduced(bundle, u, check=False)
                worst = max(worst, abs(direct - reduced) / (1.0 + abs(direct)))
            ok = worst <= tol["determinant_identity"]
            summary.checks["determinant_identity"].record(ok, worst)
            if not ok:
                summary.failures.append(f"case {case}: determinant identity residual {worst:.3e}")

        if "operator_algebra" in checks:
            residuals = identity_residuals(bundle)
            worst = max(residuals.values())
            ok = worst <= tol["operator_algebra"]
            summary.checks["operator_algebra"].record(ok, worst)
            if not ok:
                summary.failures.append(f"case {case}: operator algebra residual {worst:.3e}")

        if "spectral_mapping" in checks:
            try:
                mapping = spectrum_via_mapping(bundle)
                summary.checks["spectral_mapping"].record(True, mapping.max_distance)
            except IdentityCheckError as exc:
                summary.checks["spectral_mapping"].record(False, math.inf)
                summary.failures.append(f"case {case}: spectral mapping failed: {exc}")

        if "walk_counts" in checks:
            if _estimate_walk_work(graph, walk_order) > walk_budget:
                summary.checks["walk_counts"].skip()
            else:
                brute = closed_walk_weight_sums(graph, walk_order, budget=walk_budget * 4)
                trace_route = series_coefficients(bundle, walk_order).coefficients
                worst = float(np.abs(brute - trace_route).max())
                ok = worst <= tol["walk_counts"]
                summary.checks["walk_counts"].record(ok, worst)
                if not ok:
                    summary.failures.append(f"case {case}: walk counts residual {worst:.3e}")

        if "euler_product" in checks:
            try:
                euler = euler_log_coefficients(graph, walk_order, check=False,
                                               budget=walk_budget * 4)
                trace_route = series_coefficients(bundle, walk_order).coefficients
                worst = float(np.abs(euler.coefficients - trace_route).max())
                ok = worst <= tol["euler_product"]
                summary.checks["euler_product"].record(ok, worst)
                if not ok:
                    summary.failures.append(f"case {case}: Euler coefficients residual {worst:.3e}")
            except EnumerationBudgetError:
                summary.checks["euler_product"].skip()

        if "spectral_bounds" in checks:
            norm_spec = eigenvalues(bundle.hermitian_normalized, hermitian=True).values
            worst = max(0.0, float(np.abs(norm_spec).max()) - 1.0)
            ok = worst <= 1e-10
            messages = []
            if st.regular_degree is not None:
                q = st.regular_degree - 1
                herm_spec = eigenvalues(bundle.hermitian, hermitian=True).values
                excess = max(0.0, float(np.abs(herm_spec).max()) - (q + 1))
                worst = max(worst, excess)
                if excess > tol["spectral_bounds"]:
                    ok = False
                try:
                    poles_regular(bundle)
                except IdentityCheckError as exc:
                    ok = False
                    messages.append(f"case {case}: pole structure failed: {exc}")
            summary.checks["spectral_bounds"].record(ok, worst)
            if not ok:
                messages.append(f"case {case}: spectral bounds residual {worst:.3e}")
                summary.failures.extend(messages)

    return summary


def inject_phase_defect(graph: MixedGraph) -> MixedGraph:
    """Return a copy of the graph with one arc phase corrupted.

    Negates the phase of one directed arc without touching its partner,
    breaking the antisymmetry theta(inverse arc) = -theta(arc) that the
    shift-operator algebra rests on.  Testing hook for the fuzz harness:
    the factorization and shift-involution residuals must blow up on the
    result.  Requires a directed edge with phase away from 0 and pi.
    """
    target = None
    for arc in graph.arcs:
        if abs(math.sin(arc.theta)) > 1e-3:
            target = arc.id
            break
    if target is None:
        raise ValueError("graph has no phased directed arc to corrupt")
    bad = object.__new__(MixedGraph)
    bad.__dict__.update(graph.__dict__)
    arcs = list(graph.arcs)
    arcs[target] = replace(arcs[target], theta=-arcs[target].theta)
    bad.arcs = tuple(arcs)
    return bad
