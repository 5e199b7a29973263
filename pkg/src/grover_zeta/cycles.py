"""Closed arc walks, prime cycle classes, and the combinatorial N_k oracle.

A cycle is a closed sequence of consecutive arcs (the terminus of each arc
is the origin of the next, wrapping around).  Each consecutive pair (e, f)
carries the weight

    w(e, f) = 2 e^{-i theta(f)} / deg t(e)       non-backtracking step,
              e^{-i theta(f)} (2 / deg t(e) - 1)  backtracking step (f = e^-1),
              0                                   arcs not consecutive,

which is exactly the (e, f)-entry of the transposed twisted Grover matrix.
Summing cycle weights over all based closed walks of length k therefore
reproduces Tr[(U^T)^k]; that equality is the module's central oracle.
Prime cycle classes (rotation classes of closed walks that are not powers
of shorter ones) assemble the same coefficients through the Euler product.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from .graphs import MixedGraph
from .linalg import IdentityCheckError
from .zeta import ZetaSeries, _as_bundle, series_coefficients

DEFAULT_BUDGET = 20_000_000


class EnumerationBudgetError(RuntimeError):
    """Walk enumeration exceeded its configured work budget."""


def step_weight(graph: MixedGraph, e_id: int, f_id: int) -> complex:
    """Weight w(e, f) of one step of a cycle; zero for non-consecutive arcs."""
    e = graph.arcs[e_id]
    f = graph.arcs[f_id]
    if e.terminus != f.origin:
        return 0.0 + 0.0j
    d = float(graph.degrees[e.terminus])
    if f_id == e_id ^ 1:
        return cmath.exp(-1j * f.theta) * (2.0 / d - 1.0)
    return 2.0 * cmath.exp(-1j * f.theta) / d


def transition_table(graph: MixedGraph):
    """Per-arc list of (next arc, step weight) with zero weights pruned.

    The only vanishing consecutive weight is a backtrack at a degree-2
    vertex, so pruning keeps cycle families on C_n graphs tractable without
    dropping anything that could contribute.
    """
    table = []
    for e in graph.arcs:
        row = []
        for f_id in graph.arcs_out[e.terminus]:
            w = step_weight(graph, e.id, f_id)
            if w != 0:
                row.append((f_id, w))
        table.append(row)
    return table


def cycle_weight(graph: MixedGraph, arcs, matrix=None, check: bool = True,
                 tol: float = 1e-12) -> complex:
    """Product of step weights around a closed arc sequence.

    Includes the wrap-around step (last arc, first arc).  When check is on,
    the product is recomputed from the entries of the transposed Grover
    matrix and the two must agree; that assertion is part of the contract.
    """
    arcs = list(arcs)
    if not arcs:
        raise ValueError("empty arc sequence")
    for i, e_id in enumerate(arcs):
        f_id = arcs[(i + 1) % len(arcs)]
        if graph.arcs[e_id].terminus != graph.arcs[f_id].origin:
            raise ValueError(f"arc sequence is not closed at position {i}")
    weight = 1.0 + 0.0j
    for i, e_id in enumerate(arcs):
        weight *= step_weight(graph, e_id, arcs[(i + 1) % len(arcs)])
    if check:
        ut = _as_bundle(graph).grover.T if matrix is None else matrix
        from_matrix = 1.0 + 0.0j
        for i, e_id in enumerate(arcs):
            from_matrix *= ut[e_id, arcs[(i + 1) % len(arcs)]]
        if abs(weight - from_matrix) > tol:
            raise IdentityCheckError(
                f"cycle weight {weight} disagrees with matrix-entry product {from_matrix}"
            )
    return weight


def closed_walk_weight_sums(graph: MixedGraph, max_length: int,
                            budget: int = DEFAULT_BUDGET) -> np.ndarray:
    """Sum of w(C) over all based closed arc walks, per length 1..max_length.

    Depth-first enumeration over arc sequences with nonzero step weights;
    each starting arc counts separately, matching trace semantics.  Entry k
    of the result is the weighted closed-walk count N_k.
    """
    if max_length < 1:
        raise ValueError("max_length must be >= 1")
    table = transition_table(graph)
    close_map = [dict(row) for row in table]
    totals = np.zeros(max_length + 1, dtype=complex)
    work = 0

    def walk(start: int, origin: int, e_id: int, depth: int, prod: complex) -> None:
        nonlocal work
        work += 1
        if work > budget:
            raise EnumerationBudgetError(
                f"closed-walk enumeration exceeded budget {budget} (work {work})"
            )
        if graph.arcs[e_id].terminus == origin:
            w_close = close_map[e_id].get(start)
            if w_close is not None:
                totals[depth] += prod * w_close
        if depth < max_length:
            for f_id, w in table[e_id]:
                walk(start, origin, f_id, depth + 1, prod * w)

    for start in range(2 * graph.m):
        walk(start, graph.arcs[start].origin, start, 1, 1.0 + 0.0j)
    return totals[1:]


def n_k_bruteforce(graph: MixedGraph, k: int, budget: int = DEFAULT_BUDGET) -> complex:
    """Brute-force weighted count of closed arc walks of length k."""
    return complex(closed_walk_weight_sums(graph, k, budget=budget)[k - 1])


@dataclass(frozen=True)
class PrimeCycleClass:
    """A rotation class of prime cycles, keyed by its canonical representative.

    The representative is the lexicographically least rotation of the arc-id
    sequence.  Primality means the sequence is not a repetition of a shorter
    one, which also forces its rotations to be pairwise distinct, so the
    class size equals the length.  reduced means no step backtracks,
    including the wrap-around step.
    """

    arcs: tuple
    length: int
    weight: complex
    reduced: bool

    def inverse_arcs(self) -> tuple:
        """Canonical representative of the inverse class."""
        rev = tuple((a ^ 1) for a in reversed(self.arcs))
        return _min_rotation(rev)


def _min_rotation(seq: tuple) -> tuple:
    return min(tuple(seq[i:] + seq[:i]) for i in range(len(seq)))


def _is_primitive(seq: tuple) -> bool:
    r = len(seq)
    for p in range(1, r):
        if r % p == 0 and seq == seq[p:] + seq[:p]:
            return False
    return True


def enumerate_prime_classes(graph: MixedGraph, max_length: int, reduced_only: bool = False,
                            budget: int = DEFAULT_BUDGET) -> list[PrimeCycleClass]:
    """All prime cycle classes with length <= max_length, weights attached.

    A class and its inverse are distinct classes in general and both appear.
    Enumeration starts each walk at its minimal arc id and prunes zero-weight
    steps, so classes whose weight vanishes (degree-2 backtracks) are
    skipped; they contribute nothing to any weighted sum.  When reduced_only
    is set, only classes without backtracking or tail are returned, as the
    Ihara-side formulas require.
    """
    if max_length < 2:
        raise ValueError("max_length must be >= 2 (loopless graphs have no shorter cycles)")
    bundle = _as_bundle(graph)
    ut = bundle.grover.T
    table = transition_table(graph)
    close_map = [dict(row) for row in table]
    found: dict[tuple, PrimeCycleClass] = {}
    work = 0

    def extend(start: int, origin: int, path: list) -> None:
        nonlocal work
        work += 1
        if work > budget:
            raise EnumerationBudgetError(
                f"class enumeration exceeded budget {budget} (work {work})"
            )
        e_id = path[-1]
        if graph.arcs[e_id].terminus == origin and close_map[e_id].get(start) is not None:
            seq = tuple(path)
            if _is_primitive(seq):
                canon = _min_rotation(seq)
                if canon not in found:
                    weight = cycle_weight(graph, canon, matrix=ut)
                    reduced = all(
                        canon[(i + 1) % len(canon)] != canon[i] ^ 1 for i in range(len(canon))
                    )
                    found[canon] = PrimeCycleClass(canon, len(canon), weight, reduced)
        if len(path) < max_length:
            for f_id, _ in table[e_id]:
                if f_id >= start:
                    path.append(f_id)
                    extend(start, origin, path)
                    path.pop()

    for start in range(2 * graph.m):
        extend(start, graph.arcs[start].origin, [start])

    classes = [c for c in found.values() if c.reduced or not reduced_only]
    classes.sort(key=lambda c: (c.length, c.arcs))
    return classes


def euler_log_coefficients(graph: MixedGraph, order: int, check: bool = True,
                           tol: float = 1e-9, budget: int = DEFAULT_BUDGET) -> ZetaSeries:
    """N_k assembled from prime cycle classes through the Euler product.

    N_p = sum over classes [C] and powers k >= 1 with k|C| = p of |C| w(C)^k.
    Must reproduce the trace route coefficient by coefficient; when check is
    on the agreement is asserted.
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    coeffs = np.zeros(order, dtype=complex)
    if order >= 2:
        for cls in enumerate_prime_classes(graph, order, budget=budget):
            power = cls.weight
            total = cls.length
            k = 1
            while total <= order:
                coeffs[total - 1] += cls.length * power
                k += 1
                total = k * cls.length
                power *= cls.weight
    series = ZetaSeries(coefficients=coeffs, provenance="cycles")
    if check:
        trace_route = series_coefficients(graph, order)
        gap = float(np.abs(series.coefficients - trace_route.coefficients).max())
        if gap > tol:
            raise IdentityCheckError(
                f"Euler-product coefficients disagree with the trace route by {gap:.3e}"
            )
    return series
