"""Dense complex matrix helpers shared by the operator and zeta modules.

Thin wrappers over LAPACK-backed numpy routines that add the contracts the
rest of the package relies on: finiteness validation, an eigenvalue/
determinant cross-check, a Hermitian fast path, and eigenvalue multiset
comparison by minimum-weight bipartite matching.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment

DEFAULT_TOL = 1e-9

# |prod(eigenvalues)| beyond this is treated as overflow and the
# determinant cross-check is skipped.
_PRODUCT_GUARD = 1e280


class IdentityCheckError(RuntimeError):
    """A mathematical identity the code is contracted to satisfy failed."""


def isclose_scaled(a, b, tol: float = DEFAULT_TOL) -> bool:
    """Absolute comparison scaled by (1 + magnitude)."""
    return abs(a - b) <= tol * (1.0 + max(abs(a), abs(b)))


def as_matrix(m) -> np.ndarray:
    """Coerce to a 2-D complex array, rejecting non-finite entries."""
    arr = np.asarray(m, dtype=complex)
    if arr.ndim != 2:
        raise ValueError(f"expected a matrix, got ndim={arr.ndim}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("matrix contains NaN or Inf entries")
    return arr


def _require_square(arr: np.ndarray) -> None:
    if arr.shape[0] != arr.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {arr.shape}")


def adjoint(m) -> np.ndarray:
    return as_matrix(m).conj().T


def max_abs(m) -> float:
    arr = np.asarray(m)
    return float(np.abs(arr).max()) if arr.size else 0.0


def determinant(m) -> complex:
    """Determinant via pivoted LU (LAPACK)."""
    arr = as_matrix(m)
    _require_square(arr)
    return complex(np.linalg.det(arr))


@dataclass
class SpectrumResult:
    """Eigenvalue multiset of a square matrix.

    values is sorted real for the Hermitian path and an unordered complex
    array otherwise.
    """

    values: np.ndarray
    hermitian: bool


def eigenvalues(m, hermitian: bool = False, hermitian_tol: float = 1e-10) -> SpectrumResult:
    """Full eigenvalue multiset, with a symmetrizing Hermitian path.

    The product of the returned eigenvalues is cross-checked against the LU
    determinant (skipped only when the product over- or underflows).
    """
    arr = as_matrix(m)
    _require_square(arr)
    if hermitian:
        if max_abs(arr - arr.conj().T) > hermitian_tol:
            raise ValueError("hermitian flag set but matrix is not Hermitian")
        sym = (arr + arr.conj().T) / 2.0
        vals = np.sort(np.linalg.eigvalsh(sym))
        result = SpectrumResult(values=vals, hermitian=True)
    else:
        result = SpectrumResult(values=np.linalg.eigvals(arr), hermitian=False)

    prod = complex(np.prod(result.values.astype(complex)))
    det = determinant(arr)
    if np.isfinite(prod) and abs(prod) < _PRODUCT_GUARD and abs(det) < _PRODUCT_GUARD:
        if not isclose_scaled(prod, det, 1e-8):
            raise IdentityCheckError(
                f"eigenvalue product {prod} disagrees with determinant {det}"
            )
    return result


def trace_power(m, k: int) -> complex:
    """Trace of the k-th matrix power by iterated multiplication."""
    arr = as_matrix(m)
    _require_square(arr)
    if k < 1:
        raise ValueError("power must be >= 1")
    acc = arr
    for _ in range(k - 1):
        acc = acc @ arr
    return complex(np.trace(acc))


def spectral_match_distance(a, b) -> float:
    """Max matched |a_i - b_j| under a minimum-weight bipartite matching.

    Eigenvalue order is solver-dependent, so multisets are compared by the
    Hungarian method; two multisets are equal when this distance is below
    tolerance.
    """
    a = np.asarray(a, dtype=complex).ravel()
    b = np.asarray(b, dtype=complex).ravel()
    if a.shape != b.shape:
        raise ValueError(f"multiset sizes differ: {a.shape[0]} vs {b.shape[0]}")
    if a.size == 0:
        return 0.0
    cost = np.abs(a[:, None] - b[None, :])
    rows, cols = linear_sum_assignment(cost)
    return float(cost[rows, cols].max())
