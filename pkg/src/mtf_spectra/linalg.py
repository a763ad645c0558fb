"""Dense complex linear algebra helpers for small operator blocks.

Thin, validated wrappers over LAPACK via numpy.linalg, plus the weighted
Hermitian minimum-eigenvalue form used by the coercivity estimates and a
few multiset utilities for comparing spectra.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "NumericalError",
    "SingularMatrixError",
    "eigenvalues",
    "hausdorff_distance",
    "inverse",
    "min_singular_value",
    "solve",
    "sort_complex",
    "weighted_hermitian_min_eig",
]


class SingularMatrixError(np.linalg.LinAlgError):
    """Matrix is numerically singular for the requested operation."""


class NumericalError(np.linalg.LinAlgError):
    """An iterative kernel failed to converge."""


def _as_square(A) -> np.ndarray:
    A = np.asarray(A, complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise ValueError("matrix entries must be finite")
    return A


def eigenvalues(A) -> np.ndarray:
    """Eigenvalue multiset, sorted lexicographically by (real, imag)."""
    A = _as_square(A)
    try:
        ev = np.linalg.eigvals(A)
    except np.linalg.LinAlgError as exc:  # iteration cap exceeded
        raise NumericalError(str(exc)) from exc
    return sort_complex(ev)


def sort_complex(values, tol: float = 1e-7) -> np.ndarray:
    """Sort complex values by (real, imag) with tolerance bucketing.

    Values whose real parts agree within tol are ordered by imaginary part,
    so multiset comparisons are stable under perturbations below tol.
    """
    values = np.asarray(values, complex)
    re = np.round(values.real / tol) * tol
    order = np.lexsort((values.imag, re))
    return values[order]


def min_singular_value(A) -> float:
    A = np.asarray(A, complex)
    if not np.all(np.isfinite(A)):
        raise ValueError("matrix entries must be finite")
    return float(np.linalg.svd(A, compute_uv=False)[-1])


def _guard_conditioning(A: np.ndarray) -> None:
    s = np.linalg.svd(A, compute_uv=False)
    if s[-1] <= 1e-12 * s[0]:
        raise SingularMatrixError(
            f"matrix numerically singular (sigma_min/sigma_max = {s[-1] / s[0]:.2e})"
        )


def inverse(A) -> np.ndarray:
    A = _as_square(A)
    _guard_conditioning(A)
    return np.linalg.inv(A)


def solve(A, b) -> np.ndarray:
    A = _as_square(A)
    _guard_conditioning(A)
    return np.linalg.solve(A, np.asarray(b, complex))


def weighted_hermitian_min_eig(A, w) -> float:
    """Minimum of Re{U^T A conj(U)} over U with sum_i w_i |U_i|^2 = 1.

    The bilinear form rewrites as the Hermitian quadratic form of the
    transposed matrix, so the answer is the smallest eigenvalue of the
    Hermitian part of W^{-1/2} A^T W^{-1/2}.
    """
    A = _as_square(A)
    w = np.asarray(w, float)
    if w.shape != (A.shape[0],):
        raise ValueError("weight vector length must match the matrix size")
    if not np.all(w > 0):
        raise ValueError("weights must be strictly positive")
    scale = 1.0 / np.sqrt(w)
    C = scale[:, None] * A.T * scale[None, :]
    H = 0.5 * (C + C.conj().T)
    return float(np.linalg.eigvalsh(H)[0])


def hausdorff_distance(a, b) -> float:
    """Symmetric Hausdorff distance between two finite complex point sets."""
    a = np.atleast_1d(np.asarray(a, complex))
    b = np.atleast_1d(np.asarray(b, complex))
    if a.size == 0 or b.size == 0:
        raise ValueError("point sets must be nonempty")
    d = np.abs(a[:, None] - b[None, :])
    return float(max(d.min(axis=1).max(), d.min(axis=0).max()))
