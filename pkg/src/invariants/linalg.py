"""
Module Name: linalg

Small dense Hermitian linear algebra for Levi matrices.

This module provides:
- A cyclic complex Jacobi eigen-solver with a fixed sweep order
- Characteristic-polynomial coefficients as sums of principal minors
- Elementary symmetric polynomials of a spectrum (the cross-check path)
- Numerical rank by singular values with a relative threshold

Example:
    >>> import numpy as np
    >>> from src.invariants.linalg import hermitian_eigenvalues, char_coeffs
    >>> hermitian_eigenvalues(np.array([[2, 1], [1, 2]]))
    array([3., 1.])
    >>> char_coeffs(np.eye(2))
    array([1., 2.])
"""

import logging
from itertools import combinations
from typing import Sequence, Tuple

import numpy as np

from src.errors.geometry import NonHermitianError
from src.errors.invariants import NumericalFailureError

logger = logging.getLogger(__name__)

HERMITIAN_TOLERANCE = 1e-8
JACOBI_TOLERANCE = 1e-13
JACOBI_MAX_SWEEPS = 100
COFACTOR_MAX_SIZE = 4


def _as_hermitian(matrix) -> np.ndarray:
    a = np.array(matrix, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise NonHermitianError(f"Expected a square matrix, got shape {a.shape}")
    defect = np.linalg.norm(a - a.conj().T)
    if defect > HERMITIAN_TOLERANCE * max(1.0, np.linalg.norm(a)):
        raise NonHermitianError(f"Matrix is not Hermitian (|T - T*| = {defect:.3g})")
    return a


def _off_diagonal_norm(a: np.ndarray) -> float:
    return float(np.sqrt(max(np.sum(np.abs(a) ** 2) - np.sum(np.abs(np.diag(a)) ** 2), 0.0)))


def jacobi_eigh(matrix) -> Tuple[np.ndarray, np.ndarray]:
    """
    Diagonalizes a Hermitian matrix by cyclic complex Jacobi rotations.

    Pairs (p, q) are visited in row-major order of the upper triangle. Each rotation
    first removes the phase of a_pq, then applies the real symmetric Jacobi rotation,
    so A <- J* A J annihilates a_pq. Sweeps stop once the off-diagonal Frobenius norm
    is at most 1e-13 times the Frobenius norm of the input.

    Args:
        matrix: Hermitian n x n array.

    Returns:
        Tuple[np.ndarray, np.ndarray]: Eigenvalues sorted descending, and the unitary
        matrix whose columns are the matching eigenvectors.

    Raises:
        NonHermitianError: If |T - T*| exceeds 1e-8 (relative to |T| when |T| > 1).
        NumericalFailureError: If the sweeps do not converge.
    """
    a = _as_hermitian(matrix)
    a = 0.5 * (a + a.conj().T)
    n = a.shape[0]
    v = np.eye(n, dtype=complex)
    scale = np.linalg.norm(a)
    if scale == 0.0:
        return np.zeros(n), v

    threshold = JACOBI_TOLERANCE * scale
    for sweep in range(JACOBI_MAX_SWEEPS):
        if _off_diagonal_norm(a) <= threshold:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                modulus = abs(apq)
                if modulus == 0.0:
                    continue
                e = apq / modulus
                theta = (a[q, q].real - a[p, p].real) / (2.0 * modulus)
                t = (1.0 if theta >= 0 else -1.0) / (abs(theta) + np.sqrt(theta * theta + 1.0))
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c

                col_p, col_q = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * col_p - s * np.conj(e) * col_q
                a[:, q] = s * col_p + c * np.conj(e) * col_q
                row_p, row_q = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * row_p - s * e * row_q
                a[q, :] = s * row_p + c * e * row_q
                a[p, q] = a[q, p] = 0.0

                vec_p, vec_q = v[:, p].copy(), v[:, q].copy()
                v[:, p] = c * vec_p - s * np.conj(e) * vec_q
                v[:, q] = s * vec_p + c * np.conj(e) * vec_q
    else:
        if _off_diagonal_norm(a) > threshold:
            raise NumericalFailureError(f"Jacobi solver did not converge in {JACOBI_MAX_SWEEPS} sweeps")

    eigenvalues = np.diag(a).real.copy()
    order = np.argsort(-eigenvalues, kind="stable")
    logger.debug("Jacobi converged after %d sweeps", sweep)
    return eigenvalues[order], v[:, order]


def hermitian_eigenvalues(matrix) -> np.ndarray:
    """Eigenvalues d_1 >= ... >= d_n of a Hermitian matrix (see `jacobi_eigh`)."""
    eigenvalues, _ = jacobi_eigh(matrix)
    return eigenvalues


def _cofactor_det(a: np.ndarray) -> complex:
    size = a.shape[0]
    if size == 0:
        return 1.0
    if size == 1:
        return a[0, 0]
    if size == 2:
        return a[0, 0] * a[1, 1] - a[0, 1] * a[1, 0]
    total = 0j
    for j in range(size):
        if a[0, j] == 0:
            continue
        minor = np.delete(np.delete(a, 0, axis=0), j, axis=1)
        total += (-1) ** j * a[0, j] * _cofactor_det(minor)
    return total


def determinant(a: np.ndarray) -> complex:
    """Exact cofactor expansion up to 4 x 4, LU factorization above."""
    if a.shape[0] <= COFACTOR_MAX_SIZE:
        return _cofactor_det(a)
    return complex(np.linalg.det(a))


def principal_minor_sum(matrix: np.ndarray, size: int) -> float:
    """Sum of all principal minors of the given size (1 for size 0)."""
    n = matrix.shape[0]
    if size == 0:
        return 1.0
    return float(sum(determinant(matrix[np.ix_(idx, idx)]) for idx in combinations(range(n), size)).real)


def char_coeffs(matrix) -> np.ndarray:
    """
    Coefficients (A_0, ..., A_{n-1}) of det(T - lambda I) = sum_k A_k (-lambda)^k + (-lambda)^n.

    A_k is the sum of the principal (n - k) x (n - k) minors of T.
    """
    a = _as_hermitian(matrix)
    n = a.shape[0]
    return np.array([principal_minor_sum(a, n - k) for k in range(n)], dtype=float)


def elementary_symmetric(values: Sequence[float]) -> np.ndarray:
    """(e_0, e_1, ..., e_n) of the given values, e_0 = 1."""
    e = np.zeros(len(values) + 1)
    e[0] = 1.0
    for count, x in enumerate(values, start=1):
        e[1:count + 1] = e[1:count + 1] + x * e[0:count]
    return e


def coeffs_from_eigenvalues(eigenvalues: Sequence[float]) -> np.ndarray:
    """(A_0, ..., A_{n-1}) as e_{n-k} of the spectrum."""
    e = elementary_symmetric(eigenvalues)
    n = len(eigenvalues)
    return np.array([e[n - k] for k in range(n)])


def singular_values(matrix) -> np.ndarray:
    a = np.asarray(matrix)
    if a.size == 0:
        return np.zeros(0)
    return np.linalg.svd(a, compute_uv=False)


def numerical_rank(matrix, rank_tol: float) -> int:
    """
    Number of singular values >= rank_tol times the largest one.

    Zero when the largest singular value is itself below rank_tol (absolute).
    """
    s = singular_values(matrix)
    if s.size == 0 or s[0] <= rank_tol:
        return 0
    return int(np.count_nonzero(s >= rank_tol * s[0]))


def gram_determinant(vectors: np.ndarray) -> float:
    """det of the Hermitian Gram matrix of the rows; 1 for an empty set."""
    rows = np.asarray(vectors, dtype=complex)
    if rows.size == 0:
        return 1.0
    gram = rows @ rows.conj().T
    return float(np.linalg.det(gram).real)


__all__ = [
    "jacobi_eigh", "hermitian_eigenvalues", "determinant", "principal_minor_sum", "char_coeffs",
    "elementary_symmetric", "coeffs_from_eigenvalues", "singular_values", "numerical_rank",
    "gram_determinant",
]
