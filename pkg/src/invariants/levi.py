"""
Module Name: levi

Levi-form invariants of a hypersurface at sampled points.

This module provides:
- The Levi matrix T = B Hess B* in a point's CR frame, and the projector cross-check
- Pointwise classification: spectrum, coefficients A_k and nullity
- The Levi null space in frame and ambient coordinates
- Pseudoconvexity and Levi-flatness scans over point samples

Example:
    >>> from src.geometry import Hypersurface
    >>> from src.invariants import classify_point
    >>> sphere = Hypersurface.from_source("abs2(z1) + abs2(z2) - 1", 2)
    >>> classify_point(sphere, sphere.project_to_M([2, 0])).nullity
    0
"""

import logging
from typing import Iterable, List, Sequence, Union

import numpy as np

from src.errors.invariants import EmptySampleError
from src.geometry import Hypersurface
from src.models import (
    ToleranceConfig, PointOnM, LeviData, PseudoconvexityVerdict, PseudoconvexityReport, LeviFlatReport,
)
from .linalg import jacobi_eigh, char_coeffs

logger = logging.getLogger(__name__)


def levi_matrix(H: Hypersurface, x: PointOnM) -> np.ndarray:
    """Hermitian n x n matrix T_jk = sum B_ja Hess_ab conj(B_kb) in the stored frame."""
    hessian = H.complex_hessian(x.p)
    t = x.frame @ hessian @ x.frame.conj().T
    return 0.5 * (t + t.conj().T)


def projected_hessian(H: Hypersurface, x: PointOnM) -> np.ndarray:
    """
    P Hess P with P = I - u u*, u = g/|g|.

    Its spectrum is the spectrum of T plus one forced zero along u.
    """
    u = x.gradient / np.linalg.norm(x.gradient)
    projector = np.eye(H.N, dtype=complex) - np.outer(u, u.conj())
    m = projector @ H.complex_hessian(x.p) @ projector
    return 0.5 * (m + m.conj().T)


def nullity(eigenvalues: Sequence[float], tolerances: Union[ToleranceConfig, float] = None) -> int:
    """
    Counts |d_j| <= eig_zero_tol * max(1, max |d|).

    Args:
        eigenvalues: Spectrum of a Levi matrix.
        tolerances: ToleranceConfig or a bare eig_zero_tol; defaults to ToleranceConfig().
    """
    if tolerances is None:
        tolerances = ToleranceConfig()
    tol = tolerances.eig_zero_tol if isinstance(tolerances, ToleranceConfig) else float(tolerances)
    d = np.abs(np.asarray(eigenvalues, dtype=float))
    if d.size == 0:
        return 0
    return int(np.count_nonzero(d <= tol * max(1.0, float(np.max(d)))))


def classify_point(H: Hypersurface, x: PointOnM, sign: int = 1,
                   tolerances: ToleranceConfig = None) -> LeviData:
    """
    Bundles Levi matrix, spectrum, coefficients and nullity at one point.

    The global orientation `sign` multiplies T before classification, so the
    eigenvalues flip and A_k picks up (sign)^(n-k).
    """
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign}")
    tolerances = tolerances or H.tolerances
    t = sign * levi_matrix(H, x)
    eigenvalues, _ = jacobi_eigh(t)
    coefficients = char_coeffs(t)
    count = nullity(eigenvalues, tolerances)
    logger.debug("Point %s: eigenvalues %s, nullity %d", x, eigenvalues, count)
    return LeviData(point=x, levi_matrix=t, eigenvalues=eigenvalues, coefficients=coefficients,
                    nullity=count, sign=sign)


def null_space(T: np.ndarray, tolerances: Union[ToleranceConfig, float] = None) -> np.ndarray:
    """
    Orthonormal basis of the numerical null space of a Levi matrix.

    Returns:
        np.ndarray: n x nu matrix whose columns are frame coordinates of null vectors.
    """
    if tolerances is None:
        tolerances = ToleranceConfig()
    tol = tolerances.eig_zero_tol if isinstance(tolerances, ToleranceConfig) else float(tolerances)
    eigenvalues, vectors = jacobi_eigh(T)
    if eigenvalues.size == 0:
        return vectors
    cutoff = tol * max(1.0, float(np.max(np.abs(eigenvalues))))
    return vectors[:, np.abs(eigenvalues) <= cutoff]


def ambient_null_space(H: Hypersurface, x: PointOnM, tolerances: ToleranceConfig = None) -> np.ndarray:
    """
    Null space of the Levi form as vectors of C^N.

    Returns:
        np.ndarray: nu x N matrix; row r holds the coefficients of sum_j c_j L_j.
    """
    basis = null_space(levi_matrix(H, x), tolerances or H.tolerances)
    return basis.T @ x.frame


def _violations(spectra: List[np.ndarray], sign: int, tol: float) -> List[int]:
    return [i for i, d in enumerate(spectra) if np.any(sign * d < -tol * max(1.0, float(np.max(np.abs(d)))))]


def pseudoconvexity_scan(H: Hypersurface, points: Sequence[PointOnM],
                         tolerances: ToleranceConfig = None) -> PseudoconvexityReport:
    """
    Decides pseudoconvexity over a sample with one global orientation.

    The sign s in {+1, -1} minimizing the number of points with some s d_j < -tol
    is chosen (+1 on ties). Zero violations give pseudoconvex(s); every sampled T
    numerically zero gives undetermined; otherwise the first point with eigenvalues
    of both signs (or else the first violator) is the witness.

    Raises:
        EmptySampleError: On an empty sample.
    """
    if not points:
        raise EmptySampleError("Pseudoconvexity scan needs at least one point")
    tolerances = tolerances or H.tolerances
    tol = tolerances.eig_zero_tol
    spectra = [jacobi_eigh(levi_matrix(H, x))[0] for x in points]

    if all(nullity(d, tolerances) == d.size for d in spectra):
        logger.info("Every sampled Levi matrix vanishes; pseudoconvexity undetermined")
        return PseudoconvexityReport(PseudoconvexityVerdict.UNDETERMINED, 1, len(points))

    positive = _violations(spectra, 1, tol)
    negative = _violations(spectra, -1, tol)
    sign, violators = (1, positive) if len(positive) <= len(negative) else (-1, negative)
    if not violators:
        verdict = PseudoconvexityVerdict.PSEUDOCONVEX_POSITIVE if sign == 1 else PseudoconvexityVerdict.PSEUDOCONVEX_NEGATIVE
        return PseudoconvexityReport(verdict, sign, len(points))

    both = set(positive) & set(negative)
    mixed = [i for i in violators if i in both]
    index = mixed[0] if mixed else violators[0]
    logger.info("Levi form is not semi-definite with a consistent sign; witness %s", points[index])
    return PseudoconvexityReport(
        verdict=PseudoconvexityVerdict.NOT_PSEUDOCONVEX,
        sign=sign,
        sample_count=len(points),
        violations=len(violators),
        witness=points[index],
        witness_eigenvalues=spectra[index],
    )


def levi_flat_check(H: Hypersurface, points: Sequence[PointOnM],
                    tolerances: ToleranceConfig = None) -> LeviFlatReport:
    """Levi-flat iff every sampled T has nullity n; the first exception is the witness."""
    if not points:
        raise EmptySampleError("Levi-flatness check needs at least one point")
    tolerances = tolerances or H.tolerances
    max_entry = 0.0
    witness = None
    for x in points:
        t = levi_matrix(H, x)
        max_entry = max(max_entry, float(np.max(np.abs(t))))
        if witness is None and nullity(jacobi_eigh(t)[0], tolerances) < H.n:
            witness = x
    return LeviFlatReport(is_levi_flat=witness is None, sample_count=len(points), max_entry=max_entry,
                          witness=witness)


def classify_points(H: Hypersurface, points: Iterable[PointOnM], sign: int = 1,
                    tolerances: ToleranceConfig = None) -> List[LeviData]:
    return [classify_point(H, x, sign, tolerances) for x in points]
