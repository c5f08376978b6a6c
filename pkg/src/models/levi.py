from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

from .point import PointOnM


@dataclass(frozen=True, eq=False)
class LeviData:
    """
    Levi-form invariants at one point.

    Attributes:
        point: The point on M with its frame.
        levi_matrix: Hermitian n x n matrix T (already multiplied by `sign`).
        eigenvalues: d_1 >= ... >= d_n.
        coefficients: (A_0, ..., A_{n-1}), A_k the coefficient of (-lambda)^k in det(T - lambda I).
        nullity: Number of numerically zero eigenvalues.
        sign: Orientation s in {+1, -1} applied to the contact form.
    """
    point: PointOnM
    levi_matrix: np.ndarray
    eigenvalues: np.ndarray
    coefficients: np.ndarray
    nullity: int
    sign: int = 1

    @property
    def spectral_radius(self) -> float:
        return float(np.max(np.abs(self.eigenvalues))) if self.eigenvalues.size else 0.0


class PseudoconvexityVerdict(str, Enum):
    PSEUDOCONVEX_POSITIVE = "pseudoconvex(+)"
    PSEUDOCONVEX_NEGATIVE = "pseudoconvex(-)"
    NOT_PSEUDOCONVEX = "not-pseudoconvex"
    UNDETERMINED = "undetermined"


@dataclass(frozen=True, eq=False)
class PseudoconvexityReport:
    """
    Outcome of a pseudoconvexity scan over sampled points.

    Attributes:
        verdict: One of PseudoconvexityVerdict.
        sign: Global sign s chosen for the contact form.
        sample_count: Number of points examined.
        violations: Points violating s * d_j >= -tol under the chosen sign.
        witness: Failing point (mixed-sign spectrum when one exists).
        witness_eigenvalues: Spectrum of T at the witness.
    """
    verdict: PseudoconvexityVerdict
    sign: int
    sample_count: int
    violations: int = 0
    witness: Optional[PointOnM] = None
    witness_eigenvalues: Optional[np.ndarray] = None

    @property
    def is_pseudoconvex_compatible(self) -> bool:
        return self.verdict != PseudoconvexityVerdict.NOT_PSEUDOCONVEX


@dataclass(frozen=True, eq=False)
class LeviFlatReport:
    """Whether every sampled Levi matrix vanishes (nullity n everywhere)."""
    is_levi_flat: bool
    sample_count: int
    max_entry: float
    witness: Optional[PointOnM] = None
