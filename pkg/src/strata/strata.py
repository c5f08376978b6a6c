"""
Module Name: strata

Detection of the nullity strata S_q = {A_0 = ... = A_{q-1} = 0} of a hypersurface.

This module provides:
- Stratum residuals (rho, A_0, ..., A_{q-1}) at arbitrary points near M
- Gauss-Newton refinement of sampled points of M onto S_q
- Local PCA dimension estimates and the dim S_q >= 2q necessary condition
- The whole filtration S_1 > S_2 > ... > S_n with a nesting re-test

Example:
    >>> from src.geometry import Hypersurface
    >>> from src.models import Region
    >>> from src.strata import detect_stratum
    >>> H = Hypersurface.from_source("Re(w) + abs2(z1) + abs2(z2)^2", 3)
    >>> report = detect_stratum(H, Region.box(3, -0.1, 0.1, 3), q=1)
    >>> report.estimate.dimension
    3
"""

import logging
from typing import Any, Dict, List, Sequence, Union

import numpy as np

from src.errors.expr import EvaluationError
from src.errors.geometry import GeometryError
from src.errors.invariants import InvariantsError
from src.errors.strata import InvalidStratumIndexError
from src.geometry import Hypersurface
from src.invariants import char_coeffs, classify_point
from src.models import (
    Region, PointOnM, ToleranceConfig, StratumSample, StratumReport, DimensionEstimate,
    NecessaryConditionVerdict, FiltrationReport, THETA_CONVENTION,
)
from .sampling import to_real, to_complex, gauss_newton, is_duplicate, sample_hypersurface

logger = logging.getLogger(__name__)

SINGULAR_VALUE_CUT = 0.1
SAMPLES_PER_DIMENSION = 4


def check_stratum_index(H: Hypersurface, q: int) -> None:
    if not 1 <= q <= H.n:
        raise InvalidStratumIndexError(f"Stratum index q must lie in 1..{H.n}, got {q}")


def stratum_residuals(H: Hypersurface, p: Sequence[complex], q: int) -> np.ndarray:
    """
    (rho(p), A_0(p), ..., A_{q-1}(p)) with A_j from principal minors of B Hess B*.

    The frame is built at p itself, which need not lie exactly on M; the A_j do not
    depend on which orthonormal frame of the complex tangent space is used.
    """
    p = np.asarray(p, dtype=complex)
    frame = H.cr_frame(p)
    t = frame @ H.complex_hessian(p) @ frame.conj().T
    coefficients = char_coeffs(0.5 * (t + t.conj().T))
    return np.concatenate([[H.value(p)], coefficients[:q]])


def refine_to_stratum(H: Hypersurface, x: PointOnM, q: int, tolerances: ToleranceConfig = None) -> PointOnM:
    """
    Gauss-Newton from a point of M onto S_q, followed by a projection back onto M.

    Raises:
        GeometryError, InvariantsError, EvaluationError: When refinement fails.
    """
    tolerances = tolerances or H.tolerances
    solution = gauss_newton(lambda v: stratum_residuals(H, to_complex(v), q), to_real(x.p), tolerances)
    return H.project_to_M(to_complex(solution))


def _stratum_sample(H: Hypersurface, x: PointOnM, q: int, sign: int, tolerances: ToleranceConfig) -> StratumSample:
    levi = classify_point(H, x, sign, tolerances)
    residuals = tuple(float(abs(a)) for a in levi.coefficients[:q])
    is_member = (max(residuals) <= tolerances.stratum_tol
                 and np.linalg.norm(x.gradient) >= tolerances.grad_min)
    return StratumSample(levi=levi, residuals=residuals, is_member=is_member)


def _points_of(samples: Sequence[Union[StratumSample, PointOnM, np.ndarray]]) -> List[np.ndarray]:
    points = []
    for s in samples:
        if isinstance(s, StratumSample):
            points.append(s.levi.point.p)
        elif isinstance(s, PointOnM):
            points.append(s.p)
        else:
            points.append(np.asarray(s, dtype=complex))
    return points


def estimate_dimension(samples: Sequence[Union[StratumSample, PointOnM, np.ndarray]],
                       center: Sequence[complex] = None, radius: float = None) -> DimensionEstimate:
    """
    Local PCA estimate of the real dimension of a sampled set.

    Samples within `radius` of `center` (all of them when either is None) are
    centered on their mean; the estimate is the number of singular values of the
    2N-column real matrix that reach 0.1 of the largest one. At least 4 (2n + 1)
    samples are required, otherwise the estimate is insufficient (dimension None).
    """
    points = _points_of(samples)
    if not points:
        return DimensionEstimate(dimension=None, used_samples=0, required_samples=0,
                                 center=None if center is None else np.asarray(center, dtype=complex),
                                 radius=radius)
    ambient = points[0].size
    required = SAMPLES_PER_DIMENSION * (2 * (ambient - 1) + 1)
    c = None if center is None else np.asarray(center, dtype=complex)
    if c is not None and radius is not None:
        points = [p for p in points if np.linalg.norm(p - c) <= radius]
    if len(points) < required:
        logger.info("Dimension estimate needs %d samples, got %d", required, len(points))
        return DimensionEstimate(dimension=None, used_samples=len(points), required_samples=required,
                                 center=c, radius=radius)

    coordinates = np.array([to_real(p) for p in points])
    centered = coordinates - coordinates.mean(axis=0)
    s = np.linalg.svd(centered, compute_uv=False)
    dimension = 0 if s[0] == 0.0 else int(np.count_nonzero(s >= SINGULAR_VALUE_CUT * s[0]))
    return DimensionEstimate(dimension=dimension, used_samples=len(points), required_samples=required,
                             center=c, radius=radius, singular_values=tuple(float(v) for v in s))


def _verdict(q: int, member_count: int, estimate: DimensionEstimate) -> NecessaryConditionVerdict:
    if member_count == 0:
        return NecessaryConditionVerdict.FAIL
    if not estimate.is_sufficient:
        return NecessaryConditionVerdict.INSUFFICIENT
    return NecessaryConditionVerdict.PASS if estimate.dimension >= 2 * q else NecessaryConditionVerdict.FAIL


def necessary_condition(report: StratumReport) -> NecessaryConditionVerdict:
    """PASS if dim S_q >= 2q; FAIL when smaller or S_q has no samples; INSUFFICIENT passes through."""
    return _verdict(report.q, len(report.members), report.estimate)


def conventions(H: Hypersurface, sign: int, tolerances: ToleranceConfig = None) -> Dict[str, Any]:
    """The convention record embedded in every report."""
    return {
        "theta": THETA_CONVENTION,
        "sign": sign,
        "tolerances": (tolerances or H.tolerances).as_dict(),
    }


def detect_stratum(H: Hypersurface, region: Region, q: int, sign: int = 1, tolerances: ToleranceConfig = None,
                   center: Sequence[complex] = None, radius: float = None,
                   points: Sequence[PointOnM] = None) -> StratumReport:
    """
    Samples S_q over a region.

    Every point of M found from the region (or the given `points`) is refined onto
    {rho = A_0 = ... = A_{q-1} = 0}. Refined points are accepted when all |A_j| are
    within stratum_tol and |d rho| >= grad_min, then deduplicated in seed order.

    Args:
        H: The hypersurface.
        region: Seeding region.
        q: Nullity level, 1 <= q <= n.
        sign: Orientation recorded on the Levi data.
        tolerances: Overrides H.tolerances.
        center, radius: Neighbourhood of the dimension estimate.
        points: Pre-sampled points of M to refine instead of sampling the region.

    Raises:
        InvalidStratumIndexError: If q is outside 1..n.
    """
    check_stratum_index(H, q)
    tolerances = tolerances or H.tolerances
    seeds = list(points) if points is not None else sample_hypersurface(H, region).points

    members: List[StratumSample] = []
    rejected = 0
    for x in seeds:
        try:
            refined = refine_to_stratum(H, x, q, tolerances)
            sample = _stratum_sample(H, refined, q, sign, tolerances)
        except (GeometryError, InvariantsError, EvaluationError) as e:
            logger.debug("Refinement onto S_%d from %s failed: %s", q, x, e)
            rejected += 1
            continue
        if not sample.is_member:
            rejected += 1
            continue
        if is_duplicate(refined.p, [m.levi.point.p for m in members]):
            continue
        members.append(sample)

    if not members:
        logger.warning("S_%d has no sampled point in the region", q)
    estimate = estimate_dimension(members, center, radius)
    report = StratumReport(
        q=q,
        members=members,
        estimate=estimate,
        verdict=_verdict(q, len(members), estimate),
        seed_count=len(seeds),
        rejected=rejected,
        conventions=conventions(H, sign, tolerances),
    )
    logger.info("S_%d: %d members, dimension %s, verdict %s", q, len(members), estimate.dimension, report.verdict.value)
    return report


def nullity_filtration(H: Hypersurface, region: Region, sign: int = 1, tolerances: ToleranceConfig = None,
                       center: Sequence[complex] = None, radius: float = None,
                       points: Sequence[PointOnM] = None) -> FiltrationReport:
    """
    Detects S_1, ..., S_n from one sample of M (the region's, or `points`) and
    re-tests every member of S_{q+1} against the S_q residuals.
    """
    tolerances = tolerances or H.tolerances
    sample = list(points) if points is not None else sample_hypersurface(H, region).points
    reports = [detect_stratum(H, region, q, sign, tolerances, center, radius, points=sample)
               for q in range(1, H.n + 1)]

    violations = []
    for lower, upper in zip(reports, reports[1:]):
        for index, member in enumerate(upper.members):
            residuals = stratum_residuals(H, member.levi.point.p, lower.q)[1:]
            if np.max(np.abs(residuals)) > tolerances.stratum_tol:
                violations.append((upper.q, index))
    if violations:
        logger.warning("Filtration is not nested at %d members", len(violations))
    return FiltrationReport(reports=reports, nested=not violations, violations=violations)


__all__ = [
    "check_stratum_index", "stratum_residuals", "refine_to_stratum", "estimate_dimension", "necessary_condition",
    "conventions", "detect_stratum", "nullity_filtration",
]
