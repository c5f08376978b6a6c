"""
Module Name: sampling

Seeding and point refinement shared by stratum detection and zero-set sampling.

This module provides:
- Jittered grid seeds over a Region, in grid order
- Conversion between complex points and interleaved real coordinates
- A minimum-norm Gauss-Newton solver with central finite-difference Jacobians
- Sampling of M, and of M intersected with the zero set of user functions
"""

import logging
from itertools import product
from typing import Callable, Iterator, List, Sequence

import numpy as np

from src.errors.expr import EvaluationError
from src.errors.geometry import GeometryError
from src.errors.invariants import InvariantsError
from src.errors.strata import InvalidRegionError
from src.expr import Expr, compile_expr
from src.geometry import Hypersurface
from src.models import Region, PointOnM, HypersurfaceSample, ToleranceConfig

logger = logging.getLogger(__name__)

DUPLICATE_DISTANCE = 1e-6
LSTSQ_RCOND = 1e-9
STALL_FACTOR = 1e-14

Residual = Callable[[np.ndarray], np.ndarray]


def to_real(p: Sequence[complex]) -> np.ndarray:
    """Interleaved real coordinates (x_1, y_1, ..., x_N, y_N)."""
    p = np.asarray(p, dtype=complex)
    return np.column_stack([p.real, p.imag]).ravel()


def to_complex(x: np.ndarray) -> np.ndarray:
    return x[0::2] + 1j * x[1::2]


def grid_seeds(region: Region) -> Iterator[np.ndarray]:
    """
    Jittered grid points of a region, as complex N-vectors.

    Axis values are evenly spaced including both ends; each seed is displaced on every
    axis by a uniform offset of at most jitter * spacing, drawn from a generator seeded
    with region.seed, so the sequence depends only on the region.
    """
    axes = [np.linspace(lo, hi, count) for (lo, hi), count in zip(region.bounds, region.resolution)]
    spacing = np.array([(hi - lo) / (count - 1) for (lo, hi), count in zip(region.bounds, region.resolution)])
    rng = np.random.default_rng(region.seed)
    for node in product(*axes):
        offset = rng.uniform(-1.0, 1.0, size=len(axes)) * region.jitter * spacing
        yield to_complex(np.asarray(node) + offset)


def fd_jacobian(residual: Residual, x: np.ndarray, step: float) -> np.ndarray:
    """Central finite-difference Jacobian of a real residual over real coordinates."""
    columns = []
    for i in range(x.size):
        shift = np.zeros_like(x)
        shift[i] = step
        columns.append((residual(x + shift) - residual(x - shift)) / (2.0 * step))
    return np.column_stack(columns)


def gauss_newton(residual: Residual, x0: np.ndarray, tolerances: ToleranceConfig) -> np.ndarray:
    """
    Minimum-norm Gauss-Newton on an underdetermined real system.

    Steps are least-squares solutions of J dx = -r; iteration continues past the
    acceptance tolerances until the step stalls (|dx| <= 1e-14 (1 + |x|)) or
    newton_max_iter steps are taken, so degenerate zeros converge well inside them.

    Raises:
        GeometryError: If the iterate leaves the finite reals.
    """
    x = np.asarray(x0, dtype=float).copy()
    for _ in range(tolerances.newton_max_iter):
        r = residual(x)
        jacobian = fd_jacobian(residual, x, tolerances.fd_step)
        dx, *_ = np.linalg.lstsq(jacobian, -r, rcond=LSTSQ_RCOND)
        x = x + dx
        if not np.all(np.isfinite(x)):
            raise GeometryError("Gauss-Newton iterate diverged")
        if np.linalg.norm(dx) <= STALL_FACTOR * (1.0 + np.linalg.norm(x)):
            break
    return x


def is_duplicate(p: np.ndarray, accepted: Sequence[np.ndarray]) -> bool:
    return any(np.linalg.norm(p - q) < DUPLICATE_DISTANCE for q in accepted)


def sample_hypersurface(H: Hypersurface, region: Region) -> HypersurfaceSample:
    """
    Projects every grid seed of `region` onto M.

    Non-convergent or degenerate seeds are dropped and counted; points closer than
    1e-6 to an earlier one are merged. An empty sample is logged, not raised.
    """
    _check_region(H, region)
    points: List[PointOnM] = []
    dropped = merged = 0
    for seed in grid_seeds(region):
        try:
            x = H.project_to_M(seed)
        except (GeometryError, EvaluationError) as e:
            logger.debug("Seed %s dropped: %s", seed, e)
            dropped += 1
            continue
        if is_duplicate(x.p, [y.p for y in points]):
            merged += 1
            continue
        points.append(x)
    if not points:
        logger.warning("No seed of the region converged onto M (%d seeds tried)", region.seed_count)
    else:
        logger.info("Sampled %d points on M (%d dropped, %d merged)", len(points), dropped, merged)
    return HypersurfaceSample(points=points, seed_count=region.seed_count, dropped=dropped, merged=merged)


def sample_zero_set(H: Hypersurface, region: Region, functions: Sequence[Expr],
                    tolerances: ToleranceConfig = None) -> HypersurfaceSample:
    """
    Points of M on which every function vanishes.

    Each point of `sample_hypersurface` is refined by Gauss-Newton on (rho, f_1, ..., f_d),
    projected back onto M and accepted when every |f_j| <= stratum_tol.
    """
    tolerances = tolerances or H.tolerances
    compiled = [compile_expr(f) for f in functions]

    def residual(x: np.ndarray) -> np.ndarray:
        p = to_complex(x)
        return np.array([H.value(p)] + [f(p).real for f in compiled])

    base = sample_hypersurface(H, region)
    points: List[PointOnM] = []
    dropped = merged = 0
    for seed in base:
        try:
            x = H.project_to_M(to_complex(gauss_newton(residual, to_real(seed.p), tolerances)))
            values = [abs(f(x.p).real) for f in compiled]
        except (GeometryError, InvariantsError, EvaluationError) as e:
            logger.debug("Zero-set refinement from %s failed: %s", seed, e)
            dropped += 1
            continue
        if max(values, default=0.0) > tolerances.stratum_tol:
            dropped += 1
            continue
        if is_duplicate(x.p, [y.p for y in points]):
            merged += 1
            continue
        points.append(x)
    if not points:
        logger.warning("Zero set of %d functions has no sampled point on M", len(functions))
    return HypersurfaceSample(points=points, seed_count=len(base), dropped=dropped + base.dropped, merged=merged)


def _check_region(H: Hypersurface, region: Region) -> None:
    if region.dimension != H.N:
        raise InvalidRegionError(f"Region has {2 * region.dimension} intervals, expected {2 * H.N}")
