from dataclasses import dataclass, field
from enum import Enum
import math
from typing import Dict, List, Optional, Tuple

import numpy as np

from src.errors.strata import InvalidRegionError
from .levi import LeviData
from .point import PointOnM


@dataclass(frozen=True)
class Region:
    """
    A box of real coordinates (x_1, y_1, ..., x_N, y_N) to seed point searches.

    Attributes:
        bounds: 2N finite (lo, hi) intervals with lo < hi.
        resolution: Grid points per axis (each >= 2).
        seed: Pseudo-random seed of the jitter.
        jitter: Jitter amplitude as a fraction of the grid spacing, in [0, 1).
    """
    bounds: Tuple[Tuple[float, float], ...]
    resolution: Tuple[int, ...]
    seed: int = 0
    jitter: float = 0.25

    def __post_init__(self) -> None:
        if not self.bounds or len(self.bounds) % 2:
            raise InvalidRegionError(f"Region needs an even, non-zero number of intervals, got {len(self.bounds)}")
        if len(self.resolution) != len(self.bounds):
            raise InvalidRegionError("Region needs one resolution per interval")
        for lo, hi in self.bounds:
            if not (math.isfinite(lo) and math.isfinite(hi)) or not lo < hi:
                raise InvalidRegionError(f"Invalid interval [{lo}, {hi}]")
        if any(r < 2 for r in self.resolution):
            raise InvalidRegionError(f"Resolution must be at least 2 per axis, got {self.resolution}")
        if not 0 <= self.jitter < 1:
            raise InvalidRegionError(f"Jitter must lie in [0, 1), got {self.jitter}")

    @classmethod
    def box(cls, dimension: int, lo: float, hi: float, resolution: int, seed: int = 0,
            jitter: float = 0.25) -> "Region":
        """Same interval on every one of the 2N real axes."""
        return cls(bounds=((lo, hi),) * (2 * dimension), resolution=(resolution,) * (2 * dimension),
                   seed=seed, jitter=jitter)

    @property
    def dimension(self) -> int:
        return len(self.bounds) // 2

    @property
    def seed_count(self) -> int:
        return math.prod(self.resolution)


@dataclass(frozen=True, eq=False)
class HypersurfaceSample:
    """
    Points found on M from a region's seeds.

    Attributes:
        points: Distinct points in seed order.
        seed_count: Seeds tried.
        dropped: Seeds whose projection failed.
        merged: Converged seeds discarded as duplicates.
    """
    points: List[PointOnM]
    seed_count: int
    dropped: int = 0
    merged: int = 0

    def __bool__(self) -> bool:
        return bool(self.points)

    def __iter__(self):
        return iter(self.points)

    def __len__(self) -> int:
        return len(self.points)

    def __getitem__(self, index):
        return self.points[index]


@dataclass(frozen=True, eq=False)
class StratumSample:
    """
    A point accepted (or examined) for membership in S_q.

    Attributes:
        levi: Levi data at the point.
        residuals: |A_0|, ..., |A_{q-1}|.
        is_member: Whether every residual is within stratum_tol.
    """
    levi: LeviData
    residuals: Tuple[float, ...]
    is_member: bool


class NecessaryConditionVerdict(str, Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    INSUFFICIENT = "INSUFFICIENT"


@dataclass(frozen=True, eq=False)
class DimensionEstimate:
    """
    Local PCA estimate of a sampled set's real dimension.

    Attributes:
        dimension: Estimated real dimension, or None when samples are insufficient.
        used_samples: Samples inside the radius.
        required_samples: Minimum count, 4 (2n + 1).
        center: Center of the neighbourhood.
        radius: Radius used (None = unbounded).
        singular_values: Singular values of the centered sample matrix.
    """
    dimension: Optional[int]
    used_samples: int
    required_samples: int
    center: Optional[np.ndarray] = None
    radius: Optional[float] = None
    singular_values: Tuple[float, ...] = ()

    @property
    def is_sufficient(self) -> bool:
        return self.dimension is not None


@dataclass(frozen=True, eq=False)
class StratumReport:
    """
    Sampled points of S_q with dimension estimate and the 2q necessary condition.

    Attributes:
        q: Nullity level.
        members: Accepted samples, deduplicated, in seed order.
        estimate: Dimension estimate of the member set.
        verdict: PASS if dim >= 2q, FAIL otherwise or when S_q is empty.
        seed_count: Points of M refined toward S_q.
        rejected: Seeds whose refinement failed or missed tolerance.
        conventions: Contact-form convention, sign and tolerances in force.
    """
    q: int
    members: List[StratumSample]
    estimate: DimensionEstimate
    verdict: NecessaryConditionVerdict
    seed_count: int = 0
    rejected: int = 0
    conventions: Dict[str, object] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return bool(self.members)

    def __len__(self) -> int:
        return len(self.members)


@dataclass(frozen=True, eq=False)
class FiltrationReport:
    """The chain S_1 > S_2 > ... > S_n, with the nesting check between levels."""
    reports: List[StratumReport]
    nested: bool
    violations: List[Tuple[int, int]] = field(default_factory=list)
