from dataclasses import dataclass, asdict, replace
from typing import Dict

from src.errors.geometry import InvalidToleranceError


@dataclass(frozen=True)
class ToleranceConfig:
    """
    Numerical thresholds shared by every geometry query.

    Attributes:
        eig_zero_tol: Relative threshold below which an eigenvalue counts as zero.
        rank_tol: Relative singular-value threshold for numerical rank.
        newton_tol: Accepted |rho| residual of a point on M.
        newton_max_iter: Iteration cap for Newton and Gauss-Newton loops.
        grad_min: Minimum |d rho| for a point to count as smooth.
        stratum_tol: Accepted |A_j| (and |rho_j|) residual of a zero-set member.
        fd_step: Central finite-difference step of Gauss-Newton Jacobians.
    """
    eig_zero_tol: float = 1e-7
    rank_tol: float = 1e-7
    newton_tol: float = 1e-12
    newton_max_iter: int = 50
    grad_min: float = 1e-8
    stratum_tol: float = 1e-6
    fd_step: float = 1e-6

    def __post_init__(self) -> None:
        for name, value in asdict(self).items():
            if not value > 0:
                raise InvalidToleranceError(f"Tolerance '{name}' must be strictly positive, got {value!r}")
        if int(self.newton_max_iter) != self.newton_max_iter:
            raise InvalidToleranceError(f"newton_max_iter must be an integer, got {self.newton_max_iter!r}")

    def relaxed(self, factor: float) -> "ToleranceConfig":
        """Returns a copy whose eigenvalue-zero threshold is multiplied by `factor`."""
        return replace(self, eig_zero_tol=self.eig_zero_tol * factor)

    def as_dict(self) -> Dict[str, float]:
        return asdict(self)
