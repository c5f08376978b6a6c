from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True, eq=False)
class PointOnM:
    """
    A point of the hypersurface M = {rho = 0} with its CR frame attached.

    Attributes:
        p: Complex N-vector of coordinates.
        residual: |rho(p)|.
        gradient: Complex N-vector g = (d rho/dz_1, ..., d rho/dz_N) at p.
        frame: n x N complex matrix whose rows are the coefficient vectors of L_1..L_n;
               rows are orthonormal and satisfy sum_m g_m B_jm = 0.
    """
    p: np.ndarray
    residual: float
    gradient: np.ndarray
    frame: np.ndarray

    @property
    def cr_dimension(self) -> int:
        return self.frame.shape[0]

    def real_coordinates(self) -> np.ndarray:
        """Interleaved (x_1, y_1, ..., x_N, y_N)."""
        return np.column_stack([self.p.real, self.p.imag]).ravel()

    def distance_to(self, other: "PointOnM") -> float:
        return float(np.linalg.norm(self.p - other.p))

    def __str__(self) -> str:
        coords = ", ".join(f"{c.real:.6g}{c.imag:+.6g}i" for c in self.p)
        return f"PointOnM(({coords}), residual={self.residual:.3g})"
