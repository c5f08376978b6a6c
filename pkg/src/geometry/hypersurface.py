"""
Module Name: hypersurface

Real hypersurfaces M = {rho = 0} in C^N with their CR apparatus.

This module provides:
- Symbolic gradient d rho/dz_j and complex Hessian d2 rho/dz_j dzbar_k, precomputed once
- Newton projection of arbitrary seeds onto M
- Orthonormal CR frames L_1..L_n spanning H^{1,0}(M)

The contact form is fixed as theta = (i/2)(dbar rho - d rho), so the Levi form
is the complex Hessian restricted to the frame with no extra factor.

Example:
    >>> from src.geometry import Hypersurface
    >>> sphere = Hypersurface.from_source("abs2(z1) + abs2(z2) - 1", 2)
    >>> x = sphere.project_to_M([2, 0])
    >>> x.p
    array([1.+0.j, 0.+0.j])
"""

import logging
from typing import Callable, List, Optional, Sequence

import numpy as np

from src.errors.expr import EvaluationError
from src.errors.geometry import *
from src.expr import Expr, Var, VarSpace, parse, compile_expr, wirtinger_dz, wirtinger_dzbar, is_real_valued
from src.models import ToleranceConfig, PointOnM

logger = logging.getLogger(__name__)

HERMITIAN_TOLERANCE = 1e-10
HERMITIAN_CHECKS = 8
HERMITIAN_CHECK_SEED = 7


class Hypersurface:
    """
    A real hypersurface given by a real-valued defining function.

    Attributes:
        rho (Expr): The defining function.
        N (int): Ambient complex dimension.
        n (int): CR dimension, N - 1.
        tolerances (ToleranceConfig): Thresholds used by point operations.
        source (str): Source text of rho, when built from text.
        space (VarSpace): Variable names used to parse functions on the ambient space.

    Instances are immutable once built and their point operations are pure.
    """

    def __init__(self, rho: Expr, dimension: int, tolerances: ToleranceConfig = None, source: str = None,
                 space: VarSpace = None) -> None:
        if dimension < 2:
            raise GeometryError(f"Ambient dimension must be at least 2, got {dimension}")
        used = max((node.index for node in rho.walk() if isinstance(node, Var)), default=0)
        if used > dimension:
            raise GeometryError(f"Defining function uses z{used} but the ambient dimension is {dimension}")

        check = is_real_valued(rho, dimension=dimension)
        if not check:
            raise NotRealValuedError(f"Defining function is not real-valued (witness {check.witness})")

        self.rho = rho
        self.N = dimension
        self.n = dimension - 1
        self.tolerances = tolerances or ToleranceConfig()
        self.source = source
        self.space = space or VarSpace.ambient(dimension)

        gradient = [wirtinger_dz(rho, j) for j in range(1, dimension + 1)]
        self._gradient_exprs = tuple(gradient)
        self._hessian_exprs = tuple(
            tuple(wirtinger_dzbar(gradient[j], k) for k in range(1, dimension + 1)) for j in range(dimension)
        )
        self._rho_fn = compile_expr(rho)
        self._gradient_fns = [compile_expr(e) for e in self._gradient_exprs]
        self._hessian_fns = [[compile_expr(e) for e in row] for row in self._hessian_exprs]
        self._check_hermitian()
        logger.debug("Hypersurface in C^%d built from %r", dimension, source)

    @classmethod
    def from_source(cls, source: str, dimension: int, names: Sequence[str] = None,
                    tolerances: ToleranceConfig = None) -> "Hypersurface":
        """Parses `source` over z1..zN (with "w" for zN unless `names` are given)."""
        space = VarSpace.ambient(dimension, names)
        return cls(parse(source, space), dimension, tolerances, source, space)

    def _check_hermitian(self) -> None:
        rng = np.random.default_rng(HERMITIAN_CHECK_SEED)
        for _ in range(HERMITIAN_CHECKS):
            p = rng.standard_normal(self.N) + 1j * rng.standard_normal(self.N)
            try:
                hessian = self.complex_hessian(p)
            except EvaluationError:
                continue
            defect = np.max(np.abs(hessian - hessian.conj().T))
            if defect > HERMITIAN_TOLERANCE * max(1.0, np.max(np.abs(hessian))):
                raise NonHermitianError(f"Complex Hessian is not Hermitian at {p} (defect {defect:.3g})")

    def value(self, p: Sequence[complex]) -> float:
        """rho(p), real part."""
        return self._rho_fn(p).real

    def gradient(self, p: Sequence[complex]) -> np.ndarray:
        """(d rho/dz_1, ..., d rho/dz_N) at p."""
        return np.array([f(p) for f in self._gradient_fns], dtype=complex)

    def complex_hessian(self, p: Sequence[complex]) -> np.ndarray:
        """N x N matrix of d2 rho/dz_j dzbar_k at p."""
        return np.array([[f(p) for f in row] for row in self._hessian_fns], dtype=complex)

    def gradient_exprs(self) -> List[Expr]:
        return list(self._gradient_exprs)

    def hessian_exprs(self) -> List[List[Expr]]:
        return [list(row) for row in self._hessian_exprs]

    def project_to_M(self, seed: Sequence[complex], direction: Sequence[complex] = None) -> PointOnM:
        """
        Moves `seed` onto M by Newton iteration.

        Without `direction` the step follows the real gradient of rho seen as a function
        of 2N real variables, dp = -rho conj(g) / (2 |g|^2). With a complex `direction` d
        the search is restricted to the real line seed + t d.

        Args:
            seed: Starting point in C^N.
            direction: Optional fixed search direction.

        Returns:
            PointOnM: Converged point with gradient and CR frame attached.

        Raises:
            NonConvergenceError: If |rho| > newton_tol after newton_max_iter steps.
            GradientDegenerateError: If |d rho| < grad_min along the way or at the limit.
        """
        tol = self.tolerances
        p = np.asarray(seed, dtype=complex).copy()
        if p.shape != (self.N,):
            raise GeometryError(f"Seed must have {self.N} complex coordinates, got shape {p.shape}")
        d = None if direction is None else np.asarray(direction, dtype=complex)

        for iteration in range(tol.newton_max_iter + 1):
            residual = self.value(p)
            if abs(residual) <= tol.newton_tol:
                break
            if iteration == tol.newton_max_iter:
                raise NonConvergenceError(
                    f"Newton projection did not converge after {tol.newton_max_iter} steps (|rho| = {abs(residual):.3g})"
                )
            g = self.gradient(p)
            if d is None:
                norm2 = float(np.vdot(g, g).real)
                if np.sqrt(norm2) < tol.grad_min:
                    raise GradientDegenerateError(f"Gradient vanishes near {p} during projection")
                p = p - residual * g.conj() / (2.0 * norm2)
            else:
                slope = 2.0 * float(np.dot(g, d).real)
                if abs(slope) < tol.grad_min:
                    raise GradientDegenerateError(f"rho is stationary along the search direction at {p}")
                p = p - (residual / slope) * d
            if not np.all(np.isfinite(p)):
                raise NonConvergenceError("Newton projection diverged")

        return self.point_at(p)

    def point_at(self, p: Sequence[complex]) -> PointOnM:
        """
        Attaches gradient and frame to a point already on M.

        Raises:
            NotOnHypersurfaceError: If |rho(p)| > newton_tol.
            GradientDegenerateError: If |d rho(p)| < grad_min.
        """
        p = np.asarray(p, dtype=complex)
        residual = abs(self.value(p))
        if residual > self.tolerances.newton_tol:
            raise NotOnHypersurfaceError(f"|rho| = {residual:.3g} exceeds newton_tol at {p}")
        g = self.gradient(p)
        return PointOnM(p=p, residual=residual, gradient=g, frame=self.cr_frame(p, g))

    def cr_frame(self, p: Sequence[complex], gradient: np.ndarray = None) -> np.ndarray:
        """
        Orthonormal frame of H^{1,0}(M) at p.

        Rows e_j - (g_j / g_m) e_m for j != m, with m the index of the largest |g_m|
        (lowest index on ties), orthonormalized by Gram-Schmidt in index order.

        Returns:
            np.ndarray: n x N complex matrix B with B B* = I and B g = 0.

        Raises:
            GradientDegenerateError: If |g| < grad_min.
        """
        g = self.gradient(p) if gradient is None else np.asarray(gradient, dtype=complex)
        if np.linalg.norm(g) < self.tolerances.grad_min:
            raise GradientDegenerateError(f"Gradient below grad_min at {np.asarray(p)}")
        pivot = int(np.argmax(np.abs(g)))

        rows: List[np.ndarray] = []
        for j in range(self.N):
            if j == pivot:
                continue
            v = np.zeros(self.N, dtype=complex)
            v[j] = 1.0
            v[pivot] = -g[j] / g[pivot]
            # Two passes keep B B* = I to rounding.
            for _ in range(2):
                for u in rows:
                    v = v - np.vdot(u, v) * u
            rows.append(v / np.linalg.norm(v))
        return np.array(rows)

    def __repr__(self) -> str:
        return f"Hypersurface({self.source or self.rho!r}, N={self.N})"
