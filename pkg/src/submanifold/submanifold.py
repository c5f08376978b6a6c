"""
Module Name: submanifold

Tangential Cauchy-Riemann calculus and complex-submanifold criteria on M.

This module provides:
- dbar_b and d_b covectors of ambient functions restricted to M
- Non-degeneracy of defining systems (independent differentials on T(M))
- The rank criterion: span of dbar_b rho_1..rho_{2k+1} of constant rank k
- Wedge conditions on an independent block and its extensions
- Direct verification of parametrized complex submanifolds
- Necessary-condition checks for candidate real-radical generators of a stratum

Every verdict is certified only at the tested points and records how many there were.

Example:
    >>> from src.geometry import Hypersurface
    >>> from src.models import DefiningSystem
    >>> from src.submanifold import rank_test
    >>> H = Hypersurface.from_source("Re(w) + abs2(z1*z2)", 3)
    >>> system = DefiningSystem.from_sources(["Re(z1)", "Im(z1)", "Im(w)"], H.space, k=1)
    >>> points = [H.point_at([0, u, 0]) for u in (0.5, 1j, -2)]
    >>> rank_test(H, system, points).kind.value
    'complex-manifold'
"""

import logging
from functools import lru_cache
from typing import Callable, Sequence, Tuple

import numpy as np

from src.errors.submanifold import *
from src.expr import Expr, compile_expr, wirtinger_dz, wirtinger_dzbar
from src.geometry import Hypersurface
from src.invariants import classify_point, numerical_rank, singular_values, gram_determinant
from src.models import (
    ToleranceConfig, PointOnM, Region, DefiningSystem, Parametrization, Covector, NondegeneracyVerdict,
    RankVerdictKind, RankVerdict, CheckVerdict,
)
from src.strata import detect_stratum, sample_zero_set

logger = logging.getLogger(__name__)

HOLOMORPHY_TOLERANCE = 1e-8
TANGENCY_TOLERANCE = 1e-8

Evaluator = Callable[[Sequence[complex]], complex]


@lru_cache(maxsize=512)
def _compiled(e: Expr, dimension: int) -> Tuple[Evaluator, Tuple[Evaluator, ...], Tuple[Evaluator, ...]]:
    """e with its d/dz_m and d/dzbar_m, m = 1..dimension, compiled once per tree."""
    dz = tuple(compile_expr(wirtinger_dz(e, m)) for m in range(1, dimension + 1))
    dzbar = tuple(compile_expr(wirtinger_dzbar(e, m)) for m in range(1, dimension + 1))
    return compile_expr(e), dz, dzbar


def _dz(e: Expr, p: np.ndarray) -> np.ndarray:
    _, dz, _ = _compiled(e, p.size)
    return np.array([f(p) for f in dz], dtype=complex)


def _dzbar(e: Expr, p: np.ndarray) -> np.ndarray:
    _, _, dzbar = _compiled(e, p.size)
    return np.array([f(p) for f in dzbar], dtype=complex)


def dbar_b(H: Hypersurface, x: PointOnM, r: Expr) -> Covector:
    """Component i is conj(L_i) r = sum_m conj(B_im) dr/dzbar_m at x."""
    return Covector(components=x.frame.conj() @ _dzbar(r, x.p), point=x)


def partial_b(H: Hypersurface, x: PointOnM, r: Expr) -> Covector:
    """Component i is L_i r = sum_m B_im dr/dz_m at x; for real r this is conj(dbar_b r)."""
    return Covector(components=x.frame @ _dz(r, x.p), point=x)


def covector_matrix(H: Hypersurface, x: PointOnM, system: DefiningSystem) -> np.ndarray:
    """d x n matrix stacking dbar_b of every function of the system."""
    return np.array([dbar_b(H, x, r).components for r in system.functions])


def tangent_basis(x: PointOnM) -> np.ndarray:
    """
    2n + 1 real tangent vectors of M at x, as rows in C^N.

    b_j, i b_j for the frame rows, then the characteristic direction i conj(g)/|g|.
    """
    g = x.gradient
    return np.vstack([x.frame, 1j * x.frame, (1j * g.conj() / np.linalg.norm(g))[np.newaxis, :]])


def _differentials(x: PointOnM, system: DefiningSystem) -> np.ndarray:
    # dr(v) = 2 Re(sum_m dr/dz_m v_m) for real-valued r.
    basis = tangent_basis(x)
    return np.array([2.0 * (basis @ _dz(r, x.p)).real for r in system.functions])


def nondegeneracy_check(H: Hypersurface, system: DefiningSystem, points: Sequence[PointOnM],
                        tolerances: ToleranceConfig = None) -> NondegeneracyVerdict:
    """
    Whether d rho_1 ^ ... ^ d rho_d != 0 on T(M) at every point.

    The d x (2n + 1) matrix of differentials on a real tangent basis must have its
    smallest singular value at least rank_tol times the largest.

    Raises:
        InvalidSystemError: If d > 2n + 1.
        EmptyPointSetError: If no point is given.
    """
    if system.d > 2 * H.n + 1:
        raise InvalidSystemError(f"{system.d} functions cannot be independent on a {2 * H.n + 1}-dimensional M")
    if not points:
        raise EmptyPointSetError("Non-degeneracy needs at least one point")
    tolerances = tolerances or H.tolerances
    min_ratio = np.inf
    witness = None
    for x in points:
        s = singular_values(_differentials(x, system))
        ratio = 0.0 if s[0] == 0.0 else float(s[-1] / s[0])
        min_ratio = min(min_ratio, ratio)
        if witness is None and (s[0] <= tolerances.rank_tol or ratio < tolerances.rank_tol):
            witness = x
    if witness is not None:
        logger.info("Defining system is degenerate at %s", witness)
    return NondegeneracyVerdict(is_nondegenerate=witness is None, sample_count=len(points),
                                min_ratio=float(min_ratio), witness=witness)


def _check_on_zero_set(H: Hypersurface, system: DefiningSystem, points: Sequence[PointOnM],
                       tolerances: ToleranceConfig) -> None:
    for x in points:
        if abs(H.value(x.p)) > tolerances.newton_tol:
            raise PreconditionError(f"Point {x} is not on M")
        values = [abs(_compiled(r, H.N)[0](x.p).real) for r in system.functions]
        if max(values) > tolerances.stratum_tol:
            raise PreconditionError(f"Point {x} is not on the zero set of the system (max |rho_j| = {max(values):.3g})")


def rank_test(H: Hypersurface, system: DefiningSystem, points: Sequence[PointOnM], k: int = None,
              tolerances: ToleranceConfig = None, validate: bool = True) -> RankVerdict:
    """
    Rank of span{dbar_b rho_1, ..., dbar_b rho_{2k+1}} at points of the common zero set.

    Verdicts, in order of precedence: complex-manifold (dim n - k) when every rank is k,
    rank-too-high when every rank is at least k, rank-too-low when every rank is at
    most k, rank-not-constant otherwise.

    Args:
        H: The hypersurface.
        system: Defining system with d = 2k + 1 functions.
        points: Points of M on the zero set of the system.
        k: Target rank (defaults to system.k).
        tolerances: Overrides H.tolerances.
        validate: Check that every point lies on M and on the zero set.

    Raises:
        EmptyPointSetError: If no point is given.
        InvalidSystemError: If k is missing or d != 2k + 1.
        PreconditionError: If a point is off M or off the zero set.
    """
    k = system.k if k is None else k
    if k is None or system.d != 2 * k + 1:
        raise InvalidSystemError(f"Rank criterion needs 2k + 1 functions, got d = {system.d} and k = {k}")
    if not points:
        raise EmptyPointSetError("Rank criterion cannot be tested on an empty point set")
    tolerances = tolerances or H.tolerances
    if validate:
        _check_on_zero_set(H, system, points, tolerances)

    ranks = tuple(numerical_rank(covector_matrix(H, x, system), tolerances.rank_tol) for x in points)
    if all(r == k for r in ranks):
        kind = RankVerdictKind.COMPLEX_MANIFOLD
    elif all(r >= k for r in ranks):
        kind = RankVerdictKind.RANK_TOO_HIGH
    elif all(r <= k for r in ranks):
        kind = RankVerdictKind.RANK_TOO_LOW
    else:
        kind = RankVerdictKind.RANK_NOT_CONSTANT
    logger.info("Rank test over %d points: ranks %d..%d, verdict %s", len(ranks), min(ranks), max(ranks), kind.value)
    return RankVerdict(
        kind=kind,
        k=k,
        complex_dimension=H.n - k if kind == RankVerdictKind.COMPLEX_MANIFOLD else None,
        ranks=ranks,
        tolerance=tolerances.rank_tol,
        sample_count=len(points),
    )


def wedge_check(H: Hypersurface, system: DefiningSystem, q: int, points: Sequence[PointOnM],
                tolerances: ToleranceConfig = None) -> CheckVerdict:
    """
    Wedge conditions for a complex q-dimensional zero set.

    (a) The Gram determinant of the first n - q covectors is at least rank_tol
        (the wedge of the block does not vanish; an empty block has Gram 1).
    (b) Extending the block by any further dbar_b rho_l leaves a Gram determinant of
        at most rank_tol * max(1, G |dbar_b rho_l|^2) (the wedge vanishes on the zero set).

    Raises:
        InvalidSystemError: If n - q is negative, above n, or above d.
        EmptyPointSetError: If no point is given.
    """
    block = H.n - q
    if not 0 <= block <= H.n:
        raise InvalidSystemError(f"Target dimension q = {q} leaves a block of size {block} outside 0..{H.n}")
    if block > system.d:
        raise InvalidSystemError(f"Block of size {block} needs at least that many functions, got {system.d}")
    if not points:
        raise EmptyPointSetError("Wedge conditions cannot be tested on an empty point set")
    tolerances = tolerances or H.tolerances

    first_a = first_b = None
    for index, x in enumerate(points):
        covectors = covector_matrix(H, x, system)
        head = covectors[:block]
        gram = gram_determinant(head)
        if gram < tolerances.rank_tol:
            first_a = index if first_a is None else first_a
            continue
        for extra in covectors[block:]:
            extended = gram_determinant(np.vstack([head, extra[np.newaxis, :]]))
            if extended > tolerances.rank_tol * max(1.0, gram * float(np.vdot(extra, extra).real)):
                first_b = index if first_b is None else first_b
                break

    clauses = (("a", first_a is None), ("b", first_b is None))
    if first_a is not None:
        return CheckVerdict(False, "a", "Wedge of the independent block vanishes",
                            points[first_a].p, len(points), clauses)
    if first_b is not None:
        return CheckVerdict(False, "b", "An extended wedge does not vanish on the zero set",
                            points[first_b].p, len(points), clauses)
    return CheckVerdict(True, None, "Both wedge conditions hold", None, len(points), clauses)


def parameter_samples(q: int, box: Tuple[float, float], count: int, seed: int = 0) -> np.ndarray:
    """`count` points of C^q with real and imaginary parts uniform in `box`."""
    rng = np.random.default_rng(seed)
    lo, hi = box
    return rng.uniform(lo, hi, size=(count, q)) + 1j * rng.uniform(lo, hi, size=(count, q))


def verify_parametrized(H: Hypersurface, f: Parametrization, params: Sequence[Sequence[complex]],
                        tolerances: ToleranceConfig = None) -> CheckVerdict:
    """
    Checks that u -> f(u) is a complex q-dimensional submanifold tangent to H(M).

    At every parameter point: (a) |rho(f(u))| <= stratum_tol, (b) |df_m/dubar_i| <= 1e-8,
    (c) |sum_m g_m df_m/du_i| <= 1e-8 with g = d rho at f(u), (d) the q x N Jacobian
    has numerical rank q. The failed clause reported is the first in that order.

    Raises:
        InvalidSystemError: If f does not have N components.
        EmptyPointSetError: If no parameter point is given.
    """
    if len(f.components) != H.N:
        raise InvalidSystemError(f"Parametrization has {len(f.components)} components, expected {H.N}")
    params = [np.asarray(u, dtype=complex).reshape(f.q) for u in params]
    if not params:
        raise EmptyPointSetError("Parametrization needs at least one parameter point")
    tolerances = tolerances or H.tolerances

    failures: dict = {}
    for u in params:
        z = np.array([_compiled(c, f.q)[0](u) for c in f.components])
        jacobian = np.array([_dz(c, u) for c in f.components]).T
        anti = np.array([_dzbar(c, u) for c in f.components])
        checks = {
            "a": abs(H.value(z)) <= tolerances.stratum_tol,
            "b": float(np.max(np.abs(anti))) <= HOLOMORPHY_TOLERANCE,
            "c": float(np.max(np.abs(jacobian @ H.gradient(z)))) <= TANGENCY_TOLERANCE,
            "d": numerical_rank(jacobian, tolerances.rank_tol) == f.q,
        }
        for clause, ok in checks.items():
            if not ok and clause not in failures:
                failures[clause] = u

    clauses = tuple((c, c not in failures) for c in "abcd")
    details = {
        "a": "Image leaves M",
        "b": "Parametrization is not holomorphic",
        "c": "Image tangent vectors leave H(M)",
        "d": "Jacobian rank is below q",
    }
    for clause in "abcd":
        if clause in failures:
            logger.info("Parametrization fails clause (%s) at %s", clause, failures[clause])
            return CheckVerdict(False, clause, details[clause], failures[clause], len(params), clauses)
    return CheckVerdict(True, None, f"Complex submanifold of dimension {f.q} tangent to H(M)", None,
                        len(params), clauses)


def verify_radical_generators(H: Hypersurface, gens: DefiningSystem, q: int, region: Region,
                              tolerances: ToleranceConfig = None,
                              stratum_points: Sequence[PointOnM] = None) -> CheckVerdict:
    """
    Necessary conditions for gens to generate the real radical of {A_0, ..., A_{q-1}}.

    (a) every generator vanishes on the sampled points of S_q;
    (b) every sampled common zero of the generators on M has nullity >= q;
    (c) the generators are non-degenerate on their zero set;
    (d) the rank criterion with k = n - q gives a complex manifold.

    All four clauses are evaluated; the verdict names the first failed one. An empty
    sampled zero set fails (b), (c) and (d) with no witness. Passing does not decide
    that the generators generate the radical.

    Raises:
        InvalidSystemError: If there are not 2(n - q) + 1 generators.
    """
    k = H.n - q
    if gens.d != 2 * k + 1:
        raise InvalidSystemError(f"Expected {2 * k + 1} generators for q = {q}, got {gens.d}")
    tolerances = tolerances or H.tolerances

    if stratum_points is None:
        report = detect_stratum(H, region, q, tolerances=tolerances)
        stratum_points = [m.levi.point for m in report.members]
    witnesses = {}
    for x in stratum_points:
        values = [abs(_compiled(r, H.N)[0](x.p).real) for r in gens.functions]
        if max(values) > tolerances.stratum_tol:
            witnesses["a"] = x.p
            break
    if not stratum_points:
        logger.warning("S_%d has no sampled point; generator vanishing holds vacuously", q)

    details = {
        "a": f"A generator does not vanish on S_{q}",
        "b": f"A common zero of the generators has nullity below {q}",
        "c": "Generators are degenerate on their zero set",
    }
    zeros = sample_zero_set(H, region, gens.functions, tolerances).points
    if not zeros:
        # (c) and (d) have nothing to be tested on
        logger.warning("Common zero set of the generators has no sampled point on M")
        details["b"] = "Common zero set of the generators has no sampled point on M"
        witnesses.update({c: None for c in "bcd"})
        details["d"] = "Rank criterion has no point to test"
    else:
        for x in zeros:
            if classify_point(H, x, tolerances=tolerances).nullity < q:
                witnesses["b"] = x.p
                break
        nondegenerate = nondegeneracy_check(H, gens, zeros, tolerances)
        if not nondegenerate.is_nondegenerate:
            witnesses["c"] = nondegenerate.witness.p
        rank = rank_test(H, gens, zeros, k, tolerances, validate=False)
        if not rank.is_complex_manifold:
            witnesses["d"] = zeros[next(i for i, r in enumerate(rank.ranks) if r != k)].p
        details["d"] = f"Rank criterion gives {rank.kind.value}"

    clauses = tuple((c, c not in witnesses) for c in "abcd")
    for clause in "abcd":
        if clause in witnesses:
            return CheckVerdict(False, clause, details[clause], witnesses[clause], len(zeros), clauses)
    return CheckVerdict(True, None, f"Necessary conditions hold for a complex manifold of dimension {q}", None,
                        len(zeros), clauses)


__all__ = [
    "dbar_b", "partial_b", "covector_matrix", "tangent_basis", "nondegeneracy_check", "rank_test",
    "wedge_check", "parameter_samples", "verify_parametrized", "verify_radical_generators",
]
