"""
Module Name: wirtinger

Symbolic Wirtinger derivatives d/dz_j and d/dzbar_j of expression trees.

z_j and conj(z_j) are treated as independent variables. Trees are normalized
first (Re, Im, abs2 and conj eliminated), so the rules below only cover
constants, variables, negation and the arithmetic operators.

Example:
    >>> from src.expr import parse, wirtinger_dzbar, VarSpace
    >>> wirtinger_dzbar(parse("Re(w)", VarSpace.ambient(2)), 2)
    Const(value=(0.5+0j))
"""

import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from src.errors.expr import *
from src.expr.expr import (
    Expr, Const, Var, Neg, Add, Sub, Mul, Div, Pow, ZERO, ONE,
    neg, add, sub, mul, div, power, const, normalize, conjugate, canonical_key, evaluate,
)

logger = logging.getLogger(__name__)

REAL_TOLERANCE = 1e-10
SAMPLE_SEED = 20240917


def _derive(e: Expr, index: int, conjugated: bool) -> Expr:
    if isinstance(e, Const):
        return ZERO
    if isinstance(e, Var):
        return ONE if (e.index == index and e.conjugated == conjugated) else ZERO
    if isinstance(e, Neg):
        return neg(_derive(e.arg, index, conjugated))
    if isinstance(e, Add):
        return add(_derive(e.left, index, conjugated), _derive(e.right, index, conjugated))
    if isinstance(e, Sub):
        return sub(_derive(e.left, index, conjugated), _derive(e.right, index, conjugated))
    if isinstance(e, Mul):
        return add(
            mul(_derive(e.left, index, conjugated), e.right),
            mul(e.left, _derive(e.right, index, conjugated)),
        )
    if isinstance(e, Div):
        numerator = sub(
            mul(_derive(e.left, index, conjugated), e.right),
            mul(e.left, _derive(e.right, index, conjugated)),
        )
        return div(numerator, power(e.right, 2))
    if isinstance(e, Pow):
        inner = _derive(e.base, index, conjugated)
        return mul(mul(const(e.exponent), power(e.base, e.exponent - 1)), inner)
    raise TypeError(f"Cannot differentiate non-normalized node {type(e).__name__}")


def wirtinger_dz(e: Expr, index: int) -> Expr:
    """
    Symbolic derivative with respect to z_index (1-based).

    Args:
        e: Any well-formed tree.
        index: Variable index, 1 <= index <= N.

    Returns:
        Expr: Lightly simplified derivative tree.
    """
    if index < 1:
        raise ValueError(f"Variable index must be positive, got {index}")
    return _derive(normalize(e), index, conjugated=False)


def wirtinger_dzbar(e: Expr, index: int) -> Expr:
    """Symbolic derivative with respect to conj(z_index) (1-based)."""
    if index < 1:
        raise ValueError(f"Variable index must be positive, got {index}")
    return _derive(normalize(e), index, conjugated=True)


@dataclass(frozen=True)
class RealValuedness:
    """
    Outcome of a real-valuedness check.

    Attributes:
        is_real: Whether the expression is real-valued.
        method: "structural" or "sampled".
        witness: A point where the imaginary part is non-zero, when is_real is False.
    """
    is_real: bool
    method: str
    witness: Optional[Tuple[complex, ...]] = None

    def __bool__(self) -> bool:
        return self.is_real


def _sample_points(dimension: int, trials: int):
    for j in range(dimension):
        for scale in (1, 1j):
            point = [0j] * dimension
            point[j] = complex(scale)
            yield tuple(point)
    rng = np.random.default_rng(SAMPLE_SEED)
    for _ in range(trials):
        sample = rng.standard_normal(dimension) + 1j * rng.standard_normal(dimension)
        yield tuple(complex(v) for v in sample)


def is_real_valued(e: Expr, trials: int = 20, dimension: int = None) -> RealValuedness:
    """
    Decides whether an expression is real-valued.

    Structural check first (normalized e equals normalized conj(e) up to the order
    of sums and products), then a sampled check |Im e(p)| <= 1e-10 * max(1, |e(p)|)
    at the coordinate points e_j, i*e_j followed by `trials` pseudo-random points.
    Points where evaluation fails are skipped. `dimension` defaults to the
    largest variable index the expression uses.
    """
    normalized = normalize(e)
    if dimension is None:
        dimension = max((n.index for n in normalized.walk() if isinstance(n, Var)), default=1)
    if canonical_key(normalized) == canonical_key(conjugate(normalized)):
        return RealValuedness(True, "structural")
    for point in _sample_points(dimension, trials):
        try:
            value = evaluate(normalized, point)
        except EvaluationError:
            continue
        if abs(value.imag) > REAL_TOLERANCE * max(1.0, abs(value)):
            logger.debug("Expression is not real-valued, witness %s", point)
            return RealValuedness(False, "sampled", point)
    return RealValuedness(True, "sampled")


__all__ = ["wirtinger_dz", "wirtinger_dzbar", "RealValuedness", "is_real_valued"]
