"""
Module Name: expr

Immutable expression trees over complex variables z_1..z_N and their conjugates.

This module provides:
- The node types of a real- or complex-valued expression (constants, variables,
  negation, conjugation, Re, Im, abs2 and the four arithmetic operators plus
  non-negative integer powers)
- Simplifying constructors (constant folding, 0/1 identities)
- Normalization that eliminates Re, Im, abs2 and pushes conjugation to the leaves
- Printing in the parser's grammar, tree-walking evaluation and compiled evaluation

Example:
    >>> from src.expr import parse, evaluate, VarSpace
    >>> space = VarSpace.ambient(2)
    >>> e = parse("abs2(z1) + abs2(z2) - 1", space)
    >>> evaluate(e, [1, 0])
    0j
"""

from __future__ import annotations

import logging
import operator
from dataclasses import dataclass, field
from typing import Callable, Dict, Final, Iterator, List, Sequence, Tuple

from src.errors.expr import *

logger = logging.getLogger(__name__)

DEFAULT_PREFIX: Final[str] = "z"
LAST_VARIABLE_ALIAS: Final[str] = "w"
PARAMETER_PREFIX: Final[str] = "u"


@dataclass(frozen=True)
class VarSpace:
    """
    Names of the variables an expression may reference.

    Attributes:
        names (Tuple[str, ...]): Canonical variable names, index j-1 for variable j.
        aliases (Dict[str, int]): Extra names mapping to a 1-based index ("w" -> N).
    """
    names: Tuple[str, ...]
    aliases: Dict[str, int] = field(default_factory=dict, compare=False, hash=False)

    @classmethod
    def ambient(cls, dimension: int, names: Sequence[str] = None) -> "VarSpace":
        """Builds the ambient space of C^N, N >= 2, with z1..zN and "w" aliasing zN."""
        if dimension < 2:
            raise ValueError(f"Ambient dimension must be at least 2, got {dimension}")
        if names is None:
            names = [f"{DEFAULT_PREFIX}{j}" for j in range(1, dimension + 1)]
        if len(names) != dimension:
            raise ValueError(f"Expected {dimension} variable names, got {len(names)}")
        aliases = {}
        if LAST_VARIABLE_ALIAS not in names:
            aliases[LAST_VARIABLE_ALIAS] = dimension
        return cls(names=tuple(names), aliases=aliases)

    @classmethod
    def parameters(cls, count: int) -> "VarSpace":
        """Builds the parameter space u1..uq of a parametrization; "u" aliases u1 when q = 1."""
        if count < 1:
            raise ValueError(f"Parameter dimension must be at least 1, got {count}")
        aliases = {PARAMETER_PREFIX: 1} if count == 1 else {}
        return cls(names=tuple(f"{PARAMETER_PREFIX}{j}" for j in range(1, count + 1)), aliases=aliases)

    @property
    def dimension(self) -> int:
        return len(self.names)

    def index_of(self, name: str) -> int:
        """Returns the 1-based index of a name, or 0 if it is unknown."""
        if name in self.names:
            return self.names.index(name) + 1
        return self.aliases.get(name, 0)


class Expr:
    """Base class of all expression nodes. Nodes are immutable and compare structurally."""

    __slots__ = ()

    @property
    def children(self) -> Tuple["Expr", ...]:
        return ()

    def walk(self) -> Iterator["Expr"]:
        """Pre-order traversal of the tree."""
        yield self
        for child in self.children:
            yield from child.walk()


@dataclass(frozen=True)
class Const(Expr):
    value: complex


@dataclass(frozen=True)
class Var(Expr):
    index: int
    conjugated: bool = False


@dataclass(frozen=True)
class Unary(Expr):
    arg: Expr

    @property
    def children(self) -> Tuple[Expr, ...]:
        return (self.arg,)


@dataclass(frozen=True)
class Neg(Unary):
    pass


@dataclass(frozen=True)
class Conj(Unary):
    pass


@dataclass(frozen=True)
class RealPart(Unary):
    pass


@dataclass(frozen=True)
class ImagPart(Unary):
    pass


@dataclass(frozen=True)
class Abs2(Unary):
    pass


@dataclass(frozen=True)
class Binary(Expr):
    left: Expr
    right: Expr

    @property
    def children(self) -> Tuple[Expr, ...]:
        return (self.left, self.right)


@dataclass(frozen=True)
class Add(Binary):
    pass


@dataclass(frozen=True)
class Sub(Binary):
    pass


@dataclass(frozen=True)
class Mul(Binary):
    pass


@dataclass(frozen=True)
class Div(Binary):
    def __post_init__(self) -> None:
        if isinstance(self.right, Const) and self.right.value == 0:
            raise EvaluationError("Division by a structurally zero denominator", self)


@dataclass(frozen=True)
class Pow(Expr):
    base: Expr
    exponent: int

    def __post_init__(self) -> None:
        if not isinstance(self.exponent, int) or self.exponent < 0:
            raise ValueError(f"Exponent must be a non-negative integer, got {self.exponent!r}")

    @property
    def children(self) -> Tuple[Expr, ...]:
        return (self.base,)


ZERO: Final[Const] = Const(0j)
ONE: Final[Const] = Const(1 + 0j)


def const(value: complex) -> Const:
    return Const(complex(value))


def _is_const(e: Expr, value: complex = None) -> bool:
    if not isinstance(e, Const):
        return False
    return value is None or e.value == value


# --- Simplifying constructors ---

def neg(a: Expr) -> Expr:
    if isinstance(a, Const):
        return Const(-a.value)
    if isinstance(a, Neg):
        return a.arg
    return Neg(a)


def add(a: Expr, b: Expr) -> Expr:
    if isinstance(a, Const) and isinstance(b, Const):
        return Const(a.value + b.value)
    if _is_const(a, 0):
        return b
    if _is_const(b, 0):
        return a
    return Add(a, b)


def sub(a: Expr, b: Expr) -> Expr:
    if isinstance(a, Const) and isinstance(b, Const):
        return Const(a.value - b.value)
    if _is_const(b, 0):
        return a
    if _is_const(a, 0):
        return neg(b)
    return Sub(a, b)


def mul(a: Expr, b: Expr) -> Expr:
    if isinstance(a, Const) and isinstance(b, Const):
        return Const(a.value * b.value)
    if _is_const(a, 0) or _is_const(b, 0):
        return ZERO
    if _is_const(a, 1):
        return b
    if _is_const(b, 1):
        return a
    if _is_const(a, -1):
        return neg(b)
    if _is_const(b, -1):
        return neg(a)
    return Mul(a, b)


def div(a: Expr, b: Expr) -> Expr:
    if _is_const(b, 0):
        raise EvaluationError("Division by a structurally zero denominator", a)
    if isinstance(a, Const) and isinstance(b, Const):
        return Const(a.value / b.value)
    if _is_const(a, 0):
        return ZERO
    if _is_const(b, 1):
        return a
    return Div(a, b)


def power(a: Expr, k: int) -> Expr:
    if k == 0:
        return ONE
    if k == 1:
        return a
    if isinstance(a, Const):
        return Const(a.value ** k)
    return Pow(a, k)


# --- Normalization ---

def conjugate(e: Expr) -> Expr:
    """Pushes a conjugation through a normalized tree down to its leaves."""
    if isinstance(e, Const):
        return Const(e.value.conjugate())
    if isinstance(e, Var):
        return Var(e.index, not e.conjugated)
    if isinstance(e, Neg):
        return neg(conjugate(e.arg))
    if isinstance(e, Add):
        return add(conjugate(e.left), conjugate(e.right))
    if isinstance(e, Sub):
        return sub(conjugate(e.left), conjugate(e.right))
    if isinstance(e, Mul):
        return mul(conjugate(e.left), conjugate(e.right))
    if isinstance(e, Div):
        return div(conjugate(e.left), conjugate(e.right))
    if isinstance(e, Pow):
        return power(conjugate(e.base), e.exponent)
    return conjugate(normalize(e))


def normalize(e: Expr) -> Expr:
    """
    Rewrites a tree into conj-free arithmetic form.

    Re(a) becomes (a + conj a)/2, Im(a) becomes -i/2 (a - conj a), abs2(a)
    becomes a * conj a, and conjugation is pushed down to variables and constants.
    """
    if isinstance(e, (Const, Var)):
        return e
    if isinstance(e, Neg):
        return neg(normalize(e.arg))
    if isinstance(e, Conj):
        return conjugate(normalize(e.arg))
    if isinstance(e, RealPart):
        a = normalize(e.arg)
        return mul(Const(0.5), add(a, conjugate(a)))
    if isinstance(e, ImagPart):
        a = normalize(e.arg)
        return mul(Const(-0.5j), sub(a, conjugate(a)))
    if isinstance(e, Abs2):
        a = normalize(e.arg)
        return mul(a, conjugate(a))
    if isinstance(e, Add):
        return add(normalize(e.left), normalize(e.right))
    if isinstance(e, Sub):
        return sub(normalize(e.left), normalize(e.right))
    if isinstance(e, Mul):
        return mul(normalize(e.left), normalize(e.right))
    if isinstance(e, Div):
        return div(normalize(e.left), normalize(e.right))
    if isinstance(e, Pow):
        return power(normalize(e.base), e.exponent)
    raise TypeError(f"Unknown expression node: {type(e).__name__}")


def canonical_key(e: Expr) -> str:
    """
    Order-insensitive signature of a normalized tree.

    Sums and products are flattened and their operands sorted, so that
    a + b and b + a (or a*conj(a) and conj(a)*a) share a key.
    """
    if isinstance(e, Const):
        return f"c({e.value.real + 0.0!r},{e.value.imag + 0.0!r})"
    if isinstance(e, Var):
        return f"{'v' if not e.conjugated else 'vbar'}{e.index}"
    if isinstance(e, Neg):
        return f"neg({canonical_key(e.arg)})"
    if isinstance(e, (Add, Mul)):
        kind = type(e)
        operands = []
        stack = [e]
        while stack:
            node = stack.pop()
            if isinstance(node, kind):
                stack.extend(node.children)
            else:
                operands.append(canonical_key(node))
        return f"{kind.__name__.lower()}[{','.join(sorted(operands))}]"
    if isinstance(e, Pow):
        return f"pow({canonical_key(e.base)},{e.exponent})"
    return f"{type(e).__name__.lower()}({','.join(canonical_key(c) for c in e.children)})"


# --- Printing ---

def _format_real(x: float) -> str:
    return repr(float(x))


def _format_const(c: complex) -> str:
    re_part, im_part = c.real, c.imag
    if im_part == 0:
        text = _format_real(re_part)
        return f"({text})" if text.startswith("-") else text
    imag = "i" if abs(im_part) == 1 else f"{_format_real(abs(im_part))}*i"
    sign = "-" if im_part < 0 else "+"
    if re_part == 0:
        return f"({'-' if im_part < 0 else ''}{imag})"
    return f"({_format_real(re_part)}{sign}{imag})"


def to_source(e: Expr, space: VarSpace) -> str:
    """Prints a tree in the grammar accepted by the parser; parse(to_source(e)) == e for parsed trees."""
    if isinstance(e, Const):
        return _format_const(e.value)
    if isinstance(e, Var):
        name = space.names[e.index - 1]
        return f"conj({name})" if e.conjugated else name
    if isinstance(e, Neg):
        return f"(-{to_source(e.arg, space)})"
    if isinstance(e, Conj):
        return f"conj({to_source(e.arg, space)})"
    if isinstance(e, RealPart):
        return f"Re({to_source(e.arg, space)})"
    if isinstance(e, ImagPart):
        return f"Im({to_source(e.arg, space)})"
    if isinstance(e, Abs2):
        return f"abs2({to_source(e.arg, space)})"
    if isinstance(e, Pow):
        return f"({to_source(e.base, space)}^{e.exponent})"
    symbol = {Add: "+", Sub: "-", Mul: "*", Div: "/"}[type(e)]
    return f"({to_source(e.left, space)} {symbol} {to_source(e.right, space)})"


# --- Evaluation ---

def evaluate(e: Expr, point: Sequence[complex]) -> complex:
    """
    Evaluates a tree at a point of C^N by walking it.

    Args:
        e: Expression to evaluate.
        point: Complex coordinates, entry j-1 for variable j.

    Returns:
        complex: The value of the expression.

    Raises:
        EvaluationError: On division by zero (carrying the offending Div node)
                         or on arithmetic overflow.
    """
    if isinstance(e, Const):
        return e.value
    if isinstance(e, Var):
        value = complex(point[e.index - 1])
        return value.conjugate() if e.conjugated else value
    if isinstance(e, Neg):
        return -evaluate(e.arg, point)
    if isinstance(e, Conj):
        return evaluate(e.arg, point).conjugate()
    if isinstance(e, RealPart):
        return complex(evaluate(e.arg, point).real)
    if isinstance(e, ImagPart):
        return complex(evaluate(e.arg, point).imag)
    if isinstance(e, Abs2):
        value = evaluate(e.arg, point)
        return value * value.conjugate()
    if isinstance(e, Pow):
        try:
            return evaluate(e.base, point) ** e.exponent
        except OverflowError as exc:
            raise EvaluationError(f"Overflow evaluating power: {exc}", e) from exc
    left = evaluate(e.left, point)
    right = evaluate(e.right, point)
    if isinstance(e, Add):
        return left + right
    if isinstance(e, Sub):
        return left - right
    if isinstance(e, Mul):
        return left * right
    if right == 0:
        raise EvaluationError("Division by zero", e)
    return left / right


Closure = Callable[[List[complex], List[complex]], complex]

_BINARY_OPERATORS = {Add: operator.add, Sub: operator.sub, Mul: operator.mul, Div: operator.truediv}


def _closure(e: Expr) -> Closure:
    """Nested closures of (z, conj(z)), one per node."""
    if isinstance(e, Const):
        value = e.value
        return lambda z, zc: value
    if isinstance(e, Var):
        i = e.index - 1
        if e.conjugated:
            return lambda z, zc: zc[i]
        return lambda z, zc: z[i]
    if isinstance(e, Pow):
        base, exponent = _closure(e.base), e.exponent
        return lambda z, zc: base(z, zc) ** exponent
    if isinstance(e, Unary):
        arg = _closure(e.arg)
        if isinstance(e, Neg):
            return lambda z, zc: -arg(z, zc)
        if isinstance(e, Conj):
            return lambda z, zc: arg(z, zc).conjugate()
        if isinstance(e, RealPart):
            return lambda z, zc: complex(arg(z, zc).real)
        if isinstance(e, ImagPart):
            return lambda z, zc: complex(arg(z, zc).imag)

        def abs2(z, zc):
            value = arg(z, zc)
            return value * value.conjugate()
        return abs2
    left, right, op = _closure(e.left), _closure(e.right), _BINARY_OPERATORS[type(e)]
    return lambda z, zc: op(left(z, zc), right(z, zc))


def compile_expr(e: Expr) -> Callable[[Sequence[complex]], complex]:
    """
    Compiles a tree into a Python callable of a point.

    The callable is equivalent to `evaluate` but resolves the node dispatch once;
    on division by zero or overflow it falls back to `evaluate` so the error
    carries the offending sub-expression.
    """
    fast = _closure(e)

    def evaluator(point: Sequence[complex]) -> complex:
        z = [complex(v) for v in point]
        try:
            return complex(fast(z, [v.conjugate() for v in z]))
        except (ZeroDivisionError, OverflowError):
            return evaluate(e, z)

    return evaluator


__all__ = [
    "VarSpace", "Expr", "Const", "Var", "Neg", "Conj", "RealPart", "ImagPart", "Abs2",
    "Add", "Sub", "Mul", "Div", "Pow", "ZERO", "ONE",
    "const", "neg", "add", "sub", "mul", "div", "power",
    "conjugate", "normalize", "canonical_key", "to_source", "evaluate", "compile_expr",
]
