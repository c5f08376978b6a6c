"""
Module Name: parser

Recursive-descent parser for expressions in complex variables.

Grammar (whitespace-insensitive):
    expr   := term (("+"|"-") term)*
    term   := factor (("*"|"/") factor)*
    factor := atom ("^" nonneg-int)? | "-" factor
    atom   := number | "i" | ident | "conj(" expr ")" | "Re(" expr ")"
            | "Im(" expr ")" | "abs2(" expr ")" | "(" expr ")"

Constant sub-expressions are folded while parsing, so printing a parsed tree
and parsing it again yields the same tree.

Example:
    >>> from src.expr import parse, VarSpace
    >>> parse("Re(w) + abs2(z1*z2)", VarSpace.ambient(3))
"""

import re
import logging
from dataclasses import dataclass
from typing import Final, List

from src.errors.expr import *
from src.expr.expr import (
    Expr, Const, Var, Neg, Conj, RealPart, ImagPart, Abs2, Add, Sub, Mul, Div, Pow,
    VarSpace, const, evaluate,
)

logger = logging.getLogger(__name__)

IMAGINARY_UNIT: Final[str] = "i"
FUNCTIONS: Final[dict] = {"conj": Conj, "Re": RealPart, "Im": ImagPart, "abs2": Abs2}
TOKEN_PATTERN: Final[re.Pattern] = re.compile(
    r"(?P<ws>\s+)"
    r"|(?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<ident>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[-+*/^()])"
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    offset: int


def tokenize(source: str) -> List[Token]:
    """
    Splits source text into tokens carrying their byte offsets.

    Raises:
        ExpressionSyntaxError: On a character outside the grammar's alphabet.
    """
    tokens: List[Token] = []
    position = 0
    while position < len(source):
        match = TOKEN_PATTERN.match(source, position)
        if match is None:
            offset = len(source[:position].encode("utf-8"))
            raise ExpressionSyntaxError(f"Unexpected character {source[position]!r}", offset)
        kind = match.lastgroup
        if kind != "ws":
            tokens.append(Token(kind, match.group(), len(source[:position].encode("utf-8"))))
        position = match.end()
    tokens.append(Token("end", "", len(source.encode("utf-8"))))
    return tokens


class _Parser:
    """Single-use recursive-descent parser over a token list."""

    def __init__(self, tokens: List[Token], space: VarSpace) -> None:
        self.tokens = tokens
        self.space = space
        self.position = 0

    def peek(self) -> Token:
        return self.tokens[self.position]

    def advance(self) -> Token:
        token = self.tokens[self.position]
        self.position += 1
        return token

    def expect(self, text: str) -> Token:
        token = self.advance()
        if token.text != text:
            found = token.text or "end of input"
            raise ExpressionSyntaxError(f"Expected {text!r}, found {found!r}", token.offset)
        return token

    def parse(self) -> Expr:
        result = self.expr()
        token = self.peek()
        if token.kind != "end":
            raise ExpressionSyntaxError(f"Unexpected token {token.text!r}", token.offset)
        return result

    def expr(self) -> Expr:
        left = self.term()
        while self.peek().text in ("+", "-"):
            op = self.advance()
            right = self.term()
            left = _fold(Add(left, right) if op.text == "+" else Sub(left, right))
        return left

    def term(self) -> Expr:
        left = self.factor()
        while self.peek().text in ("*", "/"):
            op = self.advance()
            right = self.factor()
            if op.text == "*":
                left = _fold(Mul(left, right))
            else:
                try:
                    left = _fold(Div(left, right))
                except EvaluationError as e:
                    raise ExpressionSyntaxError("Division by a constant zero", op.offset) from e
        return left

    def factor(self) -> Expr:
        if self.peek().text == "-":
            self.advance()
            inner = self.factor()
            return const(-inner.value) if isinstance(inner, Const) else Neg(inner)
        base = self.atom()
        if self.peek().text == "^":
            caret = self.advance()
            token = self.advance()
            if token.text == "-":
                raise InvalidExponentError("Negative exponent", token.offset)
            if token.kind != "num":
                raise InvalidExponentError("Exponent must be a non-negative integer literal", caret.offset)
            if not token.text.isdigit():
                raise InvalidExponentError(f"Non-integer exponent {token.text!r}", token.offset)
            return _fold(Pow(base, int(token.text)))
        return base

    def atom(self) -> Expr:
        token = self.advance()
        if token.kind == "num":
            return const(float(token.text))
        if token.text == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        if token.kind == "ident":
            if token.text in FUNCTIONS and self.peek().text == "(":
                self.advance()
                inner = self.expr()
                self.expect(")")
                return _apply_function(FUNCTIONS[token.text], inner)
            if token.text == IMAGINARY_UNIT and self.space.index_of(token.text) == 0:
                return const(1j)
            index = self.space.index_of(token.text)
            if index == 0:
                raise UnknownVariableError(f"Unknown variable {token.text!r}", token.offset)
            return Var(index)
        found = token.text or "end of input"
        raise ExpressionSyntaxError(f"Unexpected token {found!r}", token.offset)


def _apply_function(node_type: type, inner: Expr) -> Expr:
    if node_type is Conj and isinstance(inner, Var) and not inner.conjugated:
        return Var(inner.index, conjugated=True)
    return _fold(node_type(inner))


def _fold(e: Expr) -> Expr:
    """Folds a node whose children are all constants into a constant."""
    if not e.children or not all(isinstance(c, Const) for c in e.children):
        return e
    return const(evaluate(e, ()))


def parse(source: str, space: VarSpace) -> Expr:
    """
    Parses source text into an expression tree.

    Args:
        source: Expression text in the grammar above.
        space: Variable space resolving identifiers (z1..zN, "w" for zN, or u1..uq).

    Returns:
        Expr: The parsed tree.

    Raises:
        ExpressionSyntaxError: On a grammar violation, with the byte offset.
        UnknownVariableError: On an identifier outside the space.
        InvalidExponentError: On a negative or non-integer exponent.
    """
    if not isinstance(source, str) or not source.strip():
        raise ExpressionSyntaxError("Expression source must be a non-empty string", 0)
    tree = _Parser(tokenize(source), space).parse()
    logger.debug("Parsed %r into %s", source, type(tree).__name__)
    return tree


__all__ = ["Token", "tokenize", "parse"]
