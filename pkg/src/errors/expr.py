"""
Expression Exceptions

Este módulo define excepciones relacionadas con el análisis sintáctico, la
evaluación y la diferenciación de expresiones en variables complejas.
"""
from .core import ApplicationError

class ExpressionError(ApplicationError):
    """Clase base para errores de expresiones."""
    pass

class ExpressionSyntaxError(ExpressionError):
    """Se lanza cuando el texto fuente no respeta la gramática. Guarda la posición en bytes."""

    def __init__(self, message: str, offset: int) -> None:
        super().__init__(f"{message} (at byte offset {offset})")
        self.offset = offset

class UnknownVariableError(ExpressionSyntaxError):
    """Se lanza cuando un identificador no pertenece al espacio de variables."""
    pass

class InvalidExponentError(ExpressionSyntaxError):
    """Se lanza cuando un exponente es negativo o no entero."""
    pass

class EvaluationError(ExpressionError):
    """Se lanza cuando la evaluación falla (p. ej. división por cero). Guarda la subexpresión culpable."""

    def __init__(self, message: str, subexpression=None) -> None:
        super().__init__(message)
        self.subexpression = subexpression

__all__ = [
    "ExpressionError",
    "ExpressionSyntaxError",
    "UnknownVariableError",
    "InvalidExponentError",
    "EvaluationError"
]
