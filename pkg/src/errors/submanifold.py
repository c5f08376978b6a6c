"""
Submanifold Exceptions

Este módulo define excepciones de los criterios de subvariedades complejas
(rango de dbar_b, condiciones de cuña, parametrizaciones).
"""
from .core import ApplicationError

class SubmanifoldError(ApplicationError):
    """Clase base para errores de subvariedades."""
    pass

class InvalidSystemError(SubmanifoldError):
    """Se lanza cuando un sistema definidor no es válido (vacío, no real, tamaño incorrecto)."""
    pass

class EmptyPointSetError(SubmanifoldError):
    """Se lanza cuando no hay puntos para evaluar un criterio."""
    pass

class PreconditionError(SubmanifoldError):
    """Se lanza cuando los puntos no cumplen las precondiciones del criterio."""
    pass

__all__ = [
    "SubmanifoldError",
    "InvalidSystemError",
    "EmptyPointSetError",
    "PreconditionError"
]
