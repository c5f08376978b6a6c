"""
Invariants Exceptions

Este módulo define excepciones del cálculo de la matriz de Levi, sus autovalores
y los coeficientes del polinomio característico.
"""
from .core import ApplicationError

class InvariantsError(ApplicationError):
    """Clase base para errores de invariantes de Levi."""
    pass

class NumericalFailureError(InvariantsError):
    """Se lanza ante un fallo numérico interno (p. ej. Jacobi sin convergencia)."""
    pass

class EmptySampleError(InvariantsError):
    """Se lanza cuando un análisis requiere al menos un punto y no recibe ninguno."""
    pass

__all__ = [
    "InvariantsError",
    "NumericalFailureError",
    "EmptySampleError"
]
