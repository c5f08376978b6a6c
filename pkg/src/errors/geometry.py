"""
Geometry Exceptions

Este módulo define excepciones de la hipersuperficie y de los cálculos de álgebra lineal
asociados a la forma de Levi.
"""
from .core import ApplicationError

class GeometryError(ApplicationError):
    """Clase base para errores geométricos."""
    pass

class InvalidToleranceError(GeometryError):
    """Se lanza cuando una tolerancia no es estrictamente positiva."""
    pass

class NotRealValuedError(GeometryError):
    """Se lanza cuando la función definidora no es real."""
    pass

class NonHermitianError(GeometryError):
    """Se lanza cuando una matriz que debe ser hermítica no lo es."""
    pass

class NonConvergenceError(GeometryError):
    """Se lanza cuando una iteración de Newton no converge."""
    pass

class GradientDegenerateError(GeometryError):
    """Se lanza cuando el gradiente es demasiado pequeño (punto no liso)."""
    pass


class NotOnHypersurfaceError(GeometryError):
    """Se lanza cuando un punto dado no satisface |rho| <= newton_tol."""
    pass


__all__ = [
    "GeometryError",
    "InvalidToleranceError",
    "NotRealValuedError",
    "NonHermitianError",
    "NonConvergenceError",
    "GradientDegenerateError",
    "NotOnHypersurfaceError"
]
