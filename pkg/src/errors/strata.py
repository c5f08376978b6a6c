"""
Strata Exceptions

Este módulo define excepciones relacionadas con el muestreo de la hipersuperficie
y la detección de los estratos S_q.
"""
from .core import ApplicationError

class StrataError(ApplicationError):
    """Clase base para errores de estratos."""
    pass

class InvalidRegionError(StrataError):
    """Se lanza cuando una región tiene intervalos vacíos, no finitos o resolución < 2."""
    pass

class InvalidStratumIndexError(StrataError):
    """Se lanza cuando q está fuera del rango 1..n."""
    pass

__all__ = [
    "StrataError",
    "InvalidRegionError",
    "InvalidStratumIndexError"
]
