"""
Service Exceptions

Este módulo define excepciones de la capa de servicio que orquesta los análisis.
"""
from .core import ApplicationError

class ServiceError(ApplicationError):
    """Clase base para errores de la capa de servicio."""
    pass

class AnalysisServiceError(ServiceError):
    """Se lanza cuando un análisis falla por un error inesperado de bajo nivel."""
    pass

__all__ = [
    "ServiceError",
    "AnalysisServiceError"
]
