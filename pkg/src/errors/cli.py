"""
Command-line Interface Exceptions

Este módulo define excepciones relacionadas con la configuración y la interfaz de línea de comandos.
"""
from .core import ApplicationError

class CLIError(ApplicationError):
    """Clase base para excepciones en operaciones de la CLI."""
    pass

class ConfigurationError(CLIError):
    """Se lanza cuando el archivo de configuración es inválido o no puede leerse."""
    pass

class NoDataError(CLIError):
    """Se lanza cuando un comando no obtiene puntos de muestra."""
    pass

__all__ = ["CLIError", "ConfigurationError", "NoDataError"]
