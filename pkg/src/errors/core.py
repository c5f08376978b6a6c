"""
Core Application Errors

Este módulo define la excepción raíz de levi-strata. Cada paquete (expr, geometry,
invariants, strata, submanifold, service, storage, cli) deriva de ella su propia
jerarquía; la CLI traduce esas familias a códigos de salida.
"""

class ApplicationError(Exception):
    """Excepción base de levi-strata; todo error esperado hereda de ella."""
    pass

class LoggingSetupError(ApplicationError):
    """Se lanza cuando no se puede crear el directorio de logs o aplicar la configuración."""
    pass

__all__ = ["ApplicationError", "LoggingSetupError"]
