"""
Storage Operation Exceptions

Este módulo define excepciones relacionadas con la escritura de reportes.
"""
from .core import ApplicationError

class StorageError(ApplicationError):
    """Clase base para errores al renderizar o escribir reportes."""
    pass

class DirectoryCreationError(StorageError):
    """Se lanza cuando no se puede crear el directorio de destino del reporte (--out)."""
    pass

class FileWriteError(StorageError):
    """Se lanza cuando falla la escritura del reporte (I/O, permisos o codificación)."""
    pass

class UnsupportedFormatError(StorageError):
    """Se lanza cuando se pide un formato de reporte distinto de json o csv."""
    pass

__all__ = [
    "StorageError",
    "DirectoryCreationError",
    "FileWriteError",
    "UnsupportedFormatError"
]
