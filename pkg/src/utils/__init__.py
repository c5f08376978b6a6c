from .setup_logging import setup_logging, LoggingSetupError


# Exporta las funciones y clases que quieres que estén disponibles al importar utils
__all__ = ["setup_logging", "LoggingSetupError"]
