from .analysis_service import AnalysisService


# Exporta las funciones y clases que quieres que estén disponibles al importar
__all__ = ["AnalysisService"]
