from .report_writer import ReportWriter, ReportSchema, format_float, render_json, render_csv


# Exporta las funciones y clases que quieres que estén disponibles al importar storage
__all__ = ["ReportWriter", "ReportSchema", "format_float", "render_json", "render_csv"]
