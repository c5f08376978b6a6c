from .cli import LeviCLI, cli, exit_code_for, main


# Exporta las funciones y clases que quieres que estén disponibles al importar cli
__all__ = ["LeviCLI", "cli", "exit_code_for", "main"]
