"""
Excepciones del fragmento gramatical: léxico, rasgos y recetas.
"""
from typing import Optional


class GrammarError(Exception):
    """Error base de todo el analizador."""


# ----------------------------------------------------------------------
# Léxico
# ----------------------------------------------------------------------

class LexiconError(GrammarError):
    """Error al construir o consultar el léxico."""


class LexiconFormatError(LexiconError):
    """
    Línea mal formada en un archivo de léxico.

    Args:
        line_no: Número de línea (desde 1)
        message: Descripción del problema
    """

    def __init__(self, line_no: int, message: str):
        self.line_no = line_no
        super().__init__(f"Línea {line_no}: {message}")


class DuplicateEntryError(LexiconError):
    """Dos entradas del léxico comparten identificador."""

    def __init__(self, item_id: str, line_no: Optional[int] = None):
        self.item_id = item_id
        self.line_no = line_no
        donde = f" (línea {line_no})" if line_no else ""
        super().__init__(f"Identificador duplicado '{item_id}'{donde}")


class MorphClassConflictError(LexiconError):
    """La clase morfológica contradice la forma del identificador."""


class UnknownItemError(LexiconError):
    """El identificador no existe en el léxico."""

    def __init__(self, item_id: str):
        self.item_id = item_id
        super().__init__(f"Ítem léxico desconocido: '{item_id}'")


# ----------------------------------------------------------------------
# Rasgos
# ----------------------------------------------------------------------

class FeatureError(GrammarError):
    """Uso incorrecto de un rasgo."""


class FeatureKindError(FeatureError):
    """Se esperaba un rasgo de otra clase (p. ej. un selector)."""


class ProbeMisuseError(FeatureError):
    """Se intentó Agree con una sonda sin rasgos phi sin valor."""


# ----------------------------------------------------------------------
# Recetas
# ----------------------------------------------------------------------

class RecipeError(GrammarError):
    """Error en una receta de cláusula o en sus rellenos."""


class RecipeFormatError(RecipeError):
    """Archivo de recetas mal formado."""

    def __init__(self, line_no: int, message: str):
        self.line_no = line_no
        super().__init__(f"Línea {line_no}: {message}")


class FillerError(RecipeError):
    """Relleno ausente o de tipo incorrecto para una ranura."""


__all__ = [
    "GrammarError",
    "LexiconError",
    "LexiconFormatError",
    "DuplicateEntryError",
    "MorphClassConflictError",
    "UnknownItemError",
    "FeatureError",
    "FeatureKindError",
    "ProbeMisuseError",
    "RecipeError",
    "RecipeFormatError",
    "FillerError",
]
