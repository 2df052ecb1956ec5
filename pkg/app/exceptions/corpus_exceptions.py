"""
Excepciones del parser, del corpus y del renderizado de árboles.
"""
from typing import Optional

from app.exceptions.grammar_exceptions import GrammarError


class ParseError(GrammarError):
    """No se encontró análisis para una cadena."""


class SegmentationError(ParseError):
    """Un token no tiene análisis en el léxico."""

    def __init__(self, token: str):
        self.token = token
        super().__init__(f"Sin análisis léxico para el token '{token}'")


class NoDerivationError(ParseError):
    """La cadena se segmenta pero ninguna derivación converge."""

    def __init__(self, surface: str):
        self.surface = surface
        super().__init__(f"Ninguna derivación convergente para '{surface}'")


class SearchBoundsError(ParseError):
    """La numeración excede los límites de búsqueda."""


class CorpusError(GrammarError):
    """Error general del corpus."""


class CorpusFormatError(CorpusError):
    """
    Registro de corpus mal formado o con niveles desalineados.

    Args:
        message: Descripción del problema
        record_id: Identificador del registro afectado
        column: Columna (desde 1) donde falla la alineación
    """

    def __init__(self, message: str, record_id: Optional[str] = None,
                 column: Optional[int] = None):
        self.record_id = record_id
        self.column = column
        partes = []
        if record_id is not None:
            partes.append(f"registro '{record_id}'")
        if column is not None:
            partes.append(f"columna {column}")
        prefijo = f"[{', '.join(partes)}] " if partes else ""
        super().__init__(f"{prefijo}{message}")


class AssertionSyntaxError(CorpusError):
    """Aserción estructural ilegible."""


class RenderError(GrammarError):
    """Estilo de renderizado desconocido."""


__all__ = [
    "ParseError",
    "SegmentationError",
    "NoDerivationError",
    "SearchBoundsError",
    "CorpusError",
    "CorpusFormatError",
    "AssertionSyntaxError",
    "RenderError",
]
