"""
Excepciones de la sintaxis estrecha (operaciones del motor) y de la
interfaz fonológica (PF).
"""
from app.exceptions.grammar_exceptions import GrammarError


class DerivationError(GrammarError):
    """Una operación del motor no puede aplicarse."""


class SelectError(DerivationError):
    """El ítem no está en la numeración o ya se agotó."""


class MergeError(DerivationError):
    """Ensamble externo ilegítimo: ningún objeto selecciona al otro."""


class MoveError(DerivationError):
    """Ensamble interno ilegítimo (sin licenciador, sin meta o intervención)."""


class AgreeError(DerivationError):
    """Agree sin meta accesible, ambigua o sin concordancia."""


class HeadMovementError(DerivationError):
    """Movimiento de núcleo que viola la HMC o la dominancia."""


# ----------------------------------------------------------------------
# PF
# ----------------------------------------------------------------------

class PFError(GrammarError):
    """Error en la interfaz fonológica."""


class AdjacencyError(PFError):
    """Los elementos no son adyacentes en la cadena linealizada."""


class HostingError(PFError):
    """Afijo sin anfitrión válido."""


class OpacityError(PFError):
    """Se intentó operar sobre una palabra ya fusionada por M-Merger."""


class SpellOutError(PFError):
    """La materialización no puede completarse."""


class GlossError(PFError):
    """Morfema sin glosa en el léxico."""


__all__ = [
    "DerivationError",
    "SelectError",
    "MergeError",
    "MoveError",
    "AgreeError",
    "HeadMovementError",
    "PFError",
    "AdjacencyError",
    "HostingError",
    "OpacityError",
    "SpellOutError",
    "GlossError",
]
