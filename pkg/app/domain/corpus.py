"""
Entidad de dominio: Registro de corpus y aserción estructural.
"""
import re
from dataclasses import dataclass
from typing import Dict, Optional, Tuple

ASSERTION_ARITY = {
    "occupies": 2,
    "head_of": 2,
    "fused": 3,
    "silent": 1,
}

_ASSERTION_RE = re.compile(r"^\s*(\w+)\s*\((.*)\)\s*$")


@dataclass(frozen=True)
class StructuralAssertion:
    """
    Aserción evaluable sobre una traza.

    occupies(ítem, Spec-XP|Comp-XP), head_of(ítem, XP),
    fused(ítem, ítem, forma), silent(ítem)
    """
    kind: str
    args: Tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))
        if self.kind not in ASSERTION_ARITY:
            raise ValueError(f"Aserción desconocida: '{self.kind}'")
        if len(self.args) != ASSERTION_ARITY[self.kind]:
            raise ValueError(
                f"'{self.kind}' espera {ASSERTION_ARITY[self.kind]} argumentos"
            )

    @classmethod
    def parse(cls, text: str) -> 'StructuralAssertion':
        """
        Lee una aserción en notación funcional.

        Raises:
            ValueError: Si el texto no es una aserción válida
        """
        match = _ASSERTION_RE.match(text)
        if not match:
            raise ValueError(f"Aserción ilegible: '{text}'")
        args = tuple(a.strip().strip('"') for a in match.group(2).split(","))
        return cls(match.group(1), args)

    def __str__(self) -> str:
        return f"{self.kind}({', '.join(self.args)})"


@dataclass(frozen=True)
class CorpusRecord:
    """
    Ejemplo glosado del corpus.

    Attributes:
        id: Número de ejemplo (4a, neg-decl, ...)
        surface: Línea superficial con guiones
        morphemes: Nivel de morfemas, una columna por token
        gloss: Nivel de glosas alineado
        translation: Traducción libre
        clause_type: Receta que lo deriva
        slots: Rellenos de la receta
        assertions: Aserciones estructurales
        notes: Procedencia
    """
    id: str
    surface: str
    morphemes: Tuple[str, ...]
    gloss: Tuple[str, ...]
    translation: str
    clause_type: str
    slots: Tuple[Tuple[str, str], ...] = ()
    assertions: Tuple[StructuralAssertion, ...] = ()
    notes: Tuple[str, ...] = ()

    def __post_init__(self):
        """Validaciones después de la inicialización"""
        problem = alignment_problem(self.surface, self.morphemes, self.gloss)
        if problem is not None:
            column, message = problem
            where = f" (columna {column})" if column else ""
            raise ValueError(f"Registro '{self.id}'{where}: {message}")

    @property
    def fillers(self) -> Dict[str, str]:
        return dict(self.slots)

    def __str__(self) -> str:
        return f"({self.id}) {self.surface}"


def alignment_problem(surface: str, morphemes: Tuple[str, ...],
                      gloss: Tuple[str, ...]) -> Optional[Tuple[Optional[int], str]]:
    """
    Comprueba la alineación de los niveles.

    Returns:
        None si todo está alineado; si no, (columna, mensaje)
    """
    if len(morphemes) != len(gloss):
        column = min(len(morphemes), len(gloss)) + 1
        return column, f"{len(morphemes)} columnas de morfemas frente a {len(gloss)} de glosa"

    for i, (m, g) in enumerate(zip(morphemes, gloss), start=1):
        if len(m.split("-")) != len(g.split("-")):
            return i, f"segmentos distintos entre '{m}' y '{g}'"

    if " ".join(morphemes) != surface:
        return None, "la superficie no coincide con el nivel de morfemas"

    return None


__all__ = [
    "ASSERTION_ARITY",
    "StructuralAssertion",
    "CorpusRecord",
    "alignment_problem",
]
