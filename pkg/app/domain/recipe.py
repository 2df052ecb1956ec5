"""
Entidad de dominio: Recetas de cláusula y fragmento gramatical.

Una receta es una lista de plantillas de paso que nombran ítems. La capa
matriz (qul-k) es común a todas: un prefijo de Select y un sufijo de
Merge/Move/Agree que envuelven los pasos de la cláusula incrustada.
"""
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping, Optional, Tuple

from app.domain.derivation import StepOp
from app.domain.feature import CATEGORY_LABELS, CLAUSE_TYPES, MOVEMENT_TRIGGERS
from app.domain.lexical_item import Lexicon

CLAUSE_TAGS = (
    "decl-affirm",
    "decl-neg",
    "decl-emphatic",
    "interrogative",
    "imp-affirm",
    "imp-neg",
)


@dataclass(frozen=True)
class SlotSpec:
    """
    Ranura parametrizable de una receta.

    Attributes:
        name: Nombre (subject, verb, object, ...)
        categories: Categorías admitidas
        optional: Puede quedar vacía
        licensee: Licenciado exigido al relleno (wh)
        agrees: Los rasgos phi del relleno deben concordar con el verbo
    """
    name: str
    categories: Tuple[str, ...]
    optional: bool = False
    licensee: Optional[str] = None
    agrees: bool = False

    def __post_init__(self):
        for cat in self.categories:
            if cat not in CATEGORY_LABELS:
                raise ValueError(f"Ranura '{self.name}': categoría desconocida '{cat}'")
        if self.licensee is not None and self.licensee not in MOVEMENT_TRIGGERS:
            raise ValueError(f"Ranura '{self.name}': licenciado desconocido '{self.licensee}'")

    def __str__(self) -> str:
        flags = [f for f, on in (("optional", self.optional), ("agrees", self.agrees)) if on]
        if self.licensee:
            flags.append(self.licensee)
        extra = (" " + " ".join(flags)) if flags else ""
        return f"slot {self.name}: {'/'.join(self.categories)}{extra}"


@dataclass(frozen=True)
class StepTemplate:
    """
    Plantilla de paso que referencia nombres ligados.

    Para Select el único operando es la fuente: un id literal, '{ranura}'
    o '@pro(nombre)', y `binds` es el nombre que se liga. Un operando
    marcado como opcional hace que el paso se omita si su nombre queda
    sin ligar.
    """
    op: StepOp
    operands: Tuple[str, ...]
    optional: Tuple[bool, ...] = ()
    binds: Optional[str] = None
    line_no: int = field(default=0, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "operands", tuple(self.operands))
        if not self.optional:
            object.__setattr__(self, "optional", tuple(False for _ in self.operands))
        if len(self.optional) != len(self.operands):
            raise ValueError("Marcas de opcionalidad desalineadas")
        if self.op is StepOp.SELECT and not self.binds:
            raise ValueError("Un select debe ligar un nombre")

    @property
    def source(self) -> str:
        return self.operands[0]

    @property
    def slot(self) -> Optional[str]:
        """Ranura referida por un select '{ranura}'"""
        if self.op is StepOp.SELECT and self.source.startswith("{") and self.source.endswith("}"):
            return self.source[1:-1]
        return None

    @property
    def pro_of(self) -> Optional[str]:
        """Nombre cuyo verbo determina el pro de un select '@pro(nombre)'"""
        if self.op is StepOp.SELECT and self.source.startswith("@pro(") and self.source.endswith(")"):
            return self.source[5:-1]
        return None

    def __str__(self) -> str:
        def fmt(name, opt):
            return f"{name}?" if opt else name

        if self.op is StepOp.SELECT:
            return f"select {fmt(self.source, self.optional[0])} as {self.binds}"
        verb = {
            StepOp.EXTERNAL_MERGE: "merge",
            StepOp.INTERNAL_MERGE: "move",
            StepOp.AGREE: "agree",
            StepOp.HEAD_MOVE: "hmove",
        }[self.op]
        return " ".join([verb] + [fmt(n, o) for n, o in zip(self.operands, self.optional)])


@dataclass(frozen=True)
class ClauseRecipe:
    """
    Receta de una cláusula incrustada.

    Attributes:
        clause_type: Etiqueta (decl-affirm, interrogative, ...)
        clause_feature: Tipo de cláusula que debe portar el v incrustado
        spine: Categorías de la columna funcional, de arriba abajo
        slots: Ranuras propias de la cláusula
        steps: Plantillas de la cláusula incrustada
    """
    clause_type: str
    clause_feature: str
    spine: Tuple[str, ...]
    slots: Tuple[SlotSpec, ...]
    steps: Tuple[StepTemplate, ...]

    def __post_init__(self):
        """Validaciones después de la inicialización"""
        if self.clause_type not in CLAUSE_TAGS:
            raise ValueError(f"Tipo de receta desconocido: '{self.clause_type}'")
        if self.clause_feature not in CLAUSE_TYPES:
            raise ValueError(f"Tipo de cláusula desconocido: '{self.clause_feature}'")
        names = [s.name for s in self.slots]
        if len(names) != len(set(names)):
            raise ValueError(f"Receta '{self.clause_type}': ranuras duplicadas")
        for step in self.steps:
            if step.slot is not None and step.slot not in names:
                raise ValueError(
                    f"Receta '{self.clause_type}': ranura no declarada '{step.slot}'"
                )

    def slot(self, name: str) -> Optional[SlotSpec]:
        for s in self.slots:
            if s.name == name:
                return s
        return None

    def __str__(self) -> str:
        return f"ClauseRecipe({self.clause_type}, {len(self.steps)} pasos)"


@dataclass(frozen=True)
class MatrixTemplate:
    """Capa matriz común: prefijo de Select y sufijo de operaciones"""
    prefix: Tuple[StepTemplate, ...]
    suffix: Tuple[StepTemplate, ...]
    slots: Tuple[SlotSpec, ...] = ()


@dataclass(frozen=True)
class GrammarFragment:
    """
    Fragmento gramatical completo.

    Attributes:
        lexicon: Léxico
        matrix: Capa matriz compartida
        recipes: Receta por tipo de cláusula
    """
    lexicon: Lexicon
    matrix: MatrixTemplate
    recipes: Mapping[str, ClauseRecipe] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "recipes", MappingProxyType(dict(self.recipes)))

    def __hash__(self) -> int:
        return hash((self.lexicon, tuple(self.recipes)))

    def __eq__(self, other) -> bool:
        if not isinstance(other, GrammarFragment):
            return NotImplemented
        return (
            self.lexicon == other.lexicon
            and self.matrix == other.matrix
            and dict(self.recipes) == dict(other.recipes)
        )

    @property
    def spine(self) -> Mapping[str, Tuple[str, ...]]:
        return {tag: recipe.spine for tag, recipe in self.recipes.items()}

    def slots_for(self, clause_type: str) -> Tuple[SlotSpec, ...]:
        return self.matrix.slots + self.recipes[clause_type].slots

    def steps_for(self, clause_type: str) -> Tuple[StepTemplate, ...]:
        """Prefijo matriz + cláusula incrustada + sufijo matriz"""
        return self.matrix.prefix + self.recipes[clause_type].steps + self.matrix.suffix


__all__ = [
    "CLAUSE_TAGS",
    "SlotSpec",
    "StepTemplate",
    "ClauseRecipe",
    "MatrixTemplate",
    "GrammarFragment",
]
