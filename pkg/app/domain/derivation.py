"""
Entidad de dominio: Numeración, espacio de trabajo y traza de derivación.
"""
from collections import OrderedDict
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, List, Optional, Tuple, Union

from app.domain.lexical_item import LexicalItem, Lexicon
from app.domain.syntactic_object import SyntacticObject, structure_key


class StepOp(str, Enum):
    """Operaciones del sistema computacional"""
    SELECT = "Select"
    EXTERNAL_MERGE = "ExternalMerge"
    INTERNAL_MERGE = "InternalMerge"
    AGREE = "Agree"
    HEAD_MOVE = "HeadMove"


_ARITY = {
    StepOp.SELECT: 1,
    StepOp.EXTERNAL_MERGE: 2,
    StepOp.INTERNAL_MERGE: 2,
    StepOp.AGREE: 1,
    StepOp.HEAD_MOVE: 2,
}

Operand = Union[str, int]


@dataclass(frozen=True)
class DerivationStep:
    """
    Paso de derivación.

    Los operandos son un identificador léxico (Select) u ocurrencias:
    ExternalMerge(a, b), InternalMerge(raíz, meta), Agree(sonda),
    HeadMove(inferior, superior).

    Attributes:
        op: Operación
        operands: Referencias
        rationale: Rasgos cotejados, legibles ("T:=v", "-k:-epp")
        checked: Pares (ocurrencia, índice de rasgo) cotejados por el paso
    """
    op: StepOp
    operands: Tuple[Operand, ...]
    rationale: Tuple[str, ...] = ()
    checked: Tuple[Tuple[int, int], ...] = ()

    def __post_init__(self):
        """Validaciones después de la inicialización"""
        object.__setattr__(self, "operands", tuple(self.operands))
        if len(self.operands) != _ARITY[self.op]:
            raise ValueError(f"{self.op.value} espera {_ARITY[self.op]} operandos")
        if self.op is StepOp.SELECT:
            if not isinstance(self.operands[0], str):
                raise ValueError("Select recibe un identificador léxico")
        elif not all(isinstance(o, int) for o in self.operands):
            raise ValueError(f"{self.op.value} recibe ocurrencias enteras")

    # Constructores de conveniencia
    @classmethod
    def select(cls, item_id: str) -> 'DerivationStep':
        return cls(StepOp.SELECT, (item_id,))

    @classmethod
    def merge(cls, a: int, b: int) -> 'DerivationStep':
        return cls(StepOp.EXTERNAL_MERGE, (a, b))

    @classmethod
    def move(cls, root: int, target: int) -> 'DerivationStep':
        return cls(StepOp.INTERNAL_MERGE, (root, target))

    @classmethod
    def agree(cls, probe: int) -> 'DerivationStep':
        return cls(StepOp.AGREE, (probe,))

    @classmethod
    def head_move(cls, lower: int, upper: int) -> 'DerivationStep':
        return cls(StepOp.HEAD_MOVE, (lower, upper))

    def bare(self) -> 'DerivationStep':
        """El mismo paso sin justificación (plantilla reproducible)"""
        return DerivationStep(self.op, self.operands)

    def to_line(self, index: int) -> str:
        operands = ",".join(str(o) for o in self.operands)
        rationale = " ".join(self.rationale) if self.rationale else "-"
        return f"{index}\t{self.op.value}\t{operands}\t{rationale}"

    def __str__(self) -> str:
        return f"{self.op.value}({', '.join(str(o) for o in self.operands)})"


@dataclass(frozen=True)
class Numeration:
    """
    Multiconjunto de ítems disponibles para una derivación.

    Attributes:
        items: Pares (ítem, cantidad restante), en orden de inserción
    """
    items: Tuple[Tuple[LexicalItem, int], ...] = ()

    def __post_init__(self):
        ids = [item.id for item, _ in self.items]
        if len(ids) != len(set(ids)):
            raise ValueError("La numeración repite identificadores")
        for item, count in self.items:
            if count < 0:
                raise ValueError(f"Cantidad negativa para '{item.id}'")

    @classmethod
    def from_ids(cls, lexicon: Lexicon, ids: Iterable[str]) -> 'Numeration':
        """
        Construye la numeración contando identificadores.

        Raises:
            KeyError: Si algún id no está en el léxico
        """
        counts: "OrderedDict[str, int]" = OrderedDict()
        for item_id in ids:
            if item_id not in lexicon:
                raise KeyError(item_id)
            counts[item_id] = counts.get(item_id, 0) + 1
        return cls(tuple((lexicon.get(i), n) for i, n in counts.items()))

    def count(self, item_id: str) -> int:
        for item, n in self.items:
            if item.id == item_id:
                return n
        return 0

    def item(self, item_id: str) -> Optional[LexicalItem]:
        for item, _ in self.items:
            if item.id == item_id:
                return item
        return None

    def take(self, item_id: str) -> 'Numeration':
        """Numeración con una unidad menos de item_id"""
        return Numeration(tuple(
            (item, n - 1 if item.id == item_id else n) for item, n in self.items
        ))

    def ids(self) -> List[str]:
        """Identificadores expandidos según su cantidad"""
        return [item.id for item, n in self.items for _ in range(n)]

    @property
    def size(self) -> int:
        return sum(n for _, n in self.items)

    @property
    def null_count(self) -> int:
        return sum(n for item, n in self.items if item.is_null)

    @property
    def is_exhausted(self) -> bool:
        return self.size == 0

    def key(self) -> tuple:
        return tuple(sorted((item.id, n) for item, n in self.items))

    def __len__(self) -> int:
        return self.size

    def __str__(self) -> str:
        partes = [f"{item.id}×{n}" if n != 1 else item.id for item, n in self.items if n]
        return "{" + ", ".join(partes) + "}"

    def to_dict(self) -> dict:
        return {item.id: n for item, n in self.items}


@dataclass(frozen=True)
class Workspace:
    """
    Espacio de trabajo: raíces construidas y numeración restante.

    Attributes:
        roots: Objetos sintácticos raíz
        numeration: Ítems aún no seleccionados
        next_occurrence: Próximo índice de ocurrencia libre
    """
    roots: Tuple[SyntacticObject, ...] = ()
    numeration: Numeration = field(default_factory=Numeration)
    next_occurrence: int = 0

    def __post_init__(self):
        labels = [r.label for r in self.roots]
        if len(labels) != len(set(labels)):
            raise ValueError("Dos raíces comparten etiqueta")

    def root(self, label: int) -> Optional[SyntacticObject]:
        for r in self.roots:
            if r.label == label:
                return r
        return None

    def replace_roots(self, consumed: Iterable[int], new: SyntacticObject) -> 'Workspace':
        """Retira las raíces consumidas y añade la nueva"""
        consumed = set(consumed)
        roots = tuple(r for r in self.roots if r.label not in consumed) + (new,)
        return Workspace(roots, self.numeration, self.next_occurrence)

    @property
    def is_final(self) -> bool:
        return len(self.roots) == 1 and self.numeration.is_exhausted

    def key(self) -> tuple:
        return (
            tuple(sorted(structure_key(r) for r in self.roots)),
            self.numeration.key(),
        )


@dataclass(frozen=True)
class Verdict:
    """Veredicto de convergencia"""
    converged: bool
    reasons: Tuple[str, ...] = ()

    @classmethod
    def ok(cls) -> 'Verdict':
        return cls(True)

    @classmethod
    def crashed(cls, *reasons: str) -> 'Verdict':
        return cls(False, tuple(reasons))

    @property
    def reason(self) -> str:
        return "; ".join(self.reasons)

    def __str__(self) -> str:
        return "converged" if self.converged else f"crashed({self.reason})"


@dataclass(frozen=True)
class DerivationTrace:
    """
    Registro auditable de una derivación.

    Attributes:
        numeration: Numeración inicial
        steps: Pasos aplicados, con su justificación
        result: Objeto resultante (None si la derivación abortó sin raíz única)
        verdict: Convergencia o colapso con su causa
    """
    numeration: Numeration
    steps: Tuple[DerivationStep, ...]
    result: Optional[SyntacticObject]
    verdict: Verdict

    @property
    def converged(self) -> bool:
        return self.verdict.converged

    def to_text(self) -> str:
        """Una línea por paso: índice, operación, operandos, rasgos cotejados"""
        lines = [f"# numeración: {self.numeration}"]
        lines.extend(step.to_line(i) for i, step in enumerate(self.steps))
        lines.append(f"# veredicto: {self.verdict}")
        return "\n".join(lines)

    def __str__(self) -> str:
        return f"DerivationTrace({len(self.steps)} pasos, {self.verdict})"


__all__ = [
    "StepOp",
    "Operand",
    "DerivationStep",
    "Numeration",
    "Workspace",
    "Verdict",
    "DerivationTrace",
]
