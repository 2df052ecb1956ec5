"""
Repositorio de recetas - Patrón Repository
Lee el archivo de recetas y arma el fragmento gramatical junto al léxico.
"""
import logging
from pathlib import Path
from typing import Dict, List, Optional, Set, Tuple, Union

from app.domain.derivation import StepOp
from app.domain.feature import MOVEMENT_TRIGGERS
from app.domain.recipe import (
    ClauseRecipe,
    GrammarFragment,
    MatrixTemplate,
    SlotSpec,
    StepTemplate,
)
from app.exceptions.grammar_exceptions import RecipeFormatError
from app.domain.lexical_item import Lexicon
from app.infrastructure.lexicon_repository import LexiconRepository, load_lexicon

logger = logging.getLogger(__name__)

_STEP_KEYWORDS = {
    "select": StepOp.SELECT,
    "merge": StepOp.EXTERNAL_MERGE,
    "move": StepOp.INTERNAL_MERGE,
    "agree": StepOp.AGREE,
    "hmove": StepOp.HEAD_MOVE,
}
_ARITY = {
    StepOp.EXTERNAL_MERGE: 2,
    StepOp.INTERNAL_MERGE: 2,
    StepOp.AGREE: 1,
    StepOp.HEAD_MOVE: 2,
}
_BLOCKS = ("prefix", "suffix", "steps")


def _operand(token: str) -> Tuple[str, bool]:
    if token.endswith("?"):
        return token[:-1], True
    return token, False


def parse_step(line: str, line_no: int) -> StepTemplate:
    """
    Lee una línea de paso.

    Raises:
        RecipeFormatError: Si la línea no sigue la sintaxis
    """
    tokens = line.split()
    op = _STEP_KEYWORDS.get(tokens[0])
    if op is None:
        raise RecipeFormatError(line_no, f"operación desconocida '{tokens[0]}'")

    if op is StepOp.SELECT:
        if len(tokens) != 4 or tokens[2] != "as":
            raise RecipeFormatError(line_no, "se esperaba 'select <fuente> as <nombre>'")
        source, optional = _operand(tokens[1])
        return StepTemplate(op, (source,), (optional,), binds=tokens[3], line_no=line_no)

    args = tokens[1:]
    if len(args) != _ARITY[op]:
        raise RecipeFormatError(line_no, f"'{tokens[0]}' espera {_ARITY[op]} operandos")
    parsed = [_operand(a) for a in args]
    return StepTemplate(
        op,
        tuple(name for name, _ in parsed),
        tuple(opt for _, opt in parsed),
        line_no=line_no,
    )


def parse_slot(body: str, line_no: int) -> SlotSpec:
    """Lee 'nombre: CAT[/CAT] [optional] [agrees] [wh|epp]'"""
    if ":" not in body:
        raise RecipeFormatError(line_no, "una ranura tiene la forma 'slot nombre: CAT'")
    name, spec = (p.strip() for p in body.split(":", 1))
    tokens = spec.split()
    if not name or not tokens:
        raise RecipeFormatError(line_no, "ranura incompleta")

    optional = agrees = False
    licensee: Optional[str] = None
    for flag in tokens[1:]:
        if flag == "optional":
            optional = True
        elif flag == "agrees":
            agrees = True
        elif flag in MOVEMENT_TRIGGERS:
            licensee = flag
        else:
            raise RecipeFormatError(line_no, f"marca de ranura desconocida '{flag}'")

    try:
        return SlotSpec(name, tuple(tokens[0].split("/")), optional, licensee, agrees)
    except ValueError as e:
        raise RecipeFormatError(line_no, str(e))


def load_recipes(source: str) -> Tuple[MatrixTemplate, Dict[str, ClauseRecipe]]:
    """
    Lee el archivo de recetas.

    Args:
        source: Texto con una sección [matrix] y secciones [recipe <tipo>]

    Returns:
        (plantilla matriz, recetas por tipo de cláusula)

    Raises:
        RecipeFormatError: Sección, ranura o paso mal formados
    """
    sections: List[dict] = []
    current: Optional[dict] = None
    block: Optional[str] = None

    for line_no, raw in enumerate(source.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue

        if line.startswith("[") and line.endswith("]"):
            header = line[1:-1].split()
            if header == ["matrix"]:
                current = {"kind": "matrix", "line": line_no}
            elif len(header) == 2 and header[0] == "recipe":
                current = {"kind": "recipe", "tag": header[1], "line": line_no}
            else:
                raise RecipeFormatError(line_no, f"sección desconocida '{line}'")
            current.update({"slots": [], "prefix": [], "suffix": [], "steps": []})
            sections.append(current)
            block = None
            continue

        if current is None:
            raise RecipeFormatError(line_no, "contenido fuera de una sección")

        first = line.split()[0]
        if first in _STEP_KEYWORDS:
            if block is None:
                raise RecipeFormatError(line_no, "paso fuera de un bloque prefix/suffix/steps")
            current[block].append(parse_step(line, line_no))
        elif line.endswith(":") and line[:-1] in _BLOCKS:
            block = line[:-1]
        elif first == "slot":
            current["slots"].append(parse_slot(line[len("slot"):], line_no))
        elif ":" in line:
            key, value = (p.strip() for p in line.split(":", 1))
            if key not in ("clause_type", "spine"):
                raise RecipeFormatError(line_no, f"clave desconocida '{key}'")
            current[key] = value
        else:
            raise RecipeFormatError(line_no, f"línea no reconocida '{line}'")

    matrices = [s for s in sections if s["kind"] == "matrix"]
    if len(matrices) != 1:
        raise RecipeFormatError(1, "el archivo debe tener exactamente una sección [matrix]")
    m = matrices[0]
    matrix = MatrixTemplate(tuple(m["prefix"]), tuple(m["suffix"]), tuple(m["slots"]))

    recipes: Dict[str, ClauseRecipe] = {}
    for s in sections:
        if s["kind"] != "recipe":
            continue
        if s["tag"] in recipes:
            raise RecipeFormatError(s["line"], f"receta duplicada '{s['tag']}'")
        try:
            recipes[s["tag"]] = ClauseRecipe(
                clause_type=s["tag"],
                clause_feature=s.get("clause_type", ""),
                spine=tuple(s.get("spine", "").split()),
                slots=tuple(s["slots"]),
                steps=tuple(s["steps"]),
            )
        except ValueError as e:
            raise RecipeFormatError(s["line"], str(e))

    return matrix, recipes


def _validate(fragment: GrammarFragment) -> None:
    """Ids literales en el léxico y nombres ligados antes de usarse"""
    lexicon = fragment.lexicon
    for tag in fragment.recipes:
        bound: Set[str] = set()
        slots = {s.name for s in fragment.slots_for(tag)}
        for step in fragment.steps_for(tag):
            if step.op is StepOp.SELECT:
                if step.slot is not None:
                    if step.slot not in slots:
                        raise RecipeFormatError(step.line_no, f"ranura no declarada '{step.slot}'")
                elif step.pro_of is not None:
                    if step.pro_of not in bound:
                        raise RecipeFormatError(step.line_no, f"'{step.pro_of}' no está ligado")
                elif step.source not in lexicon:
                    raise RecipeFormatError(step.line_no, f"ítem desconocido '{step.source}'")
                if step.binds in bound:
                    raise RecipeFormatError(step.line_no, f"'{step.binds}' ya estaba ligado")
                bound.add(step.binds)
            else:
                for name in step.operands:
                    if name not in bound:
                        raise RecipeFormatError(
                            step.line_no, f"receta '{tag}': '{name}' no está ligado"
                        )


def build_fragment(lexicon: Lexicon, recipes_source: str) -> GrammarFragment:
    """Arma y valida un fragmento sobre un léxico ya cargado"""
    matrix, recipes = load_recipes(recipes_source)
    fragment = GrammarFragment(lexicon, matrix, recipes)
    _validate(fragment)
    return fragment


def load_fragment(lexicon_source: str, recipes_source: str) -> GrammarFragment:
    """Arma y valida un fragmento desde los textos de léxico y recetas"""
    return build_fragment(load_lexicon(lexicon_source), recipes_source)


class RecipeRepository:
    """
    Repositorio del fragmento en archivos.

    Args:
        lexicon_path: Ruta del léxico
        recipes_path: Ruta de las recetas
    """

    def __init__(self, lexicon_path: Union[str, Path], recipes_path: Union[str, Path]):
        self.lexicon_path = Path(lexicon_path)
        self.recipes_path = Path(recipes_path)
        self.lexicons = LexiconRepository(self.lexicon_path)

    def load(self) -> GrammarFragment:
        try:
            fragment = build_fragment(
                self.lexicons.load(),
                self.recipes_path.read_text(encoding="utf-8"),
            )
        except Exception as e:
            logger.error(f"❌ Error al cargar el fragmento: {e}")
            raise
        logger.info(
            f"✅ Fragmento cargado: {len(fragment.lexicon)} ítems, "
            f"{len(fragment.recipes)} recetas"
        )
        return fragment


__all__ = [
    "parse_step",
    "parse_slot",
    "load_recipes",
    "build_fragment",
    "load_fragment",
    "RecipeRepository",
]
