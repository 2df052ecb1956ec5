"""
Servicio del fragmento YIA: carga del léxico y las recetas, instanciación
de recetas con rellenos y derivación de cláusulas qulk completas.
"""
import itertools
import logging
from typing import Dict, Iterator, List, Mapping, Optional, Tuple

from app.config.settings import GrammarConfig
from app.domain.derivation import DerivationStep, DerivationTrace, Numeration, StepOp
from app.domain.feature import FeatureKind
from app.domain.lexical_item import LexicalItem, Lexicon, MorphClass
from app.domain.recipe import ClauseRecipe, GrammarFragment, SlotSpec
from app.exceptions.grammar_exceptions import FillerError, RecipeError
from app.infrastructure.recipe_repository import RecipeRepository
from app.services.derivation_engine import derive
from app.services.feature_checking import can_select

logger = logging.getLogger(__name__)

VERB_SLOT = "verb"


# ----------------------------------------------------------------------
# Fragmento compartido
# ----------------------------------------------------------------------

_fragment_instance: Optional[GrammarFragment] = None


def get_fragment() -> GrammarFragment:
    """Obtiene la instancia única del fragmento configurado"""
    global _fragment_instance
    if _fragment_instance is None:
        _fragment_instance = RecipeRepository(
            GrammarConfig.LEXICON_FILE, GrammarConfig.RECIPES_FILE
        ).load()
    return _fragment_instance


def yia_lexicon() -> Lexicon:
    """Léxico del fragmento YIA distribuido con la aplicación"""
    return get_fragment().lexicon


# ----------------------------------------------------------------------
# Validación de rellenos
# ----------------------------------------------------------------------

def _recipe(fragment: GrammarFragment, clause_type: str) -> ClauseRecipe:
    recipe = fragment.recipes.get(clause_type)
    if recipe is None:
        raise RecipeError(
            f"No hay receta para '{clause_type}' "
            f"(disponibles: {', '.join(fragment.recipes)})"
        )
    return recipe


def _resolve_fillers(fragment: GrammarFragment, clause_type: str,
                     fillers: Mapping[str, str]) -> Dict[str, LexicalItem]:
    slots = {s.name: s for s in fragment.slots_for(clause_type)}
    lexicon = fragment.lexicon

    unknown = [name for name in fillers if name not in slots]
    if unknown:
        raise FillerError(f"Ranuras desconocidas para '{clause_type}': {', '.join(unknown)}")

    resolved: Dict[str, LexicalItem] = {}
    for name, slot in slots.items():
        item_id = fillers.get(name)
        if item_id is None:
            if not slot.optional:
                raise FillerError(f"Falta el relleno obligatorio '{name}'")
            continue
        canonical = lexicon.resolve(item_id)
        if canonical is None:
            raise FillerError(f"'{item_id}' no está en el léxico (ranura '{name}')")
        item = lexicon.get(canonical)
        _check_slot(slot, item)
        resolved[name] = item
    return resolved


def _check_slot(slot: SlotSpec, item: LexicalItem) -> None:
    if item.morph_class is not MorphClass.FREE:
        raise FillerError(f"'{item.id}' no puede rellenar '{slot.name}': no es una palabra libre")
    if item.category not in slot.categories:
        raise FillerError(
            f"'{item.id}' es {item.category}; la ranura '{slot.name}' exige "
            f"{'/'.join(slot.categories)}"
        )
    carried = {f.attribute for f in item.bundle.licensees}
    if slot.licensee is not None and slot.licensee not in carried:
        raise FillerError(f"'{item.id}' no porta -{slot.licensee} (ranura '{slot.name}')")
    mandatory = {f.attribute for f in item.bundle.licensees if not f.optional}
    if slot.licensee != "wh" and "wh" in mandatory:
        raise FillerError(f"'{item.id}' es interrogativo y '{slot.name}' no admite -wh")


def _clause_agreement(item: LexicalItem) -> Tuple[str, ...]:
    return tuple(
        clause_type for f in item.bundle.features
        if f.kind is FeatureKind.CLAUSE_TYPE and not f.interpretable
        for clause_type in f.alternatives
    )


def _check_verb(recipe: ClauseRecipe, verb: LexicalItem, arguments: List[LexicalItem]) -> None:
    required = _clause_agreement(verb)
    if recipe.clause_feature == "imperative" and "imperative" not in required:
        raise FillerError(f"'{verb.id}' no es una forma imperativa")
    if required and recipe.clause_feature not in required:
        raise FillerError(
            f"'{verb.id}' exige cláusula {'/'.join(required)}, la receta es {recipe.clause_feature}"
        )

    selectors = list(verb.bundle.selectors)
    for argument in arguments:
        while selectors and not can_select(selectors[0], argument.bundle):
            if not selectors[0].optional:
                raise FillerError(
                    f"'{verb.id}' espera {selectors[0]} antes de '{argument.id}'"
                )
            selectors.pop(0)
        if not selectors:
            raise FillerError(f"'{verb.id}' no selecciona '{argument.id}' ({argument.category})")
        selectors.pop(0)
    missing = [str(s) for s in selectors if not s.optional]
    if missing:
        raise FillerError(f"'{verb.id}' necesita además {' '.join(missing)}")


def _selects(head: LexicalItem, argument: LexicalItem) -> bool:
    return any(can_select(s, argument.bundle) for s in head.bundle.selectors)


def _check_pair(first: LexicalItem, second: LexicalItem) -> None:
    """Dos rellenos que la receta ensambla entre sí deben seleccionarse"""
    if not (_selects(first, second) or _selects(second, first)):
        raise FillerError(
            f"'{first.id}' ({first.category}) y '{second.id}' ({second.category}) "
            f"no se seleccionan entre sí"
        )


def _check_agreement(slot: SlotSpec, item: LexicalItem, verb: Optional[LexicalItem]) -> None:
    if verb is None:
        return
    offered = item.bundle.interpretable_phi
    for attribute, value in verb.bundle.agreement.items():
        if attribute in offered and offered[attribute] != value:
            raise FillerError(
                f"'{item.id}' ({attribute}={offered[attribute]}) no concuerda con "
                f"'{verb.id}' ({attribute}={value})"
            )


# ----------------------------------------------------------------------
# Instanciación
# ----------------------------------------------------------------------

def instantiate(fragment: GrammarFragment, clause_type: str,
                fillers: Mapping[str, str]) -> Tuple[Numeration, List[DerivationStep]]:
    """
    Convierte una receta con rellenos en numeración y pasos concretos.

    Args:
        fragment: Fragmento gramatical
        clause_type: Etiqueta de receta (decl-affirm, imp-neg, ...)
        fillers: Ranura → id léxico

    Returns:
        (numeración exacta, pasos con ocurrencias)

    Raises:
        RecipeError: Receta inexistente
        FillerError: Relleno ausente, desconocido, de tipo incorrecto o que
            no se ensambla con otro relleno
    """
    recipe = _recipe(fragment, clause_type)
    lexicon = fragment.lexicon
    items = _resolve_fillers(fragment, clause_type, fillers)
    slots = {s.name: s for s in fragment.slots_for(clause_type)}
    verb = items.get(VERB_SLOT)

    for name, item in items.items():
        if slots[name].agrees:
            _check_agreement(slots[name], item, verb)

    bound: Dict[str, int] = {}
    bound_items: Dict[str, LexicalItem] = {}
    from_slots: Dict[str, str] = {}
    ids: List[str] = []
    steps: List[DerivationStep] = []
    used = set()

    for template in fragment.steps_for(clause_type):
        if template.op is StepOp.SELECT:
            if template.slot is not None:
                item = items.get(template.slot)
                if item is None:
                    if template.optional[0] or slots[template.slot].optional:
                        continue
                    raise FillerError(f"Falta el relleno '{template.slot}'")
                from_slots[template.binds] = template.slot
            elif template.pro_of is not None:
                host = bound_items.get(template.pro_of)
                item = lexicon.pro_for(host.bundle.agreement) if host else None
                if item is None:
                    raise FillerError(f"Ningún pro concuerda con '{host.id if host else template.pro_of}'")
            else:
                item = lexicon.get(template.source)
            bound[template.binds] = len(ids)
            bound_items[template.binds] = item
            ids.append(item.id)
            steps.append(DerivationStep.select(item.id))
            continue

        operands = []
        skip = False
        for name, optional in zip(template.operands, template.optional):
            if name not in bound:
                if optional:
                    skip = True
                    break
                raise FillerError(f"'{name}' no está ligado (línea {template.line_no} de la receta)")
            operands.append(bound[name])
        if skip:
            continue
        used.update(template.operands)
        steps.append(DerivationStep(template.op, tuple(operands)))

    unused = [from_slots[name] for name in from_slots if name not in used]
    if unused:
        raise FillerError(f"Rellenos sin posición en '{clause_type}': {', '.join(unused)}")

    for step in steps:
        if step.op is not StepOp.EXTERNAL_MERGE:
            continue
        names = [_name_of(bound, occurrence) for occurrence in step.operands]
        slot_names = [from_slots.get(name) for name in names]
        if None not in slot_names and VERB_SLOT not in slot_names:
            _check_pair(*(bound_items[name] for name in names))

    if verb is not None:
        verb_name = next(n for n, s in from_slots.items() if s == VERB_SLOT)
        arguments = [
            bound_items[_name_of(bound, step.operands[1])]
            for step in steps
            if step.op is StepOp.EXTERNAL_MERGE and step.operands[0] == bound[verb_name]
        ]
        _check_verb(recipe, verb, arguments)

    return Numeration.from_ids(lexicon, ids), steps


def _name_of(bound: Mapping[str, int], occurrence: int) -> str:
    return next(name for name, occ in bound.items() if occ == occurrence)


def build_numeration(fragment: GrammarFragment, clause_type: str,
                     fillers: Mapping[str, str]) -> Numeration:
    """Multiconjunto exacto de ítems que consumen los pasos de la receta"""
    numeration, _ = instantiate(fragment, clause_type, fillers)
    return numeration


def derive_clause(fragment: GrammarFragment, clause_type: str,
                  fillers: Mapping[str, str]) -> DerivationTrace:
    """
    Deriva la cláusula qulk completa: capa matriz más cláusula incrustada.

    Raises:
        RecipeError: Receta inexistente o rellenos inválidos
    """
    numeration, steps = instantiate(fragment, clause_type, fillers)
    trace = derive(numeration, steps, start_category=GrammarConfig.START_CATEGORY)
    if trace.converged:
        logger.info(f"✅ {clause_type} {dict(fillers)}: {len(trace.steps)} pasos, convergente")
    else:
        logger.info(f"❌ {clause_type} {dict(fillers)}: {trace.verdict}")
    return trace


def iter_fillers(fragment: GrammarFragment, clause_type: str) -> Iterator[Dict[str, str]]:
    """
    Todas las combinaciones de rellenos bien tipadas sobre el léxico.

    Yields:
        Diccionarios ranura → id aceptados por instantiate
    """
    slots = fragment.slots_for(clause_type)
    choices = []
    for slot in slots:
        options: List[Optional[str]] = [None] if slot.optional else []
        for item in fragment.lexicon:
            try:
                _check_slot(slot, item)
            except FillerError:
                continue
            options.append(item.id)
        choices.append(options)

    for combination in itertools.product(*choices):
        fillers = {s.name: i for s, i in zip(slots, combination) if i is not None}
        try:
            instantiate(fragment, clause_type, fillers)
        except FillerError:
            continue
        yield fillers


__all__ = [
    "get_fragment",
    "yia_lexicon",
    "instantiate",
    "build_numeration",
    "derive_clause",
    "iter_fillers",
]
