"""
Parser: segmentación de cadenas, enumeración exhaustiva de derivaciones
convergentes y análisis de superficies contra el fragmento.

La enumeración es también el oráculo de fuerza bruta de las pruebas de
aceptación: parse no hace nada que enumerate_all no haga, solo filtra.
"""
import itertools
import logging
from collections import Counter
from typing import Dict, List, Optional, Sequence, Tuple

from app.config.settings import GrammarConfig
from app.domain.derivation import (
    DerivationStep,
    DerivationTrace,
    Numeration,
    StepOp,
    Verdict,
    Workspace,
)
from app.domain.feature import HEAD_MOVEMENT, FeatureKind
from app.domain.lexical_item import LexicalItem, Lexicon, MorphClass
from app.domain.recipe import GrammarFragment
from app.domain.search import EnumerationResult, ParseResult, SearchBounds
from app.domain.syntactic_object import SyntacticObject, shape_key
from app.exceptions.corpus_exceptions import (
    NoDerivationError,
    ParseError,
    SegmentationError,
)
from app.exceptions.grammar_exceptions import GrammarError
from app.services.derivation_engine import (
    apply_step,
    candidate_steps,
    check_convergence,
    select,
)
from app.services.pf_interface import spell_out

logger = logging.getLogger(__name__)

Analysis = Tuple[str, ...]


# ----------------------------------------------------------------------
# Segmentación
# ----------------------------------------------------------------------

def _free_item(lexicon: Lexicon, form: str) -> Optional[LexicalItem]:
    item_id = lexicon.resolve(form)
    item = lexicon.get(item_id) if item_id else None
    if item is None or item.morph_class is not MorphClass.FREE:
        return None
    return item


def _hosts(token: str, lexicon: Lexicon) -> List[Tuple[LexicalItem, str]]:
    """
    Formas de partir el token en anfitrión y afijo.

    Acepta la frontera con guion (qul-k) y la forma fundida (qulk).
    """
    found = []
    for affix in lexicon:
        if not affix.is_affix:
            continue
        bare = affix.phon.strip("-")
        for marker in (affix.phon, bare):
            if affix.morph_class is MorphClass.SUFFIX:
                if token.endswith(marker) and len(token) > len(marker):
                    found.append((affix, token[:-len(marker)]))
            elif token.startswith(marker) and len(token) > len(marker):
                found.append((affix, token[len(marker):]))
    return found


def _analyse(token: str, lexicon: Lexicon, depth: int = 0) -> List[Analysis]:
    analyses: List[Analysis] = []
    item = _free_item(lexicon, token)
    if item is not None:
        analyses.append((item.id,))
    if depth >= 2:
        return analyses
    for affix, host in _hosts(token, lexicon):
        for inner in _analyse(host, lexicon, depth + 1):
            if affix.morph_class is MorphClass.SUFFIX:
                analyses.append(inner + (affix.id,))
            else:
                analyses.append((affix.id,) + inner)
    return list(dict.fromkeys(analyses))


def segment(surface: str, lexicon: Lexicon) -> List[Analysis]:
    """
    Hipótesis de segmentación de una cadena.

    Args:
        surface: Tokens separados por espacios
        lexicon: Léxico

    Returns:
        Secuencias de ids léxicos, una por combinación de análisis de tokens

    Raises:
        SegmentationError: Si algún token no tiene análisis
    """
    per_token = []
    for token in surface.split():
        analyses = _analyse(token, lexicon)
        if not analyses:
            raise SegmentationError(token)
        per_token.append(analyses)
    return [
        tuple(itertools.chain.from_iterable(combination))
        for combination in itertools.product(*per_token)
    ]


def normalize_surface(surface: str, lexicon: Lexicon) -> str:
    """Sustituye las variantes ortográficas por la forma canónica (wyn → wayn)"""
    tokens = []
    for token in surface.split():
        target = lexicon.variants.get(token)
        tokens.append(lexicon.get(target).phon if target else token)
    return " ".join(tokens)


# ----------------------------------------------------------------------
# Enumeración exhaustiva
# ----------------------------------------------------------------------

def _trigger_counts(items: Sequence[LexicalItem], kind: FeatureKind) -> Tuple[Counter, Counter]:
    total, mandatory = Counter(), Counter()
    for item in items:
        for feature in item.bundle.features:
            if feature.kind is kind and feature.attribute != HEAD_MOVEMENT:
                total[feature.attribute] += 1
                if not feature.optional:
                    mandatory[feature.attribute] += 1
    return total, mandatory


def feasibility_problem(numeration: Numeration) -> Optional[str]:
    """
    Descarta numeraciones que ninguna derivación puede agotar.

    Cada Merge coteja un selector y cada Move un licenciador con un
    licenciado, así que los recuentos deben poder cuadrar.
    """
    items = [numeration.item(i) for i in numeration.ids()]
    merges = len(items) - 1
    selectors = [f for item in items for f in item.bundle.selectors]
    if len(selectors) < merges:
        return f"{merges} ensambles necesarios y solo {len(selectors)} selectores"
    mandatory = sum(1 for f in selectors if not f.optional)
    if mandatory > merges:
        return f"{mandatory} selectores obligatorios para {merges} ensambles"

    licensors, needed_licensors = _trigger_counts(items, FeatureKind.LICENSOR)
    licensees, needed_licensees = _trigger_counts(items, FeatureKind.LICENSEE)
    for trigger, n in needed_licensors.items():
        if licensees[trigger] < n:
            return f"+{trigger} ×{n} sin licenciados suficientes"
    for trigger, n in needed_licensees.items():
        if licensors[trigger] < n:
            return f"-{trigger} ×{n} sin licenciadores suficientes"
    return None


Found = Dict[tuple, Tuple[SyntacticObject, Tuple[DerivationStep, ...]]]


class _Search:
    """Búsqueda en profundidad memoizada sobre espacios de trabajo"""

    def __init__(self, defaultable=None, start_category: Optional[str] = None):
        self.defaultable = defaultable
        self.start_category = start_category
        self.memo: Dict[tuple, Found] = {}
        self.explored = 0
        self.truncated = False

    def run(self, ws: Workspace, budget: int) -> Found:
        key = (ws.key(), budget)
        if key in self.memo:
            return self.memo[key]
        self.explored += 1

        found: Found = {}
        if ws.is_final and check_convergence(ws.roots[0], self.start_category).converged:
            found[shape_key(ws.roots[0])] = (ws.roots[0], ())

        candidates = candidate_steps(ws)
        if candidates and budget == 0:
            self.truncated = True
            candidates = []

        for step in candidates:
            try:
                new_ws, annotated = apply_step(ws, step, self.defaultable)
            except GrammarError:
                continue
            for shape, (result, suffix) in self.run(new_ws, budget - 1).items():
                found.setdefault(shape, (result, (annotated,) + suffix))

        self.memo[key] = found
        return found


def enumerate_all(numeration: Numeration, bounds: Optional[SearchBounds] = None,
                  defaultable=None, start_category: Optional[str] = None) -> EnumerationResult:
    """
    Todas las derivaciones convergentes de una numeración.

    Selecciona los ítems en orden canónico y explora cada paso legítimo;
    los resultados se deduplican por forma del árbol.

    Args:
        numeration: Numeración
        bounds: Límites (por defecto, SearchBounds.default())
        defaultable: Valores por defecto para Agree
        start_category: Categoría exigida a la raíz (None acepta cualquiera)

    Returns:
        EnumerationResult; complete=False si algún límite cortó la búsqueda
    """
    bounds = bounds or SearchBounds.default()

    if numeration.null_count > bounds.max_null_items or numeration.size > bounds.max_steps:
        logger.warning(f"⚠️ Numeración fuera de límites: {numeration}")
        return EnumerationResult((), complete=False)

    problem = feasibility_problem(numeration)
    if problem is not None:
        logger.debug(f"Numeración descartada {numeration}: {problem}")
        return EnumerationResult(())

    ws = Workspace(numeration=numeration)
    selects = []
    for item_id in numeration.ids():
        ws = select(ws, item_id)
        selects.append(DerivationStep.select(item_id))

    search = _Search(defaultable, start_category)
    found = search.run(ws, bounds.max_steps - len(selects))
    if search.truncated:
        logger.warning(f"⚠️ Búsqueda cortada en {bounds.max_steps} pasos: {numeration}")

    traces = tuple(
        DerivationTrace(numeration, tuple(selects) + suffix, result, Verdict.ok())
        for result, suffix in found.values()
    )
    logger.debug(f"{numeration}: {len(traces)} derivaciones, {search.explored} estados")
    return EnumerationResult(traces, complete=not search.truncated, explored=search.explored)


# ----------------------------------------------------------------------
# Análisis
# ----------------------------------------------------------------------

def _recipe_literals(fragment: GrammarFragment, clause_type: str) -> List[str]:
    literals = []
    for template in fragment.steps_for(clause_type):
        if template.op is StepOp.SELECT and template.slot is None and template.pro_of is None:
            literals.append(template.source)
    return literals


def _needs_pro(fragment: GrammarFragment, clause_type: str) -> bool:
    return any(t.pro_of is not None for t in fragment.steps_for(clause_type))


def hypothesize_numerations(fragment: GrammarFragment, hypothesis: Analysis,
                            bounds: SearchBounds) -> Tuple[List[Numeration], bool]:
    """
    Numeraciones candidatas para una segmentación, guiadas por las recetas.

    Solo se añaden los núcleos nulos que alguna receta pide y el pro que
    concuerda con cada verbo de la hipótesis.

    Returns:
        (numeraciones, completo)
    """
    lexicon = fragment.lexicon
    overt = Counter(hypothesis)
    numerations: List[Numeration] = []
    complete = True

    for clause_type in fragment.recipes:
        literals = _recipe_literals(fragment, clause_type)
        audible = Counter(i for i in literals if not lexicon.get(i).is_null)
        if any(overt[i] < n for i, n in audible.items()):
            continue
        ids = list(hypothesis) + [i for i in literals if lexicon.get(i).is_null]

        if _needs_pro(fragment, clause_type):
            verbs = [lexicon.get(i) for i in hypothesis if lexicon.get(i).category == "V"]
            pros = [lexicon.pro_for(v.bundle.agreement) for v in verbs]
            ids.extend(p.id for p in pros if p is not None)

        numeration = Numeration.from_ids(lexicon, ids)
        if numeration.null_count > bounds.max_null_items:
            complete = False
            continue
        numerations.append(numeration)

    return numerations, complete


def parse(surface: str, fragment: GrammarFragment, bounds: Optional[SearchBounds] = None,
          fused_render: bool = False) -> ParseResult:
    """
    Derivaciones convergentes cuya materialización reproduce la cadena.

    Args:
        surface: Cadena con la ortografía del corpus (guiones incluidos)
        fragment: Fragmento gramatical
        bounds: Límites de búsqueda
        fused_render: Compara contra la forma fundida ("qulk")

    Returns:
        ParseResult con las trazas, deduplicadas por forma

    Raises:
        ParseError: Cadena vacía
        SegmentationError: Token sin análisis
        NoDerivationError: Ninguna derivación reproduce la cadena
    """
    if not surface.strip():
        raise ParseError("La cadena a analizar está vacía")
    bounds = bounds or SearchBounds.default()
    lexicon = fragment.lexicon

    hypotheses = segment(surface, lexicon)
    target = normalize_surface(surface, lexicon)

    complete = True
    numerations: Dict[tuple, Numeration] = {}
    for hypothesis in hypotheses:
        candidates, within = hypothesize_numerations(fragment, hypothesis, bounds)
        complete = complete and within
        for numeration in candidates:
            if len(numerations) >= bounds.max_numerations:
                complete = False
                break
            numerations.setdefault(numeration.key(), numeration)

    traces: Dict[tuple, DerivationTrace] = {}
    for numeration in numerations.values():
        result = enumerate_all(numeration, bounds, start_category=GrammarConfig.START_CATEGORY)
        complete = complete and result.complete
        for trace in result:
            try:
                rendered = spell_out(trace).render(fused_render)
            except GrammarError:
                continue
            if rendered == target:
                traces.setdefault(shape_key(trace.result), trace)

    if not traces:
        logger.info(f"❌ Sin análisis para '{surface}' ({len(numerations)} numeraciones)")
        raise NoDerivationError(surface)

    logger.info(f"✅ '{surface}': {len(traces)} análisis")
    return ParseResult(
        surface=surface,
        traces=tuple(traces.values()),
        segmentations=tuple(hypotheses),
        complete=complete,
    )


__all__ = [
    "segment",
    "normalize_surface",
    "feasibility_problem",
    "enumerate_all",
    "hypothesize_numerations",
    "parse",
]
