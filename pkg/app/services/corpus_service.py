"""
Ejecución del corpus: deriva cada registro con su receta, compara la
materialización con la superficie, analiza la cadena y evalúa las
aserciones estructurales.
"""
import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import pandas as pd

from app.domain.corpus import CorpusRecord, StructuralAssertion
from app.domain.derivation import DerivationTrace
from app.domain.recipe import GrammarFragment
from app.domain.search import SearchBounds
from app.domain.surface import SurfaceForm
from app.domain.syntactic_object import (
    Node,
    is_head,
    item_index,
    iter_leaves,
    maximal_projection,
    subtree_at,
    walk,
)
from app.exceptions.grammar_exceptions import GrammarError
from app.services.parser_service import parse
from app.services.pf_interface import emit_gloss, spell_out
from app.services.yia_grammar import derive_clause, get_fragment

logger = logging.getLogger(__name__)

POSITION_KINDS = ("Spec", "Comp")


# ----------------------------------------------------------------------
# Aserciones estructurales
# ----------------------------------------------------------------------

def _projection_category(label: str) -> str:
    """TopP → Top, vP → v, NegClP → NegCl"""
    return label[:-1] if label.endswith("P") and len(label) > 1 else label


def _occurrences(trace: DerivationTrace, item_id: str) -> List[int]:
    return sorted({
        leaf.occurrence for leaf, _ in iter_leaves(trace.result)
        if leaf.item.id == item_id
    })


def _occupies(trace: DerivationTrace, item_id: str, position: str) -> Tuple[bool, str]:
    kind, _, projection = position.partition("-")
    if kind not in POSITION_KINDS or not projection:
        return False, f"posición ilegible '{position}'"
    category = _projection_category(projection)
    items = item_index(trace.result)

    seen = []
    for occurrence in _occurrences(trace, item_id):
        found = maximal_projection(trace.result, occurrence)
        if found is None or not found[0]:
            continue
        path = found[0]
        parent = subtree_at(trace.result, path[:-1])
        sibling = parent.child(1 - path[-1])
        where = "Comp" if is_head(sibling) else "Spec"
        here = f"{where}-{items[parent.label].category}P"
        if where == kind and items[parent.label].category == category:
            return True, here
        seen.append(here)
    return False, f"'{item_id}' está en {', '.join(seen) or 'ninguna posición'}"


def _head_of(trace: DerivationTrace, item_id: str, projection: str) -> Tuple[bool, str]:
    category = _projection_category(projection)
    occurrences = set(_occurrences(trace, item_id))
    items = item_index(trace.result)
    for _, node, _ in walk(trace.result):
        if isinstance(node, Node) and not node.amalgam and node.label in occurrences:
            if items[node.label].category == category:
                return True, f"{item_id} proyecta {projection}"
    if not occurrences:
        return False, f"'{item_id}' no está en el árbol"
    return False, f"'{item_id}' no encabeza ninguna {projection}"


def _fused(form: SurfaceForm, first: str, second: str, rendered: str) -> Tuple[bool, str]:
    word = form.word_containing(first)
    if word is None or all(m.id != second for m in word.morphemes):
        return False, f"'{first}' y '{second}' no forman una palabra"
    if rendered in (word.render(), word.render(fused=True)):
        return True, word.render()
    return False, f"la palabra es '{word.render()}', no '{rendered}'"


def _silent(trace: DerivationTrace, form: SurfaceForm, item_id: str) -> Tuple[bool, str]:
    if not _occurrences(trace, item_id):
        return False, f"'{item_id}' no está en el árbol"
    if form.word_containing(item_id) is not None:
        return False, f"'{item_id}' se pronuncia"
    return True, f"{item_id} silencioso"


def evaluate_assertion(assertion: StructuralAssertion, trace: DerivationTrace,
                       form: Optional[SurfaceForm] = None) -> Tuple[bool, str]:
    """
    Evalúa una aserción sobre una traza convergente.

    Args:
        assertion: Aserción del corpus
        trace: Traza con resultado
        form: Materialización (se calcula si falta)

    Returns:
        (se cumple, detalle legible)
    """
    if trace.result is None:
        return False, "la traza no tiene resultado"
    args = assertion.args
    if assertion.kind == "occupies":
        return _occupies(trace, args[0], args[1])
    if assertion.kind == "head_of":
        return _head_of(trace, args[0], args[1])

    form = form if form is not None else spell_out(trace)
    if assertion.kind == "fused":
        return _fused(form, *args)
    return _silent(trace, form, args[0])


# ----------------------------------------------------------------------
# Informe
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class RecordResult:
    """
    Resultado de un registro.

    Attributes:
        record_id: Identificador del registro
        converged: La derivación por receta converge
        surface_match: La materialización coincide con la superficie
        gloss_match: Los niveles de morfemas y glosas coinciden
        parsed: El análisis de la superficie no es vacío (None si no se comprobó)
        assertions: (aserción, cumple, detalle)
        error: Mensaje si la receta o la materialización fallaron
    """
    record_id: str
    converged: bool = False
    surface_match: bool = False
    gloss_match: bool = False
    parsed: Optional[bool] = None
    assertions: Tuple[Tuple[str, bool, str], ...] = ()
    error: Optional[str] = None
    rendered: str = ""

    @property
    def passed(self) -> bool:
        return (
            self.error is None
            and self.converged
            and self.surface_match
            and self.gloss_match
            and self.parsed is not False
            and all(ok for _, ok, _ in self.assertions)
        )

    @property
    def failures(self) -> List[str]:
        problems = []
        if self.error:
            problems.append(self.error)
        for name, ok in (
            ("no converge", self.converged),
            ("superficie distinta", self.surface_match),
            ("glosa distinta", self.gloss_match),
        ):
            if not ok and not self.error:
                problems.append(name)
        if self.parsed is False:
            problems.append("sin análisis")
        problems.extend(f"{a}: {detail}" for a, ok, detail in self.assertions if not ok)
        return problems


@dataclass(frozen=True)
class CorpusReport:
    """Matriz de resultados del corpus; se combina de forma asociativa"""
    results: Tuple[RecordResult, ...] = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def exit_code(self) -> int:
        return 0 if self.passed else 1

    @property
    def failed(self) -> List[RecordResult]:
        return [r for r in self.results if not r.passed]

    def merge(self, other: 'CorpusReport') -> 'CorpusReport':
        return CorpusReport(self.results + other.results)

    def to_dataframe(self) -> pd.DataFrame:
        """Una fila por registro, una columna por comprobación"""
        rows = []
        for r in self.results:
            rows.append({
                "id": r.record_id,
                "converge": r.converged,
                "superficie": r.surface_match,
                "glosa": r.gloss_match,
                "análisis": r.parsed,
                "aserciones": f"{sum(ok for _, ok, _ in r.assertions)}/{len(r.assertions)}",
                "resultado": "OK" if r.passed else "FALLO",
                "detalle": "; ".join(r.failures),
            })
        columns = ["id", "converge", "superficie", "glosa", "análisis",
                   "aserciones", "resultado", "detalle"]
        return pd.DataFrame(rows, columns=columns)

    def summary(self) -> str:
        ok = sum(r.passed for r in self.results)
        return f"{ok}/{len(self.results)} registros correctos"


class CorpusRunner:
    """Servicio que ejecuta los registros del corpus contra un fragmento"""

    def __init__(self, fragment: Optional[GrammarFragment] = None,
                 bounds: Optional[SearchBounds] = None, check_parse: bool = True):
        """
        Args:
            fragment: Fragmento gramatical (por defecto, el distribuido)
            bounds: Límites del parser
            check_parse: Analiza también cada superficie
        """
        self.fragment = fragment if fragment is not None else get_fragment()
        self.bounds = bounds or SearchBounds.default()
        self.check_parse = check_parse

    def run_record(self, record: CorpusRecord) -> RecordResult:
        """Ejecuta todas las comprobaciones de un registro"""
        try:
            trace = derive_clause(self.fragment, record.clause_type, record.fillers)
        except GrammarError as e:
            return RecordResult(record.id, error=str(e))

        if not trace.converged:
            return RecordResult(record.id, error=f"colapso: {trace.verdict.reason}")

        try:
            form = spell_out(trace)
            gloss = emit_gloss(form, leipzig=False)
        except GrammarError as e:
            return RecordResult(record.id, converged=True, error=str(e))

        rendered = form.render()
        parsed = None
        if self.check_parse:
            try:
                parsed = bool(parse(record.surface, self.fragment, self.bounds))
            except GrammarError as e:
                logger.debug(f"Registro {record.id}: {e}")
                parsed = False

        assertions = tuple(
            (str(a),) + evaluate_assertion(a, trace, form)
            for a in record.assertions
        )
        return RecordResult(
            record_id=record.id,
            converged=True,
            surface_match=rendered == record.surface,
            gloss_match=gloss.morphemes == record.morphemes and gloss.glosses == record.gloss,
            parsed=parsed,
            assertions=assertions,
            rendered=rendered,
        )

    def run_corpus(self, records: Sequence[CorpusRecord]) -> CorpusReport:
        """
        Ejecuta el corpus completo.

        Los fallos son entradas del informe, nunca excepciones.

        Returns:
            CorpusReport (exit_code 0 si todo pasa)
        """
        report = CorpusReport()
        for record in records:
            result = self.run_record(record)
            if result.passed:
                logger.info(f"✅ ({record.id}) {record.surface}")
            else:
                logger.warning(f"❌ ({record.id}) {'; '.join(result.failures)}")
            report = report.merge(CorpusReport((result,)))

        logger.info(f"Corpus: {report.summary()}")
        return report


def run_corpus(records: Sequence[CorpusRecord], fragment: GrammarFragment,
               bounds: Optional[SearchBounds] = None, check_parse: bool = True) -> CorpusReport:
    """Ejecuta el corpus con un ejecutor de un solo uso"""
    return CorpusRunner(fragment, bounds, check_parse).run_corpus(records)


# Instancia global del servicio
_corpus_runner: Optional[CorpusRunner] = None


def get_corpus_runner() -> CorpusRunner:
    """Obtiene la instancia global del ejecutor sobre el fragmento distribuido"""
    global _corpus_runner
    if _corpus_runner is None:
        _corpus_runner = CorpusRunner()
    return _corpus_runner


__all__ = [
    "evaluate_assertion",
    "RecordResult",
    "CorpusReport",
    "CorpusRunner",
    "run_corpus",
    "get_corpus_runner",
]
