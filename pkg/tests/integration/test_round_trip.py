"""
Ida y vuelta: toda cláusula que una receta deriva se vuelve a encontrar
al analizar su superficie.
"""
import pytest

from app.domain.search import SearchBounds
from app.domain.syntactic_object import shape_key
from app.services.parser_service import parse
from app.services.pf_interface import spell_out
from app.services.yia_grammar import derive_clause, iter_fillers

CLAUSE_TYPES = ["decl-affirm", "decl-neg", "decl-emphatic", "interrogative", "imp-affirm", "imp-neg"]

# La negativa más larga (tópico, objeto con adjetivo, adverbio y destinatario) da 41 pasos
ROUND_TRIP_BOUNDS = SearchBounds(max_steps=48)


@pytest.mark.parametrize("clause_type", CLAUSE_TYPES)
def test_toda_combinacion_converge(fragment, clause_type):
    combos = list(iter_fillers(fragment, clause_type))
    assert combos
    crashed = []
    for fillers in combos:
        trace = derive_clause(fragment, clause_type, fillers)
        if not trace.converged:
            crashed.append(f"{fillers}: {trace.verdict.reason}")
    assert not crashed, "\n".join(crashed[:5])


@pytest.mark.slow
@pytest.mark.parametrize("clause_type", CLAUSE_TYPES)
def test_derivar_y_analizar(fragment, clause_type):
    for fillers in iter_fillers(fragment, clause_type):
        trace = derive_clause(fragment, clause_type, fillers)
        assert trace.converged, f"{fillers}: {trace.verdict.reason}"

        surface = spell_out(trace).render()
        shapes = {shape_key(t.result) for t in parse(surface, fragment, ROUND_TRIP_BOUNDS)}
        assert shape_key(trace.result) in shapes, f"{clause_type} {fillers}"
