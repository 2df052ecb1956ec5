"""
Pruebas del parser: segmentación, enumeración exhaustiva y análisis.
"""
import pytest

from app.domain.derivation import Numeration
from app.domain.search import SearchBounds
from app.domain.syntactic_object import Leaf, pronounced_leaves, shape_key
from app.exceptions.corpus_exceptions import NoDerivationError, ParseError, SegmentationError
from app.services.parser_service import (
    enumerate_all,
    feasibility_problem,
    hypothesize_numerations,
    normalize_surface,
    parse,
    segment,
)
from app.services.pf_interface import spell_out
from app.services.yia_grammar import build_numeration


def words(trace):
    return " ".join(l.item.phon for l in pronounced_leaves(trace.result) if not l.item.is_null)


class TestSegment:

    def test_sufijo_con_guion(self, lexicon):
        assert segment("qul-k", lexicon) == [("qul", "-k")]

    def test_sufijo_fundido(self, lexicon):
        assert segment("qulk", lexicon) == [("qul", "-k")]

    def test_clitico_negativo(self, lexicon):
        assert segment("jāʔ-š", lexicon) == [("jāʔ", "-š")]

    def test_ambiguedad(self, lexicon):
        assert segment("lak", lexicon) == [("lak",), ("lā", "-k")]

    def test_cadena_completa(self, lexicon):
        assert segment("qul-k ʕali jāʔ", lexicon) == [("qul", "-k", "ʕali", "jāʔ")]

    def test_token_desconocido(self, lexicon):
        with pytest.raises(SegmentationError) as exc:
            segment("qul-k xyz", lexicon)
        assert exc.value.token == "xyz"

    def test_variantes(self, lexicon):
        assert normalize_surface("qul-k wyn wali ʕali", lexicon) == "qul-k wayn wali ʕali"
        assert segment("wyn", lexicon) == [("wayn",)]


class TestEnumerateAll:

    def test_un_solo_item(self, lexicon):
        result = enumerate_all(Numeration.from_ids(lexicon, ["ʕali"]))
        assert len(result) == 1
        assert isinstance(result.traces[0].result, Leaf)
        assert result.complete

    def test_transitiva(self, toy_lexicon):
        numeration = Numeration.from_ids(toy_lexicon, ["ver", "maria", "v", "juan", "T"])
        result = enumerate_all(numeration)
        assert result.complete
        assert sorted(words(t) for t in result) == ["juan ver maria", "maria ver juan"]
        assert all(t.converged for t in result)

    def test_trazas_reproducibles(self, toy_lexicon):
        from app.services.derivation_engine import replay
        numeration = Numeration.from_ids(toy_lexicon, ["ver", "maria", "v", "juan", "T"])
        for trace in enumerate_all(numeration):
            again = replay(numeration, trace.steps)
            assert again.converged
            assert shape_key(again.result) == shape_key(trace.result)

    def test_fuera_de_limites(self, toy_lexicon):
        numeration = Numeration.from_ids(toy_lexicon, ["ver", "maria", "v", "juan", "T"])
        result = enumerate_all(numeration, SearchBounds(max_steps=3))
        assert not result and not result.complete

    def test_busqueda_cortada(self, toy_lexicon):
        numeration = Numeration.from_ids(toy_lexicon, ["ver", "maria", "v", "juan", "T"])
        result = enumerate_all(numeration, SearchBounds(max_steps=8))
        assert not result and not result.complete

    def test_inviable(self, toy_lexicon):
        assert "selectores" in feasibility_problem(Numeration.from_ids(toy_lexicon, ["v", "juan"]))
        assert "selectores" in feasibility_problem(Numeration.from_ids(toy_lexicon, ["juan", "maria"]))
        assert feasibility_problem(Numeration.from_ids(toy_lexicon, ["ver", "juan"])) is None
        assert not enumerate_all(Numeration.from_ids(toy_lexicon, ["juan", "maria"]))

    def test_categoria_inicial(self, lexicon):
        numeration = Numeration.from_ids(lexicon, ["ʕali"])
        assert len(enumerate_all(numeration, start_category="T")) == 0
        assert len(enumerate_all(numeration, start_category="D")) == 1

    @pytest.mark.parametrize("missing", ["-š", "lā"])
    def test_imperativo_negativo_sin_negacion(self, fragment, corpus_by_id, missing):
        record = corpus_by_id["15"]
        numeration = build_numeration(fragment, record.clause_type, record.fillers).take(missing)
        assert len(enumerate_all(numeration)) == 0
        assert len(enumerate_all(numeration, start_category="T")) == 0


class TestParse:

    def test_contiene_la_derivacion_por_receta(self, fragment, derived):
        result = parse("qul-k ʕali jāʔ", fragment)
        assert result
        shapes = {shape_key(t.result) for t in result}
        assert shape_key(derived("4a").result) in shapes
        for trace in result:
            assert spell_out(trace).render() == "qul-k ʕali jāʔ"

    def test_hipotesis_de_numeracion(self, fragment):
        numerations, complete = hypothesize_numerations(
            fragment, ("qul", "-k", "ʕali", "jāʔ"), SearchBounds.default()
        )
        assert complete
        assert len(numerations) == 3
        expected = build_numeration(fragment, "decl-affirm", {"subject": "ʕali", "verb": "jāʔ"})
        assert expected.key() in {n.key() for n in numerations}

    def test_variante(self, fragment):
        result = parse("qul-k wyn wali ʕali", fragment)
        assert result.first is not None
        assert spell_out(result.first).render() == "qul-k wayn wali ʕali"

    def test_forma_fundida(self, fragment):
        assert parse("qulk ʕali jāʔ", fragment, fused_render=True)
        with pytest.raises(NoDerivationError):
            parse("qulk ʕali jāʔ", fragment)

    def test_orden_imposible(self, fragment):
        with pytest.raises(NoDerivationError):
            parse("ʕali qul-k jāʔ", fragment)

    def test_cadena_vacia(self, fragment):
        with pytest.raises(ParseError):
            parse("   ", fragment)

    def test_token_desconocido(self, fragment):
        with pytest.raises(SegmentationError):
            parse("qul-k xyz", fragment)

    def test_limite_de_nulos(self, fragment):
        with pytest.raises(NoDerivationError):
            parse("qul-k ʕali jāʔ", fragment, SearchBounds(max_null_items=2))

    def test_declarativa_sin_lecturas_imperativas(self, fragment):
        result = parse("qul-k ʕali jāʔ", fragment)
        assert len(result) == 1
        for trace in result:
            assert all(item.id != "v-imp" for item, _ in trace.numeration.items)

    def test_interrogativa_unica(self, fragment):
        result = parse("qul-k wayn wali ʕali", fragment)
        assert len(result) == 1
        assert result.first.numeration.count("v-int") == 1

    @pytest.mark.parametrize("surface", [
        "qul-k lak tiftaḥ-š al-bāb",
        "qul-k lak lā tiftaḥ al-bāb",
        "qul-k lak jāʔ-š lil-bayt",
    ])
    def test_negacion_discontinua_incompleta(self, fragment, surface):
        with pytest.raises(NoDerivationError):
            parse(surface, fragment)
