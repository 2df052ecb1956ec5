"""
Pruebas de la interfaz fonológica: linealización, M-Merger,
cliticización y glosas.
"""
import pytest

from app.domain.derivation import DerivationTrace, Numeration, Verdict
from app.domain.feature import FeatureBundle
from app.domain.lexical_item import LexicalItem
from app.domain.surface import MorphWord, SurfaceForm
from app.domain.syntactic_object import Leaf, Node
from app.exceptions.derivation_exceptions import (
    AdjacencyError,
    GlossError,
    HostingError,
    OpacityError,
    SpellOutError,
)
from app.services.pf_interface import (
    cliticize,
    emit_gloss,
    linearize,
    m_merger,
    normalize_gloss,
    spell_out,
)


def word(lexicon, item_id, occurrence=0):
    return MorphWord(stem=lexicon.get(item_id), occurrences=(occurrence,))


def affix(lexicon, item_id, occurrence=1):
    return Leaf(lexicon.get(item_id), occurrence)


class TestLinearize:

    def test_sin_nulos_ni_copias(self, derived):
        leaves = linearize(derived("4a").result)
        assert [leaf.item.id for leaf in leaves] == ["-k", "qul", "ʕali", "jāʔ"]

    def test_copia_duplicada(self, lexicon):
        ali = Leaf(lexicon.get("ʕali"), 1)
        inner = Node(ali, Leaf(lexicon.get("qul"), 0), 0)
        with pytest.raises(SpellOutError):
            linearize(Node(ali, inner, 0))


class TestMMerger:

    def test_sufijo_en_especificador(self, lexicon):
        units = [affix(lexicon, "-k"), word(lexicon, "qul")]
        fused = m_merger(units, 0, 1)
        assert fused.render() == "qul-k"
        assert fused.render(fused=True) == "qulk"
        assert fused.is_opaque
        assert fused.occurrences == (0, 1)

    def test_no_adyacentes(self, lexicon):
        units = [affix(lexicon, "-k"), word(lexicon, "ʕali", 2), word(lexicon, "qul")]
        with pytest.raises(AdjacencyError):
            m_merger(units, 0, 2)

    def test_dos_palabras(self, lexicon):
        with pytest.raises(HostingError):
            m_merger([word(lexicon, "qul"), word(lexicon, "ʕali", 1)], 0, 1)

    def test_anfitrion_no_verbal(self, lexicon):
        with pytest.raises(HostingError, match="anfitrión verbal"):
            m_merger([affix(lexicon, "-k"), word(lexicon, "lak", 2)], 0, 1)

    def test_anfitrion_nominal_a_la_izquierda(self, lexicon):
        with pytest.raises(HostingError):
            m_merger([word(lexicon, "ʕali"), affix(lexicon, "-k")], 0, 1)

    def test_palabra_opaca(self, lexicon):
        qulk = m_merger([affix(lexicon, "-k"), word(lexicon, "qul")], 0, 1)
        with pytest.raises(OpacityError):
            m_merger([affix(lexicon, "-š", 2), qulk], 0, 1)


class TestCliticize:

    def test_verbo_precedente(self, lexicon):
        host = cliticize([word(lexicon, "jāʔ"), affix(lexicon, "-š")], 1, 0)
        assert host.render() == "jāʔ-š"
        assert host.render(fused=True) == "jāʔ-š"
        assert not host.is_opaque

    def test_anfitrion_no_verbal(self, lexicon):
        with pytest.raises(HostingError):
            cliticize([word(lexicon, "ʕali"), affix(lexicon, "-š")], 1, 0)

    def test_anfitrion_opaco(self, lexicon):
        qulk = m_merger([affix(lexicon, "-k"), word(lexicon, "qul")], 0, 1)
        with pytest.raises(OpacityError):
            cliticize([qulk, affix(lexicon, "-š", 2)], 1, 0)

    def test_no_adyacente(self, lexicon):
        units = [word(lexicon, "jāʔ"), word(lexicon, "lil-bayt", 2), affix(lexicon, "-š")]
        with pytest.raises(AdjacencyError):
            cliticize(units, 2, 0)

    def test_no_es_clitico_negativo(self, lexicon):
        with pytest.raises(HostingError):
            cliticize([word(lexicon, "qul"), affix(lexicon, "-k")], 1, 0)


class TestSpellOut:

    @pytest.mark.parametrize("record_id, expected", [
        ("4a", "qul-k ʕali jāʔ"),
        ("neg-decl", "qul-k lak mā jāʔ-š lil-bayt"),
        ("15", "qul-k lak lā tiftaḥ-š al-bāb"),
        ("11a", "qul-k wayn wali ʕali"),
    ])
    def test_superficie(self, derived, record_id, expected):
        assert spell_out(derived(record_id)).render() == expected

    def test_forma_fundida(self, derived):
        form = spell_out(derived("neg-decl"))
        assert form.render(fused=True) == "qulk lak mā jāʔ-š lil-bayt"

    def test_segmentacion(self, derived):
        form = spell_out(derived("4a"))
        assert form.segmentation == (("qul", "-k"), ("ʕali",), ("jāʔ",))
        assert form.word_containing("-k").stem.id == "qul"

    def test_traza_no_convergente(self, derived):
        trace = derived("4a")
        crashed = DerivationTrace(trace.numeration, trace.steps, trace.result, Verdict.crashed("x"))
        with pytest.raises(SpellOutError):
            spell_out(crashed)

    def test_afijo_huerfano(self, lexicon):
        alone = DerivationTrace(Numeration(), (), affix(lexicon, "-k", 0), Verdict.ok())
        with pytest.raises(SpellOutError):
            spell_out(alone)

    def test_nulo_no_es_raiz(self, lexicon):
        with pytest.raises(ValueError):
            MorphWord(stem=lexicon.get("T"))
        with pytest.raises(ValueError):
            MorphWord(stem=lexicon.get("qul"), suffixes=(lexicon.get("lak"),))


class TestGloss:

    def test_glosa_literal(self, derived):
        gloss = emit_gloss(spell_out(derived("4a")), leipzig=False)
        assert gloss.morphemes == ("qul-k", "ʕali", "jāʔ")
        assert gloss.glosses == ("say-1.SG", "Ali", "come.PST.3.MS")

    def test_glosa_leipzig(self, derived):
        gloss = emit_gloss(spell_out(derived("4a")), leipzig=True)
        assert gloss.glosses == ("say-1SG", "Ali", "come.PST.3MS")
        assert gloss.render() == "qul-k\tʕali\tjāʔ\nsay-1SG\tAli\tcome.PST.3MS"

    def test_clitico_en_la_glosa(self, derived):
        gloss = emit_gloss(spell_out(derived("15")), leipzig=False)
        assert gloss.glosses[3] == "open.IMP.2.MS-NEG"

    @pytest.mark.parametrize("raw, expected", [
        ("1.SG", "1SG"),
        ("come.PST.3.MS", "come.PST.3MS"),
        ("to.the-house", "to.the-house"),
    ])
    def test_normalizacion(self, raw, expected):
        assert normalize_gloss(raw) == expected

    def test_morfema_sin_glosa(self):
        mudo = LexicalItem("zz", "zz", "", FeatureBundle.parse("D"))
        with pytest.raises(GlossError):
            emit_gloss(SurfaceForm((MorphWord(stem=mudo),)))
