"""
Pruebas del repositorio del léxico.
"""
import pytest

from app.domain.lexical_item import MorphClass
from app.exceptions.grammar_exceptions import (
    DuplicateEntryError,
    LexiconFormatError,
    MorphClassConflictError,
    UnknownItemError,
)
from app.infrastructure.lexicon_repository import (
    LexiconRepository,
    fold,
    load_lexicon,
    lookup_item,
    serialize_lexicon,
)


MINI = """
# comentario
qul  | say  | =Top/Force =P? V | free
-k   | 1.SG | D -epp person:1 number:sg | suffix
T    | T    | =v uperson unumber ugender +hm +epp T | null
@variant kul = qul
"""


class TestLexiconDistribuido:

    def test_tamano(self, lexicon):
        assert len(lexicon) == 33

    def test_clases_morfologicas(self, lexicon):
        assert [i.id for i in lexicon.suffixes] == ["-k", "-š"]
        assert {i.id for i in lexicon.null_items} == {
            "pro-3MS", "pro-2MS", "pro-1SG",
            "v-decl", "v-int", "v-imp", "T", "Top", "Force",
        }

    def test_pro_concordante(self, lexicon):
        verbo = lexicon.get("ʔištaruk")
        assert lexicon.pro_for(verbo.bundle.agreement).id == "pro-1SG"
        assert lexicon.pro_for(lexicon.get("hāt").bundle.agreement).id == "pro-2MS"
        assert lexicon.pro_for({}) is None

    def test_nulos_sin_forma(self, lexicon):
        for item in lexicon.null_items:
            assert item.phon == ""
        assert lexicon.get("pro-3MS").display == "pro"
        assert lexicon.get("v-decl").display == "v"

    def test_pro_con_epp_obligatorio(self, lexicon):
        for item_id in ("pro-3MS", "pro-2MS", "pro-1SG"):
            licensees = lexicon.get(item_id).bundle.licensees
            assert [(f.attribute, f.optional) for f in licensees] == [("epp", False)]

    def test_concordancia_negativa(self, lexicon):
        assert lexicon.get("-š").bundle.concord == {"polarity": "neg"}
        for neg in ("mā", "lā"):
            assert [f.attribute for f in lexicon.get(neg).bundle.probes] == ["polarity"]

    def test_pasados_declarativos_o_interrogativos(self, lexicon):
        for verb in ("jāʔ", "wali", "ʔištara", "ʔištaruk"):
            assert "uclause:declarative/interrogative" in str(lexicon.get(verb).bundle).split()


class TestLoadLexicon:

    def test_lectura_minima(self):
        lex = load_lexicon(MINI)
        assert len(lex) == 3
        assert lex.get("-k").morph_class is MorphClass.SUFFIX
        assert lex.get("T").is_null
        assert lex.resolve("kul") == "qul"

    def test_campos_incompletos(self):
        with pytest.raises(LexiconFormatError) as exc:
            load_lexicon("\n\nqul | say | V\n")
        assert exc.value.line_no == 3

    def test_clase_desconocida(self):
        with pytest.raises(LexiconFormatError):
            load_lexicon("qul | say | V | clitic")

    def test_rasgo_invalido(self):
        with pytest.raises(LexiconFormatError) as exc:
            load_lexicon("qul | say | V =D | free")
        assert exc.value.line_no == 1

    def test_duplicado(self):
        with pytest.raises(DuplicateEntryError) as exc:
            load_lexicon("qul | say | V | free\nqul | tell | V | free")
        assert exc.value.item_id == "qul"
        assert exc.value.line_no == 2

    @pytest.mark.parametrize("line", [
        "k | 1.SG | D | suffix",
        "-k | 1.SG | D | free",
        "al | the | D | prefix",
    ])
    def test_clase_contra_forma(self, line):
        with pytest.raises(MorphClassConflictError):
            load_lexicon(line)

    def test_variante_huerfana(self):
        with pytest.raises(LexiconFormatError):
            load_lexicon("qul | say | V | free\n@variant kul = gul")

    def test_serializacion_estable(self, lexicon):
        text = serialize_lexicon(lexicon)
        assert load_lexicon(text) == lexicon


class TestLookup:

    @pytest.mark.parametrize("key, expected", [
        ("tiftaḥ", "tiftaḥ"),
        ("tiftah", "tiftaḥ"),
        ("wyn", "wayn"),
        ("la", "lā"),
        ("al-bab", "al-bāb"),
    ])
    def test_resuelve(self, lexicon, key, expected):
        assert lookup_item(lexicon, key).id == expected

    def test_desconocido(self, lexicon):
        with pytest.raises(UnknownItemError) as exc:
            lookup_item(lexicon, "xyz")
        assert exc.value.item_id == "xyz"

    def test_fold(self):
        assert fold("al-Kitāb") == "al-kitab"


class TestRepositorio:

    def test_guardar_y_cargar(self, tmp_path, lexicon):
        path = tmp_path / "copia.lexicon"
        LexiconRepository(path).save(lexicon)
        assert LexiconRepository(path).load() == lexicon
        assert LexiconRepository(path).lookup("wyn").id == "wayn"

    def test_archivo_inexistente(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            LexiconRepository(tmp_path / "no.lexicon").load()
