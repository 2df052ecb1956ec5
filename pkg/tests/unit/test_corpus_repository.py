"""
Pruebas del corpus glosado: lectura, validación y escritura.
"""
import pytest

from app.domain.corpus import CorpusRecord, StructuralAssertion
from app.exceptions.corpus_exceptions import AssertionSyntaxError, CorpusFormatError
from app.infrastructure.corpus_repository import CorpusRepository, dump_corpus, load_corpus

RECORD = """\
id: x1
surface: qul-k ʕali jāʔ
morphemes: qul-k | ʕali | jāʔ
gloss: say-1.SG | Ali | come.PST.3.MS
translation: I said that Ali came
clause_type: decl-affirm
slots: subject=ʕali verb=jāʔ
assert: fused(qul, -k, qul-k)
"""


class TestLoadCorpus:

    def test_registro_minimo(self):
        [record] = load_corpus(RECORD)
        assert record.id == "x1"
        assert record.morphemes == ("qul-k", "ʕali", "jāʔ")
        assert record.fillers == {"subject": "ʕali", "verb": "jāʔ"}
        assert record.assertions == (StructuralAssertion("fused", ("qul", "-k", "qul-k")),)

    def test_vacio(self):
        assert load_corpus("") == []
        assert load_corpus("# solo comentarios\n\n") == []

    def test_columnas_desalineadas(self):
        text = RECORD.replace("gloss: say-1.SG | Ali | come.PST.3.MS", "gloss: say-1.SG | Ali")
        with pytest.raises(CorpusFormatError) as exc:
            load_corpus(text)
        assert exc.value.record_id == "x1"
        assert exc.value.column == 3

    def test_segmentos_desalineados(self):
        text = RECORD.replace("say-1.SG", "say")
        with pytest.raises(CorpusFormatError) as exc:
            load_corpus(text)
        assert exc.value.column == 1

    def test_superficie_distinta(self):
        with pytest.raises(CorpusFormatError, match="superficie"):
            load_corpus(RECORD.replace("surface: qul-k ʕali jāʔ", "surface: qulk ʕali jāʔ"))

    @pytest.mark.parametrize("text, message", [
        (RECORD + "color: azul\n", "desconocida"),
        (RECORD + "translation: otra\n", "repetida"),
        (RECORD.replace("clause_type: decl-affirm\n", ""), "clause_type"),
        (RECORD + "\n" + RECORD, "repetidos"),
        (RECORD.replace("slots: subject=ʕali verb=jāʔ", "slots: ʕali"), "nombre=id"),
        (RECORD + "sin dos puntos\n", "clave: valor"),
    ])
    def test_formato_invalido(self, text, message):
        with pytest.raises(CorpusFormatError, match=message):
            load_corpus(text)

    @pytest.mark.parametrize("assertion", [
        "occupies(ʕali)",
        "precedes(qul, ʕali)",
        "silent pro-3MS",
    ])
    def test_asercion_ilegible(self, assertion):
        with pytest.raises(AssertionSyntaxError):
            load_corpus(RECORD + f"assert: {assertion}\n")

    def test_registro_directo_desalineado(self):
        with pytest.raises(ValueError, match="columna"):
            CorpusRecord("x", "a b", ("a", "b"), ("A",), "", "decl-affirm")


class TestCorpusDistribuido:

    def test_diez_registros(self, records):
        assert [r.id for r in records] == [
            "4a", "4b", "neg-decl", "9", "11a", "11b", "14a", "14b", "16", "15",
        ]

    def test_notas_repetibles(self, corpus_by_id):
        assert len(corpus_by_id["neg-decl"].notes) == 3
        assert len(corpus_by_id["neg-decl"].assertions) == 5

    def test_ida_y_vuelta(self, records):
        assert load_corpus(dump_corpus(records)) == records

    def test_guardar_y_cargar(self, tmp_path, records):
        repo = CorpusRepository(tmp_path / "corpus.txt")
        repo.save(records[:2])
        assert repo.load() == records[:2]

    def test_archivo_inexistente(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            CorpusRepository(tmp_path / "nada.txt").load()
