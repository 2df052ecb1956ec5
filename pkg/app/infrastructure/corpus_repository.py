"""
Repositorio del corpus glosado - Patrón Repository
Registros `clave: valor` separados por líneas en blanco.
"""
import logging
from pathlib import Path
from typing import Dict, List, Union

from app.domain.corpus import CorpusRecord, StructuralAssertion, alignment_problem
from app.exceptions.corpus_exceptions import AssertionSyntaxError, CorpusFormatError

logger = logging.getLogger(__name__)

REQUIRED_KEYS = ("id", "surface", "morphemes", "gloss", "translation", "clause_type")
REPEATABLE_KEYS = ("assert", "note")
KNOWN_KEYS = REQUIRED_KEYS + ("slots",) + REPEATABLE_KEYS

TIER_SEPARATOR = "|"


def _split_tier(value: str) -> tuple:
    if not value.strip():
        return ()
    return tuple(col.strip() for col in value.split(TIER_SEPARATOR))


def _parse_slots(value: str, record_id: str) -> tuple:
    slots = []
    for pair in value.split():
        if "=" not in pair:
            raise CorpusFormatError(f"relleno ilegible '{pair}' (se espera nombre=id)", record_id)
        name, item_id = pair.split("=", 1)
        slots.append((name, item_id))
    return tuple(slots)


def _build_record(fields: Dict[str, List[str]], first_line: int) -> CorpusRecord:
    record_id = fields.get("id", [None])[0]
    for key in REQUIRED_KEYS:
        if key not in fields:
            raise CorpusFormatError(
                f"falta la clave '{key}' (registro en la línea {first_line})", record_id
            )

    morphemes = _split_tier(fields["morphemes"][0])
    gloss = _split_tier(fields["gloss"][0])
    surface = fields["surface"][0]

    problem = alignment_problem(surface, morphemes, gloss)
    if problem is not None:
        column, message = problem
        raise CorpusFormatError(message, record_id, column)

    assertions = []
    for text in fields.get("assert", []):
        try:
            assertions.append(StructuralAssertion.parse(text))
        except ValueError as e:
            raise AssertionSyntaxError(f"Registro '{record_id}': {e}")

    return CorpusRecord(
        id=record_id,
        surface=surface,
        morphemes=morphemes,
        gloss=gloss,
        translation=fields["translation"][0],
        clause_type=fields["clause_type"][0],
        slots=_parse_slots(fields.get("slots", [""])[0], record_id),
        assertions=tuple(assertions),
        notes=tuple(fields.get("note", [])),
    )


def load_corpus(source: str) -> List[CorpusRecord]:
    """
    Lee un corpus completo.

    Args:
        source: Texto del corpus; las líneas que empiezan con '#' son comentarios

    Returns:
        Lista de registros validados, en orden de archivo

    Raises:
        CorpusFormatError: Clave desconocida, repetida o niveles desalineados
        AssertionSyntaxError: Aserción ilegible
    """
    records: List[CorpusRecord] = []
    fields: Dict[str, List[str]] = {}
    first_line = 0

    def flush():
        if fields:
            records.append(_build_record(fields, first_line))
            fields.clear()

    for line_no, raw in enumerate(source.splitlines(), start=1):
        line = raw.strip()
        if line.startswith("#"):
            continue
        if not line:
            flush()
            continue
        if ":" not in line:
            raise CorpusFormatError(f"línea {line_no} sin 'clave: valor'", fields.get("id", [None])[0])

        key, value = line.split(":", 1)
        key, value = key.strip(), value.strip()
        if key not in KNOWN_KEYS:
            raise CorpusFormatError(f"clave desconocida '{key}' (línea {line_no})", fields.get("id", [None])[0])
        if key in fields and key not in REPEATABLE_KEYS:
            raise CorpusFormatError(f"clave '{key}' repetida (línea {line_no})", fields.get("id", [None])[0])
        if not fields:
            first_line = line_no
        fields.setdefault(key, []).append(value)

    flush()

    ids = [r.id for r in records]
    duplicated = {i for i in ids if ids.count(i) > 1}
    if duplicated:
        raise CorpusFormatError(f"identificadores repetidos: {', '.join(sorted(duplicated))}")

    logger.debug(f"Corpus leído: {len(records)} registros")
    return records


def dump_corpus(records: List[CorpusRecord]) -> str:
    """Texto que load_corpus vuelve a leer sin pérdidas"""
    blocks = []
    for r in records:
        lines = [
            f"id: {r.id}",
            f"surface: {r.surface}",
            f"morphemes: {f' {TIER_SEPARATOR} '.join(r.morphemes)}",
            f"gloss: {f' {TIER_SEPARATOR} '.join(r.gloss)}",
            f"translation: {r.translation}",
            f"clause_type: {r.clause_type}",
        ]
        if r.slots:
            lines.append("slots: " + " ".join(f"{name}={item}" for name, item in r.slots))
        lines.extend(f"assert: {a}" for a in r.assertions)
        lines.extend(f"note: {n}" for n in r.notes)
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks) + ("\n" if blocks else "")


class CorpusRepository:
    """
    Repositorio del corpus en archivo.

    Args:
        path: Ruta del archivo de corpus
    """

    def __init__(self, path: Union[str, Path]):
        self.path = Path(path)

    def load(self) -> List[CorpusRecord]:
        try:
            records = load_corpus(self.path.read_text(encoding="utf-8"))
        except Exception as e:
            logger.error(f"❌ Error al leer corpus {self.path}: {e}")
            raise
        logger.info(f"✅ Corpus cargado: {len(records)} registros desde {self.path.name}")
        return records

    def save(self, records: List[CorpusRecord]) -> None:
        self.path.write_text(dump_corpus(records), encoding="utf-8")
        logger.info(f"Corpus guardado en {self.path} ({len(records)} registros)")


__all__ = [
    "load_corpus",
    "dump_corpus",
    "CorpusRepository",
]
