"""
Repositorio del léxico - Patrón Repository
Lee y escribe el formato de texto `id | glosa | rasgos | clase`.
"""
import logging
import re
from pathlib import Path
from typing import Dict, List, Optional, Union

from unidecode import unidecode

from app.domain.feature import FeatureBundle
from app.domain.lexical_item import LexicalItem, Lexicon, MorphClass
from app.exceptions.grammar_exceptions import (
    DuplicateEntryError,
    LexiconFormatError,
    MorphClassConflictError,
    UnknownItemError,
)

logger = logging.getLogger(__name__)

VARIANT_DIRECTIVE = "@variant"


def _strip_comment(raw: str) -> str:
    return raw.split("#", 1)[0].strip()


def _check_morph_class(item_id: str, morph_class: MorphClass, line_no: int) -> None:
    """La forma del id debe reflejar la clase morfológica"""
    if morph_class is MorphClass.SUFFIX:
        ok = item_id.startswith("-") and len(item_id) > 1
    elif morph_class is MorphClass.PREFIX:
        ok = item_id.endswith("-") and len(item_id) > 1
    else:
        ok = not item_id.startswith("-") and not item_id.endswith("-")
    if not ok:
        raise MorphClassConflictError(
            f"Línea {line_no}: '{item_id}' contradice la clase {morph_class.value}"
        )


def load_lexicon(source: str) -> Lexicon:
    """
    Construye un léxico validado desde texto.

    Args:
        source: Contenido en formato `id | glosa | rasgos | clase`,
            con comentarios '#' y directivas `@variant forma = id`

    Returns:
        Lexicon con una entrada por línea de datos

    Raises:
        LexiconFormatError: Línea mal formada (con número de línea)
        DuplicateEntryError: Identificador repetido
        MorphClassConflictError: Clase morfológica incoherente con el id
    """
    entries: Dict[str, LexicalItem] = {}
    variants: Dict[str, str] = {}
    variant_lines: Dict[str, int] = {}

    for line_no, raw in enumerate(source.splitlines(), start=1):
        line = _strip_comment(raw)
        if not line:
            continue

        if line.startswith(VARIANT_DIRECTIVE):
            body = line[len(VARIANT_DIRECTIVE):]
            if "=" not in body:
                raise LexiconFormatError(line_no, "una variante tiene la forma '@variant forma = id'")
            form, target = (p.strip() for p in body.split("=", 1))
            if not form or not target:
                raise LexiconFormatError(line_no, "variante incompleta")
            variants[form] = target
            variant_lines[form] = line_no
            continue

        parts = [p.strip() for p in line.split("|")]
        if len(parts) != 4:
            raise LexiconFormatError(
                line_no, f"se esperaban 4 campos separados por '|' y hay {len(parts)}"
            )
        item_id, gloss, features, morph = parts
        if not item_id:
            raise LexiconFormatError(line_no, "identificador vacío")

        try:
            morph_class = MorphClass(morph)
        except ValueError:
            raise LexiconFormatError(line_no, f"clase morfológica desconocida '{morph}'")

        _check_morph_class(item_id, morph_class, line_no)

        if item_id in entries:
            raise DuplicateEntryError(item_id, line_no)

        try:
            bundle = FeatureBundle.parse(features)
            item = LexicalItem(
                id=item_id,
                phon="" if morph_class is MorphClass.NULL else item_id,
                gloss=gloss,
                bundle=bundle,
                morph_class=morph_class,
            )
        except ValueError as e:
            raise LexiconFormatError(line_no, str(e))

        entries[item_id] = item

    for form, target in variants.items():
        if target not in entries:
            raise LexiconFormatError(variant_lines[form], f"la variante '{form}' apunta a '{target}', que no existe")

    logger.debug(f"Léxico cargado: {len(entries)} entradas, {len(variants)} variantes")
    return Lexicon(entries, variants)


def serialize_lexicon(lexicon: Lexicon) -> str:
    """Texto en el mismo formato que acepta load_lexicon"""
    lines = [
        f"{item.id} | {item.gloss} | {item.bundle} | {item.morph_class.value}"
        for item in lexicon
    ]
    lines.extend(f"{VARIANT_DIRECTIVE} {form} = {target}" for form, target in lexicon.variants.items())
    return "\n".join(lines) + "\n"


def fold(text: str) -> str:
    """Forma ASCII sin diacríticos para búsquedas tolerantes"""
    return re.sub(r"[^a-z0-9-]", "", unidecode(text).lower())


def lookup_item(lexicon: Lexicon, key: str) -> LexicalItem:
    """
    Busca un ítem por id, por variante o, en último caso, ignorando diacríticos.

    Args:
        lexicon: Léxico
        key: Texto escrito por el usuario ("tiftah", "al-bab", "wyn")

    Returns:
        LexicalItem

    Raises:
        UnknownItemError: Si no hay coincidencia o es ambigua
    """
    canonical = lexicon.resolve(key)
    if canonical is not None:
        return lexicon.get(canonical)

    folded = fold(key)
    matches: List[LexicalItem] = [item for item in lexicon if fold(item.id) == folded]
    if len(matches) == 1:
        logger.debug(f"'{key}' resuelto como '{matches[0].id}' sin diacríticos")
        return matches[0]

    raise UnknownItemError(key)


class LexiconRepository:
    """
    Repositorio de léxicos en archivo.

    Args:
        path: Ruta del archivo de léxico
    """

    def __init__(self, path: Union[str, Path]):
        self.path = Path(path)
        self._cache: Optional[Lexicon] = None

    def load(self) -> Lexicon:
        """Carga (una vez) y devuelve el léxico"""
        if self._cache is None:
            try:
                self._cache = load_lexicon(self.path.read_text(encoding="utf-8"))
                logger.info(f"✅ Léxico cargado desde {self.path} ({len(self._cache)} entradas)")
            except Exception as e:
                logger.error(f"❌ Error al cargar léxico {self.path}: {e}")
                raise
        return self._cache

    def save(self, lexicon: Lexicon) -> None:
        self.path.write_text(serialize_lexicon(lexicon), encoding="utf-8")
        self._cache = lexicon
        logger.info(f"Léxico guardado en {self.path}")

    def lookup(self, key: str) -> LexicalItem:
        return lookup_item(self.load(), key)


__all__ = [
    "load_lexicon",
    "serialize_lexicon",
    "fold",
    "lookup_item",
    "LexiconRepository",
]
