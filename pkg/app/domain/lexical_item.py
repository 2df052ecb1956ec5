"""
Entidad de dominio: Ítem léxico y léxico.
Forma fonológica, glosa, haz de rasgos y clase morfológica.
"""
from dataclasses import dataclass, field
from enum import Enum
from types import MappingProxyType
from typing import Dict, Iterator, Mapping, Optional, Tuple

from app.domain.feature import FeatureBundle


class MorphClass(str, Enum):
    """Clase morfológica de un ítem"""
    FREE = "free"
    SUFFIX = "suffix"
    PREFIX = "prefix"
    NULL = "null"


@dataclass(frozen=True)
class LexicalItem:
    """
    Entrada del léxico.

    Attributes:
        id: Identificador único (coincide con la forma si el ítem es audible)
        phon: Transliteración; vacía para núcleos nulos y pro
        gloss: Etiqueta de glosa (say, 1.SG, NEG)
        bundle: Haz de rasgos
        morph_class: free, suffix, prefix o null
    """
    id: str
    phon: str
    gloss: str
    bundle: FeatureBundle
    morph_class: MorphClass = MorphClass.FREE

    def __post_init__(self):
        """Validaciones después de la inicialización"""
        if not self.id or not self.id.strip():
            raise ValueError("El identificador del ítem no puede estar vacío")

        if (self.morph_class is MorphClass.NULL) != (self.phon == ""):
            raise ValueError(
                f"'{self.id}': la clase null exige forma vacía y viceversa"
            )

        if self.bundle.category is None:
            raise ValueError(f"'{self.id}' no tiene rasgo de categoría")

    @property
    def category(self) -> str:
        return self.bundle.category.attribute

    @property
    def is_null(self) -> bool:
        return self.morph_class is MorphClass.NULL

    @property
    def is_affix(self) -> bool:
        return self.morph_class in (MorphClass.SUFFIX, MorphClass.PREFIX)

    @property
    def display(self) -> str:
        """Texto para árboles: la forma, 'pro' o la etiqueta del núcleo nulo"""
        if not self.is_null:
            return self.phon
        if self.category == "D":
            return "pro"
        return self.category

    def __str__(self) -> str:
        return f"{self.id} [{self.bundle}]"

    def __repr__(self) -> str:
        return f"LexicalItem(id='{self.id}', clase={self.morph_class.value})"

    def to_dict(self) -> dict:
        """Convierte la entidad a diccionario"""
        return {
            "id": self.id,
            "phon": self.phon,
            "gloss": self.gloss,
            "features": str(self.bundle),
            "morph_class": self.morph_class.value,
            "category": self.category,
        }


@dataclass(frozen=True)
class Lexicon:
    """
    Léxico inmutable: identificador → ítem, más variantes ortográficas.

    Attributes:
        entries: Ítems indexados por identificador, en orden de archivo
        variants: Forma alternativa → identificador canónico (wyn → wayn)
    """
    entries: Mapping[str, LexicalItem] = field(default_factory=dict)
    variants: Mapping[str, str] = field(default_factory=dict)

    def __post_init__(self):
        """Validaciones después de la inicialización"""
        for key, item in self.entries.items():
            if key != item.id:
                raise ValueError(f"Clave '{key}' no coincide con el id '{item.id}'")
        for form, target in self.variants.items():
            if target not in self.entries:
                raise ValueError(f"La variante '{form}' apunta a un id inexistente '{target}'")

        object.__setattr__(self, "entries", MappingProxyType(dict(self.entries)))
        object.__setattr__(self, "variants", MappingProxyType(dict(self.variants)))

    def __hash__(self) -> int:
        return hash(tuple(self.entries))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Lexicon):
            return NotImplemented
        return dict(self.entries) == dict(other.entries) and dict(self.variants) == dict(other.variants)

    def __contains__(self, item_id: str) -> bool:
        return item_id in self.entries

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[LexicalItem]:
        return iter(self.entries.values())

    def get(self, item_id: str) -> Optional[LexicalItem]:
        return self.entries.get(item_id)

    def resolve(self, form: str) -> Optional[str]:
        """Identificador canónico de una forma (directa o variante)"""
        if form in self.entries:
            return form
        return self.variants.get(form)

    def order(self, item_id: str) -> int:
        """Posición del ítem en el archivo (orden canónico)"""
        return list(self.entries).index(item_id)

    @property
    def suffixes(self) -> Tuple[LexicalItem, ...]:
        return tuple(i for i in self if i.morph_class is MorphClass.SUFFIX)

    @property
    def null_items(self) -> Tuple[LexicalItem, ...]:
        return tuple(i for i in self if i.is_null)

    def pro_for(self, agreement: Dict[str, str]) -> Optional[LexicalItem]:
        """pro nulo cuyos rasgos phi coinciden exactamente con la concordancia dada"""
        if not agreement:
            return None
        for item in self.null_items:
            if item.category == "D" and item.bundle.interpretable_phi == agreement:
                return item
        return None


__all__ = [
    "MorphClass",
    "LexicalItem",
    "Lexicon",
]
