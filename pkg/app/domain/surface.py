"""
Entidad de dominio: Palabra morfológica, forma superficial y registro de glosa.
"""
from dataclasses import dataclass, field
from typing import Any, FrozenSet, Optional, Tuple

from app.domain.lexical_item import LexicalItem, MorphClass


@dataclass(frozen=True)
class MorphWord:
    """
    Palabra fonológica: raíz libre más afijos.

    Attributes:
        stem: Ítem libre que hace de raíz
        suffixes: Sufijos en orden
        prefixes: Prefijos en orden
        occurrences: Ocurrencias sintácticas que la componen
        merged: Ids de afijos unidos por M-Merger (palabra opaca)
    """
    stem: LexicalItem
    suffixes: Tuple[LexicalItem, ...] = ()
    prefixes: Tuple[LexicalItem, ...] = ()
    occurrences: Tuple[int, ...] = ()
    merged: FrozenSet[str] = frozenset()

    def __post_init__(self):
        """Validaciones después de la inicialización"""
        if self.stem.morph_class is not MorphClass.FREE:
            raise ValueError(f"La raíz '{self.stem.id}' debe ser libre")
        for affix in self.suffixes:
            if affix.morph_class is not MorphClass.SUFFIX:
                raise ValueError(f"'{affix.id}' no es un sufijo")
        for affix in self.prefixes:
            if affix.morph_class is not MorphClass.PREFIX:
                raise ValueError(f"'{affix.id}' no es un prefijo")

    @property
    def morphemes(self) -> Tuple[LexicalItem, ...]:
        return self.prefixes + (self.stem,) + self.suffixes

    @property
    def is_opaque(self) -> bool:
        """Tras M-Merger la palabra es un nodo atómico"""
        return bool(self.merged)

    @property
    def surface(self) -> str:
        return self.render()

    def render(self, fused: bool = False) -> str:
        """
        Forma escrita de la palabra.

        Args:
            fused: Quita el guion en las fronteras de M-Merger ("qulk")
        """
        parts = []
        for affix in self.prefixes:
            parts.append(affix.phon.rstrip("-") if fused and affix.id in self.merged else affix.phon)
        parts.append(self.stem.phon)
        for affix in self.suffixes:
            parts.append(affix.phon.lstrip("-") if fused and affix.id in self.merged else affix.phon)
        return "".join(parts)

    def __str__(self) -> str:
        return self.render()


@dataclass(frozen=True)
class SurfaceForm:
    """
    Cadena materializada de una derivación.

    Attributes:
        tokens: Palabras en orden lineal
        source: Traza de origen
    """
    tokens: Tuple[MorphWord, ...] = ()
    source: Optional[Any] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        for word in self.tokens:
            for morpheme in word.morphemes:
                if morpheme.is_null:
                    raise ValueError(f"Ítem nulo '{morpheme.id}' en la forma superficial")

    @property
    def segmentation(self) -> Tuple[Tuple[str, ...], ...]:
        """Ids de morfemas por token"""
        return tuple(tuple(m.id for m in word.morphemes) for word in self.tokens)

    def render(self, fused: bool = False) -> str:
        return " ".join(word.render(fused) for word in self.tokens)

    def word_containing(self, item_id: str) -> Optional[MorphWord]:
        for word in self.tokens:
            if any(m.id == item_id for m in word.morphemes):
                return word
        return None

    def __len__(self) -> int:
        return len(self.tokens)

    def __str__(self) -> str:
        return self.render()


@dataclass(frozen=True)
class GlossRecord:
    """Niveles alineados de morfemas y glosas, una columna por token"""
    morphemes: Tuple[str, ...] = ()
    glosses: Tuple[str, ...] = ()

    def __post_init__(self):
        if len(self.morphemes) != len(self.glosses):
            raise ValueError("Los niveles de morfemas y glosas no están alineados")

    @property
    def is_empty(self) -> bool:
        return not self.morphemes

    def render(self) -> str:
        """Dos líneas con columnas separadas por tabulador"""
        if self.is_empty:
            return ""
        return "\t".join(self.morphemes) + "\n" + "\t".join(self.glosses)

    def __str__(self) -> str:
        return self.render()


__all__ = [
    "MorphWord",
    "SurfaceForm",
    "GlossRecord",
]
