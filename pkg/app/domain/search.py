"""
Entidad de dominio: Límites de búsqueda y resultados de enumeración/análisis.
"""
from dataclasses import dataclass
from typing import Iterator, Optional, Tuple

from app.domain.derivation import DerivationTrace


@dataclass(frozen=True)
class SearchBounds:
    """
    Límites de la búsqueda exhaustiva.

    Attributes:
        max_steps: Longitud máxima de una derivación (Select incluidos)
        max_null_items: Núcleos nulos + pro admitidos en una numeración
        max_numerations: Hipótesis de numeración probadas por análisis
    """
    max_steps: int = 40
    max_null_items: int = 10
    max_numerations: int = 10000

    def __post_init__(self):
        for name in ("max_steps", "max_null_items", "max_numerations"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} debe ser positivo")

    @classmethod
    def default(cls) -> 'SearchBounds':
        """Límites leídos de la configuración"""
        from app.config.settings import SearchConfig
        return cls(
            max_steps=SearchConfig.MAX_STEPS,
            max_null_items=SearchConfig.MAX_NULL_ITEMS,
            max_numerations=SearchConfig.MAX_NUMERATIONS,
        )


@dataclass(frozen=True)
class EnumerationResult:
    """
    Trazas convergentes de una numeración, deduplicadas por forma.

    Attributes:
        traces: Trazas en orden determinista
        complete: False si algún límite cortó la búsqueda
        explored: Estados visitados
    """
    traces: Tuple[DerivationTrace, ...] = ()
    complete: bool = True
    explored: int = 0

    def __iter__(self) -> Iterator[DerivationTrace]:
        return iter(self.traces)

    def __len__(self) -> int:
        return len(self.traces)

    def __bool__(self) -> bool:
        return bool(self.traces)


@dataclass(frozen=True)
class ParseResult:
    """
    Análisis de una cadena.

    Attributes:
        surface: Cadena analizada
        traces: Trazas cuya materialización reproduce la cadena
        segmentations: Hipótesis de segmentación consideradas
        complete: False si algún límite cortó la búsqueda
    """
    surface: str
    traces: Tuple[DerivationTrace, ...] = ()
    segmentations: Tuple[Tuple[str, ...], ...] = ()
    complete: bool = True

    def __iter__(self) -> Iterator[DerivationTrace]:
        return iter(self.traces)

    def __len__(self) -> int:
        return len(self.traces)

    def __bool__(self) -> bool:
        return bool(self.traces)

    @property
    def first(self) -> Optional[DerivationTrace]:
        return self.traces[0] if self.traces else None


__all__ = [
    "SearchBounds",
    "EnumerationResult",
    "ParseResult",
]
