"""
Entidad de dominio: Rasgo y haz de rasgos.
Son los átomos cotejables que dirigen Merge, Move y Agree.
"""
from dataclasses import dataclass, replace
from enum import Enum
from typing import Dict, Iterator, Optional, Tuple


class FeatureKind(str, Enum):
    """Clases de rasgo"""
    CATEGORY = "category"
    SELECTOR = "selector"
    LICENSOR = "licensor"
    LICENSEE = "licensee"
    PHI = "phi"
    CLAUSE_TYPE = "clause-type"


CATEGORY_LABELS = ("V", "v", "T", "Neg", "NegCl", "Top", "Force", "D", "P", "Adv", "A")
MOVEMENT_TRIGGERS = ("wh", "epp", "top", "hm")
HEAD_MOVEMENT = "hm"
PHI_ATTRIBUTES = ("person", "number", "gender")
POLARITY = "polarity"
# Concordancia negativa: el valor no interpretable de -š es meta de la sonda de Neg
CONCORD_ATTRIBUTES = (POLARITY,)
AGREEMENT_ATTRIBUTES = PHI_ATTRIBUTES + CONCORD_ATTRIBUTES
AGREEMENT_VALUES = {
    "person": ("1", "2", "3"),
    "number": ("sg", "pl"),
    "gender": ("m", "f"),
    POLARITY: ("neg",),
}
CLAUSE_TYPES = ("declarative", "interrogative", "imperative")

# Rasgos que participan en el orden de cotejo (selectores < categoría < licenciados)
ORDERED_KINDS = (
    FeatureKind.SELECTOR,
    FeatureKind.LICENSOR,
    FeatureKind.CATEGORY,
    FeatureKind.LICENSEE,
)


@dataclass(frozen=True)
class Feature:
    """
    Rasgo formal de un ítem léxico.

    Attributes:
        kind: Clase del rasgo
        attribute: Etiqueta de categoría, disparador de movimiento,
            atributo phi o tipo de cláusula
        value: Valor (solo rasgos phi)
        interpretable: Si el rasgo se interpreta en LF
        valued: Falso solo para sondas phi sin valor
        optional: El rasgo puede omitirse sin hacer colapsar la derivación
    """
    kind: FeatureKind
    attribute: str
    value: Optional[str] = None
    interpretable: bool = True
    valued: bool = True
    optional: bool = False

    def __post_init__(self):
        """Validaciones después de la inicialización"""
        if self.kind is not FeatureKind.PHI and not self.valued:
            raise ValueError(f"Un rasgo {self.kind.value} siempre tiene valor")

        if self.kind in (FeatureKind.CATEGORY, FeatureKind.SELECTOR):
            for label in self.alternatives:
                if label not in CATEGORY_LABELS:
                    raise ValueError(f"Categoría desconocida: '{label}'")
            if self.kind is FeatureKind.CATEGORY and len(self.alternatives) != 1:
                raise ValueError("Un rasgo de categoría no admite alternativas")
        elif self.kind in (FeatureKind.LICENSOR, FeatureKind.LICENSEE):
            if self.attribute not in MOVEMENT_TRIGGERS:
                raise ValueError(f"Disparador de movimiento desconocido: '{self.attribute}'")
        elif self.kind is FeatureKind.PHI:
            if self.attribute not in AGREEMENT_ATTRIBUTES:
                raise ValueError(f"Atributo phi desconocido: '{self.attribute}'")
            if self.valued and self.value not in AGREEMENT_VALUES[self.attribute]:
                raise ValueError(f"Valor '{self.value}' inválido para {self.attribute}")
            if not self.valued and self.value is not None:
                raise ValueError("Una sonda sin valor no puede llevar valor")
            if not self.valued and self.interpretable:
                raise ValueError("Una sonda phi es siempre no interpretable")
            if self.attribute in CONCORD_ATTRIBUTES and self.interpretable:
                raise ValueError(f"'{self.attribute}' solo existe como rasgo no interpretable")
        elif self.kind is FeatureKind.CLAUSE_TYPE:
            for clause_type in self.alternatives:
                if clause_type not in CLAUSE_TYPES:
                    raise ValueError(f"Tipo de cláusula desconocido: '{clause_type}'")
            if self.interpretable and len(self.alternatives) != 1:
                raise ValueError("Un núcleo tipifica la cláusula con un solo valor")

        if self.optional and self.kind not in (
            FeatureKind.SELECTOR, FeatureKind.LICENSOR, FeatureKind.LICENSEE
        ):
            raise ValueError(f"Un rasgo {self.kind.value} no puede ser opcional")

    @property
    def alternatives(self) -> Tuple[str, ...]:
        """Valores de un rasgo disyuntivo (=Top/Force, uclause:declarative/interrogative)"""
        return tuple(self.attribute.split("/"))

    @property
    def is_ordered(self) -> bool:
        return self.kind in ORDERED_KINDS

    @property
    def is_probe(self) -> bool:
        return self.kind is FeatureKind.PHI and not self.valued

    @property
    def is_agreement(self) -> bool:
        """Rasgo no interpretable con valor (concordancia del verbo, tipo de cláusula)"""
        return (
            self.kind in (FeatureKind.PHI, FeatureKind.CLAUSE_TYPE)
            and self.valued
            and not self.interpretable
        )

    def with_value(self, value: str) -> 'Feature':
        """Devuelve la sonda valuada"""
        return replace(self, value=value, valued=True)

    @classmethod
    def parse(cls, token: str) -> 'Feature':
        """
        Construye un rasgo desde su notación textual.

        Args:
            token: Notación (=T, =Top/Force, +wh, -epp?, V, person:3, uperson,
                uperson:1, upolarity:neg, clause:declarative,
                uclause:declarative/interrogative)

        Returns:
            Feature

        Raises:
            ValueError: Si la notación no corresponde a ningún rasgo
        """
        token = token.strip()
        if not token:
            raise ValueError("Rasgo vacío")

        optional = token.endswith("?")
        body = token[:-1] if optional else token

        if body.startswith("="):
            return cls(FeatureKind.SELECTOR, body[1:], interpretable=False, optional=optional)
        if body.startswith("+"):
            return cls(FeatureKind.LICENSOR, body[1:], interpretable=False, optional=optional)
        if body.startswith("-"):
            return cls(FeatureKind.LICENSEE, body[1:], interpretable=False, optional=optional)

        if optional:
            raise ValueError(f"Solo selectores y licenciadores admiten '?': '{token}'")

        if ":" in body:
            name, value = body.split(":", 1)
            uninterpretable = name.startswith("u") and name[1:] in AGREEMENT_ATTRIBUTES + ("clause",)
            base = name[1:] if uninterpretable else name
            if base == "clause":
                return cls(FeatureKind.CLAUSE_TYPE, value, interpretable=not uninterpretable)
            if base in AGREEMENT_ATTRIBUTES:
                return cls(FeatureKind.PHI, base, value=value, interpretable=not uninterpretable)
            raise ValueError(f"Atributo desconocido: '{name}'")

        if body.startswith("u") and body[1:] in AGREEMENT_ATTRIBUTES:
            return cls(FeatureKind.PHI, body[1:], interpretable=False, valued=False)

        if body in CATEGORY_LABELS:
            return cls(FeatureKind.CATEGORY, body)

        raise ValueError(f"Rasgo desconocido: '{token}'")

    def __str__(self) -> str:
        mark = "?" if self.optional else ""
        if self.kind is FeatureKind.SELECTOR:
            return f"={self.attribute}{mark}"
        if self.kind is FeatureKind.LICENSOR:
            return f"+{self.attribute}{mark}"
        if self.kind is FeatureKind.LICENSEE:
            return f"-{self.attribute}{mark}"
        if self.kind is FeatureKind.CATEGORY:
            return self.attribute
        prefix = "" if self.interpretable else "u"
        if self.kind is FeatureKind.CLAUSE_TYPE:
            return f"{prefix}clause:{self.attribute}"
        if self.valued:
            return f"{prefix}{self.attribute}:{self.value}"
        return f"{prefix}{self.attribute}"


@dataclass(frozen=True)
class FeatureBundle:
    """
    Haz ordenado de rasgos de un ítem léxico.

    Los selectores y licenciadores preceden a la categoría y se cotejan
    de izquierda a derecha; los licenciados la siguen.
    """
    features: Tuple[Feature, ...] = ()

    def __post_init__(self):
        """Validaciones después de la inicialización"""
        object.__setattr__(self, "features", tuple(self.features))

        categories = [i for i, f in enumerate(self.features) if f.kind is FeatureKind.CATEGORY]
        if len(categories) > 1:
            raise ValueError("Un haz admite como máximo un rasgo de categoría")

        if categories:
            cat = categories[0]
            for i, f in enumerate(self.features):
                if f.kind in (FeatureKind.SELECTOR, FeatureKind.LICENSOR) and i > cat:
                    raise ValueError(f"'{f}' debe preceder a la categoría")
                if f.kind is FeatureKind.LICENSEE and i < cat:
                    raise ValueError(f"'{f}' debe seguir a la categoría")

    @classmethod
    def parse(cls, text: str) -> 'FeatureBundle':
        """Construye un haz desde tokens separados por espacios"""
        return cls(tuple(Feature.parse(t) for t in text.split()))

    # ------------------------------------------------------------------
    # Consultas
    # ------------------------------------------------------------------

    @property
    def category(self) -> Optional[Feature]:
        for f in self.features:
            if f.kind is FeatureKind.CATEGORY:
                return f
        return None

    @property
    def category_index(self) -> Optional[int]:
        for i, f in enumerate(self.features):
            if f.kind is FeatureKind.CATEGORY:
                return i
        return None

    @property
    def phi(self) -> Tuple[Feature, ...]:
        return tuple(f for f in self.features if f.kind is FeatureKind.PHI)

    @property
    def interpretable_phi(self) -> Dict[str, str]:
        """Rasgos phi interpretables con valor (lo que una meta ofrece)"""
        return {f.attribute: f.value for f in self.phi if f.interpretable and f.valued}

    @property
    def agreement(self) -> Dict[str, str]:
        """Concordancia no interpretable con valor (flexión del verbo)"""
        return {
            f.attribute: f.value for f in self.phi
            if not f.interpretable and f.valued and f.attribute in PHI_ATTRIBUTES
        }

    @property
    def concord(self) -> Dict[str, str]:
        """Rasgos de concordancia negativa (upolarity:neg)"""
        return {
            f.attribute: f.value for f in self.phi
            if f.valued and f.attribute in CONCORD_ATTRIBUTES
        }

    @property
    def offered(self) -> Dict[str, str]:
        """Lo que el núcleo puede valuar como meta de Agree"""
        return {**self.interpretable_phi, **self.concord}

    @property
    def probes(self) -> Tuple[Feature, ...]:
        return tuple(f for f in self.phi if f.is_probe)

    @property
    def clause_types(self) -> Tuple[str, ...]:
        """Tipos de cláusula interpretables que porta el núcleo"""
        return tuple(
            f.attribute for f in self.features
            if f.kind is FeatureKind.CLAUSE_TYPE and f.interpretable
        )

    @property
    def selectors(self) -> Tuple[Feature, ...]:
        return tuple(f for f in self.features if f.kind is FeatureKind.SELECTOR)

    @property
    def licensors(self) -> Tuple[Feature, ...]:
        return tuple(f for f in self.features if f.kind is FeatureKind.LICENSOR)

    @property
    def licensees(self) -> Tuple[Feature, ...]:
        return tuple(f for f in self.features if f.kind is FeatureKind.LICENSEE)

    def with_values(self, values: Dict[str, str]) -> 'FeatureBundle':
        """Haz con las sondas indicadas ya valuadas"""
        return FeatureBundle(tuple(
            f.with_value(values[f.attribute]) if f.is_probe and f.attribute in values else f
            for f in self.features
        ))

    def __iter__(self) -> Iterator[Feature]:
        return iter(self.features)

    def __len__(self) -> int:
        return len(self.features)

    def __str__(self) -> str:
        return " ".join(str(f) for f in self.features)


__all__ = [
    "FeatureKind",
    "Feature",
    "FeatureBundle",
    "CATEGORY_LABELS",
    "MOVEMENT_TRIGGERS",
    "HEAD_MOVEMENT",
    "PHI_ATTRIBUTES",
    "POLARITY",
    "CONCORD_ATTRIBUTES",
    "AGREEMENT_ATTRIBUTES",
    "AGREEMENT_VALUES",
    "CLAUSE_TYPES",
    "ORDERED_KINDS",
]
