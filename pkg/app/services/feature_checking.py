"""
Relaciones primitivas de cotejo: selección categorial y emparejamiento
sonda-meta para Agree.
"""
import logging
from typing import Dict, Iterable, Optional

from app.domain.feature import Feature, FeatureBundle, FeatureKind
from app.exceptions.grammar_exceptions import FeatureKindError, ProbeMisuseError

logger = logging.getLogger(__name__)


def can_select(selector: Feature, candidate: FeatureBundle) -> bool:
    """
    Indica si el selector acepta la categoría del candidato.

    Args:
        selector: Rasgo selector (=T, =Top/Force)
        candidate: Haz del núcleo que proyecta el candidato

    Returns:
        True si la categoría del candidato está entre las alternativas

    Raises:
        FeatureKindError: Si el rasgo no es un selector
    """
    if selector.kind is not FeatureKind.SELECTOR:
        raise FeatureKindError(f"'{selector}' no es un selector")
    category = candidate.category
    return category is not None and category.attribute in selector.alternatives


def match_probe(probe: FeatureBundle, goal: FeatureBundle,
                defaultable: Iterable[str] = ()) -> Optional[Dict[str, str]]:
    """
    Empareja las sondas sin valor con lo que ofrece la meta: sus rasgos phi
    interpretables y su concordancia negativa.

    Args:
        probe: Haz de la sonda (con los valores ya recibidos aplicados)
        goal: Haz de la meta
        defaultable: Atributos que pueden quedar sin valor en la meta
            (se valúan por defecto en Agree)

    Returns:
        Asignaciones atributo → valor tomadas de la meta, o None si la
        meta no valúa alguna sonda no defectible

    Raises:
        ProbeMisuseError: Si la sonda no tiene rasgos phi sin valor
    """
    probes = probe.probes
    if not probes:
        raise ProbeMisuseError(f"El haz [{probe}] no tiene rasgos phi sin valor")

    offered = goal.offered
    if not offered:
        return None

    assignments: Dict[str, str] = {}
    for feature in probes:
        if feature.attribute in offered:
            assignments[feature.attribute] = offered[feature.attribute]
        elif feature.attribute not in defaultable:
            return None

    return assignments


__all__ = [
    "can_select",
    "match_probe",
]
