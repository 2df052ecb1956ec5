"""
Interfaz fonológica (PF): linealización, M-Merger, cliticización de -š,
supresión de elementos nulos y emisión de glosas interlineales.
"""
import logging
import re
from typing import List, Optional, Sequence, Union

from app.config.settings import GlossConfig
from app.domain.derivation import DerivationTrace
from app.domain.lexical_item import MorphClass
from app.domain.surface import GlossRecord, MorphWord, SurfaceForm
from app.domain.syntactic_object import Leaf, SyntacticObject, iter_leaves
from app.exceptions.derivation_exceptions import (
    AdjacencyError,
    GlossError,
    HostingError,
    OpacityError,
    PFError,
    SpellOutError,
)

logger = logging.getLogger(__name__)

# Unidad de trabajo en PF: palabra ya formada o afijo aún sin anfitrión
Unit = Union[MorphWord, Leaf]

NEGATIVE_CLITIC = "NegCl"
VERBAL = "V"

_LEIPZIG_RE = re.compile(r"(\d)\.(SG|PL|MS|FS|MP|FP)")


def linearize(so: SyntacticObject) -> List[Leaf]:
    """
    Orden lineal de las hojas pronunciadas.

    Especificador < núcleo < complemento en cada nodo; las copias silenciosas
    y los ítems nulos no se pronuncian, y un amalgama suena entero en su
    posición más alta.

    Raises:
        SpellOutError: Si una ocurrencia tiene más de una copia pronunciada
    """
    order: List[Leaf] = []
    seen = set()
    for leaf, silenced in iter_leaves(so):
        if silenced:
            continue
        if leaf.occurrence in seen:
            raise SpellOutError(f"La ocurrencia {leaf} tiene varias copias pronunciadas")
        seen.add(leaf.occurrence)
        if not leaf.item.is_null:
            order.append(leaf)
    return order


def _as_units(leaves: Sequence[Leaf]) -> List[Unit]:
    units: List[Unit] = []
    for leaf in leaves:
        if leaf.item.morph_class is MorphClass.FREE:
            units.append(MorphWord(stem=leaf.item, occurrences=(leaf.occurrence,)))
        else:
            units.append(leaf)
    return units


def _attach(word: MorphWord, affix: Leaf, merged: bool) -> MorphWord:
    if affix.item.morph_class is MorphClass.SUFFIX:
        suffixes, prefixes = word.suffixes + (affix.item,), word.prefixes
    else:
        suffixes, prefixes = word.suffixes, (affix.item,) + word.prefixes
    return MorphWord(
        stem=word.stem,
        suffixes=suffixes,
        prefixes=prefixes,
        occurrences=tuple(sorted(word.occurrences + (affix.occurrence,))),
        merged=word.merged | ({affix.item.id} if merged else frozenset()),
    )


def m_merger(units: Sequence[Unit], i: int, j: int) -> MorphWord:
    """
    Fusiona dos unidades adyacentes en una palabra opaca.

    El orden interno lo fija la morfología: un sufijo sigue a la raíz
    aunque la preceda en la sintaxis (-k en Spec,TP y qul en T → qul-k).

    Args:
        units: Cadena de unidades de PF
        i: Posición de la primera unidad
        j: Posición de la segunda unidad

    Raises:
        AdjacencyError: Si las unidades no son adyacentes
        HostingError: Si ninguna es afijo, ambas lo son o la raíz no es verbal
        OpacityError: Si la palabra anfitriona ya fue fusionada
    """
    if j != i + 1:
        raise AdjacencyError(f"Las posiciones {i} y {j} no son adyacentes")
    first, second = units[i], units[j]
    affixes = [u for u in (first, second) if isinstance(u, Leaf)]
    if len(affixes) != 1:
        names = ", ".join(str(u) for u in (first, second))
        raise HostingError(f"M-Merger exige exactamente un afijo y una raíz: {names}")
    affix = affixes[0]
    host = second if affix is first else first
    if host.stem.category != VERBAL:
        raise HostingError(f"'{host}' no es un anfitrión verbal para '{affix.item.id}'")
    if host.is_opaque:
        raise OpacityError(f"'{host}' es una palabra opaca tras M-Merger")
    return _attach(host, affix, merged=True)


def cliticize(units: Sequence[Unit], negcl: int, host: int) -> MorphWord:
    """
    Adjunta el clítico negativo al verbo que lo precede inmediatamente.

    Raises:
        AdjacencyError: Si el anfitrión no precede inmediatamente al clítico
        HostingError: Si el anfitrión no es verbal o el clítico no es NegCl
        OpacityError: Si el anfitrión es una palabra fusionada
    """
    clitic = units[negcl]
    if not isinstance(clitic, Leaf) or clitic.item.category != NEGATIVE_CLITIC:
        raise HostingError(f"'{clitic}' no es un clítico negativo")
    if host != negcl - 1 or host < 0:
        raise AdjacencyError(f"'{clitic.item.id}' no sigue inmediatamente a un verbo")
    word = units[host]
    if not isinstance(word, MorphWord) or word.stem.category != VERBAL:
        raise HostingError(f"'{word}' no es un anfitrión verbal para '{clitic.item.id}'")
    if word.is_opaque:
        raise OpacityError(f"'{word}' es una palabra opaca tras M-Merger")
    return _attach(word, clitic, merged=False)


def _host_affix(units: List[Unit], i: int) -> List[Unit]:
    affix = units[i]
    if affix.item.category == NEGATIVE_CLITIC:
        word = cliticize(units, i, i - 1)
        return units[:i - 1] + [word] + units[i + 1:]

    following = units[i + 1] if i + 1 < len(units) else None
    if isinstance(following, MorphWord) and not following.is_opaque:
        word = m_merger(units, i, i + 1)
        return units[:i] + [word] + units[i + 2:]
    if affix.item.morph_class is MorphClass.SUFFIX and i > 0:
        word = m_merger(units, i - 1, i)
        return units[:i - 1] + [word] + units[i + 1:]
    raise HostingError(f"'{affix.item.id}' no tiene anfitrión adyacente")


def spell_out(trace: DerivationTrace) -> SurfaceForm:
    """
    Materializa una traza convergente.

    Linealiza, aplica M-Merger y cliticización de izquierda a derecha hasta
    que no quedan afijos libres y descarta los nulos.

    Raises:
        SpellOutError: Traza no convergente o afijo sin anfitrión
    """
    if not trace.converged or trace.result is None:
        raise SpellOutError(f"Solo se materializan derivaciones convergentes ({trace.verdict})")

    units = _as_units(linearize(trace.result))
    while True:
        position = next((i for i, u in enumerate(units) if isinstance(u, Leaf)), None)
        if position is None:
            break
        try:
            units = _host_affix(units, position)
        except PFError as e:
            raise SpellOutError(f"Afijo sin anfitrión: {e}")

    return SurfaceForm(tuple(units), source=trace)


def normalize_gloss(gloss: str) -> str:
    """Estilo Leipzig: 1.SG → 1SG, 3.MS → 3MS"""
    return _LEIPZIG_RE.sub(r"\1\2", gloss)


def emit_gloss(form: SurfaceForm, leipzig: Optional[bool] = None) -> GlossRecord:
    """
    Niveles alineados de morfemas y glosas, una columna por palabra.

    Args:
        form: Forma superficial
        leipzig: Normaliza las abreviaturas (por omisión, GlossConfig.LEIPZIG)

    Raises:
        GlossError: Si algún morfema no tiene glosa
    """
    leipzig = GlossConfig.LEIPZIG if leipzig is None else leipzig
    morphemes, glosses = [], []
    for word in form.tokens:
        parts = []
        for morpheme in word.morphemes:
            if not morpheme.gloss:
                raise GlossError(f"'{morpheme.id}' no tiene glosa en el léxico")
            parts.append(morpheme.gloss)
        gloss = "-".join(parts)
        morphemes.append(word.render())
        glosses.append(normalize_gloss(gloss) if leipzig else gloss)
    return GlossRecord(tuple(morphemes), tuple(glosses))


__all__ = [
    "Unit",
    "linearize",
    "m_merger",
    "cliticize",
    "spell_out",
    "normalize_gloss",
    "emit_gloss",
]
