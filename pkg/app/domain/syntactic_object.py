"""
Entidad de dominio: Objeto sintáctico.
Árbol binario etiquetado con copias de movimiento silenciadas.

Las rutas son tuplas de 0 (hijo izquierdo) y 1 (hijo derecho). Una hoja
o un nodo con silent=True silencia todo su subárbol.
"""
from dataclasses import dataclass, replace
from typing import Callable, Dict, FrozenSet, Iterator, List, Optional, Tuple, Union

from app.domain.lexical_item import LexicalItem

Path = Tuple[int, ...]


@dataclass(frozen=True)
class Leaf:
    """
    Ocurrencia de un ítem léxico en la derivación.

    Attributes:
        item: Ítem léxico
        occurrence: Índice único asignado por Select
        checked: Índices (en el haz) de rasgos ya cotejados
        skipped: Índices de rasgos opcionales omitidos
        values: Valores recibidos por Agree: (atributo, valor, por_defecto)
        silent: Copia inferior no pronunciada
    """
    item: LexicalItem
    occurrence: int
    checked: FrozenSet[int] = frozenset()
    skipped: FrozenSet[int] = frozenset()
    values: Tuple[Tuple[str, str, bool], ...] = ()
    silent: bool = False

    def __post_init__(self):
        if self.occurrence < 0:
            raise ValueError("La ocurrencia debe ser no negativa")
        if self.checked & self.skipped:
            raise ValueError("Un rasgo no puede estar cotejado y omitido a la vez")

    @property
    def label(self) -> int:
        return self.occurrence

    @property
    def value_map(self) -> Dict[str, str]:
        return {attr: value for attr, value, _ in self.values}

    def phi_value(self, attribute: str) -> Optional[str]:
        """Valor phi visible en el núcleo: recibido por Agree o propio"""
        received = self.value_map
        if attribute in received:
            return received[attribute]
        return self.item.bundle.interpretable_phi.get(attribute)

    def __str__(self) -> str:
        return f"{self.item.display}#{self.occurrence}"


@dataclass(frozen=True)
class Node:
    """
    Nodo binario. La etiqueta es la ocurrencia del núcleo que proyecta.

    Attributes:
        left: Hijo izquierdo (especificador o núcleo)
        right: Hijo derecho (complemento o núcleo superior de un amalgama)
        label: Ocurrencia del núcleo proyectante
        amalgam: Núcleo complejo formado por movimiento de núcleo
        silent: Copia inferior no pronunciada
        checked: Rasgos cotejados al formar el nodo
    """
    left: "SyntacticObject"
    right: "SyntacticObject"
    label: int
    amalgam: bool = False
    silent: bool = False
    checked: Tuple[str, ...] = ()

    def __post_init__(self):
        if (self.left.label == self.label) == (self.right.label == self.label):
            raise ValueError(
                f"El nodo {self.label} debe proyectar exactamente uno de sus hijos"
            )

    @property
    def projecting_side(self) -> int:
        return 0 if self.left.label == self.label else 1

    def child(self, side: int) -> "SyntacticObject":
        return self.left if side == 0 else self.right

    def __str__(self) -> str:
        return f"[{self.label} {self.left} {self.right}]"


SyntacticObject = Union[Leaf, Node]


# ----------------------------------------------------------------------
# Recorridos
# ----------------------------------------------------------------------

def is_head(so: SyntacticObject) -> bool:
    """Una hoja o un amalgama de movimiento de núcleo"""
    return isinstance(so, Leaf) or so.amalgam


def walk(so: SyntacticObject, path: Path = (), silenced: bool = False,
         into_heads: bool = True) -> Iterator[Tuple[Path, SyntacticObject, bool]]:
    """
    Recorrido en preorden.

    Yields:
        (ruta, subárbol, silenciado_por_ancestro_o_propio)
    """
    silenced = silenced or so.silent
    yield path, so, silenced
    if isinstance(so, Node) and (into_heads or not so.amalgam):
        yield from walk(so.left, path + (0,), silenced, into_heads)
        yield from walk(so.right, path + (1,), silenced, into_heads)


def iter_leaves(so: SyntacticObject) -> Iterator[Tuple[Leaf, bool]]:
    """Hojas en orden lineal con su estado de silencio efectivo"""
    for _, node, silenced in walk(so):
        if isinstance(node, Leaf):
            yield node, silenced


def pronounced_leaves(so: SyntacticObject) -> List[Leaf]:
    return [leaf for leaf, silenced in iter_leaves(so) if not silenced]


def leaf_index(so: SyntacticObject) -> Dict[int, Leaf]:
    """Ocurrencia → instancia no silenciada"""
    return {leaf.occurrence: leaf for leaf in pronounced_leaves(so)}


def item_index(so: SyntacticObject) -> Dict[int, LexicalItem]:
    """Ocurrencia → ítem (todas las copias)"""
    return {leaf.occurrence: leaf.item for leaf, _ in iter_leaves(so)}


def subtree_at(so: SyntacticObject, path: Path) -> SyntacticObject:
    node = so
    for side in path:
        node = node.child(side)
    return node


def replace_at(so: SyntacticObject, path: Path, new: SyntacticObject) -> SyntacticObject:
    """Sustituye el subárbol en la ruta y reconstruye los ancestros"""
    if not path:
        return new
    side, rest = path[0], path[1:]
    if side == 0:
        return replace(so, left=replace_at(so.left, rest, new))
    return replace(so, right=replace_at(so.right, rest, new))


def update_leaf(so: SyntacticObject, occurrence: int,
                fn: Callable[[Leaf], Leaf]) -> SyntacticObject:
    """Aplica fn a la instancia no silenciada de la ocurrencia"""
    if so.silent:
        return so
    if isinstance(so, Leaf):
        return fn(so) if so.occurrence == occurrence else so
    left = update_leaf(so.left, occurrence, fn)
    right = update_leaf(so.right, occurrence, fn)
    if left is so.left and right is so.right:
        return so
    return replace(so, left=left, right=right)


def head_position(so: SyntacticObject) -> Tuple[Path, SyntacticObject]:
    """Ruta hasta la posición de núcleo de la proyección (hoja o amalgama)"""
    path: Path = ()
    node = so
    while not is_head(node):
        side = node.projecting_side
        node = node.child(side)
        path += (side,)
    return path, node


def head_leaf(so: SyntacticObject) -> Leaf:
    """Hoja que proyecta so (dentro de un amalgama, el núcleo anfitrión)"""
    _, node = head_position(so)
    while isinstance(node, Node):
        node = node.child(node.projecting_side)
    return node


def complement_of(so: SyntacticObject) -> Optional[Tuple[Path, SyntacticObject]]:
    """Complemento del núcleo de so: hermano de la posición de núcleo"""
    if is_head(so):
        return None
    path: Path = ()
    node = so
    while True:
        side = node.projecting_side
        child = node.child(side)
        if is_head(child):
            other = 1 - side
            return path + (other,), node.child(other)
        node = child
        path += (side,)


def maximal_projections(so: SyntacticObject) -> Iterator[Tuple[Path, SyntacticObject, int, bool]]:
    """
    Proyecciones máximas bajo so (sin entrar en amalgamas).

    Yields:
        (ruta, subárbol, profundidad, silenciado)
    """
    def visit(node, path, parent_label, silenced):
        silenced = silenced or node.silent
        if node.label != parent_label:
            yield path, node, len(path), silenced
        if isinstance(node, Node) and not node.amalgam:
            yield from visit(node.left, path + (0,), node.label, silenced)
            yield from visit(node.right, path + (1,), node.label, silenced)

    yield from visit(so, (), None, False)


def maximal_projection(so: SyntacticObject, occurrence: int) -> Optional[Tuple[Path, SyntacticObject]]:
    """Proyección máxima no silenciada de una ocurrencia"""
    for path, node, _, silenced in maximal_projections(so):
        if node.label == occurrence and not silenced:
            return path, node
    return None


def dominates(so: SyntacticObject, occurrence: int) -> bool:
    return any(leaf.occurrence == occurrence for leaf, _ in iter_leaves(so))


def category_of(so: SyntacticObject, items: Optional[Dict[int, LexicalItem]] = None) -> str:
    items = items if items is not None else item_index(so)
    return items[so.label].category


def spine_of(so: SyntacticObject) -> List[str]:
    """Categorías a lo largo del camino núcleo-complemento"""
    items = item_index(so)
    spine: List[str] = []
    node: Optional[SyntacticObject] = so
    while node is not None:
        spine.append(items[node.label].category)
        if is_head(node):
            break
        found = complement_of(node)
        node = found[1] if found else None
    return spine


# ----------------------------------------------------------------------
# Claves estructurales
# ----------------------------------------------------------------------

def structure_key(so: SyntacticObject) -> tuple:
    """Clave con ocurrencias (estados del espacio de trabajo)"""
    if isinstance(so, Leaf):
        return (
            so.occurrence,
            tuple(sorted(so.checked)),
            tuple(sorted(so.skipped)),
            so.values,
            so.silent,
        )
    return (so.label, so.amalgam, so.silent, structure_key(so.left), structure_key(so.right))


def shape_key(so: SyntacticObject) -> tuple:
    """Clave sin ocurrencias: dos derivaciones con la misma forma coinciden"""
    if isinstance(so, Leaf):
        return (
            so.item.id,
            tuple(sorted(so.checked)),
            tuple(sorted(so.skipped)),
            so.values,
            so.silent,
        )
    return (
        so.projecting_side,
        so.amalgam,
        so.silent,
        shape_key(so.left),
        shape_key(so.right),
    )


__all__ = [
    "Path",
    "Leaf",
    "Node",
    "SyntacticObject",
    "is_head",
    "walk",
    "iter_leaves",
    "pronounced_leaves",
    "leaf_index",
    "item_index",
    "subtree_at",
    "replace_at",
    "update_leaf",
    "head_position",
    "head_leaf",
    "complement_of",
    "maximal_projections",
    "maximal_projection",
    "dominates",
    "category_of",
    "spine_of",
    "structure_key",
    "shape_key",
]
