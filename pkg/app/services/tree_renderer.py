"""
Renderizado de árboles derivados: corchetes etiquetados, ASCII (nltk),
grafo dot y JSON estructurado.

Convenciones de etiqueta: XP para proyecciones máximas, X' para las
intermedias, los núcleos por su forma (pro o la etiqueta del núcleo nulo)
y los amalgamas unidos con '+'. Las copias silenciosas van entre ⟨ ⟩.
"""
import io
import json
import logging
from typing import Dict, Optional, Union

from nltk import Tree

from app.domain.derivation import DerivationTrace
from app.domain.syntactic_object import Leaf, Node, SyntacticObject, item_index, iter_leaves
from app.exceptions.corpus_exceptions import RenderError

logger = logging.getLogger(__name__)

STYLES = ("bracketed", "ascii", "dot", "structured")

SILENT_OPEN = "⟨"
SILENT_CLOSE = "⟩"


def _silenced(text: str, silent: bool) -> str:
    return f"{SILENT_OPEN}{text}{SILENT_CLOSE}" if silent else text


def _head_text(so: SyntacticObject) -> str:
    parts = []
    for leaf, silent in iter_leaves(so):
        parts.append(_silenced(leaf.item.display, silent and not so.silent))
    return "+".join(parts)


def _phrase_label(node: Node, parent_label: Optional[int], items) -> str:
    category = items[node.label].category
    return f"{category}P" if node.label != parent_label else f"{category}'"


# ----------------------------------------------------------------------
# Corchetes
# ----------------------------------------------------------------------

def _bracketed(so: SyntacticObject, parent_label: Optional[int], items) -> str:
    if isinstance(so, Leaf) or so.amalgam:
        text = _head_text(so)
    else:
        left = _bracketed(so.left, so.label, items)
        right = _bracketed(so.right, so.label, items)
        text = f"[{_phrase_label(so, parent_label, items)} {left} {right}]"
    return _silenced(text, so.silent)


# ----------------------------------------------------------------------
# ASCII con nltk
# ----------------------------------------------------------------------

def _as_list(so: SyntacticObject, parent_label: Optional[int], items) -> Union[str, list]:
    if isinstance(so, Leaf) or so.amalgam:
        return _silenced(_head_text(so), so.silent)
    label = _silenced(_phrase_label(so, parent_label, items), so.silent)
    return [label, _as_list(so.left, so.label, items), _as_list(so.right, so.label, items)]


def _to_nltk(listtree: Union[str, list]) -> Union[str, Tree]:
    if isinstance(listtree, str):
        return listtree
    return Tree(listtree[0], [_to_nltk(child) for child in listtree[1:]])


def _ascii(so: SyntacticObject, items) -> str:
    tree = _to_nltk(_as_list(so, None, items))
    if isinstance(tree, str):
        return tree
    buffer = io.StringIO()
    tree.pretty_print(stream=buffer)
    return buffer.getvalue().rstrip("\n")


# ----------------------------------------------------------------------
# Grafo dot
# ----------------------------------------------------------------------

def _dot(so: SyntacticObject, items) -> str:
    lines = ["digraph derivacion {", "  node [shape=plaintext];"]
    counter = [0]

    def visit(node: SyntacticObject, parent_label: Optional[int], silenced: bool) -> str:
        name = f"n{counter[0]}"
        counter[0] += 1
        silenced = silenced or node.silent
        if isinstance(node, Leaf):
            label = node.item.display
        elif node.amalgam:
            label = "+".join(l.item.display for l, _ in iter_leaves(node))
        else:
            label = _phrase_label(node, parent_label, items)
        style = ", fontcolor=gray" if silenced else ""
        lines.append(f'  {name} [label="{label}"{style}];')
        if isinstance(node, Node):
            for child in (node.left, node.right):
                lines.append(f"  {name} -> {visit(child, node.label, silenced)};")
        return name

    visit(so, None, False)
    lines.append("}")
    return "\n".join(lines)


# ----------------------------------------------------------------------
# JSON
# ----------------------------------------------------------------------

def _structured(so: SyntacticObject, parent_label: Optional[int], items) -> Dict:
    if isinstance(so, Leaf):
        return {
            "head": so.item.display,
            "item": so.item.id,
            "occurrence": so.occurrence,
            "features": str(so.item.bundle),
            "checked": sorted(so.checked),
            "values": [list(v) for v in so.values],
            "silent": so.silent,
        }
    data = {
        "label": "+".join(l.item.display for l, _ in iter_leaves(so)) if so.amalgam
        else _phrase_label(so, parent_label, items),
        "occurrence": so.label,
        "amalgam": so.amalgam,
        "silent": so.silent,
        "children": [
            _structured(so.left, so.label, items),
            _structured(so.right, so.label, items),
        ],
    }
    return data


def render_tree(trace: Union[DerivationTrace, SyntacticObject], style: str = "bracketed") -> str:
    """
    Representa el árbol de una derivación.

    Args:
        trace: Traza (o directamente un objeto sintáctico)
        style: bracketed, ascii, dot o structured

    Returns:
        Texto determinista del árbol

    Raises:
        RenderError: Estilo desconocido o traza sin resultado
    """
    if style not in STYLES:
        raise RenderError(f"Estilo de árbol desconocido: '{style}' (use {', '.join(STYLES)})")
    so = trace.result if isinstance(trace, DerivationTrace) else trace
    if so is None:
        raise RenderError("La traza no tiene árbol resultante")

    items = item_index(so)
    if style == "bracketed":
        return _bracketed(so, None, items)
    if style == "ascii":
        return _ascii(so, items)
    if style == "dot":
        return _dot(so, items)
    return json.dumps(_structured(so, None, items), ensure_ascii=False, indent=2)


__all__ = [
    "STYLES",
    "render_tree",
]
