"""
Pruebas del renderizado de árboles.
"""
import json

import pytest

from app.domain.derivation import DerivationTrace, Numeration, Verdict
from app.domain.syntactic_object import Leaf
from app.exceptions.corpus_exceptions import RenderError
from app.services.tree_renderer import STYLES, render_tree

BRACKETED_4A = (
    "[TP -k [T' qul+v+T [vP ⟨-k⟩ [v' ⟨qul+v⟩ [VP ⟨qul⟩ "
    "[TopP ʕali [Top' Top [TP pro [T' jāʔ+v+T [vP ⟨pro⟩ [v' ⟨jāʔ+v⟩ ⟨jāʔ⟩]]]]]]]]]]]"
)


def leaves(data):
    if "children" not in data:
        return [data]
    return [leaf for child in data["children"] for leaf in leaves(child)]


class TestRenderTree:

    def test_corchetes(self, derived):
        assert render_tree(derived("4a")) == BRACKETED_4A

    def test_determinista(self, derived):
        for style in STYLES:
            assert render_tree(derived("4a"), style) == render_tree(derived("4a").result, style)

    def test_ascii(self, derived):
        text = render_tree(derived("4a"), "ascii")
        assert len(text.splitlines()) > 5
        assert "TopP" in text and "ʕali" in text and "⟨pro⟩" in text

    def test_hoja_sola(self, lexicon):
        leaf = Leaf(lexicon.get("ʕali"), 0)
        assert render_tree(leaf, "ascii") == "ʕali"
        assert render_tree(leaf) == "ʕali"

    def test_dot(self, derived):
        text = render_tree(derived("4a"), "dot")
        lines = text.splitlines()
        assert lines[0] == "digraph derivacion {"
        assert lines[-1] == "}"
        assert 'label="TP"' in text
        assert "fontcolor=gray" in text

    def test_estructurado(self, derived):
        data = json.loads(render_tree(derived("4a"), "structured"))
        assert data["label"] == "TP" and data["occurrence"] == 3
        found = {(leaf["item"], leaf["silent"]) for leaf in leaves(data) if "item" in leaf}
        assert ("pro-3MS", True) in found
        assert ("ʕali", False) in found

    def test_estilo_desconocido(self, derived):
        with pytest.raises(RenderError, match="svg"):
            render_tree(derived("4a"), "svg")

    def test_traza_sin_arbol(self):
        empty = DerivationTrace(Numeration(), (), None, Verdict.crashed("x"))
        with pytest.raises(RenderError):
            render_tree(empty)
