"""
Pruebas del motor de derivación sobre un léxico mínimo.

Ocurrencias de la derivación transitiva:
0 ver, 1 objeto, 2 v, 3 sujeto, 4 T
"""
import pytest

from app.domain.derivation import DerivationStep as S
from app.domain.derivation import Numeration, Workspace
from app.domain.lexical_item import Lexicon
from app.domain.syntactic_object import Leaf, Node, head_leaf, leaf_index, pronounced_leaves
from app.exceptions.derivation_exceptions import (
    AgreeError,
    HeadMovementError,
    MergeError,
    MoveError,
    SelectError,
)
from app.exceptions.grammar_exceptions import ProbeMisuseError
from app.services.derivation_engine import (
    agree,
    agree_goals,
    apply_step,
    candidate_steps,
    chain_heads,
    check_convergence,
    derive,
    external_merge,
    head_move,
    internal_merge,
    live_offer,
    readiness_problem,
    replay,
    select,
)


def transitive(subject="juan", obj="maria"):
    ids = ["ver", obj, "v", subject, "T"]
    steps = [S.select(i) for i in ids] + [
        S.merge(0, 1),
        S.merge(2, 0),
        S.head_move(0, 2),
        S.merge(2, 3),
        S.merge(4, 2),
        S.agree(4),
        S.head_move(2, 4),
        S.move(4, 3),
    ]
    return ids, steps


def run_until(lexicon, ids, steps, n):
    ws = Workspace(numeration=Numeration.from_ids(lexicon, ids))
    for step in steps[:n]:
        ws, _ = apply_step(ws, step)
    return ws


def surface(trace):
    return " ".join(leaf.item.phon for leaf in pronounced_leaves(trace.result) if not leaf.item.is_null)


class TestSelect:

    def test_asigna_ocurrencias(self, toy_lexicon):
        ws = Workspace(numeration=Numeration.from_ids(toy_lexicon, ["juan", "v"]))
        ws = select(select(ws, "v"), "juan")
        assert [r.label for r in ws.roots] == [0, 1]
        assert ws.numeration.is_exhausted

    def test_agotado(self, toy_lexicon):
        ws = select(Workspace(numeration=Numeration.from_ids(toy_lexicon, ["juan"])), "juan")
        with pytest.raises(SelectError):
            select(ws, "juan")

    def test_ausente(self, toy_lexicon):
        with pytest.raises(SelectError):
            select(Workspace(numeration=Numeration.from_ids(toy_lexicon, ["juan"])), "maria")


class TestMerge:

    def test_complemento_a_la_derecha(self, toy_lexicon):
        ver = Leaf(toy_lexicon.get("ver"), 0)
        maria = Leaf(toy_lexicon.get("maria"), 1)
        vp = external_merge(maria, ver)
        assert isinstance(vp, Node)
        assert vp.label == 0
        assert vp.left.occurrence == 0 and vp.right.occurrence == 1
        assert 0 in vp.right.checked

    def test_especificador_a_la_izquierda(self, toy_lexicon):
        ids, steps = transitive()
        ws = run_until(toy_lexicon, ids, steps, 9)
        vp = ws.root(2)
        assert vp.left.occurrence == 3
        assert head_leaf(vp).item.id == "v"

    def test_sin_seleccion(self, toy_lexicon):
        with pytest.raises(MergeError):
            external_merge(Leaf(toy_lexicon.get("juan"), 0), Leaf(toy_lexicon.get("maria"), 1))

    def test_argumento_incompleto(self, toy_lexicon):
        ws = Workspace(numeration=Numeration.from_ids(toy_lexicon, ["v", "ver"]))
        ws = select(select(ws, "v"), "ver")
        with pytest.raises(MergeError, match="pendientes"):
            apply_step(ws, S.merge(0, 1))

    def test_consigo_mismo(self, toy_lexicon):
        ws = select(Workspace(numeration=Numeration.from_ids(toy_lexicon, ["ver"])), "ver")
        with pytest.raises(MergeError):
            apply_step(ws, S.merge(0, 0))

    def test_agree_antes_de_seguir(self, toy_lexicon):
        ids, steps = transitive()
        ws = run_until(toy_lexicon, ids, steps, 10)
        with pytest.raises(HeadMovementError, match="Agree"):
            apply_step(ws, S.head_move(2, 4))

    def test_ya_seleccionado(self, toy_lexicon):
        leaf = Leaf(toy_lexicon.get("maria"), 1, checked=frozenset({0}))
        assert "ya fue seleccionado" in readiness_problem(leaf)
        assert readiness_problem(Leaf(toy_lexicon.get("maria"), 1)) is None


class TestMove:

    def test_atrae_al_mas_cercano(self, toy_lexicon):
        ids, steps = transitive()
        ws = run_until(toy_lexicon, ids, steps, 12)
        with pytest.raises(MoveError, match="cercano"):
            internal_merge(ws.root(4), 1)

    def test_copia_silenciada(self, toy_lexicon):
        ids, steps = transitive()
        ws = run_until(toy_lexicon, ids, steps, 12)
        moved = internal_merge(ws.root(4), 3)
        assert moved.left.occurrence == 3 and not moved.left.silent
        assert chain_heads(moved)[3] == 1

    def test_sin_licenciador(self, toy_lexicon):
        ids, steps = transitive()
        ws = run_until(toy_lexicon, ids, steps, 9)
        with pytest.raises(MoveError):
            internal_merge(ws.root(2), 3)


class TestAgree:

    def test_valua_con_la_meta_mas_cercana(self, toy_lexicon):
        ids, steps = transitive(subject="juan", obj="maria")
        ws = run_until(toy_lexicon, ids, steps, 10)
        tp = agree(ws.root(4), 4)
        t = leaf_index(tp)[4]
        assert t.value_map == {"person": "3", "number": "sg", "gender": "m"}

    def test_genero_por_defecto(self, toy_lexicon):
        ids = ["correr", "v", "yo", "T"]
        steps = [S.select(i) for i in ids] + [
            S.merge(1, 0), S.head_move(0, 1), S.merge(1, 2), S.merge(3, 1), S.agree(3),
        ]
        ws = run_until(toy_lexicon, ids, steps, len(steps))
        t = leaf_index(ws.root(3))[3]
        assert ("gender", "m", True) in t.values
        assert ("person", "1", False) in t.values

    def test_sin_valor_por_defecto(self, toy_lexicon):
        ids = ["correr", "v", "yo", "T"]
        steps = [S.select(i) for i in ids] + [
            S.merge(1, 0), S.head_move(0, 1), S.merge(1, 2), S.merge(3, 1),
        ]
        ws = run_until(toy_lexicon, ids, steps, len(steps))
        with pytest.raises(AgreeError):
            agree(ws.root(3), 3, defaultable={})

    def test_sonda_sin_rasgos(self, toy_lexicon):
        ids, steps = transitive()
        ws = run_until(toy_lexicon, ids, steps, 9)
        with pytest.raises(ProbeMisuseError):
            agree(ws.root(2), 2)

    def test_sonda_que_no_es_raiz(self, toy_lexicon):
        ids, steps = transitive()
        ws = run_until(toy_lexicon, ids, steps, 10)
        with pytest.raises(AgreeError):
            agree(ws.root(4), 2)


class TestHeadMove:

    def test_amalgama(self, toy_lexicon):
        ids, steps = transitive()
        ws = run_until(toy_lexicon, ids, steps, 8)
        vp = ws.root(2)
        amalgam = vp.left
        assert amalgam.amalgam and amalgam.label == 2
        assert [leaf.item.id for leaf in (amalgam.left, amalgam.right)] == ["ver", "v"]
        assert vp.right.left.silent

    def test_restriccion_de_movimiento_de_nucleo(self, toy_lexicon):
        ids, steps = transitive()
        ws = run_until(toy_lexicon, ids, steps, 11)
        with pytest.raises(HeadMovementError, match="Restricción"):
            head_move(ws.root(4), 0, 4)

    def test_concordancia_incompatible(self, toy_lexicon):
        ids, steps = transitive(subject="yo")
        trace = derive(Numeration.from_ids(toy_lexicon, ids), steps)
        assert not trace.converged
        assert "paso 11" in trace.verdict.reason
        assert len(trace.steps) == 11


class TestDerive:

    def test_converge(self, toy_lexicon):
        ids, steps = transitive()
        trace = derive(Numeration.from_ids(toy_lexicon, ids), steps)
        assert trace.converged, trace.verdict.reason
        assert surface(trace) == "juan ver maria"
        assert set(chain_heads(trace.result).values()) == {1}

    def test_anotaciones(self, toy_lexicon):
        ids, steps = transitive()
        trace = derive(Numeration.from_ids(toy_lexicon, ids), steps)
        agree_step = trace.steps[10]
        assert agree_step.rationale[1] == "meta:juan"
        assert "T:=v" in trace.steps[9].rationale
        assert trace.to_text().splitlines()[-1] == "# veredicto: converged"

    def test_replay(self, toy_lexicon):
        ids, steps = transitive()
        numeration = Numeration.from_ids(toy_lexicon, ids)
        trace = derive(numeration, steps)
        again = replay(numeration, trace.steps)
        assert again.result == trace.result

    def test_varias_raices(self, toy_lexicon):
        ids, steps = transitive()
        trace = derive(Numeration.from_ids(toy_lexicon, ids), steps[:6])
        assert not trace.converged
        assert "raíces" in trace.verdict.reason

    def test_rasgos_pendientes(self, toy_lexicon):
        ids, steps = transitive()
        ws = run_until(toy_lexicon, ids, steps, 12)
        verdict = check_convergence(ws.root(4))
        assert not verdict.converged
        assert any("+epp" in r for r in verdict.reasons)


class TestCandidatos:

    def test_solo_lo_que_los_rasgos_permiten(self, toy_lexicon):
        ids, steps = transitive()
        ws = run_until(toy_lexicon, ids, steps, 5)
        assert [str(s) for s in candidate_steps(ws)] == [
            "ExternalMerge(0, 1)",
            "ExternalMerge(0, 3)",
        ]

    def test_agree_obligatorio(self, toy_lexicon):
        ids, steps = transitive()
        ws = run_until(toy_lexicon, ids, steps, 10)
        assert S.agree(4) in candidate_steps(ws)
        assert not any(s.operands == (2, 4) for s in candidate_steps(ws))


@pytest.fixture
def neg_lexicon(make_item):
    """Negación discontinua mínima: ni ... cl con concordancia de polaridad"""
    items = [
        make_item("correr", "V"),
        make_item("v", "=V +hm =D v", morph="null"),
        make_item("juan", "D -epp? person:3 number:sg gender:m"),
        make_item("cl", "=v +hm NegCl upolarity:neg"),
        make_item("T", "=v/NegCl uperson unumber ugender +hm +epp T", morph="null"),
        make_item("ni", "=T upolarity Neg"),
    ]
    return Lexicon({i.id: i for i in items})


def negated(with_neg=True, with_clitic=True):
    """0 correr, 1 v, 2 juan, luego cl, T y ni según los que haya"""
    ids = ["correr", "v", "juan"] + (["cl"] if with_clitic else []) + ["T"] + (["ni"] if with_neg else [])
    cl, t, ni = (3, 4, 5) if with_clitic else (None, 3, 4)
    steps = [S.select(i) for i in ids] + [S.merge(1, 0), S.head_move(0, 1), S.merge(1, 2)]
    if with_clitic:
        steps += [S.merge(cl, 1), S.head_move(1, cl), S.merge(t, cl), S.agree(t), S.head_move(cl, t)]
    else:
        steps += [S.merge(t, 1), S.agree(t), S.head_move(1, t)]
    steps.append(S.move(t, 2))
    if with_neg:
        steps += [S.merge(ni, t), S.agree(ni)]
    return ids, steps


class TestConcordanciaNegativa:

    def test_converge_con_ambas_piezas(self, neg_lexicon):
        ids, steps = negated()
        trace = derive(Numeration.from_ids(neg_lexicon, ids), steps)
        assert trace.converged, trace.verdict.reason
        assert surface(trace) == "ni juan correr cl"

    def test_la_sonda_coteja_la_concordancia_del_clitico(self, neg_lexicon):
        ids, steps = negated()
        trace = derive(Numeration.from_ids(neg_lexicon, ids), steps)
        agree_step = trace.steps[-1]
        assert agree_step.rationale == ("ni:upolarity=neg", "cl:upolarity:neg", "meta:cl")
        assert (3, 3) in agree_step.checked

    def test_t_concuerda_con_el_sujeto_y_no_con_el_clitico(self, neg_lexicon):
        ids, steps = negated()
        ws = run_until(neg_lexicon, ids, steps, 13)
        t = leaf_index(ws.root(4))[4]
        assert t.value_map == {"person": "3", "number": "sg", "gender": "m"}

    def test_clitico_sin_negacion(self, neg_lexicon):
        ids, steps = negated(with_neg=False)
        trace = derive(Numeration.from_ids(neg_lexicon, ids), steps)
        assert not trace.converged
        assert "cl:upolarity:neg sin concordancia" in trace.verdict.reason

    def test_negacion_sin_clitico(self, neg_lexicon):
        ids, steps = negated(with_clitic=False)
        trace = derive(Numeration.from_ids(neg_lexicon, ids), steps)
        assert not trace.converged
        assert "polarity" in trace.verdict.reason

    def test_metas_relativizadas(self, neg_lexicon):
        ids, steps = negated()
        ws = run_until(neg_lexicon, ids, steps, len(steps) - 1)
        neg_p = ws.root(5)
        assert [g.item.id for _, g, _ in agree_goals(neg_p, ["polarity"])] == ["cl"]
        assert "cl" not in [g.item.id for _, g, _ in agree_goals(neg_p, ["person"])]
        assert live_offer(leaf_index(neg_p)[3]) == {"polarity": "neg"}


class TestCategoriaInicial:

    def test_raiz_de_la_categoria_pedida(self, toy_lexicon):
        ids, steps = transitive()
        trace = derive(Numeration.from_ids(toy_lexicon, ids), steps, start_category="T")
        assert trace.converged

    def test_raiz_de_otra_categoria(self, neg_lexicon):
        ids, steps = negated()
        numeration = Numeration.from_ids(neg_lexicon, ids)
        trace = derive(numeration, steps, start_category="T")
        assert not trace.converged
        assert "la raíz es NegP y una oración es TP" in trace.verdict.reason
        assert derive(numeration, steps, start_category="Neg").converged

    def test_sin_categoria_no_se_exige(self, neg_lexicon):
        ids, steps = negated()
        ws = run_until(neg_lexicon, ids, steps, len(steps))
        assert check_convergence(ws.root(5)).converged
        assert not check_convergence(ws.root(5), "T").converged
