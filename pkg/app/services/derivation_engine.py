"""
Motor de derivación: Select, ensamble externo, ensamble interno (Move),
Agree y movimiento de núcleo sobre árboles binarios etiquetados.

Todas las operaciones son funciones puras sobre objetos inmutables; el
estado de cotejo de cada ocurrencia vive en su copia pronunciada.
"""
import logging
from dataclasses import replace
from typing import Callable, Dict, List, Mapping, NamedTuple, Optional, Sequence, Tuple

from app.config.settings import GrammarConfig
from app.domain.derivation import (
    DerivationStep,
    DerivationTrace,
    Numeration,
    StepOp,
    Verdict,
    Workspace,
)
from app.domain.feature import CONCORD_ATTRIBUTES, HEAD_MOVEMENT, Feature, FeatureKind
from app.domain.syntactic_object import (
    Leaf,
    Node,
    Path,
    SyntacticObject,
    category_of,
    complement_of,
    dominates,
    head_position,
    is_head,
    iter_leaves,
    leaf_index,
    maximal_projections,
    replace_at,
    update_leaf,
    walk,
)
from app.exceptions.derivation_exceptions import (
    AgreeError,
    HeadMovementError,
    MergeError,
    MoveError,
    SelectError,
)
from app.exceptions.grammar_exceptions import GrammarError, ProbeMisuseError
from app.services.feature_checking import can_select, match_probe

logger = logging.getLogger(__name__)


class Outcome(NamedTuple):
    """Resultado de una operación con su justificación"""
    so: SyntacticObject
    rationale: Tuple[str, ...]
    checked: Tuple[Tuple[int, int], ...]


# ----------------------------------------------------------------------
# Estado de cotejo de una hoja
# ----------------------------------------------------------------------

def pending(leaf: Leaf) -> List[Tuple[int, Feature]]:
    """Selectores y licenciadores previos a la categoría aún sin cotejar ni omitir"""
    bundle = leaf.item.bundle
    done = leaf.checked | leaf.skipped
    return [
        (i, f) for i, f in enumerate(bundle.features[:bundle.category_index])
        if f.kind in (FeatureKind.SELECTOR, FeatureKind.LICENSOR) and i not in done
    ]


def next_trigger(leaf: Leaf, accept: Callable[[Feature], bool]
                 ) -> Optional[Tuple[int, Feature, Tuple[int, ...]]]:
    """
    Próximo rasgo pendiente aceptado, saltando opcionales.

    Returns:
        (índice, rasgo, índices opcionales omitidos) o None si un rasgo
        obligatorio distinto bloquea el paso
    """
    skipped: List[int] = []
    for i, f in pending(leaf):
        if accept(f):
            return i, f, tuple(skipped)
        if not f.optional:
            return None
        skipped.append(i)
    return None


def unvalued(leaf: Leaf) -> List[Tuple[int, Feature]]:
    received = leaf.value_map
    return [
        (i, f) for i, f in enumerate(leaf.item.bundle.features)
        if f.is_probe and f.attribute not in received
    ]


def agree_blocked(leaf: Leaf) -> bool:
    """Un núcleo con sondas sin valor que ya tomó complemento debe hacer Agree"""
    if not unvalued(leaf):
        return False
    features = leaf.item.bundle.features
    return any(features[i].kind is FeatureKind.SELECTOR for i in leaf.checked)


def readiness_problem(leaf: Leaf) -> Optional[str]:
    """Motivo por el que la proyección de la hoja no puede ser seleccionada"""
    if leaf.item.bundle.category_index in leaf.checked:
        return f"'{leaf}' ya fue seleccionado"
    mandatory = [f for _, f in pending(leaf) if not f.optional]
    if mandatory:
        return f"'{leaf}' tiene rasgos pendientes: {' '.join(str(f) for f in mandatory)}"
    if unvalued(leaf):
        return f"'{leaf}' tiene rasgos phi sin valor"
    return None


def _check(indices, skipped=()):
    def fn(leaf: Leaf) -> Leaf:
        return replace(
            leaf,
            checked=leaf.checked | frozenset(indices),
            skipped=leaf.skipped | frozenset(skipped),
        )
    return fn


def _head_state(so: SyntacticObject) -> Optional[Leaf]:
    """Copia pronunciada del núcleo que proyecta so, si está dentro de so"""
    return leaf_index(so).get(so.label)


def _is_silenced(root: SyntacticObject, path: Path) -> bool:
    node = root
    if node.silent:
        return True
    for side in path:
        node = node.child(side)
        if node.silent:
            return True
    return False


# ----------------------------------------------------------------------
# Select
# ----------------------------------------------------------------------

def select(ws: Workspace, item_id: str) -> Workspace:
    """
    Extrae un ítem de la numeración como hoja nueva.

    Raises:
        SelectError: Si el ítem no está o ya se agotó
    """
    if ws.numeration.count(item_id) < 1:
        if ws.numeration.item(item_id) is None:
            raise SelectError(f"'{item_id}' no está en la numeración")
        raise SelectError(f"'{item_id}' ya se agotó en la numeración")
    leaf = Leaf(ws.numeration.item(item_id), ws.next_occurrence)
    return Workspace(ws.roots + (leaf,), ws.numeration.take(item_id), ws.next_occurrence + 1)


# ----------------------------------------------------------------------
# Ensamble externo
# ----------------------------------------------------------------------

def _merge(selector: SyntacticObject, argument: SyntacticObject) -> Outcome:
    head = _head_state(selector)
    if head is None:
        raise MergeError(f"El núcleo de {selector.label} no está disponible")
    if agree_blocked(head):
        raise MergeError(f"'{head}' debe valuar sus rasgos phi (Agree) antes de ensamblar")

    target = _head_state(argument)
    if target is None:
        raise MergeError(f"El núcleo de {argument.label} no está disponible")
    problem = readiness_problem(target)
    if problem:
        raise MergeError(problem)

    bundle = target.item.bundle
    trigger = next_trigger(
        head,
        lambda f: f.kind is FeatureKind.SELECTOR and can_select(f, bundle),
    )
    if trigger is None:
        raise MergeError(f"'{head}' no selecciona a '{target}' ({bundle.category})")
    index, feature, skipped = trigger

    left_out = [i for i, f in pending(target) if f.optional]
    new_selector = update_leaf(selector, head.occurrence, _check([index], skipped))
    new_argument = update_leaf(argument, target.occurrence, _check([bundle.category_index], left_out))

    rationale = (f"{head.item.display}:{feature}", f"{target.item.display}:{bundle.category}")
    if is_head(selector):
        node = Node(new_selector, new_argument, head.occurrence, checked=rationale)
    else:
        node = Node(new_argument, new_selector, head.occurrence, checked=rationale)

    checked = ((head.occurrence, index), (target.occurrence, bundle.category_index))
    return Outcome(node, rationale, checked)


def _external_merge(a: SyntacticObject, b: SyntacticObject) -> Outcome:
    try:
        return _merge(a, b)
    except MergeError as first:
        try:
            return _merge(b, a)
        except MergeError:
            raise first


def external_merge(a: SyntacticObject, b: SyntacticObject) -> SyntacticObject:
    """
    Ensambla dos objetos; proyecta el que selecciona al otro.

    El primer argumento de un núcleo es su complemento (a la derecha);
    los siguientes son especificadores (a la izquierda).

    Raises:
        MergeError: Si ninguno selecciona al otro
    """
    return _external_merge(a, b).so


# ----------------------------------------------------------------------
# Ensamble interno
# ----------------------------------------------------------------------

def movement_targets(root: SyntacticObject, trigger: str) -> List[Tuple[Path, SyntacticObject, int]]:
    """Proyecciones máximas pronunciadas con el licenciado -trigger sin cotejar"""
    found = []
    for path, node, depth, silenced in maximal_projections(root):
        if not path or silenced:
            continue
        head = _head_state(node)
        if head is None:
            continue
        if _open_licensee(head, trigger) is not None:
            found.append((path, node, depth))
    return found


def _open_licensee(leaf: Leaf, trigger: str) -> Optional[int]:
    done = leaf.checked | leaf.skipped
    for i, f in enumerate(leaf.item.bundle.features):
        if f.kind is FeatureKind.LICENSEE and f.attribute == trigger and i not in done:
            return i
    return None


def _internal_merge(root: SyntacticObject, target: int) -> Outcome:
    head = _head_state(root)
    if head is None or is_head(root):
        raise MoveError("Move exige una raíz con núcleo disponible")
    if agree_blocked(head):
        raise MoveError(f"'{head}' debe valuar sus rasgos phi (Agree) antes de mover")

    trigger = next_trigger(head, lambda f: f.kind is FeatureKind.LICENSOR)
    if trigger is None:
        raise MoveError(f"'{head}' no tiene un licenciador pendiente")
    index, feature, skipped = trigger
    if feature.attribute == HEAD_MOVEMENT:
        raise MoveError(f"'{head}' espera movimiento de núcleo, no de frase")

    if not dominates(root, target):
        raise MoveError(f"La meta {target} no está dominada por la raíz")

    targets = movement_targets(root, feature.attribute)
    if not targets:
        raise MoveError(f"No hay meta con -{feature.attribute} para '{head}'")
    closest = min(depth for _, _, depth in targets)
    chosen = [(p, n) for p, n, d in targets if n.label == target]
    if not chosen:
        raise MoveError(f"La meta {target} no porta -{feature.attribute} accesible")
    path, node = chosen[0]
    if len(path) != closest:
        nearer = [n.label for p, n, d in targets if d == closest]
        raise MoveError(f"Atracción del más cercano: {nearer} interviene(n) sobre {target}")

    mover = leaf_index(root)[target]
    licensee = _open_licensee(mover, feature.attribute)

    silenced = replace_at(root, path, replace(node, silent=True))
    rationale = (f"{head.item.display}:{feature}", f"{mover.item.display}:-{feature.attribute}")
    moved = Node(node, silenced, head.occurrence, checked=rationale)
    moved = update_leaf(moved, head.occurrence, _check([index], skipped))
    moved = update_leaf(moved, target, _check([licensee]))

    checked = ((head.occurrence, index), (target, licensee))
    return Outcome(moved, rationale, checked)


def internal_merge(root: SyntacticObject, target: int) -> SyntacticObject:
    """
    Reensambla una copia de la meta en la raíz y silencia la original.

    Raises:
        MoveError: Sin licenciador, sin meta, meta no dominada o intervención
    """
    return _internal_merge(root, target).so


# ----------------------------------------------------------------------
# Agree
# ----------------------------------------------------------------------

def _open_concord(leaf: Leaf) -> List[Tuple[int, Feature]]:
    return [
        (i, f) for i, f in enumerate(leaf.item.bundle.features)
        if f.kind is FeatureKind.PHI and f.valued and f.attribute in CONCORD_ATTRIBUTES
        and i not in leaf.checked
    ]


def live_offer(leaf: Leaf) -> Dict[str, str]:
    """Lo que la ocurrencia aún ofrece a una sonda: phi interpretable y concordancia sin cotejar"""
    offer = dict(leaf.item.bundle.interpretable_phi)
    offer.update({f.attribute: f.value for _, f in _open_concord(leaf)})
    return offer


def agree_goals(root: SyntacticObject, sought: Optional[Sequence[str]] = None
                ) -> List[Tuple[Path, Leaf, int]]:
    """
    Metas pronunciadas en el dominio de mando-c de la sonda (su complemento).

    Args:
        root: Raíz cuyo núcleo es la sonda
        sought: Atributos que busca la sonda; solo cuentan las metas que
            ofrecen alguno (None acepta cualquier meta)
    """
    found = complement_of(root)
    if found is None:
        return []
    comp_path, comp = found
    if _is_silenced(root, comp_path):
        return []
    # Un núcleo desplazado conserva sus rasgos en la copia pronunciada
    states = leaf_index(root)
    goals = []
    for path, node, depth, silenced in maximal_projections(comp):
        if silenced:
            continue
        head = states.get(node.label)
        if head is None:
            continue
        offer = live_offer(head)
        if offer and (sought is None or any(a in offer for a in sought)):
            goals.append((comp_path + path, head, depth))
    return goals


def _agree(root: SyntacticObject, probe: int,
           defaultable: Optional[Mapping[str, str]] = None) -> Outcome:
    defaultable = GrammarConfig.DEFAULTABLE_PHI if defaultable is None else defaultable

    if root.label != probe:
        raise AgreeError(f"La sonda {probe} no es el núcleo de la raíz")
    head = _head_state(root)
    if head is None:
        raise AgreeError(f"La sonda {probe} no está disponible")

    current = head.item.bundle.with_values(head.value_map)
    if not current.probes:
        raise ProbeMisuseError(f"'{head}' no tiene rasgos phi sin valor")

    sought = [f.attribute for f in current.probes]
    goals = agree_goals(root, sought)
    if not goals:
        raise AgreeError(f"'{head}' no manda-c ninguna meta con {'/'.join(sought)}")
    closest = min(depth for _, _, depth in goals)
    nearest = [g for _, g, d in goals if d == closest]
    if len(nearest) > 1:
        raise AgreeError(f"Metas equidistantes para '{head}': {', '.join(str(g) for g in nearest)}")
    goal = nearest[0]

    assignments = match_probe(current, goal.item.bundle, defaultable)
    if assignments is None:
        raise AgreeError(f"'{goal}' no valúa las sondas de '{head}'")

    values = []
    indices = []
    for i, feature in unvalued(head):
        if feature.attribute in assignments:
            values.append((feature.attribute, assignments[feature.attribute], False))
        else:
            values.append((feature.attribute, defaultable[feature.attribute], True))
        indices.append(i)

    def valuate(leaf: Leaf) -> Leaf:
        return replace(
            leaf,
            values=leaf.values + tuple(values),
            checked=leaf.checked | frozenset(indices),
        )

    new_root = update_leaf(root, probe, valuate)

    # La meta coteja su concordancia negativa con la sonda que la valúa
    concord = [(i, f) for i, f in _open_concord(goal) if f.attribute in assignments]
    if concord:
        new_root = update_leaf(new_root, goal.occurrence, _check([i for i, _ in concord]))

    described = " ".join(
        f"u{attr}={value}" + (" (por defecto)" if default else "")
        for attr, value, default in values
    )
    rationale = (
        (f"{head.item.display}:{described}",)
        + tuple(f"{goal.item.display}:{f}" for _, f in concord)
        + (f"meta:{goal.item.display}",)
    )
    checked = tuple((probe, i) for i in indices) + tuple((goal.occurrence, i) for i, _ in concord)
    return Outcome(new_root, rationale, checked)


def agree(root: SyntacticObject, probe: int,
          defaultable: Optional[Mapping[str, str]] = None) -> SyntacticObject:
    """
    Valúa las sondas phi del núcleo de la raíz con la meta más cercana.

    Args:
        root: Raíz cuyo núcleo es la sonda
        probe: Ocurrencia de la sonda
        defaultable: Atributo → valor por defecto cuando la meta no lo
            especifica (por omisión, GrammarConfig.DEFAULTABLE_PHI)

    Raises:
        ProbeMisuseError: La sonda ya no tiene rasgos sin valor
        AgreeError: Sin meta, metas equidistantes o sin emparejamiento
    """
    return _agree(root, probe, defaultable).so


# ----------------------------------------------------------------------
# Movimiento de núcleo
# ----------------------------------------------------------------------

def _incorporation_checks(host: Leaf, moved: SyntacticObject) -> List[Tuple[int, int, str]]:
    """
    Rasgos de concordancia del material incorporado que el anfitrión coteja.

    Raises:
        HeadMovementError: Si un valor del anfitrión contradice la concordancia
    """
    clause_types = host.item.bundle.clause_types
    checks = []
    for leaf, silenced in iter_leaves(moved):
        if silenced:
            continue
        for i, f in enumerate(leaf.item.bundle.features):
            if not f.is_agreement or i in leaf.checked:
                continue
            if f.kind is FeatureKind.PHI:
                value = host.phi_value(f.attribute)
                if value is None:
                    continue
                if value != f.value:
                    raise HeadMovementError(
                        f"'{leaf}' concuerda en {f.attribute}={f.value} "
                        f"pero '{host}' tiene {f.attribute}={value}"
                    )
                checks.append((leaf.occurrence, i, f"{leaf.item.display}:{f}"))
            else:
                if not clause_types:
                    continue
                if not set(f.alternatives) & set(clause_types):
                    raise HeadMovementError(
                        f"'{leaf}' exige cláusula {f.attribute} y '{host}' es "
                        f"{'/'.join(clause_types)}"
                    )
                checks.append((leaf.occurrence, i, f"{leaf.item.display}:{f}"))
    return checks


def _head_move(root: SyntacticObject, lower: int, upper: int) -> Outcome:
    if root.label != upper or is_head(root):
        raise HeadMovementError(f"{upper} no es el núcleo de la raíz")
    host = _head_state(root)
    if host is None:
        raise HeadMovementError(f"El núcleo {upper} no está disponible")
    if agree_blocked(host):
        raise HeadMovementError(f"'{host}' debe valuar sus rasgos phi (Agree) antes")

    trigger = next_trigger(
        host,
        lambda f: f.kind is FeatureKind.LICENSOR and f.attribute == HEAD_MOVEMENT,
    )
    if trigger is None:
        raise HeadMovementError(f"'{host}' no tiene +{HEAD_MOVEMENT} pendiente")
    index, feature, skipped = trigger

    found = complement_of(root)
    if found is None:
        raise HeadMovementError(f"'{host}' no tiene complemento")
    comp_path, comp = found
    rel_path, lower_head = head_position(comp)
    lower_path = comp_path + rel_path

    if lower_head.label != lower:
        if dominates(root, lower):
            raise HeadMovementError(
                f"Restricción de movimiento de núcleo: {lower} no es el núcleo del "
                f"complemento de {upper} (el núcleo más cercano es {lower_head.label})"
            )
        raise HeadMovementError(f"{upper} no domina a {lower}")
    if _is_silenced(root, lower_path):
        raise HeadMovementError(f"El núcleo {lower} ya se desplazó")

    upper_path, upper_head = head_position(root)
    amalgam = Node(lower_head, upper_head, upper, amalgam=True)
    moved = replace_at(root, lower_path, replace(lower_head, silent=True))
    moved = replace_at(moved, upper_path, amalgam)

    agreement = _incorporation_checks(host, lower_head)
    moved = update_leaf(moved, upper, _check([index], skipped))
    for occurrence, i, _ in agreement:
        moved = update_leaf(moved, occurrence, _check([i]))

    rationale = (f"{host.item.display}:{feature}",) + tuple(text for _, _, text in agreement)
    checked = ((upper, index),) + tuple((occ, i) for occ, i, _ in agreement)
    return Outcome(moved, rationale, checked)


def head_move(root: SyntacticObject, lower: int, upper: int) -> SyntacticObject:
    """
    Incorpora el núcleo del complemento al núcleo de la raíz.

    El amalgama ocupa la posición superior y la inferior queda como copia
    silenciosa. Los rasgos de concordancia del material incorporado se
    cotejan contra los valores del anfitrión.

    Raises:
        HeadMovementError: Violación de la HMC, falta de dominancia,
            ausencia de +hm o concordancia incompatible
    """
    return _head_move(root, lower, upper).so


# ----------------------------------------------------------------------
# Convergencia
# ----------------------------------------------------------------------

def unchecked_features(so: SyntacticObject) -> List[str]:
    """Rasgos que impiden la convergencia en las copias pronunciadas"""
    problems = []
    for leaf, silenced in iter_leaves(so):
        if silenced:
            continue
        received = leaf.value_map
        for i, f in enumerate(leaf.item.bundle.features):
            if f.kind in (FeatureKind.SELECTOR, FeatureKind.LICENSOR, FeatureKind.LICENSEE):
                if not f.optional and i not in leaf.checked:
                    problems.append(f"{leaf.item.display}:{f} sin cotejar")
            elif f.is_probe:
                if f.attribute not in received:
                    problems.append(f"{leaf.item.display}:{f} sin valor")
            elif f.is_agreement and i not in leaf.checked:
                problems.append(f"{leaf.item.display}:{f} sin concordancia")
    return problems


def check_convergence(so: SyntacticObject, start_category: Optional[str] = None) -> Verdict:
    """
    Veredicto de convergencia de un objeto raíz.

    Converge si ningún selector, licenciador o licenciado obligatorio queda
    sin cotejar, ninguna sonda queda sin valor y toda concordancia fue
    cotejada. Los rasgos opcionales nunca bloquean.

    Args:
        so: Objeto raíz
        start_category: Categoría que debe proyectar la raíz de una
            oración completa (None no la exige)
    """
    problems = unchecked_features(so)
    if start_category is not None:
        category = category_of(so)
        if category != start_category:
            problems.append(f"la raíz es {category}P y una oración es {start_category}P")
    if problems:
        return Verdict.crashed(*problems)
    return Verdict.ok()


# ----------------------------------------------------------------------
# Pasos y derivaciones
# ----------------------------------------------------------------------

def _root_for(ws: Workspace, label: int, error) -> SyntacticObject:
    root = ws.root(label)
    if root is None:
        raise error(f"{label} no es una raíz del espacio de trabajo")
    return root


def apply_step(ws: Workspace, step: DerivationStep,
               defaultable: Optional[Mapping[str, str]] = None
               ) -> Tuple[Workspace, DerivationStep]:
    """
    Aplica un paso al espacio de trabajo.

    Returns:
        (nuevo espacio, paso anotado con rasgos cotejados)

    Raises:
        DerivationError: Si el paso no es legítimo
    """
    if step.op is StepOp.SELECT:
        new_ws = select(ws, step.operands[0])
        return new_ws, DerivationStep(step.op, step.operands)

    if step.op is StepOp.EXTERNAL_MERGE:
        a, b = step.operands
        if a == b:
            raise MergeError("Un objeto no puede ensamblarse consigo mismo")
        outcome = _external_merge(_root_for(ws, a, MergeError), _root_for(ws, b, MergeError))
        new_ws = ws.replace_roots((a, b), outcome.so)
    elif step.op is StepOp.INTERNAL_MERGE:
        label, target = step.operands
        outcome = _internal_merge(_root_for(ws, label, MoveError), target)
        new_ws = ws.replace_roots((label,), outcome.so)
    elif step.op is StepOp.AGREE:
        (probe,) = step.operands
        outcome = _agree(_root_for(ws, probe, AgreeError), probe, defaultable)
        new_ws = ws.replace_roots((probe,), outcome.so)
    else:
        lower, upper = step.operands
        outcome = _head_move(_root_for(ws, upper, HeadMovementError), lower, upper)
        new_ws = ws.replace_roots((upper,), outcome.so)

    return new_ws, DerivationStep(step.op, step.operands, outcome.rationale, outcome.checked)


def candidate_steps(ws: Workspace) -> List[DerivationStep]:
    """
    Pasos que los rasgos pendientes de las raíces permiten intentar.

    Es un superconjunto ajustado de los pasos legítimos: apply_step decide.
    """
    steps: List[DerivationStep] = []
    states: Dict[int, Leaf] = {}
    for root in ws.roots:
        head = _head_state(root)
        if head is not None:
            states[root.label] = head

    for root in ws.roots:
        head = states.get(root.label)
        if head is None:
            continue
        if agree_blocked(head):
            steps.append(DerivationStep.agree(root.label))
            continue
        for _, feature in pending(head):
            if feature.kind is FeatureKind.LICENSOR:
                if feature.attribute == HEAD_MOVEMENT:
                    found = complement_of(root)
                    if found is not None:
                        _, lower_head = head_position(found[1])
                        steps.append(DerivationStep.head_move(lower_head.label, root.label))
                else:
                    targets = movement_targets(root, feature.attribute)
                    if targets:
                        closest = min(d for _, _, d in targets)
                        steps.extend(
                            DerivationStep.move(root.label, node.label)
                            for _, node, d in targets if d == closest
                        )
            else:
                for other in ws.roots:
                    target = states.get(other.label)
                    if other is root or target is None:
                        continue
                    if readiness_problem(target) is None and can_select(feature, target.item.bundle):
                        steps.append(DerivationStep.merge(root.label, other.label))
            if not feature.optional:
                break
    return steps


def derive(numeration: Numeration, steps: Sequence[DerivationStep],
           defaultable: Optional[Mapping[str, str]] = None,
           start_category: Optional[str] = None) -> DerivationTrace:
    """
    Ejecuta una secuencia concreta de pasos desde la numeración.

    Un paso ilegítimo aborta la derivación con una traza parcial y el
    motivo del colapso.

    Args:
        numeration: Numeración inicial
        steps: Pasos (Select asigna ocurrencias 0, 1, 2... en orden)
        defaultable: Valores por defecto para Agree
        start_category: Categoría exigida a la raíz final

    Returns:
        DerivationTrace con el veredicto de convergencia
    """
    ws = Workspace(numeration=numeration)
    done: List[DerivationStep] = []

    for i, step in enumerate(steps):
        try:
            ws, annotated = apply_step(ws, step, defaultable)
        except GrammarError as e:
            logger.debug(f"Derivación abortada en el paso {i} {step}: {e}")
            result = ws.roots[0] if len(ws.roots) == 1 else None
            return DerivationTrace(
                numeration, tuple(done), result, Verdict.crashed(f"paso {i} {step}: {e}")
            )
        done.append(annotated)

    if len(ws.roots) != 1:
        verdict = Verdict.crashed(f"quedan {len(ws.roots)} raíces en el espacio de trabajo")
        return DerivationTrace(numeration, tuple(done), None, verdict)
    if not ws.numeration.is_exhausted:
        verdict = Verdict.crashed(f"numeración sin agotar: {ws.numeration}")
        return DerivationTrace(numeration, tuple(done), ws.roots[0], verdict)

    result = ws.roots[0]
    return DerivationTrace(numeration, tuple(done), result, check_convergence(result, start_category))


def replay(numeration: Numeration, steps: Sequence[DerivationStep],
           defaultable: Optional[Mapping[str, str]] = None) -> DerivationTrace:
    """Repite los pasos de una traza sin sus anotaciones"""
    return derive(numeration, [s.bare() for s in steps], defaultable)


def chain_heads(so: SyntacticObject) -> Dict[int, int]:
    """Ocurrencia → número de copias pronunciadas (1 en un árbol bien formado)"""
    counts: Dict[int, int] = {}
    for _, node, silenced in walk(so):
        if isinstance(node, Leaf) and not silenced:
            counts[node.occurrence] = counts.get(node.occurrence, 0) + 1
    return counts


__all__ = [
    "Outcome",
    "pending",
    "next_trigger",
    "unvalued",
    "agree_blocked",
    "readiness_problem",
    "select",
    "external_merge",
    "movement_targets",
    "internal_merge",
    "live_offer",
    "agree_goals",
    "agree",
    "head_move",
    "unchecked_features",
    "check_convergence",
    "apply_step",
    "candidate_steps",
    "derive",
    "replay",
    "chain_heads",
]
