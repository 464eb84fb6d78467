"""Decision dispatch, the GLh reduction, disjunction splitting and formula corpora."""

import logging
import random
from collections import deque
from typing import Iterator, List, Optional, Sequence, Set, Tuple

from hml.core.hilbert import axiom_instance
from hml.core.logic_registry import UnsupportedLogicError, get_profile, get_settings
from hml.core.search import ProofSearch
from hml.core.sequent import (
    RIGHT_MODAL_RULES,
    Derivation,
    DerivationError,
    Sequent,
)
from hml.core.syntax import (
    BINARY,
    BOT,
    TOP,
    And,
    Atom,
    Box,
    Formula,
    Imp,
    Neg,
    Or,
    SortError,
    check_wff_h,
    format_formula,
    h_box,
    is_unimodal,
    rank,
)
from hml.core.witness import forgetful_f
from hml.models import AxiomScheme, CorpusSettings, DecisionMethod, LogicId, SplitSide, Verdict

logger = logging.getLogger(__name__)

SPLIT_LOGICS = (LogicId.K4H, LogicId.KD4H, LogicId.S4H, LogicId.GLH)


def _search(logic: LogicId, a: Formula, node_budget: Optional[int] = None) -> Verdict:
    search = ProofSearch(logic, node_budget)
    found = search.prove(Sequent([], [a]))
    return Verdict(provable=found is not None, logic=logic, evidence=found, nodes=search.nodes)


def _check_sort(logic: LogicId, a: Formula) -> None:
    if get_profile(logic).is_hierarchical:
        check_wff_h(a)
    elif not is_unimodal(a):
        raise SortError(f"{logic.value} takes uni-modal formulas: {format_formula(a)}")


def decide(logic: LogicId, a: Formula, node_budget: Optional[int] = None) -> Verdict:
    """Decide whether ``logic`` proves ``a``.

    Args:
        logic: Logic to decide in
        a: Indexed formula for hierarchical logics, uni-modal otherwise
        node_budget: Search budget; defaults to the configured one

    Returns:
        Verdict with a cut-free derivation as evidence when provable

    Raises:
        UnsupportedLogicError: For logics without a decision procedure (KD45h, S5h)
        NestingError, SortError: If ``a`` does not fit the logic's language
        ResourceLimitError: If the search budget runs out
    """
    profile = get_profile(logic)
    if profile.decision == DecisionMethod.NONE:
        raise UnsupportedLogicError(f"{profile.id.value} has no decision procedure")
    _check_sort(profile.id, a)
    if profile.decision == DecisionMethod.GL_REDUCTION:
        verdict = gl_h_decide(a, node_budget)
    else:
        verdict = _search(profile.id, a, node_budget)
    state = "provable" if verdict.provable else "not provable"
    logger.info(f"{format_formula(a)} is {state} in {profile.id.value} ({verdict.nodes} nodes)")
    return verdict


def gl_h_decide(a: Formula, node_budget: Optional[int] = None) -> Verdict:
    """Decide ``a`` in GLh by deciding its index-free image in GL.

    The evidence is the GL derivation of the image.
    """
    check_wff_h(a)
    image, _ = forgetful_f(a)
    found = _search(LogicId.GL, image, node_budget)
    return Verdict(
        provable=found.provable, logic=LogicId.GLH, evidence=found.evidence, nodes=found.nodes
    )


# Disjunction property


def _first_modal_choice(d: Derivation, left: Formula, right: Formula) -> Optional[Derivation]:
    """Lowest right modal step whose principal is ``left`` or ``right``, breadth first."""
    queue = deque([d])
    seen: Set[int] = set()
    while queue:
        node = queue.popleft()
        if id(node) in seen:
            continue
        seen.add(id(node))
        if node.rule in RIGHT_MODAL_RULES and node.principal in (left, right):
            return node
        queue.extend(node.premises)
    return None


def _scan(logic: LogicId, left: Formula, right: Formula) -> Optional[SplitSide]:
    """Side picked by the lowest modal right rule on a disjunct in a cut-free proof
    of ``=> left, right``."""
    search = ProofSearch(logic)
    found = search.prove(Sequent([], [left, right]))
    if found is None:
        return None
    node = _first_modal_choice(found, left, right)
    if node is None:
        raise DerivationError(f"no modal step on either disjunct in {found.conclusion}")
    logger.debug(f"{found.conclusion} is split by {node.rule.value} on {node.principal}")
    return SplitSide.LEFT if node.principal == left else SplitSide.RIGHT


def disjunction_split(logic: LogicId, n: int, a: Formula, m: int, b: Formula) -> SplitSide:
    """Which disjunct of ``[n]a | [m]b`` is provable, read off a cut-free proof.

    Raises:
        UnsupportedLogicError: Outside K4h, KD4h, S4h and GLh
        NestingError: If ``[n]a`` or ``[m]b`` is not well formed
        DerivationError: If the chosen body turns out not to be provable
    """
    logic = get_profile(logic).id
    if logic not in SPLIT_LOGICS:
        raise UnsupportedLogicError(
            f"disjunction splitting covers K4h, KD4h, S4h and GLh, not {logic.value}"
        )
    left, right = h_box(n, a), h_box(m, b)

    if logic == LogicId.GLH:
        side = _scan(LogicId.GL, forgetful_f(left)[0], forgetful_f(right)[0])
    else:
        side = _scan(logic, left, right)
    if side is None:
        return SplitSide.NOT_THEOREM

    body = a if side == SplitSide.LEFT else b
    if not decide(logic, body).provable:
        raise DerivationError(
            f"split chose {side.value} but {format_formula(body)} is not provable in {logic.value}"
        )
    logger.info(f"{format_formula(Or(left, right))} splits {side.value} in {logic.value}")
    return side


# Corpora


def _leaves(atom_names: Sequence[str], constants: bool) -> List[Formula]:
    leaves: List[Formula] = [Atom(name) for name in atom_names]
    if constants:
        leaves.extend((BOT, TOP))
    return leaves


class FormulaGenerator:
    """Seeded random well-formed indexed formulas."""

    def __init__(self, seed: int, max_index: int, settings: Optional[CorpusSettings] = None):
        self.settings = settings or get_settings().corpus
        self.rng = random.Random(seed)
        self.max_index = max_index
        self.leaves = _leaves(self.settings.atoms, constants=True)

    def formula(self, depth: int) -> Formula:
        if depth <= 1:
            return self.rng.choice(self.leaves)
        weights = self.settings.weights
        roll = self.rng.random()
        if roll < weights.connective:
            kind = self.rng.choice((Neg, And, Or, Imp))
            if kind is Neg:
                return Neg(self.formula(depth - 1))
            return kind(self.formula(depth - 1), self.formula(depth - 1))
        if roll < weights.connective + weights.box:
            return self.box(self.formula(depth - 1))
        return self.rng.choice(self.leaves)

    def box(self, child: Formula) -> Formula:
        least = rank(child) + 1
        if least > self.max_index:
            return child
        if self.rng.random() < self.settings.minimal_index_probability:
            return Box(least, child)
        return Box(self.rng.randint(least, self.max_index), child)


def gen_corpus(
    seed: int,
    count: int,
    max_depth: int,
    max_index: int,
    settings: Optional[CorpusSettings] = None,
) -> List[Formula]:
    """Deterministic list of ``count`` well-formed formulas of depth at most ``max_depth``."""
    generator = FormulaGenerator(seed, max_index, settings)
    return [generator.formula(max_depth) for _ in range(count)]


def enumerate_formulas(
    max_depth: int,
    max_index: int,
    atom_names: Sequence[str] = ("p",),
    constants: bool = False,
) -> Iterator[Formula]:
    """Every well-formed formula up to ``max_depth`` over the given atoms, shallowest first."""
    exact: List[List[Formula]] = [[], _leaves(atom_names, constants)]
    upto: List[Formula] = list(exact[1])
    yield from exact[1]
    for depth in range(2, max_depth + 1):
        previous = exact[depth - 1]
        older = upto[: len(upto) - len(previous)]
        level: List[Formula] = []
        for c in previous:
            level.append(Neg(c))
            level.extend(Box(n, c) for n in range(rank(c) + 1, max_index + 1))
        for kind in BINARY:
            level.extend(kind(x, y) for x in previous for y in upto)
            level.extend(kind(x, y) for x in older for y in previous)
        exact.append(level)
        upto.extend(level)
        yield from level


def axiom_instances(
    logic: LogicId, n: int, a: Formula, b: Formula
) -> List[Tuple[AxiomScheme, Formula]]:
    """One instance at level ``n`` of every axiom scheme of a hierarchical logic.

    Raises:
        NestingError: If ``a`` or ``b`` has rank ``n`` or more
    """
    profile = get_profile(logic)
    h_box(n, a)
    h_box(n, b)
    instances = []
    for scheme in profile.ordered_axioms:
        components = (a, b) if scheme == AxiomScheme.KH else (a,)
        instances.append((scheme, axiom_instance(scheme, n, *components)))
    return instances
