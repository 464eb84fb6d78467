"""Cut elimination for the hierarchical calculi.

The workhorse is ``mix``: from proofs of ``G => D`` and ``G' => D'`` it builds a
cut-free-over-A proof of ``G, G' - A => D - A, D'`` where ``- A`` drops every
occurrence of A. It recurses on the pair (complexity of A, sum of heights):
non-principal occurrences are handled by permuting the mix into the premises,
principal ones are reduced to mixes on proper subformulas. ``eliminate_cuts``
replaces cuts by mixes from the leaves down.
"""

import logging
from collections import Counter
from dataclasses import dataclass, field, replace
from typing import Dict, List, Optional, Sequence, Tuple

from hml.core.logic_registry import UnsupportedLogicError
from hml.core.sequent import (
    LEFT_INTRO_RULES,
    RIGHT_INTRO_RULES,
    RIGHT_MODAL_RULES,
    Derivation,
    DerivationError,
    Rule,
    Sequent,
    apply_rule,
    check_derivation,
    count_cuts,
    fit,
    max_cut_complexity,
    modal_node,
    rule_shape,
)
from hml.core.simulation import SIMULATED_CALCULI
from hml.core.syntax import (
    And,
    Box,
    Formula,
    Imp,
    Neg,
    Or,
    PreconditionError,
    complexity,
    format_formula,
)
from hml.models import LogicId

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DProof:
    """A derivation all of whose cut formulas are shorter than ``bound``."""

    derivation: Derivation
    bound: int

    def __post_init__(self) -> None:
        worst = max_cut_complexity(self.derivation)
        if worst >= self.bound:
            raise PreconditionError(f"cut of complexity {worst} in a {self.bound}-proof")


def _without(items: Sequence[Formula], a: Formula) -> List[Formula]:
    return [x for x in items if x != a]


def _restore(
    d: Derivation, act_left: Sequence[Formula], act_right: Sequence[Formula]
) -> Derivation:
    """Weaken back active formulas a mix may have removed."""
    left, right = list(d.conclusion.left), list(d.conclusion.right)
    for have, want in ((left, act_left), (right, act_right)):
        missing = Counter(want) - Counter(have)
        have.extend(missing.elements())
    return fit(d, Sequent(left, right))


def _principal_right(p: Derivation, a: Formula) -> bool:
    if p.rule == Rule.TOP_R:
        return True
    return (p.rule in RIGHT_INTRO_RULES or p.rule in RIGHT_MODAL_RULES) and p.principal == a


def _principal_left(q: Derivation, a: Formula) -> bool:
    if q.rule == Rule.BOT_L:
        return True
    if q.rule in RIGHT_MODAL_RULES:
        return a in q.conclusion.left
    return q.rule in LEFT_INTRO_RULES and q.principal == a


@dataclass
class CutEliminator:
    """Stateful driver; ``steps`` lists the complexity of every cut removed, in order."""

    calculus: LogicId
    reductions: int = 0
    steps: List[int] = field(default_factory=list)
    _done: Dict[int, Tuple[Derivation, Derivation]] = field(default_factory=dict, repr=False)

    def mix(self, a: Formula, p: Derivation, q: Derivation) -> Derivation:
        """Proof of ``p.left, q.left - a => p.right - a, q.right``."""
        self.reductions += 1
        target = Sequent(
            list(p.conclusion.left) + _without(q.conclusion.left, a),
            _without(p.conclusion.right, a) + list(q.conclusion.right),
        )
        if a not in p.conclusion.right:
            return fit(p, target)
        if a not in q.conclusion.left:
            return fit(q, target)
        if p.rule == Rule.AX:
            return fit(q, target)
        if q.rule == Rule.AX:
            return fit(p, target)

        on_p, on_q = _principal_right(p, a), _principal_left(q, a)
        if not on_p and not on_q:
            if p.height >= q.height:
                return self._into_left(a, p, q, target)
            return self._into_right(a, p, q, target)
        if not on_p:
            return self._into_left(a, p, q, target)
        if not on_q:
            return self._into_right(a, p, q, target)
        return self._principal(a, p, q, target)

    # Permutations

    def _into_left(self, a: Formula, p: Derivation, q: Derivation, target: Sequent) -> Derivation:
        """Push the mix above the last rule of ``p``."""
        if p.rule in (Rule.WR, Rule.CR) and p.principal == a:
            return fit(self.mix(a, p.premises[0], q), target)
        shapes, _ = rule_shape(p.rule, p.principal, p.side)
        premises = []
        for premise, (act_left, act_right) in zip(p.premises, shapes):
            if a in premise.conclusion.right:
                premise = _restore(self.mix(a, premise, q), act_left, act_right)
            premises.append(premise)
        return fit(apply_rule(p.rule, premises, p.principal, p.side), target)

    def _into_right(self, a: Formula, p: Derivation, q: Derivation, target: Sequent) -> Derivation:
        """Push the mix above the last rule of ``q``."""
        if q.rule in (Rule.WL, Rule.CL) and q.principal == a:
            return fit(self.mix(a, p, q.premises[0]), target)
        if q.rule in RIGHT_MODAL_RULES:
            raise DerivationError(
                f"cannot permute a mix on {format_formula(a)} above {q.rule.value}"
            )
        shapes, _ = rule_shape(q.rule, q.principal, q.side)
        premises = []
        for premise, (act_left, act_right) in zip(q.premises, shapes):
            if a in premise.conclusion.left:
                premise = _restore(self.mix(a, p, premise), act_left, act_right)
            premises.append(premise)
        return fit(apply_rule(q.rule, premises, q.principal, q.side), target)

    # Principal reductions

    def _clean_left(self, a: Formula, p: Derivation, q: Derivation) -> List[Derivation]:
        """Premises of ``p`` with every other occurrence of ``a`` mixed away."""
        return [
            self.mix(a, premise, q) if a in premise.conclusion.right else premise
            for premise in p.premises
        ]

    def _clean_right(self, a: Formula, p: Derivation, q: Derivation) -> List[Derivation]:
        return [
            self.mix(a, p, premise) if a in premise.conclusion.left else premise
            for premise in q.premises
        ]

    def _principal(self, a: Formula, p: Derivation, q: Derivation, target: Sequent) -> Derivation:
        if p.rule in RIGHT_MODAL_RULES:
            if q.rule in RIGHT_MODAL_RULES:
                return self._modal_modal(a, p, q, target)
            if q.rule == Rule.BOXH_L:
                return self._reflexive(a, p, q, target)
            raise DerivationError(f"{p.rule.value} against {q.rule.value} on {format_formula(a)}")

        left = self._clean_left(a, p, q)
        right = self._clean_right(a, p, q)
        if isinstance(a, And) and p.rule == Rule.AND_R and q.rule == Rule.AND_L:
            part = a.left if q.side == 0 else a.right
            result = self.mix(part, left[q.side], right[0])
        elif isinstance(a, Or) and p.rule == Rule.OR_R and q.rule == Rule.OR_L:
            part = a.left if p.side == 0 else a.right
            result = self.mix(part, left[0], right[p.side])
        elif isinstance(a, Imp) and p.rule == Rule.IMP_R and q.rule == Rule.IMP_L:
            first = self.mix(a.left, right[0], left[0])
            result = self.mix(a.right, first, right[1])
        elif isinstance(a, Neg) and p.rule == Rule.NEG_R and q.rule == Rule.NEG_L:
            result = self.mix(a.child, right[0], left[0])
        else:
            raise DerivationError(f"{p.rule.value} against {q.rule.value} on {format_formula(a)}")
        return fit(result, target)

    def _reflexive(self, a: Formula, p: Derivation, q: Derivation, target: Sequent) -> Derivation:
        """A reflexive box introduced on the right, then unboxed on the left."""
        assert isinstance(a, Box)
        body_proof = p.premises[0]
        for box in p.r_part:
            body_proof = apply_rule(Rule.BOXH_L, [body_proof], box)
        (premise,) = self._clean_right(a, p, q)
        return fit(self.mix(a.child, body_proof, premise), target)

    def _modal_modal(self, a: Formula, p: Derivation, q: Derivation, target: Sequent) -> Derivation:
        """A box introduced on the right of ``p`` and carried in the context of ``q``."""
        assert isinstance(a, Box)
        premise = q.premises[0]
        if a in premise.conclusion.left:
            premise = self.mix(a, p, premise)
        same_level = a.index == q.index
        if same_level or q.rule != Rule.BOXSH_R:
            premise = self.mix(a.child, p.premises[0], premise)
        context = list(p.conclusion.left) + _without(q.conclusion.left, a)
        node = modal_node(q.rule, context, q.principal, premise, q.index)
        return fit(node, target)

    # Driver

    def eliminate(self, d: Derivation) -> Derivation:
        """Cut-free derivation of ``d.conclusion``, removing cuts from the leaves down."""
        seen = self._done.get(id(d))
        if seen is not None and seen[0] is d:
            return seen[1]
        result = self._eliminate(d)
        self._done[id(d)] = (d, result)
        return result

    def _eliminate(self, d: Derivation) -> Derivation:
        premises = tuple(self.eliminate(premise) for premise in d.premises)
        if d.rule != Rule.CUT:
            if premises == d.premises:
                return d
            return replace(d, premises=premises)
        a = d.principal
        assert a is not None
        mixed = self.mix(a, premises[0], premises[1])
        self.steps.append(complexity(a))
        logger.debug(f"Eliminated cut on {format_formula(a)} ({self.reductions} reductions so far)")
        return fit(mixed, d.conclusion)


def _require_calculus(calculus: LogicId) -> None:
    if calculus not in SIMULATED_CALCULI:
        raise UnsupportedLogicError("cut elimination is implemented for K4h, KD4h and S4h only")


def reduce_principal(calculus: LogicId, a: Formula, left: DProof, right: DProof) -> DProof:
    """Remove every occurrence of ``a`` between two ``complexity(a)``-proofs.

    Raises:
        PreconditionError: If the bounds or endsequents do not match
    """
    _require_calculus(calculus)
    bound = complexity(a)
    if left.bound != bound or right.bound != bound:
        raise PreconditionError(f"both proofs must be {bound}-proofs")
    if a not in left.derivation.conclusion.right or a not in right.derivation.conclusion.left:
        raise PreconditionError(
            f"{format_formula(a)} must occur on the right of the first proof "
            "and on the left of the second"
        )
    mixed = CutEliminator(calculus).mix(a, left.derivation, right.derivation)
    return DProof(mixed, bound)


def eliminate_cuts(
    calculus: LogicId, d: Derivation, eliminator: Optional[CutEliminator] = None
) -> Derivation:
    """Cut-free derivation of the same endsequent.

    Raises:
        UnsupportedLogicError: Outside K4h, KD4h and S4h
        PreconditionError: If ``d`` does not check in ``calculus``
    """
    _require_calculus(calculus)
    result = check_derivation(calculus, d)
    if not result:
        raise PreconditionError(f"derivation does not check: {result.describe()}")
    if count_cuts(d) == 0:
        return d
    worker = eliminator or CutEliminator(calculus)
    cut_free = worker.eliminate(d)
    logger.info(
        f"Removed {len(worker.steps)} cuts with {worker.reductions} reductions "
        f"({d.size} -> {cut_free.size} nodes)"
    )
    return cut_free
