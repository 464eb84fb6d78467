"""Terminating backward proof search for the cut-free calculi.

The search works on set-sequents: invertible propositional rules are applied
eagerly, reflexive calculi saturate left boxes with their bodies, and modal
right rules are tried by ascending size of the principal formula. A modal step
is blocked when its premise already occurred on the current branch. Every
successful search step is turned into multiset rule applications at once, so
the result is an ordinary cut-free Derivation of the requested sequent.
"""

import logging
import sys
from typing import Dict, FrozenSet, List, Optional, Sequence, Set, Tuple

from hml.core.logic_registry import get_profile, get_settings
from hml.core.sequent import (
    Derivation,
    Rule,
    Sequent,
    apply_rule,
    axiom,
    bot_left,
    calculus_rules,
    fit,
    modal_node,
    modal_premise,
    top_right,
)
from hml.core.syntax import (
    BOT,
    TOP,
    And,
    Box,
    Formula,
    Imp,
    Neg,
    Or,
    complexity,
    formula_key,
    sorted_formulas,
)
from hml.models import LogicId

logger = logging.getLogger(__name__)

# Realized derivations of deep searches recurse in fit and the cached properties.
sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))


SetSequent = Tuple[FrozenSet[Formula], FrozenSet[Formula]]


class ResourceLimitError(Exception):
    """Raised when proof search exceeds its node budget."""

    pass


class ProofSearch:
    """One search configuration; reusable across queries of the same calculus."""

    def __init__(
        self,
        calculus: LogicId,
        node_budget: Optional[int] = None,
        propositional_only: bool = False,
    ):
        self.calculus = calculus
        rules = calculus_rules(calculus)
        self.propositional_only = propositional_only
        self.right_rule = next(
            (
                r
                for r in (Rule.BOX4H_R, Rule.BOXSH_R, Rule.BOX4_R, Rule.BOXS_R, Rule.GL_R)
                if r in rules
            ),
            None,
        )
        self.serial_rule = next((r for r in (Rule.BOXDH_R, Rule.BOXD_R) if r in rules), None)
        self.reflexive_rule = next((r for r in (Rule.BOXH_L, Rule.BOX_L) if r in rules), None)
        self.hierarchical = get_profile(calculus).is_hierarchical
        self.node_budget = node_budget or get_settings().search.node_budget
        self.nodes = 0
        self.blocked = 0
        self._proved: Dict[SetSequent, Derivation] = {}
        self._refuted: Set[SetSequent] = set()

    def prove(self, s: Sequent) -> Optional[Derivation]:
        """Search for a cut-free derivation of ``s``.

        Raises:
            ResourceLimitError: If the node budget is exhausted
        """
        root = (frozenset(s.left), frozenset(s.right))
        found, _ = self._search(root, frozenset())
        if found is None:
            logger.debug(f"No {self.calculus.value} proof of {s} ({self.nodes} nodes)")
            return None
        logger.debug(f"Found {self.calculus.value} proof of {s} ({self.nodes} nodes)")
        return fit(found, s)

    def _search(
        self, seq: SetSequent, history: FrozenSet[SetSequent]
    ) -> Tuple[Optional[Derivation], bool]:
        """Returns the derivation (or None) and whether loop blocking was involved."""
        if seq in self._proved:
            return self._proved[seq], False
        if seq in self._refuted:
            return None, False
        self.nodes += 1
        if self.nodes > self.node_budget:
            raise ResourceLimitError(
                f"{self.calculus.value} search exceeded {self.node_budget} nodes"
            )

        result, used_history = self._expand(seq, history | {seq})
        if result is not None:
            self._proved[seq] = result
        elif not used_history:
            self._refuted.add(seq)
        return result, used_history

    def _expand(
        self, seq: SetSequent, history: FrozenSet[SetSequent]
    ) -> Tuple[Optional[Derivation], bool]:
        left, right = seq
        closing = self._close(left, right)
        if closing is not None:
            return closing, False

        step = self._invertible(left, right)
        if step is not None:
            rule, principal, premises = step
            found = []
            used = False
            for premise in premises:
                d, blocked = self._search(premise, history)
                used = used or blocked
                if d is None:
                    return None, used
                found.append(d)
            return self._realize(rule, principal, found, left, right), used

        if self.propositional_only:
            return None, False
        return self._modal(left, right, history)

    # closing and invertible steps

    def _close(self, left: FrozenSet[Formula], right: FrozenSet[Formula]) -> Optional[Derivation]:
        target = Sequent(left, right)
        shared = left & right
        if shared:
            return fit(axiom(sorted_formulas(shared)[0]), target)
        if BOT in left:
            return fit(bot_left(), target)
        if TOP in right:
            return fit(top_right(), target)
        return None

    def _invertible(
        self, left: FrozenSet[Formula], right: FrozenSet[Formula]
    ) -> Optional[Tuple[Rule, Formula, List[SetSequent]]]:
        for a in sorted_formulas(left):
            rest = left - {a}
            if isinstance(a, And):
                return Rule.AND_L, a, [(rest | {a.left, a.right}, right)]
            if isinstance(a, Or):
                return Rule.OR_L, a, [(rest | {a.left}, right), (rest | {a.right}, right)]
            if isinstance(a, Imp):
                return Rule.IMP_L, a, [(rest, right | {a.left}), (rest | {a.right}, right)]
            if isinstance(a, Neg):
                return Rule.NEG_L, a, [(rest, right | {a.child})]
        for a in sorted_formulas(right):
            rest = right - {a}
            if isinstance(a, And):
                return Rule.AND_R, a, [(left, rest | {a.left}), (left, rest | {a.right})]
            if isinstance(a, Or):
                return Rule.OR_R, a, [(left, rest | {a.left, a.right})]
            if isinstance(a, Imp):
                return Rule.IMP_R, a, [(left | {a.left}, rest | {a.right})]
            if isinstance(a, Neg):
                return Rule.NEG_R, a, [(left | {a.child}, rest)]
        if self.reflexive_rule is not None and not self.propositional_only:
            for a in sorted_formulas(left):
                if isinstance(a, Box) and a.child not in left:
                    # the box stays; its body joins the antecedent
                    return self.reflexive_rule, a, [(left | {a.child}, right)]
        return None

    def _realize(
        self,
        rule: Rule,
        principal: Formula,
        premises: Sequence[Derivation],
        left: FrozenSet[Formula],
        right: FrozenSet[Formula],
    ) -> Derivation:
        """Replay a set-level step as multiset rule applications ending in ``left => right``."""
        target = Sequent(left, right)
        on_left = rule in (Rule.AND_L, Rule.OR_L, Rule.IMP_L, Rule.NEG_L, Rule.BOXH_L, Rule.BOX_L)
        if rule in (Rule.BOXH_L, Rule.BOX_L):
            gamma = list(left)
        else:
            gamma = list(left - {principal}) if on_left else list(left)
        delta = list(right) if on_left else list(right - {principal})

        if rule == Rule.AND_L:
            base = fit(premises[0], Sequent(gamma + [principal.left, principal.right], delta))
            step = apply_rule(Rule.AND_L, [base], principal, 1)
            return fit(apply_rule(Rule.AND_L, [step], principal, 0), target)
        if rule == Rule.OR_R:
            base = fit(premises[0], Sequent(gamma, delta + [principal.left, principal.right]))
            step = apply_rule(Rule.OR_R, [base], principal, 1)
            return fit(apply_rule(Rule.OR_R, [step], principal, 0), target)

        if rule == Rule.OR_L:
            shapes = [([principal.left], []), ([principal.right], [])]
        elif rule == Rule.IMP_L:
            shapes = [([], [principal.left]), ([principal.right], [])]
        elif rule == Rule.NEG_L:
            shapes = [([], [principal.child])]
        elif rule == Rule.AND_R:
            shapes = [([], [principal.left]), ([], [principal.right])]
        elif rule == Rule.IMP_R:
            shapes = [([principal.left], [principal.right])]
        elif rule == Rule.NEG_R:
            shapes = [([principal.child], [])]
        else:
            shapes = [([principal.child], [])]
        fitted = [
            fit(d, Sequent(gamma + act_left, delta + act_right))
            for d, (act_left, act_right) in zip(premises, shapes)
        ]
        return fit(apply_rule(rule, fitted, principal), target)

    # modal steps

    def _modal(
        self, left: FrozenSet[Formula], right: FrozenSet[Formula], history: FrozenSet[SetSequent]
    ) -> Tuple[Optional[Derivation], bool]:
        used = False
        target = Sequent(left, right)
        candidates: List[Tuple[Rule, Optional[Formula], Optional[int]]] = []
        if self.right_rule is not None:
            boxes = [a for a in right if isinstance(a, Box)]
            boxes.sort(key=lambda a: (complexity(a), formula_key(a)))
            candidates.extend((self.right_rule, a, None) for a in boxes)
        if self.serial_rule is not None:
            left_boxes = [a for a in left if isinstance(a, Box)]
            if left_boxes:
                index = None
                if self.serial_rule == Rule.BOXDH_R:
                    index = max(a.index for a in left_boxes) + 1
                candidates.append((self.serial_rule, None, index))

        for rule, principal, index in candidates:
            context = self._context(rule, left, principal, index)
            premise, _, _ = modal_premise(rule, context, principal, index)
            key = (frozenset(premise.left), frozenset(premise.right))
            if key in history:
                self.blocked += 1
                used = True
                continue
            found, blocked = self._search(key, history)
            used = used or blocked
            if found is not None:
                node = modal_node(rule, context, principal, found, index)
                return fit(node, target), used
        return None, used

    def _context(
        self,
        rule: Rule,
        left: FrozenSet[Formula],
        principal: Optional[Formula],
        index: Optional[int],
    ) -> List[Formula]:
        """Every left box the rule may carry into its premise."""
        boxes = sorted_formulas(a for a in left if isinstance(a, Box))
        if not self.hierarchical:
            return boxes
        n = principal.index if principal is not None else index
        return [a for a in boxes if a.index <= n]


def prove(
    calculus: LogicId,
    s: Sequent,
    node_budget: Optional[int] = None,
) -> Optional[Derivation]:
    """Decide ``s`` in the cut-free calculus of ``calculus``.

    Returns:
        A cut-free derivation ending in ``s``, or None when there is none

    Raises:
        ResourceLimitError: If the node budget is exceeded
        UnsupportedLogicError: If the logic has no sequent calculus
    """
    return ProofSearch(calculus, node_budget).prove(s)


def prove_propositional(calculus: LogicId, s: Sequent) -> Optional[Derivation]:
    """Search with boxes treated as atoms (for tautologies)."""
    return ProofSearch(calculus, propositional_only=True).prove(s)

