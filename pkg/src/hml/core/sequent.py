"""Sequents, derivations and the rules of the Gentzen calculi.

Sequents are pairs of multisets, stored as sorted tuples so that equality of
sequents is multiset equality. Non-modal rules are described by a uniform
shape (active formulas per premise plus the formulas the rule adds), which the
checker, the search and the cut eliminator all share. Modal rules compute their
premise from the conclusion context.
"""

import logging
from collections import Counter
from dataclasses import dataclass, field, replace
from enum import Enum
from functools import cached_property
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from hml.core.logic_registry import UnsupportedLogicError, get_profile
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
    conj,
    disj,
    format_formula,
    is_unimodal,
    is_wff_h,
    sorted_formulas,
    subst_atoms,
)
from hml.models import CheckResult, DecisionMethod, LogicId

logger = logging.getLogger(__name__)


class DerivationError(Exception):
    """Raised when a derivation step cannot be built or is malformed."""

    pass


class Rule(str, Enum):
    AX = "Ax"
    BOT_L = "BotL"
    TOP_R = "TopR"
    WL = "wL"
    WR = "wR"
    CL = "cL"
    CR = "cR"
    CUT = "Cut"
    AND_L = "AndL"
    AND_R = "AndR"
    OR_L = "OrL"
    OR_R = "OrR"
    IMP_L = "ImpL"
    IMP_R = "ImpR"
    NEG_L = "NegL"
    NEG_R = "NegR"
    BOX4H_R = "Box4hR"
    BOXDH_R = "BoxDhR"
    BOXH_L = "BoxhL"
    BOXSH_R = "BoxShR"
    BOX4_R = "Box4R"
    BOXD_R = "BoxDR"
    BOXS_R = "BoxSR"
    BOX_L = "BoxL"
    GL_R = "GLR"


AXIOM_RULES = frozenset({Rule.AX, Rule.BOT_L, Rule.TOP_R})
STRUCTURAL_RULES = frozenset({Rule.WL, Rule.WR, Rule.CL, Rule.CR})
LEFT_INTRO_RULES = frozenset(
    {Rule.AND_L, Rule.OR_L, Rule.IMP_L, Rule.NEG_L, Rule.BOXH_L, Rule.BOX_L}
)
RIGHT_INTRO_RULES = frozenset({Rule.AND_R, Rule.OR_R, Rule.IMP_R, Rule.NEG_R})
BASE_RULES = (
    AXIOM_RULES
    | STRUCTURAL_RULES
    | {Rule.CUT}
    | (LEFT_INTRO_RULES - {Rule.BOXH_L, Rule.BOX_L})
    | RIGHT_INTRO_RULES
)
RIGHT_MODAL_RULES = frozenset(
    {Rule.BOX4H_R, Rule.BOXDH_R, Rule.BOXSH_R, Rule.BOX4_R, Rule.BOXD_R, Rule.BOXS_R, Rule.GL_R}
)
INDEXED_RIGHT_RULES = frozenset({Rule.BOX4H_R, Rule.BOXDH_R, Rule.BOXSH_R})
EMPTY_RIGHT_RULES = frozenset({Rule.BOXDH_R, Rule.BOXD_R})

Actives = Tuple[List[Formula], List[Formula]]


@dataclass(frozen=True, init=False)
class Sequent:
    """``left => right`` over multisets of formulas of one sort."""

    left: Tuple[Formula, ...]
    right: Tuple[Formula, ...]

    def __init__(self, left: Iterable[Formula] = (), right: Iterable[Formula] = ()):
        object.__setattr__(self, "left", tuple(sorted_formulas(left)))
        object.__setattr__(self, "right", tuple(sorted_formulas(right)))

    def formulas(self) -> Tuple[Formula, ...]:
        return self.left + self.right

    def __str__(self) -> str:
        left = ", ".join(format_formula(a) for a in self.left)
        right = ", ".join(format_formula(a) for a in self.right)
        return f"{left} => {right}".strip()


@dataclass(frozen=True)
class Derivation:
    """A proof tree node. ``principal`` is the rule's main formula (the cut
    formula for Cut); ``side`` picks the conjunct/disjunct of AndL/OrR;
    ``index``, ``r_part`` and ``i_part`` describe indexed modal right rules."""

    conclusion: Sequent
    rule: Rule
    premises: Tuple["Derivation", ...] = ()
    principal: Optional[Formula] = None
    side: Optional[int] = None
    index: Optional[int] = None
    r_part: Tuple[Formula, ...] = field(default=())
    i_part: Tuple[Formula, ...] = field(default=())

    @cached_property
    def height(self) -> int:
        return 1 + max((p.height for p in self.premises), default=0)

    @cached_property
    def size(self) -> int:
        return 1 + sum(p.size for p in self.premises)

    def __str__(self) -> str:
        return f"{self.rule.value}: {self.conclusion}"


def iter_nodes(d: Derivation) -> Iterator[Derivation]:
    """Pre-order traversal, left premise first."""
    stack = [d]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(reversed(node.premises))


def is_cut_free(d: Derivation) -> bool:
    return all(n.rule != Rule.CUT for n in iter_nodes(d))


def count_cuts(d: Derivation) -> int:
    return sum(1 for n in iter_nodes(d) if n.rule == Rule.CUT)


def max_cut_complexity(d: Derivation) -> int:
    """Largest cut formula complexity in ``d``; 0 when cut-free."""
    return max(
        (complexity(n.principal) for n in iter_nodes(d) if n.rule == Rule.CUT and n.principal),
        default=0,
    )


def sequent_formula(s: Sequent) -> Formula:
    """The formula a sequent stands for: ``/\\left -> \\/right`` (just the disjunction
    when the left side is empty, ``bot`` for an empty right side)."""
    succedent = disj(list(s.right))
    if not s.left:
        return succedent
    return Imp(conj(list(s.left)), succedent)


# Rule shapes


def rule_shape(
    rule: Rule, principal: Optional[Formula], side: Optional[int] = None
) -> Tuple[List[Actives], Actives]:
    """Active formulas per premise and the formulas added to the conclusion.

    Raises:
        DerivationError: If the principal formula does not fit the rule
    """
    p = principal
    if p is None:
        raise DerivationError(f"{rule.value} needs a principal formula")

    def expect(kind) -> None:
        if not isinstance(p, kind):
            raise DerivationError(f"{rule.value} cannot act on {format_formula(p)}")

    def pick(a: Union[And, Or]) -> Formula:
        if side not in (0, 1):
            raise DerivationError(f"{rule.value} needs side 0 or 1, got {side}")
        return a.left if side == 0 else a.right

    if rule == Rule.WL:
        return [([], [])], ([p], [])
    if rule == Rule.WR:
        return [([], [])], ([], [p])
    if rule == Rule.CL:
        return [([p, p], [])], ([p], [])
    if rule == Rule.CR:
        return [([], [p, p])], ([], [p])
    if rule == Rule.CUT:
        return [([], [p]), ([p], [])], ([], [])
    if rule == Rule.AND_L:
        expect(And)
        return [([pick(p)], [])], ([p], [])
    if rule == Rule.AND_R:
        expect(And)
        return [([], [p.left]), ([], [p.right])], ([], [p])
    if rule == Rule.OR_L:
        expect(Or)
        return [([p.left], []), ([p.right], [])], ([p], [])
    if rule == Rule.OR_R:
        expect(Or)
        return [([], [pick(p)])], ([], [p])
    if rule == Rule.IMP_L:
        expect(Imp)
        return [([], [p.left]), ([p.right], [])], ([p], [])
    if rule == Rule.IMP_R:
        expect(Imp)
        return [([p.left], [p.right])], ([], [p])
    if rule == Rule.NEG_L:
        expect(Neg)
        return [([], [p.child])], ([p], [])
    if rule == Rule.NEG_R:
        expect(Neg)
        return [([p.child], [])], ([], [p])
    if rule in (Rule.BOXH_L, Rule.BOX_L):
        expect(Box)
        if (p.index is None) != (rule == Rule.BOX_L):
            raise DerivationError(f"{rule.value} cannot act on {format_formula(p)}")
        return [([p.child], [])], ([p], [])
    raise DerivationError(f"{rule.value} has no uniform shape")


def _remove(counter: Counter, items: Sequence[Formula], where: str) -> None:
    for a in items:
        if counter[a] <= 0:
            raise DerivationError(
                f"premise lacks active formula {format_formula(a)} on the {where}"
            )
        counter[a] -= 1


def conclude(
    rule: Rule,
    premises: Sequence[Sequent],
    principal: Optional[Formula],
    side: Optional[int] = None,
) -> Sequent:
    """Conclusion of a non-modal rule: premises minus actives, plus the principal."""
    shape, (add_left, add_right) = rule_shape(rule, principal, side)
    if len(shape) != len(premises):
        raise DerivationError(f"{rule.value} takes {len(shape)} premises, got {len(premises)}")
    left: Counter = Counter()
    right: Counter = Counter()
    for (act_left, act_right), s in zip(shape, premises):
        lc, rc = Counter(s.left), Counter(s.right)
        _remove(lc, act_left, "left")
        _remove(rc, act_right, "right")
        left += lc
        right += rc
    left.update(add_left)
    right.update(add_right)
    return Sequent(left.elements(), right.elements())


def apply_rule(
    rule: Rule,
    premises: Sequence[Derivation],
    principal: Optional[Formula],
    side: Optional[int] = None,
) -> Derivation:
    conclusion = conclude(rule, [p.conclusion for p in premises], principal, side)
    return Derivation(conclusion, rule, tuple(premises), principal, side)


def axiom(a: Formula) -> Derivation:
    return Derivation(Sequent([a], [a]), Rule.AX, principal=a)


def bot_left() -> Derivation:
    return Derivation(Sequent([BOT], []), Rule.BOT_L)


def top_right() -> Derivation:
    return Derivation(Sequent([], [TOP]), Rule.TOP_R)


def modal_premise(
    rule: Rule,
    context: Sequence[Formula],
    principal: Optional[Formula],
    index: Optional[int] = None,
) -> Tuple[Sequent, Tuple[Formula, ...], Tuple[Formula, ...]]:
    """Premise a modal right rule needs for the given conclusion context.

    Returns:
        (premise sequent, R-part, I-part); the parts are empty for uni-modal rules.

    Raises:
        DerivationError: If the context or principal violates the rule's side conditions
    """
    indexed = rule in INDEXED_RIGHT_RULES
    if rule in EMPTY_RIGHT_RULES:
        if principal is not None:
            raise DerivationError(f"{rule.value} has an empty succedent")
        if indexed and index is None:
            raise DerivationError(f"{rule.value} needs an index")
        body = None
        n = index
    else:
        if not isinstance(principal, Box) or (principal.index is None) == indexed:
            shown = format_formula(principal) if principal is not None else "nothing"
            raise DerivationError(f"{rule.value} cannot introduce {shown}")
        body = principal.child
        n = principal.index
        if index is not None and index != n:
            raise DerivationError(f"{rule.value} index {index} differs from [{n}]")

    premise_left: List[Formula] = []
    r_part: List[Formula] = []
    i_part: List[Formula] = []
    for g in context:
        if not isinstance(g, Box) or (g.index is None) == indexed:
            raise DerivationError(f"{rule.value} context member {format_formula(g)} is not a box")
        if indexed:
            assert n is not None
            if g.index > n:
                raise DerivationError(
                    f"{rule.value} context member {format_formula(g)} exceeds index {n}"
                )
            if g.index == n:
                r_part.append(g)
                premise_left.append(g.child)
            elif rule == Rule.BOXSH_R:
                i_part.append(g)
                premise_left.append(g)
            else:
                i_part.append(g)
                premise_left.extend((g.child, g))
        elif rule == Rule.BOXS_R:
            premise_left.append(g)
        else:
            premise_left.extend((g.child, g))
    if rule == Rule.GL_R:
        premise_left.append(principal)

    right = [] if body is None else [body]
    return (
        Sequent(premise_left, right),
        tuple(sorted_formulas(r_part)),
        tuple(sorted_formulas(i_part)),
    )


def modal_node(
    rule: Rule,
    context: Sequence[Formula],
    principal: Optional[Formula],
    premise: Derivation,
    index: Optional[int] = None,
) -> Derivation:
    """Apply a modal right rule, fitting ``premise`` to the exact premise required."""
    expected, r_part, i_part = modal_premise(rule, context, principal, index)
    fitted = fit(premise, expected)
    n = index if principal is None else getattr(principal, "index", None)
    right = [] if principal is None else [principal]
    return Derivation(
        Sequent(context, right),
        rule,
        (fitted,),
        principal,
        None,
        n if rule in INDEXED_RIGHT_RULES else None,
        r_part,
        i_part,
    )


def fit(d: Derivation, target: Sequent) -> Derivation:
    """Adjust ``d`` to end in ``target`` using weakenings and contractions.

    Raises:
        DerivationError: If ``d`` ends in a formula absent from ``target``
    """
    if d.conclusion == target:
        return d
    current = d
    for side_name, source, goal, weaken, contract in (
        ("left", d.conclusion.left, target.left, Rule.WL, Rule.CL),
        ("right", d.conclusion.right, target.right, Rule.WR, Rule.CR),
    ):
        have, want = Counter(source), Counter(goal)
        for a in sorted_formulas(set(have) | set(want)):
            diff = want[a] - have[a]
            if diff < 0 and want[a] == 0:
                raise DerivationError(
                    f"cannot remove {format_formula(a)} from the {side_name} of {d.conclusion}"
                )
            rule = weaken if diff > 0 else contract
            for _ in range(abs(diff)):
                current = apply_rule(rule, [current], a)
    return current


def substitute_derivation(d: Derivation, mapping: Mapping[str, Formula]) -> Derivation:
    """Apply an atom substitution to every formula of a derivation."""
    if not mapping:
        return d
    memo: Dict[int, Derivation] = {}

    def sub(a: Optional[Formula]) -> Optional[Formula]:
        return None if a is None else subst_atoms(a, mapping)

    def walk(node: Derivation) -> Derivation:
        key = id(node)
        if key not in memo:
            memo[key] = replace(
                node,
                conclusion=Sequent(
                    [sub(a) for a in node.conclusion.left], [sub(a) for a in node.conclusion.right]
                ),
                premises=tuple(walk(p) for p in node.premises),
                principal=sub(node.principal),
                r_part=tuple(sorted_formulas(sub(a) for a in node.r_part)),
                i_part=tuple(sorted_formulas(sub(a) for a in node.i_part)),
            )
        return memo[key]

    return walk(d)


# Checking


def calculus_rules(calculus: LogicId) -> frozenset:
    """Rules available in the sequent calculus of ``calculus``.

    Raises:
        UnsupportedLogicError: If the logic has no sequent calculus
    """
    profile = get_profile(calculus)
    if profile.decision != DecisionMethod.SEQUENT:
        raise UnsupportedLogicError(f"{profile.id.value} has no sequent calculus")
    return BASE_RULES | {Rule(r) for r in profile.modal_rules}


def _check_node(node: Derivation, allowed: frozenset, hierarchical: bool) -> Optional[str]:
    if node.rule not in allowed:
        return "rule not available in this calculus"
    for a in node.conclusion.formulas():
        if hierarchical and not is_wff_h(a):
            return f"{format_formula(a)} is not a well-formed indexed formula"
        if not hierarchical and not is_unimodal(a):
            return f"{format_formula(a)} carries box indices"

    if node.rule in AXIOM_RULES:
        if node.premises:
            return "axioms take no premises"
        if node.rule == Rule.AX:
            a = node.principal
            if a is None or node.conclusion != Sequent([a], [a]):
                return "axiom must have the form A => A"
        elif node.rule == Rule.BOT_L and node.conclusion != Sequent([BOT], []):
            return "axiom must have the form bot =>"
        elif node.rule == Rule.TOP_R and node.conclusion != Sequent([], [TOP]):
            return "axiom must have the form => top"
        return None

    try:
        if node.rule in RIGHT_MODAL_RULES:
            if len(node.premises) != 1:
                return "modal rules take one premise"
            expected, r_part, i_part = modal_premise(
                node.rule, node.conclusion.left, node.principal, node.index
            )
            right = () if node.principal is None else (node.principal,)
            if node.conclusion.right != right:
                return "succedent must be exactly the principal formula"
            if node.premises[0].conclusion != expected:
                return f"premise should be {expected}, found {node.premises[0].conclusion}"
            if (node.r_part, node.i_part) != (r_part, i_part):
                return "stored context partition does not match the indices"
            if node.rule in INDEXED_RIGHT_RULES:
                n = node.principal.index if node.principal is not None else node.index
                if node.index != n:
                    return f"recorded index {node.index} differs from {n}"
            return None
        computed = conclude(
            node.rule, [p.conclusion for p in node.premises], node.principal, node.side
        )
    except DerivationError as e:
        return str(e)
    if computed != node.conclusion:
        return f"conclusion should be {computed}, found {node.conclusion}"
    return None


def check_derivation(calculus: LogicId, d: Derivation) -> CheckResult:
    """Check every node of ``d`` against the rules of ``calculus``.

    Returns:
        CheckResult naming the first failing node as a path like ``root.0.1``

    Raises:
        UnsupportedLogicError: If the logic has no sequent calculus
    """
    allowed = calculus_rules(calculus)
    hierarchical = get_profile(calculus).is_hierarchical
    stack = [(d, "root")]
    while stack:
        node, path = stack.pop()
        reason = _check_node(node, allowed, hierarchical)
        if reason is not None:
            logger.debug(f"Derivation check failed at {path}: {reason}")
            return CheckResult.fail(path, f"{node.rule.value}: {reason}")
        for i in reversed(range(len(node.premises))):
            stack.append((node.premises[i], f"{path}.{i}"))
    return CheckResult.ok()
