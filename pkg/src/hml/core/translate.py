"""The t-translation into uni-modal logic over the reserved atoms and its left inverse.

``t`` sends ``[n]A`` to ``[](q0 & ... & qn -> A^t)``. The image lies in a set X
of uni-modal formulas whose boxes have one of two shapes:

    first kind:  [](q0 & ... & qn -> B)            n above every q-index of B
    second kind: [](q0 & ... & qm & bot ... -> B)  m at least every q-index of B, m < n

``s`` maps X back to indexed formulas (first-kind boxes to ``[n]``, second-kind
boxes to ``top``). Cut-free proofs over X are made *good* (no modal right rule
carries a context of higher q-rank than its principal) by ``goodify``, which is
what lets a uni-modal proof of ``A^t`` be read back as a proof of ``A``.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple, Union

from hml.core.cutelim import eliminate_cuts
from hml.core.hilbert import HilbertProof, ProofBuilder, axiom_instance, deduce
from hml.core.logic_registry import UnsupportedLogicError
from hml.core.necessitation import strong_necessitation
from hml.core.search import prove
from hml.core.sequent import (
    AXIOM_RULES,
    Derivation,
    DerivationError,
    Rule,
    Sequent,
    apply_rule,
    check_derivation,
    fit,
    is_cut_free,
    iter_nodes,
    modal_node,
    sequent_formula,
    substitute_derivation,
)
from hml.core.simulation import derivation_from_hilbert
from hml.core.syntax import (
    BINARY,
    BOT,
    TOP,
    Atom,
    Bottom,
    Box,
    Formula,
    Imp,
    Neg,
    PreconditionError,
    Top,
    atoms,
    check_wff_h,
    conj,
    conjuncts,
    format_formula,
    h_box,
    implies_all,
    is_reserved,
    q_rank,
    reserved_atom,
    sorted_formulas,
    subst_atoms,
)
from hml.models import AxiomScheme, LogicId

logger = logging.getLogger(__name__)

X_CALCULI = (LogicId.K4Q, LogicId.S4Q)
PULL_BACK_TARGETS = {LogicId.K4Q: LogicId.K4H, LogicId.S4Q: LogicId.S4H}
GOOD_RULES = (Rule.BOX4_R, Rule.BOXS_R)


class NotXProofError(Exception):
    """Raised when a derivation contains a formula outside X."""

    pass


@dataclass(frozen=True)
class NotInX:
    pass


@dataclass(frozen=True)
class NonBoxedMember:
    pass


@dataclass(frozen=True)
class FirstKind:
    n: int
    core: Formula


@dataclass(frozen=True)
class SecondKind:
    m: int
    n: int
    core: Formula


XClass = Union[NotInX, NonBoxedMember, FirstKind, SecondKind]


def q_conjunction(n: int) -> Formula:
    """``q0 & q1 & ... & qn``, left-nested."""
    return conj([reserved_atom(i) for i in range(n + 1)])


# t


def t_translate(a: Formula) -> Formula:
    """Uni-modal image of a well-formed indexed formula.

    Raises:
        PreconditionError: If ``a`` already uses the reserved atoms
        NestingError, SortError: If ``a`` is not a well-formed indexed formula
    """
    reserved = sorted(name for name in atoms(a) if is_reserved(name))
    if reserved:
        raise PreconditionError(
            f"reserved atoms {', '.join(reserved)} occur in {format_formula(a)}"
        )
    check_wff_h(a)
    return _t(a)


@lru_cache(maxsize=None)
def _t(a: Formula) -> Formula:
    if isinstance(a, Box):
        return Box(None, Imp(q_conjunction(a.index), _t(a.child)))
    if isinstance(a, Neg):
        return Neg(_t(a.child))
    if isinstance(a, BINARY):
        return type(a)(_t(a.left), _t(a.right))
    return a


# X


def _box_shape(antecedent: Formula) -> Optional[Tuple[int, int]]:
    """(m, n) when the antecedent is ``q0 & .. & qm`` followed by n - m bots."""
    items = conjuncts(antecedent)
    m = -1
    while m + 1 < len(items) and items[m + 1] == reserved_atom(m + 1):
        m += 1
    if m < 0:
        return None
    if any(item != BOT for item in items[m + 1 :]):
        return None
    return m, len(items) - 1


@lru_cache(maxsize=None)
def classify_x(b: Formula) -> XClass:
    """Decide membership in X, tagging boxed members with their kind."""
    if isinstance(b, (Atom, Bottom, Top)):
        return NonBoxedMember()
    if isinstance(b, Neg):
        return NotInX() if isinstance(classify_x(b.child), NotInX) else NonBoxedMember()
    if isinstance(b, BINARY):
        if isinstance(classify_x(b.left), NotInX) or isinstance(classify_x(b.right), NotInX):
            return NotInX()
        return NonBoxedMember()
    if not isinstance(b, Box) or b.index is not None or not isinstance(b.child, Imp):
        return NotInX()
    core = b.child.right
    shape = _box_shape(b.child.left)
    if shape is None or isinstance(classify_x(core), NotInX):
        return NotInX()
    m, n = shape
    inner = q_rank(core)
    if m == n and n > inner:
        return FirstKind(n, core)
    if m < n and m >= inner:
        return SecondKind(m, n, core)
    return NotInX()


def in_x(b: Formula) -> bool:
    return not isinstance(classify_x(b), NotInX)


def is_second_kind(b: Formula) -> bool:
    return isinstance(classify_x(b), SecondKind)


# s


def s_translate(b: Formula) -> Formula:
    """Indexed formula read off a member of X.

    Raises:
        PreconditionError: If ``b`` is not in X
    """
    if not in_x(b):
        raise PreconditionError(f"{format_formula(b)} is not in X")
    return _s(b)


@lru_cache(maxsize=None)
def _s(b: Formula) -> Formula:
    if isinstance(b, Atom):
        return TOP if is_reserved(b.name) else b
    if isinstance(b, Neg):
        return Neg(_s(b.child))
    if isinstance(b, BINARY):
        return type(b)(_s(b.left), _s(b.right))
    if isinstance(b, Box):
        kind = classify_x(b)
        if isinstance(kind, FirstKind):
            return h_box(kind.n, _s(kind.core))
        return TOP
    return b


def sigma_mapping(n: int, formulas: Sequence[Formula]) -> Dict[str, Formula]:
    """Atom map sending every q_i with i > n occurring in ``formulas`` to bot."""
    top = max((q_rank(f) for f in formulas), default=-1)
    return {reserved_atom(i).name: BOT for i in range(n + 1, top + 1)}


def sigma_n(b: Formula, n: int) -> Formula:
    """Replace every q_i with i > n by bot."""
    return subst_atoms(b, sigma_mapping(n, [b]))


# Good X-proofs


def _require_x_calculus(calculus: LogicId) -> None:
    if calculus not in X_CALCULI:
        raise UnsupportedLogicError(f"X-proofs live in K4Q and S4Q, not {calculus.value}")


def _require_x(d: Derivation) -> None:
    for node in iter_nodes(d):
        for f in node.conclusion.formulas():
            if not in_x(f):
                raise NotXProofError(
                    f"{format_formula(f)} in {node.rule.value} node is not in X"
                )


def is_good_xproof(calculus: LogicId, d: Derivation) -> bool:
    """True iff no uni-modal right rule carries context of higher q-rank than its principal.

    Raises:
        NotXProofError: If some formula of ``d`` is not in X
    """
    _require_x_calculus(calculus)
    _require_x(d)
    for node in iter_nodes(d):
        if node.rule in GOOD_RULES:
            bound = q_rank(node.principal)
            if any(q_rank(g) > bound for g in node.conclusion.left):
                return False
    return True


class _Goodifier:
    """Rebuilds an X-proof bottom-up, collecting second-kind side formulas."""

    def __init__(self) -> None:
        self._done: Dict[int, Tuple[Tuple[Formula, ...], Derivation]] = {}

    def run(self, d: Derivation) -> Tuple[Tuple[Formula, ...], Derivation]:
        key = id(d)
        if key not in self._done:
            self._done[key] = self._rebuild(d)
        return self._done[key]

    def _rebuild(self, d: Derivation) -> Tuple[Tuple[Formula, ...], Derivation]:
        if d.rule in AXIOM_RULES:
            return (), d
        if d.rule in GOOD_RULES:
            return self._modal(d)

        parts = [self.run(p) for p in d.premises]
        sigma = tuple(sorted_formulas({f for side, _ in parts for f in side}))
        premises = [
            fit(built, Sequent(list(sigma) + list(p.conclusion.left), p.conclusion.right))
            for p, (_, built) in zip(d.premises, parts)
        ]
        rebuilt = apply_rule(d.rule, premises, d.principal, d.side)
        target = Sequent(list(sigma) + list(d.conclusion.left), d.conclusion.right)
        return sigma, fit(rebuilt, target)

    def _modal(self, d: Derivation) -> Tuple[Tuple[Formula, ...], Derivation]:
        principal = d.principal
        assert principal is not None
        side, premise = self.run(d.premises[0])
        r = q_rank(principal)
        context = list(d.conclusion.left)
        low = [g for g in context if q_rank(g) <= r]
        high = [g for g in context if q_rank(g) > r]

        mapping = sigma_mapping(r, premise.conclusion.formulas())
        lowered = substitute_derivation(premise, mapping)
        new_side = tuple(
            sorted_formulas({subst_atoms(f, mapping) for f in list(side) + high})
        )
        node = modal_node(d.rule, list(new_side) + low, principal, lowered)
        if high:
            logger.debug(
                f"Lowered {len(high)} context boxes below q-rank {r} at {format_formula(principal)}"
            )
        return new_side, fit(node, Sequent(list(new_side) + context, [principal]))


def goodify(calculus: LogicId, d: Derivation) -> Tuple[List[Formula], Derivation]:
    """Turn an X-proof of ``G => D`` into a good X-proof of ``S, G => D``.

    Returns:
        (S, proof) where every member of S is a second-kind box

    Raises:
        PreconditionError: If ``d`` does not check or contains cuts
        NotXProofError: If some formula of ``d`` is not in X
    """
    _require_x_calculus(calculus)
    result = check_derivation(calculus, d)
    if not result:
        raise PreconditionError(f"derivation does not check: {result.describe()}")
    if not is_cut_free(d):
        raise PreconditionError("X-proofs are cut-free")
    _require_x(d)
    sigma, good = _Goodifier().run(d)
    return list(sigma), good


# Reading good proofs back


def s_sequent(s: Sequent) -> Sequent:
    """Apply ``s`` to both sides of a sequent over X."""
    return Sequent([s_translate(f) for f in s.left], [s_translate(f) for f in s.right])


class _ReadBack:
    """Replays a good X-proof node by node as a Hilbert proof in K4h or S4h.

    Every node gets a line proving the sequent formula of the s-image of its
    endsequent. Modal right steps go through strong necessitation at the level
    of the principal box.
    """

    def __init__(self, calculus: LogicId):
        self.calculus = calculus
        self.target = PULL_BACK_TARGETS[calculus]
        self.builder = ProofBuilder(self.target)
        self._done: Dict[int, int] = {}

    def line(self, d: Derivation) -> int:
        key = id(d)
        if key not in self._done:
            self._done[key] = self._replay(d)
        return self._done[key]

    def _replay(self, d: Derivation) -> int:
        b = self.builder
        goal = sequent_formula(s_sequent(d.conclusion))
        if d.rule in AXIOM_RULES:
            return b.taut(goal)
        if d.rule in GOOD_RULES:
            return self._modal(d, goal)
        premises = [self.line(p) for p in d.premises]
        if d.rule == Rule.BOX_L:
            kind = classify_x(d.principal)
            if isinstance(kind, FirstKind):
                reflexivity = axiom_instance(AxiomScheme.TH, kind.n, _s(kind.core))
                premises.append(b.axiom(reflexivity, AxiomScheme.TH))
        return b.derive_by_taut(goal, premises)

    def _modal(self, d: Derivation, goal: Formula) -> int:
        kind = classify_x(d.principal)
        if not isinstance(kind, FirstKind):
            # a second-kind principal reads back as top
            return self.builder.taut(goal)
        m = kind.n
        body = _s(kind.core)
        boxes: List[Box] = []
        for g in d.conclusion.left:
            image = _s(g)
            if isinstance(image, Box):
                if image.index is None or image.index > m:
                    raise DerivationError(
                        f"context box {format_formula(image)} is above level {m} at "
                        f"{format_formula(d.principal)}"
                    )
                boxes.append(image)
        items = [] if d.rule == Rule.BOXS_R else [box.child for box in boxes]
        statement = implies_all(items, body)

        local = ProofBuilder(self.target, boxes)
        premise = local.embed(self.builder.extract(self.line(d.premises[0])))
        hypotheses = [local.hyp(k) for k in range(len(boxes))]
        proof = local.conclude(local.derive_by_taut(statement, [premise] + hypotheses))
        boxed = strong_necessitation(self.target, boxes, statement, m, proof)

        outer = ProofBuilder(self.target, boxes)
        current = outer.embed(boxed)
        rest = statement
        for k, box in enumerate(boxes if items else []):
            assert isinstance(rest, Imp)
            kh = axiom_instance(AxiomScheme.KH, m, rest.left, rest.right)
            support = [current, outer.axiom(kh, AxiomScheme.KH), outer.raise_box(box, m)]
            current = outer.derive_by_taut(Box(m, rest.right), support + [outer.hyp(k)])
            rest = rest.right
        discharged = deduce(self.target, outer.conclude(current))
        return self.builder.derive_by_taut(goal, [self.builder.embed(discharged)])


def read_back(calculus: LogicId, good: Derivation) -> HilbertProof:
    """Hilbert proof in K4h or S4h of the s-image of the endsequent of a good X-proof.

    The proof follows ``good`` node by node; its goal is
    ``sequent_formula(s_sequent(good.conclusion))``.

    Raises:
        PreconditionError: If ``good`` is not a good X-proof
        NotXProofError: If some formula of ``good`` is not in X
    """
    _require_x_calculus(calculus)
    if not is_good_xproof(calculus, good):
        raise PreconditionError("read-back needs a good X-proof")
    replay = _ReadBack(calculus)
    proof = replay.builder.conclude(replay.line(good))
    logger.debug(f"Read back {good.size} nodes as {len(proof)} Hilbert lines")
    return proof


def pull_back(calculus: LogicId, a: Formula, cut_free: bool = False) -> Optional[Derivation]:
    """Carry a uni-modal proof of ``a^t`` over to a hierarchical proof of ``a``.

    Searches a cut-free proof of ``=> a^t`` in K4Q or S4Q, makes it good and reads
    it back node by node through ``s``. The collected side formulas become
    ``top`` and drop out. The resulting Hilbert proof of ``a`` is simulated as a
    derivation in K4h or S4h, which is checked before it is returned.

    Args:
        calculus: K4Q or S4Q
        a: Well-formed indexed formula
        cut_free: Also eliminate the cuts the simulation introduces

    Returns:
        A derivation of ``=> a`` in the matching hierarchical calculus, or None
        when ``a^t`` is not provable

    Raises:
        DerivationError: If the read-back derivation does not check
    """
    _require_x_calculus(calculus)
    u = t_translate(a)
    found = prove(calculus, Sequent([], [u]))
    if found is None:
        return None
    sigma, good = goodify(calculus, found)
    target = PULL_BACK_TARGETS[calculus]
    proof = read_back(calculus, good)
    logger.debug(
        f"Good X-proof with {len(sigma)} side formulas reads back as "
        f"{s_sequent(good.conclusion)}"
    )

    builder = ProofBuilder(target)
    line = builder.derive_by_taut(a, [builder.embed(proof)])
    d = derivation_from_hilbert(target, builder.conclude(line))
    if cut_free:
        d = eliminate_cuts(target, d)
    result = check_derivation(target, d)
    if not result:
        raise DerivationError(f"read-back derivation of {format_formula(a)}: {result.describe()}")
    return d
