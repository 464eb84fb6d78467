"""Translations between Hilbert proofs and Gentzen derivations.

Both directions are defined for the hierarchical calculi K4h, KD4h and S4h.
Going from Gentzen to Hilbert, each node becomes a line proving the formula of
its endsequent (``sequent_formula``); propositional steps are closed by one
tautology and modus ponens, modal right rules are replayed through
necessitation, the Kh distribution and lifting lemmas built from H and 4h.
Going from Hilbert to Gentzen, axioms get fixed derivation trees and modus
ponens becomes a cut.
"""

import logging
from typing import Dict, List

from hml.core.hilbert import (
    MP,
    AxiomRef,
    HilbertProof,
    Hyp,
    Nec,
    ProofBuilder,
    Taut,
    axiom_instance,
    check_hilbert_proof,
    is_axiom_instance,
)
from hml.core.logic_registry import UnsupportedLogicError
from hml.core.search import prove_propositional
from hml.core.sequent import (
    AXIOM_RULES,
    RIGHT_MODAL_RULES,
    Derivation,
    DerivationError,
    Rule,
    Sequent,
    apply_rule,
    axiom,
    bot_left,
    calculus_rules,
    check_derivation,
    modal_node,
    sequent_formula,
)
from hml.core.syntax import (
    BOT,
    Box,
    Formula,
    Imp,
    PreconditionError,
    format_formula,
    implies_all,
)
from hml.models import AxiomScheme, LogicId

logger = logging.getLogger(__name__)

SIMULATED_CALCULI = (LogicId.K4H, LogicId.KD4H, LogicId.S4H)


def _require_hierarchical_calculus(calculus: LogicId) -> None:
    if calculus not in SIMULATED_CALCULI:
        raise UnsupportedLogicError(
            f"proof translation is available for K4h, KD4h and S4h, not {calculus.value}"
        )


def _right_rule(calculus: LogicId) -> Rule:
    return Rule.BOXSH_R if Rule.BOXSH_R in calculus_rules(calculus) else Rule.BOX4H_R


# Gentzen to Hilbert


class _HilbertReplay:
    """Replays a checked derivation bottom-up into one ProofBuilder."""

    def __init__(self, calculus: LogicId):
        self.calculus = calculus
        self.builder = ProofBuilder(calculus)
        self._done: Dict[int, int] = {}

    def line_for(self, d: Derivation) -> int:
        key = id(d)
        if key not in self._done:
            self._done[key] = self._replay(d)
        return self._done[key]

    def _replay(self, d: Derivation) -> int:
        b = self.builder
        target = sequent_formula(d.conclusion)
        if d.rule in AXIOM_RULES:
            return b.taut(target)
        if d.rule in RIGHT_MODAL_RULES:
            return self._modal(d)
        premises = [self.line_for(p) for p in d.premises]
        if d.rule == Rule.BOXH_L:
            box = d.principal
            assert isinstance(box, Box)
            reflexivity = axiom_instance(AxiomScheme.TH, box.index, box.child)
            premises.append(b.axiom(reflexivity, AxiomScheme.TH))
        return b.derive_by_taut(target, premises)

    def _modal(self, d: Derivation) -> int:
        b = self.builder
        n = d.index
        assert n is not None
        premise = d.premises[0]
        body = premise.conclusion.right[0] if premise.conclusion.right else BOT
        items: List[Formula] = list(premise.conclusion.left)

        # Curry the premise and box it.
        curried = b.derive_by_taut(implies_all(items, body), [self.line_for(premise)])
        boxed = b.nec(curried, n)

        current = b.distribute(boxed, n, items, d.conclusion.left, self._lemmas(d, n))
        if d.rule == Rule.BOXDH_R:
            seriality = b.axiom(axiom_instance(AxiomScheme.DH, n), AxiomScheme.DH)
            return b.derive_by_taut(sequent_formula(d.conclusion), [current, seriality])
        return b.derive_by_taut(sequent_formula(d.conclusion), [current])

    def _lemmas(self, d: Derivation, n: int) -> Dict[Formula, int]:
        """For each premise antecedent l, a line ``source -> [n]l`` with source in the context."""
        lemmas: Dict[Formula, int] = {}
        b = self.builder
        for box in d.r_part:
            lemmas.setdefault(box.child, b.taut(Imp(box, box)))
        for box in d.i_part:
            lemmas.setdefault(box, b.lift_box(box, n))
            if d.rule != Rule.BOXSH_R:
                lemmas.setdefault(box.child, b.raise_box(box, n))
        return lemmas


def hilbert_from_derivation(calculus: LogicId, d: Derivation) -> HilbertProof:
    """Build a Hilbert proof of ``sequent_formula(d.conclusion)``.

    Raises:
        UnsupportedLogicError: Outside K4h, KD4h and S4h
        PreconditionError: If ``d`` does not check in ``calculus``
    """
    _require_hierarchical_calculus(calculus)
    result = check_derivation(calculus, d)
    if not result:
        raise PreconditionError(f"derivation does not check: {result.describe()}")
    replay = _HilbertReplay(calculus)
    proof = replay.builder.conclude(replay.line_for(d))
    logger.debug(f"Replayed {d.size} derivation nodes as {len(proof)} Hilbert lines")
    return proof


# Hilbert to Gentzen


def _axiom_tree(calculus: LogicId, f: Formula) -> Derivation:
    """Derivation of ``=> f`` for an axiom instance, following the standard trees."""
    found = is_axiom_instance(calculus, f)
    if found is None:
        raise PreconditionError(f"{format_formula(f)} is not an axiom of {calculus.value}")
    scheme, n = found.scheme, found.n
    assert n is not None
    right_rule = _right_rule(calculus)
    reflexive = right_rule == Rule.BOXSH_R

    if scheme == AxiomScheme.KH:
        a, b = found.components
        detach = apply_rule(Rule.IMP_L, [axiom(a), axiom(b)], Imp(a, b))
        boxed = modal_node(right_rule, [Box(n, Imp(a, b)), Box(n, a)], Box(n, b), detach)
        inner = apply_rule(Rule.IMP_R, [boxed], Imp(Box(n, a), Box(n, b)))
        return apply_rule(Rule.IMP_R, [inner], f)

    (a,) = found.components or (BOT,)
    if scheme == AxiomScheme.H:
        source = apply_rule(Rule.BOXH_L, [axiom(a)], Box(n, a)) if reflexive else axiom(a)
        boxed = modal_node(right_rule, [Box(n, a)], Box(n + 1, a), source)
        return apply_rule(Rule.IMP_R, [boxed], f)
    if scheme == AxiomScheme.FOUR_H:
        boxed = modal_node(right_rule, [Box(n, a)], Box(n + 1, Box(n, a)), axiom(Box(n, a)))
        return apply_rule(Rule.IMP_R, [boxed], f)
    if scheme == AxiomScheme.DH:
        serial = modal_node(Rule.BOXDH_R, [Box(n, BOT)], None, bot_left(), n + 1)
        return apply_rule(Rule.NEG_R, [serial], f)
    if scheme == AxiomScheme.TH:
        unboxed = apply_rule(Rule.BOXH_L, [axiom(a)], Box(n, a))
        return apply_rule(Rule.IMP_R, [unboxed], f)
    raise UnsupportedLogicError(f"no sequent tree for axiom scheme {scheme.value}")


def derivation_from_hilbert(calculus: LogicId, proof: HilbertProof) -> Derivation:
    """Build a derivation (with cuts) of ``=> goal`` from a hypothesis-free Hilbert proof.

    Raises:
        UnsupportedLogicError: Outside K4h, KD4h and S4h
        PreconditionError: If the proof has hypotheses or does not check
    """
    _require_hierarchical_calculus(calculus)
    if proof.hypotheses:
        raise PreconditionError("only hypothesis-free proofs can be turned into derivations")
    result = check_hilbert_proof(calculus, proof)
    if not result:
        raise PreconditionError(f"Hilbert proof does not check: {result.describe()}")

    right_rule = _right_rule(calculus)
    built: List[Derivation] = []
    for line in proof.lines:
        f = line.formula
        j = line.justification
        if isinstance(j, Taut):
            d = prove_propositional(calculus, Sequent([], [f]))
            if d is None:
                raise DerivationError(f"tautology without propositional proof: {format_formula(f)}")
        elif isinstance(j, AxiomRef):
            d = _axiom_tree(calculus, f)
        elif isinstance(j, MP):
            first, second = built[j.i - 1], built[j.j - 1]
            minor, major = first, second
            if second.conclusion.right[0] != Imp(first.conclusion.right[0], f):
                minor, major = second, first
            antecedent = minor.conclusion.right[0]
            detach = apply_rule(Rule.IMP_L, [minor, axiom(f)], Imp(antecedent, f))
            d = apply_rule(Rule.CUT, [major, detach], Imp(antecedent, f))
        elif isinstance(j, Nec):
            d = modal_node(right_rule, [], f, built[j.line - 1])
        else:
            assert isinstance(j, Hyp)
            raise PreconditionError("hypothesis lines have no derivation")
        built.append(d)
    logger.debug(f"Simulated {len(proof)} Hilbert lines in {calculus.value}")
    return built[-1]

