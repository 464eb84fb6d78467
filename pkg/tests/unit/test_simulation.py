"""Tests for translating between Hilbert proofs and derivations."""

import pytest

from hml.core import (
    PreconditionError,
    UnsupportedLogicError,
    check_derivation,
    check_hilbert_proof,
    derivation_from_hilbert,
    hilbert_from_derivation,
    parse_goal,
    parse_h,
    prove,
)
from hml.core.hilbert import MP, AxiomRef, HilbertLine, HilbertProof, Hyp, Nec, Taut
from hml.core.sequent import Rule, Sequent, iter_nodes, sequent_formula
from hml.core.syntax import Atom, Box, Imp
from hml.models import AxiomScheme, LogicId

p = Atom("p")


def proof(*lines, hypotheses=()):
    return HilbertProof(tuple(hypotheses), tuple(HilbertLine(f, j) for f, j in lines))


@pytest.mark.unit
class TestHilbertFromDerivation:
    """Test replaying derivations as Hilbert proofs."""

    def test_necessitation(self):
        d = prove(LogicId.K4H, parse_goal("[0](p -> p)"))
        result = hilbert_from_derivation(LogicId.K4H, d)
        assert check_hilbert_proof(LogicId.K4H, result, parse_h("[0](p -> p)"))

    def test_seriality_uses_dh(self):
        d = prove(LogicId.KD4H, parse_goal("[0]bot -> bot"))
        result = hilbert_from_derivation(LogicId.KD4H, d)
        assert check_hilbert_proof(LogicId.KD4H, result, parse_h("[0]bot -> bot"))
        schemes = {
            line.justification.scheme
            for line in result.lines
            if isinstance(line.justification, AxiomRef)
        }
        assert AxiomScheme.DH in schemes

    def test_lifting_with_antecedent(self):
        s = parse_goal("[0]p => [1][0]p")
        result = hilbert_from_derivation(LogicId.K4H, prove(LogicId.K4H, s))
        assert check_hilbert_proof(LogicId.K4H, result, sequent_formula(s))

    @pytest.mark.parametrize("logic", [LogicId.K4H, LogicId.KD4H, LogicId.S4H])
    def test_distribution(self, logic):
        s = parse_goal("[1](p -> q), [0]p => [1]q")
        result = hilbert_from_derivation(logic, prove(logic, s))
        assert check_hilbert_proof(logic, result, sequent_formula(s))

    def test_reflexive_step(self):
        s = parse_goal("[1]([0]p -> p)")
        result = hilbert_from_derivation(LogicId.S4H, prove(LogicId.S4H, s))
        assert check_hilbert_proof(LogicId.S4H, result, sequent_formula(s))

    def test_rejects_invalid_derivation(self):
        d = prove(LogicId.S4H, parse_goal("[0]p -> p"))
        with pytest.raises(PreconditionError):
            hilbert_from_derivation(LogicId.K4H, d)

    def test_unsupported_logic(self):
        d = prove(LogicId.K4, Sequent([], [Imp(p, p)]))
        with pytest.raises(UnsupportedLogicError):
            hilbert_from_derivation(LogicId.K4, d)


@pytest.mark.unit
class TestDerivationFromHilbert:
    """Test simulating Hilbert proofs with cuts."""

    @pytest.mark.parametrize(
        "logic,text",
        [
            (LogicId.K4H, "[0]p -> [1]p"),
            (LogicId.K4H, "[0]p -> [1][0]p"),
            (LogicId.K4H, "[1](p -> q) -> [1]p -> [1]q"),
            (LogicId.KD4H, "-[2]bot"),
            (LogicId.S4H, "[2]p -> p"),
            (LogicId.S4H, "[0]p -> [1]p"),
            (LogicId.S4H, "[0]p -> [1][0]p"),
        ],
    )
    def test_axiom_trees(self, logic, text):
        a = parse_h(text)
        d = derivation_from_hilbert(logic, proof((a, AxiomRef())))
        assert d.conclusion == Sequent([], [a])
        assert check_derivation(logic, d)

    def test_h_tree_shape(self):
        d = derivation_from_hilbert(LogicId.K4H, proof((parse_h("[0]p -> [1]p"), AxiomRef())))
        assert d.rule == Rule.IMP_R
        modal = d.premises[0]
        assert modal.rule == Rule.BOX4H_R
        assert modal.i_part == (Box(0, p),)

    def test_necessitated_tautology(self):
        pr = proof((Imp(p, p), Taut()), (Box(0, Imp(p, p)), Nec(0, 1)))
        d = derivation_from_hilbert(LogicId.K4H, pr)
        assert d.rule == Rule.BOX4H_R
        assert check_derivation(LogicId.K4H, d)

    def test_modus_ponens_becomes_cut(self):
        h = parse_h("[0]p -> [1]p")
        goal = Imp(Box(0, p), Box(2, p))
        pr = proof(
            (h, AxiomRef()),
            (parse_h("[1]p -> [2]p"), AxiomRef()),
            (Imp(h, Imp(parse_h("[1]p -> [2]p"), goal)), Taut()),
            (Imp(parse_h("[1]p -> [2]p"), goal), MP(1, 3)),
            (goal, MP(2, 4)),
        )
        assert check_hilbert_proof(LogicId.K4H, pr, goal)
        d = derivation_from_hilbert(LogicId.K4H, pr)
        assert d.conclusion == Sequent([], [goal])
        assert any(node.rule == Rule.CUT for node in iter_nodes(d))
        assert check_derivation(LogicId.K4H, d)

    def test_hypotheses_rejected(self):
        pr = proof((p, Hyp(0)), hypotheses=[p])
        with pytest.raises(PreconditionError):
            derivation_from_hilbert(LogicId.K4H, pr)

    def test_invalid_proof_rejected(self):
        with pytest.raises(PreconditionError):
            derivation_from_hilbert(LogicId.K4H, proof((parse_h("[0]p -> p"), AxiomRef())))
