"""Tests for axiom recognition, Hilbert proof checking and the Z-translation."""

import pytest

from hml.core import (
    PreconditionError,
    TautologyLimitError,
    axiom_instance,
    check_hilbert_proof,
    deduce,
    is_axiom_instance,
    parse_h,
    tautology,
    z_translate,
)
from hml.core.hilbert import MP, AxiomRef, HilbertLine, HilbertProof, Hyp, Nec, ProofBuilder, Taut
from hml.core.syntax import BOT, And, Atom, Box, Imp, Neg, Or, conj, rank
from hml.models import AxiomScheme, LogicId

p, q = Atom("p"), Atom("q")


def proof(*lines, hypotheses=()):
    return HilbertProof(tuple(hypotheses), tuple(HilbertLine(f, j) for f, j in lines))


@pytest.mark.unit
class TestAxiomRecognition:
    """Test is_axiom_instance and axiom_instance."""

    def test_kh_instance(self):
        a = Imp(Box(0, Imp(p, q)), Imp(Box(0, p), Box(0, q)))
        found = is_axiom_instance(LogicId.K4H, a)
        assert found is not None
        assert found.scheme == AxiomScheme.KH
        assert found.n == 0
        assert found.components == (p, q)

    def test_lh_instance(self):
        a = Imp(Box(1, Imp(Box(0, p), p)), Box(0, p))
        found = is_axiom_instance(LogicId.GLH, a)
        assert found is not None
        assert found.scheme == AxiomScheme.LH
        assert found.n == 0

    def test_th_not_in_k4h(self):
        assert is_axiom_instance(LogicId.K4H, Imp(Box(0, p), p)) is None

    def test_th_in_s4h(self):
        found = is_axiom_instance(LogicId.S4H, Imp(Box(0, p), p))
        assert found is not None and found.scheme == AxiomScheme.TH

    def test_h_instance(self):
        found = is_axiom_instance(LogicId.K4H, parse_h("[0]p -> [1]p"))
        assert found is not None and found.scheme == AxiomScheme.H

    def test_four_h_instance(self):
        found = is_axiom_instance(LogicId.K4H, parse_h("[0]p -> [1][0]p"))
        assert found is not None and found.scheme == AxiomScheme.FOUR_H

    def test_dh_only_in_serial_logics(self):
        a = Neg(Box(0, BOT))
        assert is_axiom_instance(LogicId.K4H, a) is None
        assert is_axiom_instance(LogicId.KD4H, a).scheme == AxiomScheme.DH

    def test_five_h_in_kd45h(self):
        a = parse_h("-[0]p -> [1]-[0]p")
        assert is_axiom_instance(LogicId.KD45H, a).scheme == AxiomScheme.FIVE_H
        assert is_axiom_instance(LogicId.K4H, a) is None

    def test_unimodal_schemes(self):
        assert is_axiom_instance(LogicId.GL, Imp(Box(None, Imp(Box(None, p), p)), Box(None, p)))
        assert is_axiom_instance(LogicId.K4, Imp(Box(None, p), Box(None, Box(None, p))))

    def test_ill_formed_is_not_an_instance(self):
        assert is_axiom_instance(LogicId.K4H, Imp(Box(1, p), Box(1, Box(1, p)))) is None

    def test_built_instances_are_recognised(self):
        for n in range(4):
            for scheme, components in (
                (AxiomScheme.H, (p,)),
                (AxiomScheme.KH, (p, q)),
                (AxiomScheme.FOUR_H, (p,)),
            ):
                a = axiom_instance(scheme, n, *components)
                found = is_axiom_instance(LogicId.K4H, a)
                assert found is not None
                assert found.scheme == scheme
                assert found.n == n


@pytest.mark.unit
class TestTautology:
    def test_excluded_middle(self):
        assert tautology(Or(p, Neg(p)))

    def test_boxes_are_opaque(self):
        assert tautology(Imp(Box(0, p), Box(0, p)))

    def test_box_does_not_imply_body(self):
        assert not tautology(Imp(Box(0, p), p))

    def test_atom_limit(self):
        a = conj([Atom(f"p{i}") for i in range(3)])
        with pytest.raises(TautologyLimitError):
            tautology(a, max_atoms=2)

    def test_many_atoms_within_limit(self):
        atoms = [Atom(f"p{i}") for i in range(12)]
        assert tautology(Imp(conj(atoms), atoms[-1]))


@pytest.mark.unit
class TestCheckHilbertProof:
    """Test line-by-line checking."""

    def test_single_tautology(self):
        pr = proof((Imp(p, p), Taut()))
        assert check_hilbert_proof(LogicId.K4H, pr, Imp(p, p))

    def test_necessitation(self):
        pr = proof((Imp(p, p), Taut()), (Box(0, Imp(p, p)), Nec(0, 1)))
        assert check_hilbert_proof(LogicId.K4H, pr, Box(0, Imp(p, p)))

    def test_necessitation_over_hypothesis_rejected(self):
        pr = proof((p, Hyp(0)), (Box(0, p), Nec(0, 1)), hypotheses=[p])
        result = check_hilbert_proof(LogicId.K4H, pr, Box(0, p))
        assert not result
        assert result.position == "line 2"
        assert "hypothesis" in result.reason

    def test_necessitation_index_too_low(self):
        a = Box(0, p)
        pr = proof((Imp(a, a), Taut()), (Box(0, Imp(a, a)), Nec(0, 1)))
        result = check_hilbert_proof(LogicId.K4H, pr)
        assert not result
        assert result.position == "line 2"

    def test_modus_ponens(self):
        h = parse_h("[0]p -> [1]p")
        pr = proof(
            (h, AxiomRef(AxiomScheme.H)),
            (Imp(h, Or(h, q)), Taut()),
            (Or(h, q), MP(1, 2)),
        )
        assert check_hilbert_proof(LogicId.K4H, pr, Or(h, q))

    def test_mp_must_cite_earlier_lines(self):
        pr = proof((p, MP(1, 2)))
        assert not check_hilbert_proof(LogicId.K4H, pr)

    def test_wrong_goal(self):
        pr = proof((Imp(p, p), Taut()))
        result = check_hilbert_proof(LogicId.K4H, pr, Imp(q, q))
        assert not result
        assert "goal" in result.reason

    def test_axiom_outside_logic(self):
        pr = proof((Imp(Box(0, p), p), AxiomRef()))
        assert not check_hilbert_proof(LogicId.K4H, pr)
        assert check_hilbert_proof(LogicId.S4H, pr)

    def test_axiom_level_mismatch(self):
        pr = proof((parse_h("[1]p -> [2]p"), AxiomRef(AxiomScheme.H, 0)))
        assert not check_hilbert_proof(LogicId.K4H, pr)

    def test_unimodal_necessitation_takes_no_index(self):
        pr = proof((Imp(p, p), Taut()), (Box(None, Imp(p, p)), Nec(None, 1)))
        assert check_hilbert_proof(LogicId.K4, pr)

    def test_empty_proof(self):
        assert not check_hilbert_proof(LogicId.K4H, proof())

    def test_describe(self):
        result = check_hilbert_proof(LogicId.K4H, proof((p, Taut())))
        assert result.describe() == "invalid at line 1: not a tautology"


@pytest.mark.unit
class TestZTranslate:
    def test_high_box_guarded(self):
        assert z_translate(Box(1, p), q, 1) == Box(1, Imp(q, p))

    def test_low_box_unchanged(self):
        assert z_translate(Box(0, p), q, 1) == Box(0, p)

    def test_homomorphic(self):
        assert z_translate(And(p, Box(1, p)), q, 1) == And(p, Box(1, Imp(q, p)))

    def test_rank_preserved(self):
        a = parse_h("[2]([1]p -> [0]q)")
        assert rank(z_translate(a, Box(0, q), 1)) == rank(a)

    def test_precondition(self):
        with pytest.raises(PreconditionError):
            z_translate(Box(1, p), Box(1, q), 1)


@pytest.mark.unit
class TestProofBuilder:
    """Test the proof builder and the deduction step."""

    def test_reuses_lines(self):
        builder = ProofBuilder(LogicId.K4H)
        first = builder.taut(Imp(p, p))
        assert builder.taut(Imp(p, p)) == first
        assert len(builder.lines) == 1

    def test_mp_requires_matching_implication(self):
        builder = ProofBuilder(LogicId.K4H)
        a = builder.taut(Imp(p, p))
        b = builder.taut(Imp(q, q))
        with pytest.raises(PreconditionError):
            builder.mp(a, b)

    def test_raise_and_lift_boxes_check(self):
        builder = ProofBuilder(LogicId.K4H)
        builder.raise_box(Box(0, p), 3)
        line = builder.lift_box(Box(0, p), 2)
        pr = builder.conclude(line)
        assert check_hilbert_proof(LogicId.K4H, pr, Imp(Box(0, p), Box(2, Box(0, p))))

    def test_deduce_discharges_hypotheses(self):
        pr = proof(
            (Box(0, p), Hyp(0)),
            (Imp(Box(0, p), Box(1, p)), AxiomRef(AxiomScheme.H)),
            (Box(1, p), MP(1, 2)),
            hypotheses=[Box(0, p)],
        )
        assert check_hilbert_proof(LogicId.K4H, pr, Box(1, p))
        discharged = deduce(LogicId.K4H, pr)
        assert discharged.hypotheses == ()
        assert check_hilbert_proof(LogicId.K4H, discharged, Imp(Box(0, p), Box(1, p)))

    def test_deduce_rejects_invalid_proof(self):
        with pytest.raises(PreconditionError):
            deduce(LogicId.K4H, proof((p, Taut())))
