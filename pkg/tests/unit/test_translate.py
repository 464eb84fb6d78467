"""Tests for the t and s translations, the class X and good X-proofs."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hml.core import (
    NotXProofError,
    PreconditionError,
    UnsupportedLogicError,
    check_hilbert_proof,
    classify_x,
    enumerate_formulas,
    gen_corpus,
    goodify,
    is_good_xproof,
    parse_h,
    prove,
    pull_back,
    read_back,
    s_translate,
    sigma_n,
    t_translate,
)
from hml.core import translate as translate_module
from hml.core.hilbert import Nec
from hml.core.sequent import (
    Rule,
    Sequent,
    apply_rule,
    axiom,
    check_derivation,
    is_cut_free,
    iter_nodes,
    modal_node,
    sequent_formula,
)
from hml.core.syntax import BOT, TOP, And, Atom, Box, Imp, Neg, conj
from hml.core.translate import (
    PULL_BACK_TARGETS,
    FirstKind,
    NonBoxedMember,
    NotInX,
    SecondKind,
    in_x,
    s_sequent,
)
from hml.models import LogicId

p, r = Atom("p"), Atom("r")
q0, q1, q2 = Atom("q0"), Atom("q1"), Atom("q2")


@pytest.mark.unit
class TestTTranslate:
    """Test the indexed-to-uni-modal translation."""

    def test_single_box(self):
        assert t_translate(parse_h("[0]p")) == Box(None, Imp(q0, p))

    def test_nested_boxes(self):
        expected = Box(None, Imp(And(q0, q1), Box(None, Imp(q0, p))))
        assert t_translate(parse_h("[1][0]p")) == expected

    def test_box_free_unchanged(self):
        a = parse_h("p -> -p")
        assert t_translate(a) == a

    def test_reserved_atoms_rejected(self):
        with pytest.raises(PreconditionError):
            t_translate(Imp(q0, p))

    def test_image_is_in_x(self):
        assert in_x(t_translate(parse_h("[2]([1]p -> -[0]p)")))


@pytest.mark.unit
class TestClassifyX:
    def test_first_kind(self):
        assert classify_x(Box(None, Imp(q0, p))) == FirstKind(0, p)

    def test_second_kind(self):
        b = Box(None, Imp(And(q0, BOT), p))
        assert classify_x(b) == SecondKind(0, 1, p)

    def test_plain_box_not_in_x(self):
        assert classify_x(Box(None, p)) == NotInX()

    def test_antecedent_must_start_at_q0(self):
        assert classify_x(Box(None, Imp(q1, p))) == NotInX()

    def test_non_boxed_members(self):
        assert classify_x(q2) == NonBoxedMember()
        assert classify_x(Neg(And(p, q0))) == NonBoxedMember()

    def test_compound_with_bad_part(self):
        assert classify_x(And(p, Box(None, p))) == NotInX()


@pytest.mark.unit
class TestSTranslate:
    """Test reading indexed formulas back from X."""

    def test_first_kind_box(self):
        assert s_translate(Box(None, Imp(q0, p))) == Box(0, p)

    def test_second_kind_box_is_top(self):
        assert s_translate(Box(None, Imp(And(q0, BOT), p))) == TOP

    def test_reserved_atom_is_top(self):
        assert s_translate(Atom("q5")) == TOP

    def test_outside_x(self):
        with pytest.raises(PreconditionError):
            s_translate(Box(None, p))

    def test_roundtrip_small_formulas(self):
        for a in enumerate_formulas(3, 3):
            assert s_translate(t_translate(a)) == a

    @given(st.integers(min_value=0, max_value=10_000))
    @settings(max_examples=30, deadline=None)
    def test_roundtrip_generated(self, seed):
        for a in gen_corpus(seed, 5, 5, 3):
            assert s_translate(t_translate(a)) == a


@pytest.mark.unit
class TestSigma:
    def test_high_atoms_to_bot(self):
        b = Box(None, Imp(conj([q0, q1, q2]), p))
        assert sigma_n(b, 1) == Box(None, Imp(conj([q0, q1, BOT]), p))

    def test_nothing_above_level(self):
        b = Box(None, Imp(conj([q0, q1, q2]), p))
        assert sigma_n(b, 5) == b

    def test_first_kind_becomes_second_kind(self):
        b = Box(None, Imp(conj([q0, q1]), p))
        assert isinstance(classify_x(sigma_n(b, 0)), SecondKind)


def bad_modal_step():
    """A Box4R step whose context box sits above its principal in q-rank."""
    principal = Box(None, Imp(q0, Imp(p, p)))
    context = Box(None, Imp(And(q0, q1), r))
    inner = apply_rule(Rule.WL, [axiom(p)], q0)
    inner = apply_rule(Rule.IMP_R, [inner], Imp(p, p))
    inner = apply_rule(Rule.IMP_R, [inner], principal.child)
    return modal_node(Rule.BOX4_R, [context], principal, inner)


@pytest.mark.unit
class TestGoodXProofs:
    """Test goodness and the goodify transformation."""

    @pytest.mark.parametrize(
        "text", ["[0]p -> [1]p", "[0]p -> [1][0]p", "[1](p -> q) -> [1]p -> [1]q"]
    )
    def test_goodify_search_results(self, text):
        u = t_translate(parse_h(text))
        found = prove(LogicId.K4Q, Sequent([], [u]))
        assert found is not None
        sigma, good = goodify(LogicId.K4Q, found)
        assert is_good_xproof(LogicId.K4Q, good)
        assert all(isinstance(classify_x(f), SecondKind) for f in sigma)
        assert good.conclusion == Sequent(sigma, [u])

    def test_bad_step_detected(self):
        assert not is_good_xproof(LogicId.K4Q, bad_modal_step())

    def test_goodify_lowers_context(self):
        sigma, good = goodify(LogicId.K4Q, bad_modal_step())
        assert is_good_xproof(LogicId.K4Q, good)
        assert sigma == [Box(None, Imp(And(q0, BOT), r))]

    def test_formula_outside_x(self):
        with pytest.raises(NotXProofError):
            is_good_xproof(LogicId.K4Q, axiom(Box(None, p)))

    def test_requires_x_calculus(self):
        with pytest.raises(UnsupportedLogicError):
            is_good_xproof(LogicId.K4, axiom(p))


@pytest.mark.unit
class TestReadBack:
    """Test replaying good X-proofs as hierarchical Hilbert proofs."""

    @pytest.mark.parametrize(
        "calculus,text",
        [
            (LogicId.K4Q, "[0]p -> [1]p"),
            (LogicId.K4Q, "[0]p -> [1][0]p"),
            (LogicId.K4Q, "[1](p -> q) -> [1]p -> [1]q"),
            (LogicId.S4Q, "[1]p -> p"),
            (LogicId.S4Q, "[0]p -> [1][0]p"),
        ],
    )
    def test_goal_is_image_of_endsequent(self, calculus, text):
        found = prove(calculus, Sequent([], [t_translate(parse_h(text))]))
        _, good = goodify(calculus, found)
        proof = read_back(calculus, good)
        goal = sequent_formula(s_sequent(good.conclusion))
        assert proof.hypotheses == ()
        assert check_hilbert_proof(PULL_BACK_TARGETS[calculus], proof, goal)

    def test_lowered_context_reads_back(self):
        sigma, good = goodify(LogicId.K4Q, bad_modal_step())
        proof = read_back(LogicId.K4Q, good)
        image = s_sequent(good.conclusion)
        assert image.left == Sequent([TOP, Box(1, r)], []).left
        assert check_hilbert_proof(LogicId.K4H, proof, sequent_formula(image))

    def test_modal_steps_use_necessitation(self):
        found = prove(LogicId.K4Q, Sequent([], [t_translate(parse_h("[0]p -> [1][0]p"))]))
        _, good = goodify(LogicId.K4Q, found)
        proof = read_back(LogicId.K4Q, good)
        assert any(isinstance(line.justification, Nec) for line in proof.lines)

    def test_bad_proof_rejected(self):
        with pytest.raises(PreconditionError):
            read_back(LogicId.K4Q, bad_modal_step())

    def test_requires_x_calculus(self):
        with pytest.raises(UnsupportedLogicError):
            read_back(LogicId.K4H, axiom(p))


@pytest.fixture
def x_search_only(monkeypatch):
    """Let pull_back search in K4Q and S4Q but nowhere else."""

    def search(calculus, s, *args, **kwargs):
        assert calculus in (LogicId.K4Q, LogicId.S4Q), f"searched in {calculus.value}"
        return prove(calculus, s, *args, **kwargs)

    monkeypatch.setattr(translate_module, "prove", search)


@pytest.mark.unit
class TestPullBack:
    def test_provable_image(self, x_search_only):
        a = parse_h("[0]p -> [1][0]p")
        d = pull_back(LogicId.K4Q, a)
        assert d is not None
        assert d.conclusion == Sequent([], [a])
        assert check_derivation(LogicId.K4H, d)

    def test_simulated_proof_carries_cuts(self, x_search_only):
        d = pull_back(LogicId.K4Q, parse_h("[0]p -> [1]p"))
        assert d is not None
        assert any(node.rule == Rule.CUT for node in iter_nodes(d))

    def test_cut_free(self, x_search_only):
        a = parse_h("[0](p -> p)")
        d = pull_back(LogicId.K4Q, a, cut_free=True)
        assert d is not None
        assert is_cut_free(d)
        assert d.conclusion == Sequent([], [a])

    def test_s4q(self, x_search_only):
        a = parse_h("[1]p -> p")
        d = pull_back(LogicId.S4Q, a)
        assert d is not None
        assert check_derivation(LogicId.S4H, d)

    def test_unprovable_image(self, x_search_only):
        assert pull_back(LogicId.K4Q, parse_h("[0]p -> p")) is None
