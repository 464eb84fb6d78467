"""Tests for sequents, rule applications and derivation checking."""

from dataclasses import replace

import pytest

from hml.core import (
    Derivation,
    DerivationError,
    Rule,
    Sequent,
    UnsupportedLogicError,
    check_derivation,
    parse_h,
)
from hml.core.sequent import (
    apply_rule,
    axiom,
    bot_left,
    conclude,
    fit,
    is_cut_free,
    modal_node,
    modal_premise,
    sequent_formula,
    substitute_derivation,
)
from hml.core.syntax import BOT, TOP, Atom, Box, Imp, Neg
from hml.models import LogicId

p, q = Atom("p"), Atom("q")


def k_h_derivation(n: int = 0) -> Derivation:
    """The standard tree for ``=> [n](p -> q) -> [n]p -> [n]q``."""
    detach = apply_rule(Rule.IMP_L, [axiom(p), axiom(q)], Imp(p, q))
    boxed = modal_node(Rule.BOX4H_R, [Box(n, Imp(p, q)), Box(n, p)], Box(n, q), detach)
    inner = apply_rule(Rule.IMP_R, [boxed], Imp(Box(n, p), Box(n, q)))
    return apply_rule(
        Rule.IMP_R, [inner], Imp(Box(n, Imp(p, q)), Imp(Box(n, p), Box(n, q)))
    )


@pytest.mark.unit
class TestSequent:
    """Test multiset sequents."""

    def test_multiset_equality(self):
        assert Sequent([p, q], [p]) == Sequent([q, p], [p])
        assert Sequent([p, p], []) != Sequent([p], [])

    def test_str(self):
        assert str(Sequent([Box(0, p)], [p])) == "[0]p => p"

    def test_sequent_formula(self):
        assert sequent_formula(Sequent([], [p])) == p
        assert sequent_formula(Sequent([p], [])) == Imp(p, BOT)
        assert sequent_formula(Sequent([p], [q])) == Imp(p, q)


@pytest.mark.unit
class TestRules:
    """Test rule applications."""

    def test_conclude_imp_r(self):
        s = conclude(Rule.IMP_R, [Sequent([p], [q])], Imp(p, q))
        assert s == Sequent([], [Imp(p, q)])

    def test_multiplicative_contexts_are_summed(self):
        s = conclude(Rule.IMP_L, [Sequent([p], [p]), Sequent([q], [q])], Imp(p, q))
        assert s == Sequent([p, Imp(p, q)], [q])

    def test_missing_active_formula(self):
        with pytest.raises(DerivationError):
            conclude(Rule.IMP_R, [Sequent([], [q])], Imp(p, q))

    def test_wrong_principal_shape(self):
        with pytest.raises(DerivationError):
            conclude(Rule.AND_R, [Sequent([], [p]), Sequent([], [q])], Imp(p, q))

    def test_fit_weakens_and_contracts(self):
        d = apply_rule(Rule.WL, [axiom(p)], p)
        fitted = fit(d, Sequent([p, q], [p, p]))
        assert fitted.conclusion == Sequent([p, q], [p, p])

    def test_fit_cannot_drop_formulas(self):
        with pytest.raises(DerivationError):
            fit(axiom(p), Sequent([], [p]))

    def test_box4h_premise_partition(self):
        premise, r_part, i_part = modal_premise(
            Rule.BOX4H_R, [Box(1, p), Box(0, q)], Box(1, q)
        )
        assert r_part == (Box(1, p),)
        assert i_part == (Box(0, q),)
        assert premise == Sequent([p, q, Box(0, q)], [q])

    def test_boxsh_keeps_lower_boxes(self):
        premise, _, i_part = modal_premise(Rule.BOXSH_R, [Box(0, q)], Box(1, q))
        assert premise == Sequent([Box(0, q)], [q])
        assert i_part == (Box(0, q),)

    def test_box4h_context_above_index(self):
        with pytest.raises(DerivationError):
            modal_premise(Rule.BOX4H_R, [Box(2, p)], Box(1, q))

    def test_glr_adds_principal(self):
        premise, _, _ = modal_premise(Rule.GL_R, [], Box(None, p))
        assert premise == Sequent([Box(None, p)], [p])


@pytest.mark.unit
class TestCheckDerivation:
    """Test derivation checking."""

    def test_kh_tree_checks_in_k4h(self):
        assert check_derivation(LogicId.K4H, k_h_derivation(2))

    def test_dh_tree_checks_in_kd4h(self):
        serial = modal_node(Rule.BOXDH_R, [Box(0, BOT)], None, bot_left(), 1)
        d = apply_rule(Rule.IMP_R, [apply_rule(Rule.WR, [serial], BOT)], Imp(Box(0, BOT), BOT))
        assert d.conclusion == Sequent([], [Imp(Box(0, BOT), BOT)])
        assert check_derivation(LogicId.KD4H, d)

    def test_rule_outside_calculus(self):
        result = check_derivation(LogicId.S4H, k_h_derivation())
        assert not result
        assert "not available" in result.reason

    def test_same_index_context_in_i_part_rejected(self):
        """A Box4hR node may not keep a same-level box in its lower context."""
        good = modal_node(Rule.BOX4H_R, [Box(1, p)], Box(1, p), axiom(p))
        bad = replace(good, r_part=(), i_part=(Box(1, p),))
        result = check_derivation(LogicId.K4H, bad)
        assert not result
        assert result.position == "root"

    def test_context_above_index_rejected(self):
        premise = Derivation(Sequent([p, Box(2, p)], [q]), Rule.AX, principal=q)
        node = Derivation(
            Sequent([Box(2, p)], [Box(1, q)]), Rule.BOX4H_R, (premise,), Box(1, q), index=1
        )
        assert not check_derivation(LogicId.K4H, node)

    def test_wrong_conclusion(self):
        d = apply_rule(Rule.IMP_R, [axiom(p)], Imp(p, p))
        bad = replace(d, conclusion=Sequent([], [Imp(p, q)]))
        result = check_derivation(LogicId.K4H, bad)
        assert not result
        assert result.position == "root"

    def test_failing_node_path(self):
        inner = replace(axiom(p), conclusion=Sequent([p], [q]))
        d = Derivation(Sequent([], [Imp(p, q)]), Rule.IMP_R, (inner,), Imp(p, q))
        result = check_derivation(LogicId.K4H, d)
        assert result.position == "root.0"

    def test_unsupported_calculus(self):
        with pytest.raises(UnsupportedLogicError):
            check_derivation(LogicId.KD45H, axiom(p))

    def test_ill_formed_formula(self):
        d = axiom(Box(0, Box(0, p)))
        assert not check_derivation(LogicId.K4H, d)

    def test_axioms(self):
        assert check_derivation(LogicId.K4H, bot_left())
        assert check_derivation(LogicId.K4, Derivation(Sequent([], [TOP]), Rule.TOP_R))


@pytest.mark.unit
class TestDerivationHelpers:
    def test_height_and_size(self):
        d = k_h_derivation()
        assert d.height == 5
        assert d.size == 6

    def test_is_cut_free(self):
        assert is_cut_free(k_h_derivation())
        cut = apply_rule(Rule.CUT, [axiom(p), axiom(p)], p)
        assert not is_cut_free(cut)

    def test_substitute_derivation(self):
        d = substitute_derivation(k_h_derivation(1), {"q": Neg(p)})
        assert d.conclusion.right == (parse_h("[1](p -> -p) -> [1]p -> [1]-p"),)
        assert check_derivation(LogicId.K4H, d)
