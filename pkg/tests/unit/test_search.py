"""Tests for cut-free backward proof search."""

import pytest

from hml.core import (
    ProofSearch,
    ResourceLimitError,
    Sequent,
    UnsupportedLogicError,
    check_derivation,
    parse_goal,
    parse_h,
    parse_u,
    prove,
)
from hml.core.sequent import is_cut_free
from hml.models import LogicId


def goal(text: str) -> Sequent:
    return parse_goal(text)


@pytest.mark.unit
class TestProveHierarchical:
    """Test search in the indexed calculi."""

    def test_necessitated_tautology(self):
        d = prove(LogicId.K4H, goal("[0](p -> p)"))
        assert d is not None
        assert d.conclusion == goal("[0](p -> p)")
        assert check_derivation(LogicId.K4H, d)

    def test_reflexivity_not_in_k4h(self):
        assert prove(LogicId.K4H, goal("[0]p -> p")) is None

    def test_reflexivity_in_s4h(self):
        d = prove(LogicId.S4H, goal("[1]([0]p -> p)"))
        assert d is not None
        assert check_derivation(LogicId.S4H, d)

    def test_seriality_in_kd4h(self):
        d = prove(LogicId.KD4H, goal("-[0]bot"))
        assert d is not None
        assert check_derivation(LogicId.KD4H, d)
        assert prove(LogicId.K4H, goal("-[0]bot")) is None

    @pytest.mark.parametrize(
        "text",
        [
            "[0]p -> [1]p",
            "[0]p -> [1][0]p",
            "[0](p -> q) -> [0]p -> [0]q",
            "[2](p -> q) -> [2]p -> [2]q",
            "[0]p -> [3]p",
        ],
    )
    def test_k4h_axioms(self, text):
        d = prove(LogicId.K4H, goal(text))
        assert d is not None
        assert check_derivation(LogicId.K4H, d)

    def test_no_downward_index(self):
        assert prove(LogicId.K4H, goal("[1]p -> [0]p")) is None

    def test_sequent_with_antecedent(self):
        s = parse_goal("[0]p, [0]q => [1](p & q)")
        d = prove(LogicId.K4H, s)
        assert d is not None
        assert d.conclusion == s

    def test_result_is_cut_free_and_ends_in_request(self):
        s = parse_goal("[0]p, [0]p => [0]p")
        d = prove(LogicId.K4H, s)
        assert is_cut_free(d)
        assert d.conclusion == s

    def test_deterministic(self):
        first = prove(LogicId.S4H, goal("[1]([0]p -> p) & [2]q -> [2]q"))
        second = prove(LogicId.S4H, goal("[1]([0]p -> p) & [2]q -> [2]q"))
        assert first == second

    def test_weakening_preserves_provability(self):
        s = goal("[0]p -> [1]p")
        weakened = Sequent(list(s.left) + [parse_h("[2]q")], s.right)
        assert prove(LogicId.K4H, weakened) is not None


@pytest.mark.unit
class TestProveUnimodal:
    """Test search in the uni-modal calculi."""

    def test_k4_transitivity(self):
        d = prove(LogicId.K4, Sequent([], [parse_u("[]p -> [][]p")]))
        assert d is not None
        assert check_derivation(LogicId.K4, d)

    def test_loeb_in_gl(self):
        d = prove(LogicId.GL, Sequent([], [parse_u("[]([]p -> p) -> []p")]))
        assert d is not None
        assert check_derivation(LogicId.GL, d)

    def test_loeb_not_in_k4(self):
        assert prove(LogicId.K4, Sequent([], [parse_u("[]([]p -> p) -> []p")])) is None

    def test_reflexivity_only_in_s4(self):
        s = Sequent([], [parse_u("[]p -> p")])
        assert prove(LogicId.S4, s) is not None
        assert prove(LogicId.GL, s) is None

    def test_seriality_in_kd4(self):
        s = Sequent([], [parse_u("-[]bot")])
        assert prove(LogicId.KD4, s) is not None
        assert prove(LogicId.K4, s) is None

    def test_s4_loop_terminates(self):
        """The S4 search must stop on repeating modal premises."""
        s = Sequent([], [parse_u("[]([]p -> p) -> []p")])
        assert prove(LogicId.S4, s) is None


@pytest.mark.unit
class TestSearchLimits:
    def test_budget_exhausted(self):
        search = ProofSearch(LogicId.K4H, node_budget=1)
        with pytest.raises(ResourceLimitError):
            search.prove(goal("[0](p -> p) & [1](q -> q)"))

    def test_node_count(self):
        search = ProofSearch(LogicId.K4H)
        search.prove(goal("[0](p -> p)"))
        assert search.nodes > 0

    def test_no_calculus(self):
        with pytest.raises(UnsupportedLogicError):
            ProofSearch(LogicId.GLH)
