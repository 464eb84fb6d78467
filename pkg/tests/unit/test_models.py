"""Tests for the pydantic models."""

import pytest
from pydantic import ValidationError

from hml.models import (
    AxiomScheme,
    CheckResult,
    CorpusWeights,
    DerivationData,
    DerivationDocument,
    HilbertLineDocument,
    LogicId,
    LogicProfile,
    Verdict,
    WorkbenchSettings,
)


@pytest.mark.unit
class TestLogicProfile:
    """Test catalogue entry validation."""

    def test_valid(self, sample_logic_data: dict):
        profile = LogicProfile(**sample_logic_data)
        assert profile.is_hierarchical
        assert profile.has_axiom(AxiomScheme.KH)
        assert profile.has_rule("Box4hR")
        assert profile.ordered_axioms == [AxiomScheme.H, AxiomScheme.KH, AxiomScheme.FOUR_H]

    def test_cli_name_lowercased(self, sample_logic_data: dict):
        assert LogicProfile(**dict(sample_logic_data, cli_name="K4H")).cli_name == "k4h"

    def test_scheme_from_other_family(self, sample_logic_data: dict):
        with pytest.raises(ValidationError):
            LogicProfile(**dict(sample_logic_data, axioms=["H", "T"]))

    def test_unknown_modal_rule(self, sample_logic_data: dict):
        with pytest.raises(ValidationError):
            LogicProfile(**dict(sample_logic_data, modal_rules=["Box4R"]))

    def test_sequent_decision_needs_rules(self, sample_logic_data: dict):
        with pytest.raises(ValidationError):
            LogicProfile(**dict(sample_logic_data, modal_rules=[]))

    def test_extra_field(self, sample_logic_data: dict):
        with pytest.raises(ValidationError):
            LogicProfile(**dict(sample_logic_data, colour="blue"))


@pytest.mark.unit
class TestResults:
    def test_check_result_truthiness(self):
        assert CheckResult.ok()
        assert not CheckResult.fail("line 2", "not a tautology")

    def test_describe(self):
        assert CheckResult.ok().describe() == "valid"
        assert CheckResult.fail("root.0", "Ax: no shared atom").describe() == (
            "invalid at root.0: Ax: no shared atom"
        )
        assert CheckResult.fail(None, "empty proof").describe() == "invalid: empty proof"

    def test_verdict_needs_evidence(self):
        with pytest.raises(ValidationError):
            Verdict(provable=True, logic=LogicId.K4H)
        assert not Verdict(provable=False, logic=LogicId.K4H).provable


@pytest.mark.unit
class TestSettingsModels:
    def test_defaults(self):
        settings = WorkbenchSettings()
        assert settings.search.node_budget == 200_000
        assert settings.corpus.atoms == ["p0", "p1", "p2"]

    def test_weights_must_sum_to_one(self):
        with pytest.raises(ValidationError):
            CorpusWeights(connective=0.5, box=0.5, leaf=0.5)


@pytest.mark.unit
class TestDocumentModels:
    def test_rule_lowercased(self):
        assert HilbertLineDocument(formula="p", rule="MP", args=[1, 2]).rule == "mp"

    def test_unknown_rule(self):
        with pytest.raises(ValidationError):
            HilbertLineDocument(formula="p", rule="cut")

    def test_nested_premises(self):
        leaf = {"sequent": {"left": ["p"], "right": ["p"]}, "rule": "Ax"}
        doc = DerivationDocument.model_validate(
            {"sequent": {"left": ["p", "q"], "right": ["p"]}, "rule": "wL", "premises": [leaf]}
        )
        assert doc.premises[0].rule == "Ax"
        assert doc.data == DerivationData()

    def test_index_is_a_strict_natural(self):
        node = {"sequent": {"right": ["[0]p"]}, "rule": "Box4hR"}
        with pytest.raises(ValidationError):
            DerivationDocument.model_validate(dict(node, data={"index": "0"}))
        with pytest.raises(ValidationError):
            DerivationDocument.model_validate(dict(node, data={"index": -1}))

    def test_unknown_data_key(self):
        with pytest.raises(ValidationError):
            DerivationData(principal="p", colour="red")

    def test_needs_a_rule(self):
        with pytest.raises(ValidationError):
            DerivationDocument(sequent={"right": ["p"]}, rule="")
