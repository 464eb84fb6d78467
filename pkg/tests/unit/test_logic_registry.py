"""Tests for LogicRegistry."""

import pytest

from hml.core import ConfigLoader, LogicRegistry, UnknownLogicError, get_profile, get_settings
from hml.models import DecisionMethod, LogicId, LogicProfile


@pytest.mark.unit
class TestLogicRegistry:
    """Test LogicRegistry against a small catalogue."""

    def test_lazy_loading(self, mock_config_loader: ConfigLoader):
        registry = LogicRegistry(mock_config_loader)
        assert not registry._loaded

        registry.get_all()
        assert registry._loaded

    def test_get_by_id(self, mock_config_loader: ConfigLoader):
        registry = LogicRegistry(mock_config_loader)
        assert registry.get(LogicId.K4H).cli_name == "k4h"

    def test_get_by_name(self, mock_config_loader: ConfigLoader):
        registry = LogicRegistry(mock_config_loader)
        assert registry.get("k4h").id == LogicId.K4H
        assert registry.get("K4H").id == LogicId.K4H
        assert registry.get("K4h").id == LogicId.K4H

    def test_unknown_logic(self, mock_config_loader: ConfigLoader):
        registry = LogicRegistry(mock_config_loader)

        with pytest.raises(UnknownLogicError) as exc_info:
            registry.get("s4h")

        assert "k4h" in str(exc_info.value)

    def test_id_missing_from_catalogue(self, mock_config_loader: ConfigLoader):
        registry = LogicRegistry(mock_config_loader)
        with pytest.raises(UnknownLogicError):
            registry.get(LogicId.GL)

    def test_container_protocol(self, mock_config_loader: ConfigLoader):
        registry = LogicRegistry(mock_config_loader)

        assert len(registry) == 1
        assert "k4h" in registry
        assert "gl" not in registry
        assert 3 not in registry
        assert [p.id for p in registry] == [LogicId.K4H]

    def test_cli_names(self, mock_config_loader: ConfigLoader):
        assert LogicRegistry(mock_config_loader).cli_names() == ["k4h"]

    def test_settings(self, mock_config_loader: ConfigLoader):
        assert LogicRegistry(mock_config_loader).settings.search.node_budget == 500

    def test_clear_cache(self, mock_config_loader: ConfigLoader):
        registry = LogicRegistry(mock_config_loader)
        registry.get_all()
        registry.clear_cache()

        assert not registry._loaded
        assert len(registry) == 1

    def test_register(self, mock_config_loader: ConfigLoader, sample_logic_data: dict):
        registry = LogicRegistry(mock_config_loader)
        registry.get_all()
        extra = LogicProfile(**dict(sample_logic_data, id="KD4h", cli_name="kd4h"))
        registry.register(extra)

        assert registry.get("kd4h") is extra


@pytest.mark.unit
class TestDefaultRegistry:
    """Test the module-level helpers over the packaged configuration."""

    def test_get_profile(self):
        profile = get_profile("glh")
        assert profile.id == LogicId.GLH
        assert profile.decision == DecisionMethod.GL_REDUCTION

    def test_checking_only_logics(self):
        assert get_profile(LogicId.KD45H).decision == DecisionMethod.NONE
        assert get_profile(LogicId.S5H).decision == DecisionMethod.NONE

    def test_get_settings(self):
        assert get_settings().tautology.max_atoms == 20
