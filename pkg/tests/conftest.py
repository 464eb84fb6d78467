"""Pytest configuration and shared fixtures."""

import tempfile
from pathlib import Path
from typing import Generator

import pytest
import yaml
from typer.testing import CliRunner

from hml.core import ConfigLoader


@pytest.fixture
def cli_runner() -> CliRunner:
    """Provide a Typer CliRunner for testing CLI commands."""
    return CliRunner()


@pytest.fixture
def temp_dir() -> Generator[Path, None, None]:
    """Provide a temporary directory for proof documents."""
    with tempfile.TemporaryDirectory() as tmp_dir:
        yield Path(tmp_dir)


@pytest.fixture
def temp_config_dir() -> Generator[Path, None, None]:
    """Provide a temporary directory for test configurations."""
    with tempfile.TemporaryDirectory() as tmp_dir:
        yield Path(tmp_dir)


@pytest.fixture
def sample_logic_data() -> dict:
    """Provide one logic catalogue entry."""
    return {
        "id": "K4h",
        "cli_name": "k4h",
        "description": "Hierarchical K4 (H, Kh, 4h)",
        "family": "hierarchical",
        "axioms": ["H", "Kh", "4h"],
        "modal_rules": ["Box4hR"],
        "decision": "sequent",
    }


@pytest.fixture
def mock_config_dir(temp_config_dir: Path, sample_logic_data: dict) -> Path:
    """A config directory holding a one-logic catalogue and small settings."""
    with open(temp_config_dir / "logics.yaml", "w") as f:
        yaml.dump({"logics": [sample_logic_data]}, f)
    with open(temp_config_dir / "settings.yaml", "w") as f:
        yaml.dump({"search": {"node_budget": 500}}, f)
    return temp_config_dir


@pytest.fixture
def mock_config_loader(mock_config_dir: Path) -> ConfigLoader:
    return ConfigLoader(mock_config_dir)


# Markers for test classification
def pytest_configure(config):
    """Register custom pytest markers."""
    config.addinivalue_line("markers", "unit: Unit tests for individual components")
    config.addinivalue_line("markers", "integration: Integration tests for feature flows")
    config.addinivalue_line("markers", "slow: Slow tests that may take significant time")
