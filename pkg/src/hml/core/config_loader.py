"""Configuration loader for the logic catalogue and workbench settings."""

import logging
from pathlib import Path
from typing import TYPE_CHECKING, Any, List, Optional

import yaml
from pydantic import ValidationError

from hml.models import LogicProfile, WorkbenchSettings

if TYPE_CHECKING:
    from hml.core.logic_registry import LogicRegistry

logger = logging.getLogger(__name__)

LOGICS_FILE = "logics.yaml"
SETTINGS_FILE = "settings.yaml"


class ConfigLoadError(Exception):
    """Raised when configuration loading fails."""

    pass


class ConfigLoader:
    """Load and validate the YAML configuration shipped with the package."""

    def __init__(self, config_dir: Optional[Path] = None):
        """
        Initialize ConfigLoader.

        Args:
            config_dir: Directory holding ``logics.yaml`` and ``settings.yaml``.
                       If None, uses the package configs directory.
        """
        if config_dir is None:
            config_dir = Path(__file__).parent.parent / "configs"

        if not config_dir.exists():
            raise ConfigLoadError(f"Config directory does not exist: {config_dir}")

        self.config_dir = config_dir
        self._logics: Optional[List[LogicProfile]] = None
        self._settings: Optional[WorkbenchSettings] = None
        self._registry: Optional["LogicRegistry"] = None

    def _read_yaml(self, name: str, required: bool) -> Any:
        path = self.config_dir / name
        if not path.exists():
            if required:
                raise ConfigLoadError(f"Missing configuration file: {path}")
            return None
        try:
            with open(path, encoding="utf-8") as f:
                return yaml.safe_load(f)
        except yaml.YAMLError as e:
            raise ConfigLoadError(f"Invalid YAML in {name}: {e}") from e

    def load_logics(self) -> List[LogicProfile]:
        """
        Load the logic catalogue.

        Returns:
            List of LogicProfile instances in file order

        Raises:
            ConfigLoadError: If the file is missing, malformed or inconsistent
        """
        if self._logics is not None:
            return self._logics

        data = self._read_yaml(LOGICS_FILE, required=True)
        if not isinstance(data, dict) or not isinstance(data.get("logics"), list):
            raise ConfigLoadError(f"{LOGICS_FILE} must contain a 'logics' list")

        profiles = []
        for entry in data["logics"]:
            try:
                profiles.append(LogicProfile(**entry))
            except (TypeError, ValidationError) as e:
                raise ConfigLoadError(f"Invalid logic entry {entry!r}: {e}") from e

        ids = [p.id for p in profiles]
        names = [p.cli_name for p in profiles]
        if len(set(ids)) != len(ids) or len(set(names)) != len(names):
            raise ConfigLoadError(f"Duplicate logic ids or names in {LOGICS_FILE}")

        self._logics = profiles
        logger.info(f"Loaded {len(profiles)} logic profiles")
        return profiles

    def load_settings(self) -> WorkbenchSettings:
        """
        Load workbench settings; a missing or empty file yields the defaults.

        Raises:
            ConfigLoadError: If the file is malformed
        """
        if self._settings is not None:
            return self._settings

        data = self._read_yaml(SETTINGS_FILE, required=False) or {}
        try:
            self._settings = WorkbenchSettings(**data)
        except (TypeError, ValidationError) as e:
            raise ConfigLoadError(f"Invalid settings in {SETTINGS_FILE}: {e}") from e
        logger.debug(f"Loaded settings: {self._settings}")
        return self._settings

    def clear_cache(self) -> None:
        """Clear the configuration cache."""
        self._logics = None
        self._settings = None
        self._registry = None
        logger.debug("Cleared configuration cache")

    def get_registry(self) -> "LogicRegistry":
        """Get or create the LogicRegistry backed by this loader."""
        if self._registry is None:
            from hml.core.logic_registry import LogicRegistry

            self._registry = LogicRegistry(config_loader=self)

        return self._registry
