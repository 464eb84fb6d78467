"""LogicRegistry for resolving logic identifiers and command-line names."""

import logging
from typing import Dict, Iterator, List, Optional, Union

from hml.core.config_loader import ConfigLoader
from hml.models import LogicId, LogicProfile, WorkbenchSettings

logger = logging.getLogger(__name__)


class UnknownLogicError(Exception):
    """Raised when a logic id or command-line name is not in the catalogue."""

    pass


class UnsupportedLogicError(Exception):
    """Raised when an operation is not available for the requested logic."""

    pass


class LogicRegistry:
    """Central registry of logic profiles with lazy loading."""

    def __init__(self, config_loader: Optional[ConfigLoader] = None):
        self.config_loader = config_loader or ConfigLoader()
        self._profiles: Dict[LogicId, LogicProfile] = {}
        self._by_name: Dict[str, LogicId] = {}
        self._loaded = False

    def _ensure_loaded(self) -> None:
        """Lazy load profiles on first access."""
        if not self._loaded:
            for profile in self.config_loader.load_logics():
                self.register(profile)
            logger.info(f"Registry loaded {len(self._profiles)} logics")
            self._loaded = True

    def register(self, profile: LogicProfile) -> None:
        self._profiles[profile.id] = profile
        self._by_name[profile.cli_name] = profile.id
        logger.debug(f"Registered logic: {profile.id.value}")

    def get(self, logic: Union[LogicId, str]) -> LogicProfile:
        """Resolve a LogicId, canonical id string or command-line name.

        Raises:
            UnknownLogicError: If nothing in the catalogue matches
        """
        self._ensure_loaded()
        if isinstance(logic, LogicId):
            key: Optional[LogicId] = logic
        else:
            key = self._by_name.get(logic.lower())
            if key is None:
                key = next((i for i in self._profiles if i.value == logic), None)
        if key is None or key not in self._profiles:
            known = ", ".join(sorted(self._by_name))
            raise UnknownLogicError(f"Unknown logic: {logic} (known: {known})")
        return self._profiles[key]

    def get_all(self) -> List[LogicProfile]:
        self._ensure_loaded()
        return list(self._profiles.values())

    def cli_names(self) -> List[str]:
        self._ensure_loaded()
        return list(self._by_name)

    @property
    def settings(self) -> WorkbenchSettings:
        return self.config_loader.load_settings()

    def clear_cache(self) -> None:
        self._profiles.clear()
        self._by_name.clear()
        self._loaded = False
        logger.debug("Registry cache cleared")

    def __len__(self) -> int:
        self._ensure_loaded()
        return len(self._profiles)

    def __contains__(self, logic: object) -> bool:
        if not isinstance(logic, (LogicId, str)):
            return False
        try:
            self.get(logic)
        except UnknownLogicError:
            return False
        return True

    def __iter__(self) -> Iterator[LogicProfile]:
        self._ensure_loaded()
        return iter(self._profiles.values())


_default_registry: Optional[LogicRegistry] = None


def get_registry() -> LogicRegistry:
    """Process-wide registry backed by the packaged configuration."""
    global _default_registry
    if _default_registry is None:
        _default_registry = LogicRegistry()
    return _default_registry


def get_profile(logic: Union[LogicId, str]) -> LogicProfile:
    return get_registry().get(logic)


def get_settings() -> WorkbenchSettings:
    return get_registry().settings
