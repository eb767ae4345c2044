"""Dependency injection container and Protocol interfaces for the bar homology toolkit."""
from __future__ import annotations

from pathlib import Path
from typing import Any, Callable, Protocol, runtime_checkable


# ── Protocols ─────────────────────────────────────────────────────────────────

@runtime_checkable
class SettingsManagerProtocol(Protocol):
    """Structural interface for settings managers."""

    def load_settings(self) -> None: ...
    def use_file(self, settings_file: Path) -> None: ...
    def get_field(self) -> str: ...
    def set_field(self, field: str) -> None: ...
    def get_max_basis(self) -> int: ...
    def set_max_basis(self, max_basis: int) -> None: ...
    def get_max_rank_cells(self) -> int: ...
    def get_memo_limit(self) -> int: ...
    def get_seed(self) -> int: ...
    def set_seed(self, seed: int) -> None: ...
    def get_trials(self) -> int: ...
    def set_trials(self, trials: int) -> None: ...
    def get_workers(self) -> int: ...
    def set_workers(self, workers: int) -> None: ...
    def get_findings_dir(self) -> Path: ...
    def set_findings_dir(self, path: Path) -> None: ...
    def get_xz_rewrite(self) -> str: ...
    def set_xz_rewrite(self, value: str) -> None: ...
    def get_log_level(self) -> str: ...
    def set_log_level(self, level: str) -> None: ...
    def get_log_dir(self) -> Path | None: ...
    def set_log_dir(self, path: Path | None) -> None: ...


@runtime_checkable
class FindingStoreProtocol(Protocol):
    """Structural interface for finding stores."""

    folder: Path

    def save_finding(
        self,
        scenario: str,
        trial: int,
        violation: str,
        seed: int,
        problem_text: str,
    ) -> Path: ...
    def list_findings(self) -> list[Path]: ...
    def load_finding(self, path: Path) -> str: ...
    def delete_finding(self, path: Path) -> bool: ...


# ── DI Container ──────────────────────────────────────────────────────────────

class DIContainer:
    """Lightweight dependency injection container.

    Services are registered by name with an optional singleton flag.  When
    ``singleton=True`` the factory is called only once; subsequent calls to
    :meth:`get` return the cached instance.
    """

    def __init__(self) -> None:
        self._services: dict[str, dict[str, Any]] = {}
        self._singletons: dict[str, Any] = {}

    def register(
        self,
        name: str,
        factory: Callable[[], Any],
        singleton: bool = False,
    ) -> None:
        """Register a service factory under *name*.

        :param name: Unique service identifier.
        :param factory: Zero-argument callable that creates the service instance.
        :param singleton: When True the instance is cached after the first call.
        """
        self._services[name] = {"factory": factory, "singleton": singleton}
        self._singletons.pop(name, None)

    def get(self, name: str) -> Any:
        """Resolve and return the service registered under *name*.

        :param name: Service identifier previously passed to :meth:`register`.
        :raises ValueError: If *name* has not been registered.
        """
        if name not in self._services:
            raise ValueError(f"Service '{name}' not registered")
        service = self._services[name]
        if service["singleton"]:
            if name not in self._singletons:
                self._singletons[name] = service["factory"]()
            return self._singletons[name]
        return service["factory"]()

    def register_defaults(self) -> None:
        """Register the settings manager and the finding store as singletons.

        The finding store reads its folder from the settings manager when it is
        first resolved, so command-line overrides applied before that win.
        """
        from managers.findings import FindingStore
        from managers.settings import SettingsManager

        self.register("settings_manager", lambda: SettingsManager(), singleton=True)
        self.register(
            "finding_store",
            lambda: FindingStore(self.get("settings_manager").get_findings_dir()),
            singleton=True,
        )


_container = DIContainer()
_container.register_defaults()


def get_container() -> DIContainer:
    """Return the module-level singleton :class:`DIContainer`."""
    return _container


def resolve(service_name: str) -> Any:
    """Shorthand to resolve *service_name* from the global container."""
    return _container.get(service_name)
