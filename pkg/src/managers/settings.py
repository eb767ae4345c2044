"""Settings manager for the bar homology toolkit."""
from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from config.constants import (
    DEFAULT_FIELD,
    DEFAULT_MAX_BASIS,
    DEFAULT_MAX_RANK_CELLS,
    DEFAULT_MEMO_LIMIT,
    DEFAULT_SEED,
    DEFAULT_TRIALS,
    DEFAULT_WORKERS,
    DEFAULT_XZ_REWRITE,
    FINDINGS_FOLDER,
    SETTINGS_FILE,
)
from config.logging_system import get_logger

_logger = get_logger("settings_manager")


class SettingsManager:
    """Holds run settings loaded from a JSON file; command-line flags override them."""

    def __init__(self, settings_file: Path | None = None) -> None:
        """Initialise the manager and load settings from disk.

        :param settings_file: Path to the settings JSON file.  Defaults to
            ``SETTINGS_FILE`` when ``None``.
        """
        self.settings_file = settings_file if settings_file is not None else SETTINGS_FILE
        self.settings: dict[str, Any] = {}
        self.load_settings()

    def load_settings(self) -> None:
        """Load settings from disk, falling back to defaults on any error.

        Sections missing from the file keep their default values.
        """
        self.settings = self._get_default_settings()
        if not self.settings_file.exists():
            return
        try:
            with self.settings_file.open("r", encoding="utf-8") as f:
                loaded = json.load(f)
            if not isinstance(loaded, dict):
                raise ValueError("settings root must be an object")
        except Exception as exc:
            _logger.error("Failed to load settings", error=str(exc), path=str(self.settings_file))
            return
        for section, values in loaded.items():
            if isinstance(values, dict):
                self.settings.setdefault(section, {}).update(values)

    def use_file(self, settings_file: Path) -> None:
        """Switch to *settings_file* and reload, discarding earlier overrides."""
        self.settings_file = settings_file
        self.load_settings()

    def _get_default_settings(self) -> dict[str, Any]:
        """Return the factory-default settings structure.

        :returns: Nested dict with ``computation``, ``fuzz``, ``recurrence`` and
            ``logging`` keys.
        """
        return {
            "computation": {
                "field": DEFAULT_FIELD,
                "max_basis": DEFAULT_MAX_BASIS,
                "max_rank_cells": DEFAULT_MAX_RANK_CELLS,
                "memo_limit": DEFAULT_MEMO_LIMIT,
            },
            "fuzz": {
                "seed": DEFAULT_SEED,
                "trials": DEFAULT_TRIALS,
                "workers": DEFAULT_WORKERS,
                "findings_dir": str(FINDINGS_FOLDER),
            },
            "recurrence": {
                "xz_rewrite": DEFAULT_XZ_REWRITE,
            },
            "logging": {
                "level": "WARNING",
                "log_dir": "",
            },
        }

    # ── Computation ───────────────────────────────────────────────────────────

    def get_field(self) -> str:
        """Return the coefficient field token (``"q"`` or a prime).

        :returns: Field token string (default ``"32003"``).
        """
        return str(self.settings.get("computation", {}).get("field", DEFAULT_FIELD))

    def set_field(self, field: str) -> None:
        self.settings.setdefault("computation", {})["field"] = field

    def get_max_basis(self) -> int:
        return int(self.settings.get("computation", {}).get("max_basis", DEFAULT_MAX_BASIS))

    def set_max_basis(self, max_basis: int) -> None:
        self.settings.setdefault("computation", {})["max_basis"] = max_basis

    def get_max_rank_cells(self) -> int:
        return int(self.settings.get("computation", {}).get("max_rank_cells", DEFAULT_MAX_RANK_CELLS))

    def get_memo_limit(self) -> int:
        return int(self.settings.get("computation", {}).get("memo_limit", DEFAULT_MEMO_LIMIT))

    # ── Fuzz ──────────────────────────────────────────────────────────────────

    def get_seed(self) -> int:
        return int(self.settings.get("fuzz", {}).get("seed", DEFAULT_SEED))

    def set_seed(self, seed: int) -> None:
        self.settings.setdefault("fuzz", {})["seed"] = seed

    def get_trials(self) -> int:
        return int(self.settings.get("fuzz", {}).get("trials", DEFAULT_TRIALS))

    def set_trials(self, trials: int) -> None:
        self.settings.setdefault("fuzz", {})["trials"] = trials

    def get_workers(self) -> int:
        return max(1, int(self.settings.get("fuzz", {}).get("workers", DEFAULT_WORKERS)))

    def set_workers(self, workers: int) -> None:
        self.settings.setdefault("fuzz", {})["workers"] = workers

    def get_findings_dir(self) -> Path:
        """Return the directory that receives minimized finding files."""
        return Path(self.settings.get("fuzz", {}).get("findings_dir", str(FINDINGS_FOLDER)))

    def set_findings_dir(self, path: Path) -> None:
        self.settings.setdefault("fuzz", {})["findings_dir"] = str(path)

    # ── Recurrence ────────────────────────────────────────────────────────────

    def get_xz_rewrite(self) -> str:
        """Return the configured image of the pairs ``xz`` and ``zx``.

        :returns: One of ``"x"``, ``"y"``, ``"z"``, ``"0"`` (default ``"z"``).
        """
        return str(self.settings.get("recurrence", {}).get("xz_rewrite", DEFAULT_XZ_REWRITE))

    def set_xz_rewrite(self, value: str) -> None:
        self.settings.setdefault("recurrence", {})["xz_rewrite"] = value

    # ── Logging ───────────────────────────────────────────────────────────────

    def get_log_level(self) -> str:
        return str(self.settings.get("logging", {}).get("level", "WARNING"))

    def set_log_level(self, level: str) -> None:
        self.settings.setdefault("logging", {})["level"] = level

    def get_log_dir(self) -> Path | None:
        """Return the log directory, or ``None`` when file logging is off."""
        raw = self.settings.get("logging", {}).get("log_dir", "")
        return Path(raw) if raw else None

    def set_log_dir(self, path: Path | None) -> None:
        self.settings.setdefault("logging", {})["log_dir"] = str(path) if path else ""
