"""Tests for managers/settings.py — SettingsManager."""
from __future__ import annotations

import json
from pathlib import Path
from unittest.mock import patch

from config.constants import DEFAULT_MAX_BASIS, DEFAULT_PRIME, FINDINGS_FOLDER


# ---------------------------------------------------------------------------
# Helper
# ---------------------------------------------------------------------------

def _fresh(tmp_path: Path) -> "SettingsManager":  # noqa: F821
    """Create a SettingsManager backed by a temp file that does not exist yet."""
    from managers.settings import SettingsManager
    return SettingsManager(tmp_path / "settings.json")


def _with_file(tmp_path: Path, content: str) -> "SettingsManager":  # noqa: F821
    from managers.settings import SettingsManager
    f = tmp_path / "settings.json"
    f.write_text(content, encoding="utf-8")
    return SettingsManager(f)


# ---------------------------------------------------------------------------
# Default settings
# ---------------------------------------------------------------------------

class TestDefaultSettings:
    def test_default_field_is_prime(self, tmp_path):
        assert _fresh(tmp_path).get_field() == str(DEFAULT_PRIME)

    def test_default_max_basis(self, tmp_path):
        assert _fresh(tmp_path).get_max_basis() == DEFAULT_MAX_BASIS

    def test_default_fuzz_values(self, tmp_path):
        mgr = _fresh(tmp_path)
        assert mgr.get_seed() == 0
        assert mgr.get_trials() == 1000
        assert mgr.get_workers() == 1

    def test_default_findings_dir(self, tmp_path):
        assert _fresh(tmp_path).get_findings_dir() == FINDINGS_FOLDER

    def test_default_xz_rewrite_is_z(self, tmp_path):
        assert _fresh(tmp_path).get_xz_rewrite() == "z"

    def test_default_logging(self, tmp_path):
        mgr = _fresh(tmp_path)
        assert mgr.get_log_level() == "WARNING"
        assert mgr.get_log_dir() is None

    def test_default_sections(self, tmp_path):
        sections = _fresh(tmp_path)._get_default_settings()
        assert set(sections) == {"computation", "fuzz", "recurrence", "logging"}


# ---------------------------------------------------------------------------
# Setters / getters round-trip
# ---------------------------------------------------------------------------

class TestSettersAndGetters:
    def test_set_get_field(self, tmp_path):
        mgr = _fresh(tmp_path)
        mgr.set_field("q")
        assert mgr.get_field() == "q"

    def test_set_get_max_basis(self, tmp_path):
        mgr = _fresh(tmp_path)
        mgr.set_max_basis(64)
        assert mgr.get_max_basis() == 64

    def test_set_get_seed_and_trials(self, tmp_path):
        mgr = _fresh(tmp_path)
        mgr.set_seed(42)
        mgr.set_trials(7)
        assert (mgr.get_seed(), mgr.get_trials()) == (42, 7)

    def test_workers_never_below_one(self, tmp_path):
        mgr = _fresh(tmp_path)
        mgr.set_workers(0)
        assert mgr.get_workers() == 1

    def test_set_get_findings_dir(self, tmp_path):
        mgr = _fresh(tmp_path)
        mgr.set_findings_dir(tmp_path / "f")
        assert mgr.get_findings_dir() == tmp_path / "f"

    def test_set_get_xz_rewrite(self, tmp_path):
        mgr = _fresh(tmp_path)
        mgr.set_xz_rewrite("0")
        assert mgr.get_xz_rewrite() == "0"

    def test_set_and_clear_log_dir(self, tmp_path):
        mgr = _fresh(tmp_path)
        mgr.set_log_dir(tmp_path / "logs")
        assert mgr.get_log_dir() == tmp_path / "logs"
        mgr.set_log_dir(None)
        assert mgr.get_log_dir() is None


# ---------------------------------------------------------------------------
# Loading
# ---------------------------------------------------------------------------

class TestLoading:
    def test_file_values_override_defaults(self, tmp_path):
        mgr = _with_file(tmp_path, json.dumps({"computation": {"field": "q"}, "fuzz": {"trials": 5}}))
        assert mgr.get_field() == "q"
        assert mgr.get_trials() == 5

    def test_missing_keys_keep_defaults(self, tmp_path):
        mgr = _with_file(tmp_path, json.dumps({"computation": {"field": "2"}}))
        assert mgr.get_max_basis() == DEFAULT_MAX_BASIS
        assert mgr.get_xz_rewrite() == "z"

    def test_non_dict_section_ignored(self, tmp_path):
        mgr = _with_file(tmp_path, json.dumps({"fuzz": [1, 2]}))
        assert mgr.get_trials() == 1000

    def test_corrupt_file_uses_defaults(self, tmp_path):
        mgr = _with_file(tmp_path, "NOT_JSON")
        assert mgr.get_field() == str(DEFAULT_PRIME)

    def test_non_object_root_uses_defaults(self, tmp_path):
        mgr = _with_file(tmp_path, "[1, 2, 3]")
        assert mgr.get_seed() == 0

    def test_use_file_discards_overrides(self, tmp_path):
        mgr = _fresh(tmp_path)
        mgr.set_seed(99)
        other = tmp_path / "other.json"
        other.write_text(json.dumps({"fuzz": {"trials": 3}}), encoding="utf-8")
        mgr.use_file(other)
        assert mgr.settings_file == other
        assert mgr.get_seed() == 0
        assert mgr.get_trials() == 3

    def test_default_file_via_constant(self, tmp_path):
        from managers.settings import SettingsManager
        with patch("managers.settings.SETTINGS_FILE", tmp_path / "s.json"):
            mgr = SettingsManager()
        assert mgr.settings_file == tmp_path / "s.json"
        assert mgr.get_trials() == 1000
