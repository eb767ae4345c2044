"""Shared pytest fixtures for the bar homology test suite."""
from __future__ import annotations

import io
from collections.abc import Callable
from pathlib import Path

import pytest

from homology.core_complex import FieldSpec, Limits


# ---------------------------------------------------------------------------
# Fields and limits
# ---------------------------------------------------------------------------
@pytest.fixture(params=["q", "32003"], ids=["rational", "gf32003"])
def field(request) -> FieldSpec:
    """Run a test once over the rationals and once over GF(32003)."""
    return FieldSpec.parse(request.param)


@pytest.fixture()
def rational() -> FieldSpec:
    return FieldSpec.rational()


@pytest.fixture()
def limits() -> Limits:
    return Limits()


# ---------------------------------------------------------------------------
# Temporary directory helpers
# ---------------------------------------------------------------------------
@pytest.fixture()
def tmp_settings_file(tmp_path: Path) -> Path:
    """Return a temporary settings JSON file path."""
    p = tmp_path / "settings.json"
    p.write_text("{}", encoding="utf-8")
    return p


@pytest.fixture()
def write_problem(tmp_path: Path) -> Callable[[str, str], Path]:
    """Return a helper that writes a problem file into tmp_path."""
    def _write(text: str, name: str = "problem.txt") -> Path:
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return path
    return _write


# ---------------------------------------------------------------------------
# Managers and CLI
# ---------------------------------------------------------------------------
@pytest.fixture()
def settings_manager(tmp_settings_file: Path, tmp_path: Path):
    from managers.settings import SettingsManager
    mgr = SettingsManager(tmp_settings_file)
    mgr.set_findings_dir(tmp_path / "findings")
    return mgr


@pytest.fixture()
def finding_store(tmp_path: Path):
    from managers.findings import FindingStore
    return FindingStore(tmp_path / "findings")


@pytest.fixture()
def cli(settings_manager, finding_store):
    """HomologyCli writing into in-memory streams (``cli.out`` / ``cli.err``)."""
    from app import HomologyCli
    return HomologyCli(
        settings_manager=settings_manager,
        finding_store=finding_store,
        stdout=io.StringIO(),
        stderr=io.StringIO(),
    )
