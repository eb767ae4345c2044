"""Finding store for fuzz violations.

Each finding is a problem file with a ``#`` comment header naming the
scenario, the violated property, the seed and the trial index. Files are
named ``<scenario>_<trial>.txt`` so identical runs overwrite identical files.
"""
from __future__ import annotations

import re
from pathlib import Path

from config.constants import FINDINGS_FOLDER
from config.logging_system import get_logger

_logger = get_logger("finding_store")

_FILENAME_MAX_LEN = 64


def make_safe_filename(name: str) -> str:
    """Replace unsafe filename characters with underscores, capped at 64 chars.

    :param name: Raw string to sanitise.
    :returns: A filesystem-safe string of at most ``_FILENAME_MAX_LEN`` characters.
    """
    return re.sub(r"[^A-Za-z0-9._-]", "_", name)[:_FILENAME_MAX_LEN]


class FindingStore:
    """Writes, lists and removes replayable finding files in one folder."""

    def __init__(self, folder: Path | None = None) -> None:
        """
        :param folder: Target directory.  Defaults to ``FINDINGS_FOLDER`` when
            ``None``; created lazily on the first save.
        """
        self.folder = folder if folder is not None else FINDINGS_FOLDER

    def path_for(self, scenario: str, trial: int) -> Path:
        return self.folder / f"{make_safe_filename(scenario)}_{trial}.txt"

    def save_finding(
        self,
        scenario: str,
        trial: int,
        violation: str,
        seed: int,
        problem_text: str,
    ) -> Path:
        """Write a finding file and return its path.

        :param scenario: Fuzz scenario that produced the finding.
        :param trial: Trial index inside the run.
        :param violation: One-line description of the violated property.
        :param seed: Run seed; together with *scenario* and *trial* it
            regenerates the unminimized instance.
        :param problem_text: Minimized problem file body.
        :returns: Path of the written file.
        """
        header = (
            f"# scenario {scenario}\n"
            f"# violation {violation}\n"
            f"# seed {seed}\n"
            f"# trial {trial}\n"
        )
        path = self.path_for(scenario, trial)
        self.folder.mkdir(parents=True, exist_ok=True)
        path.write_text(header + problem_text, encoding="utf-8")
        _logger.log_finding(scenario, violation, trial=trial, seed=seed, path=str(path))
        return path

    def list_findings(self) -> list[Path]:
        """Return all finding files in name order (empty if the folder is missing)."""
        if not self.folder.exists():
            return []
        return sorted(self.folder.glob("*.txt"))

    def load_finding(self, path: Path) -> str:
        return path.read_text(encoding="utf-8")

    def delete_finding(self, path: Path) -> bool:
        """Remove *path* from the store.

        :returns: ``True`` if the file existed and was removed, ``False`` otherwise.
        """
        try:
            path.unlink()
        except FileNotFoundError:
            return False
        except OSError as exc:
            _logger.error("Failed to delete finding", error=str(exc), path=str(path))
            return False
        return True


def read_header(text: str) -> dict[str, str]:
    """Parse the ``# key value`` comment header of a finding file."""
    header: dict[str, str] = {}
    for line in text.splitlines():
        if not line.startswith("#"):
            break
        key, _, value = line[1:].strip().partition(" ")
        if key:
            header[key] = value.strip()
    return header
