import sys
from pathlib import Path
from typing import Final


# ================= Resource Paths =================

def resource_path(relative_path: str) -> Path:
    """
    Return absolute path to a resource (settings, findings, logs).
    Works for both Python scripts and frozen executables.
    """
    base_dir = (
        Path(sys.executable).parent
        if getattr(sys, "frozen", False)
        else Path(__file__).resolve().parent.parent  # src/
    )
    return base_dir / relative_path


# ================= Folders & Files =================

LOGS_FOLDER: Final[Path] = resource_path("logs")
FINDINGS_FOLDER: Final[Path] = resource_path("findings")
SETTINGS_FILE: Final[Path] = resource_path("settings.json")


# ================= Computation Limits =================

DEFAULT_PRIME: Final[int] = 32003
DEFAULT_FIELD: Final[str] = str(DEFAULT_PRIME)
DEFAULT_MAX_BASIS: Final[int] = 1 << 20
DEFAULT_MAX_RANK_CELLS: Final[int] = 1 << 36
DEFAULT_MEMO_LIMIT: Final[int] = 1 << 18
MAX_FAMILY_DEPTH: Final[int] = 8


# ================= Exit Codes =================

EXIT_OK: Final[int] = 0
EXIT_VIOLATION: Final[int] = 1
EXIT_INPUT_ERROR: Final[int] = 2
EXIT_CAPACITY: Final[int] = 3


# ================= Fuzzing =================

DEFAULT_SEED: Final[int] = 0
DEFAULT_TRIALS: Final[int] = 1000
DEFAULT_WORKERS: Final[int] = 1
DEFAULT_SERIES_DEPTH: Final[int] = 8

FUZZ_MAX_WORD_LENGTH: Final[int] = 12
FUZZ_MAX_ALPHABET: Final[int] = 3
FUZZ_MAX_RELATIONS: Final[int] = 3
FUZZ_MAX_RELATION_LENGTH: Final[int] = 4
FUZZ_MAX_GRAPH_VERTICES: Final[int] = 12
FUZZ_MAX_ORDER_GROUND: Final[int] = 7
FUZZ_EXHAUSTIVE_ORDER_GROUND: Final[int] = 5
FUZZ_EXHAUSTIVE_ORDER_RELATIONS: Final[int] = 4


# ================= CLI Vocabulary =================

COMMANDS: Final[list[str]] = [
    # -------- Single problems --------
    "word-homology",
    "dyck",
    "series-invert",
    "grassmann",
    "order-check",
    "graph-reduce",

    # -------- Families & experiments --------
    "tree-family",
    "recurrence",
    "calibrate",

    # -------- Harness --------
    "fuzz",
    "selftest",
]

FAMILIES: Final[dict[str, str]] = {
    "line": "line_graph_Cn",
    "cherries": "cherries_only_An",
    "singletons": "deep_singletons_An",
}

SCENARIOS: Final[list[str]] = [
    "algebra-dichotomy",
    "dyck-position",
    "series-pm1",
    "order-dichotomy",
    "graph-rules",
]

REWRITE_CHOICES: Final[list[str]] = ["x", "y", "z", "0"]
DEFAULT_XZ_REWRITE: Final[str] = "z"
