"""Argument parser of the ``bar-homology`` command line."""
from __future__ import annotations

import argparse
from typing import NoReturn

from config.constants import COMMANDS, FAMILIES, REWRITE_CHOICES, SCENARIOS
from homology.errors import InputError
from homology.order import ContractionRule

PROG = "bar-homology"

DESCRIPTION = """\
Homology of bar subcomplexes of monomial algebras and monomial operads.

single problems (read a problem file):
  word-homology   bar homology of a word, Dyck path and prediction
  dyck            generalized Dyck path of a word
  series-invert   inverse of the truncated Hilbert series
  grassmann       Grassmann homology of a set system, tree or word
  order-check     basic points, order certificate and total homology
  graph-reduce    relation-graph reduction with its rule trace

families & experiments:
  tree-family     truncated binary tree family (--family, --n)
  recurrence      six-coefficient recurrence rows up to --n
  calibrate       family table, recurrence cross-check and offsets

harness:
  fuzz            randomized invariant checks; findings become problem files
  selftest        pinned acceptance instances
"""


class UsageError(InputError):
    """Unknown command, unknown flag or malformed flag value."""

    def __init__(self, message: str, usage: str) -> None:
        self.usage = usage
        super().__init__(message)


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> NoReturn:
        raise UsageError(message, self.format_usage())


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid integer {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _nonnegative(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid integer {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    """Return the parser; unset flags stay ``None`` so settings supply defaults."""
    parser = _Parser(
        prog=PROG,
        description=DESCRIPTION,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("command", choices=COMMANDS, metavar="command", help="one of: " + ", ".join(COMMANDS))
    parser.add_argument("input", nargs="?", help="problem file (single-problem commands)")

    # -------- Computation --------
    parser.add_argument("--field", help="q, 2 or another prime (default 32003)")
    parser.add_argument("--max-basis", type=_positive, help="basis enumeration limit (default 1048576)")

    # -------- Families & experiments --------
    parser.add_argument("--family", choices=sorted(FAMILIES), help="truncated binary tree convention")
    parser.add_argument("--n", type=_positive, help="depth, recurrence index or series truncation")
    parser.add_argument(
        "--rule", choices=[r.value for r in ContractionRule],
        help="contraction rule for order-check (default kernel)",
    )
    parser.add_argument("--table-xz", choices=REWRITE_CHOICES, help="image of xz and zx in calibrate")

    # -------- Harness --------
    parser.add_argument("--seed", type=_nonnegative, help="fuzz seed (default 0)")
    parser.add_argument("--trials", type=_positive, help="fuzz trials per scenario (default 1000)")
    parser.add_argument("--scenario", choices=SCENARIOS, help="single fuzz scenario (default: all)")
    parser.add_argument(
        "--exhaustive", action="store_true",
        help="order-dichotomy: scan every system with ground ≤ 5 and ≤ 4 relations",
    )
    parser.add_argument("--workers", type=_positive, help="fuzz worker processes (default 1)")
    parser.add_argument("--findings-dir", help="directory receiving finding files")

    # -------- Environment --------
    parser.add_argument("--settings", help="settings JSON file")
    parser.add_argument("--log-dir", help="write rotating log files to this directory")
    parser.add_argument("--log-level", help="console log level (default WARNING)")
    return parser
