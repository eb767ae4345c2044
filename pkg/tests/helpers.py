"""Shared test data and helpers for the bar homology test suite."""
from __future__ import annotations

import io

# ---------------------------------------------------------------------------
# Sample problem files
# ---------------------------------------------------------------------------
WORD_XXXX = """\
alphabet x
relation x x x
word x x x x
"""

WORD_XYZZ = """\
alphabet x y z
relation x y z
relation z z
word x y z z
"""

ALGEBRA_CUBE_AND_XY = """\
alphabet x y
relation x x x
relation x y
option n 6
"""

SYSTEM_FOUR_POINT = """\
ground 4
rel 1 2 3
rel 1 4
rel 2 4
rel 3 4
"""

SYSTEM_SIX_POINT = """\
ground 6
rel 1 3
rel 1 4
rel 1 2
rel 2 5
rel 2 6
rel 3 4
rel 5 6
"""

TREE_TERNARY = """\
tree
node r arity 3 parent root
node a arity 2 parent r
node b arity 2 parent r
node c arity 2 parent r
treerel r a b
treerel r a c
treerel r b c
"""

TRIANGLE_SYSTEM = """\
ground 3
rel 1 2
rel 1 3
rel 2 3
"""


# ---------------------------------------------------------------------------
# Report parsing
# ---------------------------------------------------------------------------
def report_rows(stream: io.StringIO) -> list[list[str]]:
    """Split the tab-separated report written to *stream* into cells."""
    return [line.split("\t") for line in stream.getvalue().splitlines()]


def report_value(stream: io.StringIO, key: str) -> str:
    """Return the second cell of the first row whose first cell is *key*."""
    for row in report_rows(stream):
        if row[0] == key:
            return row[1]
    raise KeyError(key)


def homology_rows(stream: io.StringIO) -> dict[int, int]:
    return {int(row[1]): int(row[2]) for row in report_rows(stream) if row[0] == "H"}
