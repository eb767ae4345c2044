"""Tab-separated report rows written to stdout."""
from __future__ import annotations

from collections.abc import Iterable
from typing import TextIO

from homology.core_complex import HomologyProfile


class Report:
    """Accumulates rows; every cell is rendered with ``str`` and joined by tabs."""

    def __init__(self) -> None:
        self.rows: list[tuple[str, ...]] = []

    def row(self, *cells: object) -> None:
        self.rows.append(tuple(str(c) for c in cells))

    def line(self, text: str) -> None:
        """Append a free-form line (certificate or trace lines)."""
        self.rows.append((text,))

    def flag(self, key: str, value: bool) -> None:
        self.row(key, "yes" if value else "no")

    def sequence(self, key: str, values: Iterable[int]) -> None:
        """Row ``key`` followed by the values as separate cells."""
        self.row(key, *values)

    def homology(self, profile: HomologyProfile) -> None:
        """``H <g> <dim>`` per degree, then ``total`` and ``euler``."""
        for g, dim in enumerate(profile.dims):
            self.row("H", g, dim)
        self.row("total", profile.total)
        self.row("euler", profile.euler)

    def render(self) -> str:
        return "".join("\t".join(cells) + "\n" for cells in self.rows)

    def write(self, stream: TextIO) -> None:
        stream.write(self.render())
        stream.flush()
