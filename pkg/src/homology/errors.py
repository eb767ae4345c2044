"""Exception hierarchy shared by the homology library and the CLI."""
from __future__ import annotations


class HomologyError(Exception):
    """Base class of every error raised by the library."""


class CapacityError(HomologyError):
    """A configured work limit would be exceeded."""

    def __init__(self, what: str, size: int, limit: int) -> None:
        self.what = what
        self.size = size
        self.limit = limit
        super().__init__(f"{what} needs {size}, limit is {limit}")


class InputError(HomologyError, ValueError):
    """The caller supplied data that violates a documented precondition."""


class InvalidRelationError(InputError):
    """A relation is too short, out of range, or not a connected subtree."""


class PreconditionError(InputError):
    """An operation was applied outside its domain."""


class NotQuadraticError(InputError):
    """A set system has a relation with three or more variables."""


class InversionError(InputError):
    """A series without unit constant term cannot be inverted."""


class ProblemFileError(InputError):
    """A problem file could not be parsed."""

    def __init__(self, message: str, line: int | None = None) -> None:
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(f"{prefix}{message}")


class StructuralError(HomologyError):
    """Differential shapes of a graded complex do not chain together."""


class InternalConsistencyError(HomologyError):
    """A computed quantity contradicts an invariant (e.g. a negative dimension)."""


class SymmetryViolationError(HomologyError):
    """A letter combination has unequal coefficients on mirrored pairs."""
