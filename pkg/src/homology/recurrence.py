"""Pair-rewriting on words over {x, y, z} and the six-coefficient recurrence.

The rewrite operator ``r`` replaces a word ``w_1 w_2 ... w_{2m}`` by the
product ``r(w_1 w_2) ... r(w_{2m-1} w_{2m})``. Starting from ``x^(2^(n+1))``
and rewriting ``n`` times leaves a combination of length-2 words whose
coefficients ``(a, b, c, p, q, r)`` are tracked by the recurrence.
"""
from __future__ import annotations

from collections import defaultdict
from collections.abc import Mapping
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Final

from config.constants import DEFAULT_XZ_REWRITE
from config.logging_system import get_logger
from homology.errors import InputError, PreconditionError, SymmetryViolationError

_logger = get_logger("recurrence")

LETTERS: Final[str] = "xyz"
AMBIGUOUS_PAIRS: Final[tuple[str, ...]] = ("xz", "zx")


# ── Letter combinations ───────────────────────────────────────────────────────

@dataclass(frozen=True)
class LetterCombo:
    """Nonnegative combination of words over {x, y, z}, all of one length."""

    terms: Mapping[str, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        clean: dict[str, int] = {}
        lengths = set()
        for word, coeff in self.terms.items():
            if any(ch not in LETTERS for ch in word):
                raise InputError(f"word {word!r} is not over x, y, z")
            if coeff < 0:
                raise InputError(f"negative coefficient {coeff} on {word!r}")
            if coeff:
                clean[word] = coeff
                lengths.add(len(word))
        if len(lengths) > 1:
            raise InputError(f"mixed word lengths {sorted(lengths)}")
        object.__setattr__(self, "terms", MappingProxyType(dict(sorted(clean.items()))))

    @classmethod
    def of(cls, word: str, coeff: int = 1) -> LetterCombo:
        return cls({word: coeff})

    @property
    def length(self) -> int:
        return len(next(iter(self.terms))) if self.terms else 0

    def coefficient(self, word: str) -> int:
        return self.terms.get(word, 0)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LetterCombo):
            return NotImplemented
        return dict(self.terms) == dict(other.terms)


@dataclass(frozen=True)
class RewriteTable:
    """Image of every letter pair as a combination of single letters."""

    images: Mapping[str, Mapping[str, int]]

    def __post_init__(self) -> None:
        missing = [a + b for a in LETTERS for b in LETTERS if a + b not in self.images]
        if missing:
            raise InputError(f"rewrite table lacks pairs {missing}")

    @classmethod
    def standard(cls, xz: str = DEFAULT_XZ_REWRITE) -> RewriteTable:
        """The published table, with ``r(xz) = r(zx) = xz`` (``"0"`` for zero).

        :raises InputError: If *xz* is not one of ``x``, ``y``, ``z``, ``0``.
        """
        if xz not in ("x", "y", "z", "0"):
            raise InputError(f"unknown xz rewrite {xz!r}")
        ambiguous = {} if xz == "0" else {xz: 1}
        return cls({
            "xx": {"y": 1, "z": 1},
            "yy": {},
            "zz": {"x": 1},
            "xy": {"z": 1}, "yx": {"z": 1},
            "yz": {"z": 1}, "zy": {"z": 1},
            "xz": ambiguous, "zx": dict(ambiguous),
        })


DEFAULT_TABLE: Final[RewriteTable] = RewriteTable.standard()


class RewriteEngine:
    """Applies the rewrite operator and records consulted ambiguous pairs."""

    def __init__(self, table: RewriteTable | None = None) -> None:
        self.table = table or DEFAULT_TABLE
        self.ambiguous_consulted: set[str] = set()

    def step(self, c: LetterCombo) -> LetterCombo:
        """Rewrite every word of *c* pairwise and expand the products.

        :raises PreconditionError: If the words have odd length or are empty.
        """
        if not c.terms:
            return LetterCombo()
        if c.length == 0 or c.length % 2:
            raise PreconditionError(f"rewrite needs even word length ≥ 2, got {c.length}")
        result: dict[str, int] = defaultdict(int)
        for word, coeff in c.terms.items():
            partial: dict[str, int] = {"": coeff}
            for i in range(0, len(word), 2):
                pair = word[i:i + 2]
                if pair in AMBIGUOUS_PAIRS and pair not in self.ambiguous_consulted:
                    self.ambiguous_consulted.add(pair)
                    _logger.info("ambiguous rewrite entry consulted", pair=pair)
                image = self.table.images[pair]
                expanded: dict[str, int] = defaultdict(int)
                for prefix, value in partial.items():
                    for letter, k in image.items():
                        expanded[prefix + letter] += value * k
                partial = expanded
                if not partial:
                    break
            for out, value in partial.items():
                result[out] += value
        return LetterCombo(result)

    def iterate(self, c: LetterCombo, times: int) -> LetterCombo:
        for _ in range(times):
            c = self.step(c)
        return c


def rewrite_step(c: LetterCombo, table: RewriteTable | None = None) -> LetterCombo:
    return RewriteEngine(table).step(c)


def coeff_vector(c: LetterCombo) -> tuple[int, int, int, int, int, int]:
    """Read ``(a, b, c, p, q, r)`` off a combination of length-2 words.

    :raises SymmetryViolationError: If a mirrored pair has unequal coefficients.
    """
    if c.terms and c.length != 2:
        raise PreconditionError(f"coefficient vector needs length-2 words, got {c.length}")
    for left, right in (("xy", "yx"), ("xz", "zx"), ("yz", "zy")):
        if c.coefficient(left) != c.coefficient(right):
            raise SymmetryViolationError(
                f"{left} has {c.coefficient(left)} but {right} has {c.coefficient(right)}"
            )
    return (
        c.coefficient("xx"), c.coefficient("yy"), c.coefficient("zz"),
        c.coefficient("xy"), c.coefficient("xz"), c.coefficient("yz"),
    )


def x_power_iterate(n: int, engine: RewriteEngine | None = None) -> LetterCombo:
    """Rewrite ``x^(2^(n+1))`` exactly ``n`` times."""
    engine = engine or RewriteEngine()
    return engine.iterate(LetterCombo.of("x" * 2 ** (n + 1)), n)


# ── Recurrence ────────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class RecurrenceState:
    n: int
    a: int
    b: int
    c: int
    p: int
    q: int
    r: int

    def __post_init__(self) -> None:
        if min(self.vector) < 0:
            raise InputError(f"negative recurrence coefficient in {self.vector}")

    @property
    def vector(self) -> tuple[int, int, int, int, int, int]:
        return self.a, self.b, self.c, self.p, self.q, self.r

    @property
    def dim(self) -> int:
        return self.a + self.c + 2 * self.p + 2 * self.r


INITIAL_STATE: Final[RecurrenceState] = RecurrenceState(1, 0, 1, 1, 0, 0, 1)


def recurrence_step(s: RecurrenceState) -> RecurrenceState:
    """Apply the six published update formulas."""
    a, b, c, p, q, r = s.vector
    y_weight = a + 2 * q
    z_weight = a + 2 * p + 2 * r
    return RecurrenceState(
        s.n + 1,
        a=c * c,
        b=y_weight * y_weight,
        c=z_weight * z_weight,
        p=c * (a + q),
        q=c * z_weight,
        r=y_weight * z_weight,
    )


def derived_recurrence_step(
    s: RecurrenceState, table: RewriteTable | None = None,
) -> RecurrenceState:
    """Square the letter weights that *table* assigns to the current state."""
    table = table or DEFAULT_TABLE
    pair_coeffs = {
        "xx": s.a, "yy": s.b, "zz": s.c,
        "xy": s.p, "yx": s.p, "xz": s.q, "zx": s.q, "yz": s.r, "zy": s.r,
    }
    weight = {letter: 0 for letter in LETTERS}
    for pair, coeff in pair_coeffs.items():
        for letter, k in table.images[pair].items():
            weight[letter] += coeff * k
    x, y, z = weight["x"], weight["y"], weight["z"]
    return RecurrenceState(s.n + 1, a=x * x, b=y * y, c=z * z, p=x * y, q=x * z, r=y * z)


def recurrence_states(n: int) -> list[RecurrenceState]:
    """Published recurrence states for indices ``1..n``."""
    if n < 1:
        raise PreconditionError(f"recurrence index must be ≥ 1, got {n}")
    states = [INITIAL_STATE]
    while len(states) < n:
        states.append(recurrence_step(states[-1]))
    return states


def recurrence_dims(n: int) -> int:
    return recurrence_states(n)[-1].dim
