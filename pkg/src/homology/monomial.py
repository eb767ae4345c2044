"""Words, relation antichains, bar subcomplexes and the Dyck-path predictor.

A word ``w = x_1 ... x_n`` has ``n - 1`` gaps. A basis element of the bar
subcomplex ``B_w`` is a set ``S`` of *merged* gaps whose blocks are all nonzero
in the algebra; its stored degree is ``|S|`` and its bar index is ``n - |S|``.
"""
from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from enum import Enum
from functools import cached_property

import ahocorasick

from config.logging_system import get_logger
from homology.core_complex import (
    DEFAULT_LIMITS,
    FieldSpec,
    GradedComplex,
    HomologyProfile,
    Limits,
    homology_dims,
    subset_complex,
)
from homology.errors import InputError, InvalidRelationError, PreconditionError

_logger = get_logger("monomial")

Word = tuple[int, ...]

# Letters are packed into one code point each for substring scanning.
_CODE_BASE = 0x100


def encode(word: Sequence[int]) -> str:
    return "".join(chr(_CODE_BASE + i) for i in word)


# ── Alphabet ──────────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class Alphabet:
    """Ordered list of distinct letter tokens."""

    letters: tuple[str, ...]

    def __post_init__(self) -> None:
        if not self.letters:
            raise InputError("alphabet is empty")
        if len(set(self.letters)) != len(self.letters):
            raise InputError(f"alphabet has repeated tokens: {' '.join(self.letters)}")
        for token in self.letters:
            if not token or any(ch.isspace() for ch in token) or token.startswith("#"):
                raise InputError(f"invalid alphabet token {token!r}")

    @classmethod
    def of_size(cls, size: int) -> Alphabet:
        """Return the alphabet ``a, b, c, ...`` (or ``x0, x1, ...`` beyond 26)."""
        if size <= 26:
            return cls(tuple(chr(ord("a") + i) for i in range(size)))
        return cls(tuple(f"x{i}" for i in range(size)))

    @property
    def size(self) -> int:
        return len(self.letters)

    def index(self, token: str) -> int:
        try:
            return self.letters.index(token)
        except ValueError:
            raise InputError(f"token {token!r} is not in the alphabet") from None

    def parse(self, tokens: Iterable[str]) -> Word:
        return tuple(self.index(t) for t in tokens)

    def render(self, word: Sequence[int], empty: str = "1") -> str:
        """Render *word*; single-character tokens are concatenated, others joined by ``.``."""
        if not word:
            return empty
        tokens = [self.letters[i] for i in word]
        sep = "" if all(len(t) == 1 for t in self.letters) else "."
        return sep.join(tokens)


# ── Relations ─────────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class RelationSet:
    """Antichain of forbidden factor-words, none of length ≤ 1."""

    relations: tuple[Word, ...] = ()

    def __post_init__(self) -> None:
        for rel in self.relations:
            if len(rel) <= 1:
                raise InvalidRelationError(f"relation {rel} has length {len(rel)}")
        encoded = [encode(rel) for rel in self.relations]
        for i, small in enumerate(encoded):
            for j, big in enumerate(encoded):
                if i != j and small in big:
                    raise InvalidRelationError(
                        f"relation {self.relations[i]} is a factor of {self.relations[j]}"
                    )

    @cached_property
    def _automaton(self) -> ahocorasick.Automaton | None:
        if not self.relations:
            return None
        automaton = ahocorasick.Automaton()
        for rel in self.relations:
            automaton.add_word(encode(rel), len(rel))
        automaton.make_automaton()
        return automaton

    def occurrences(self, w: Sequence[int]) -> list[tuple[int, int]]:
        """Return every occurrence ``[a, b]`` (1-based, inclusive) of a relation in *w*."""
        automaton = self._automaton
        if automaton is None or not w:
            return []
        found = {
            (end - length + 2, end + 1)
            for end, length in automaton.iter(encode(w))
        }
        return sorted(found)

    def is_zero(self, w: Sequence[int]) -> bool:
        automaton = self._automaton
        if automaton is None or not w:
            return False
        for _ in automaton.iter(encode(w)):
            return True
        return False

    def ends_with_relation(self, w: Sequence[int]) -> bool:
        """True iff some relation is a suffix of *w*."""
        return any(
            len(rel) <= len(w) and tuple(w[len(w) - len(rel):]) == rel
            for rel in self.relations
        )

    def __len__(self) -> int:
        return len(self.relations)


def reduce_antichain(ws: Iterable[Sequence[int]]) -> RelationSet:
    """Return the minimal antichain generating the same monomial ideal as *ws*.

    :raises InvalidRelationError: If some word has length ≤ 1.
    """
    words = sorted({tuple(w) for w in ws}, key=lambda w: (len(w), w))
    for w in words:
        if len(w) <= 1:
            raise InvalidRelationError(f"relation {w} has length {len(w)}")
    kept: list[Word] = []
    for w in words:
        code = encode(w)
        if not any(encode(k) in code for k in kept):
            kept.append(w)
    return RelationSet(tuple(kept))


def occurrences(w: Sequence[int], R: RelationSet) -> list[tuple[int, int]]:
    return R.occurrences(w)


def is_zero_word(w: Sequence[int], R: RelationSet) -> bool:
    return R.is_zero(w)


# ── Bar subcomplex ────────────────────────────────────────────────────────────

def gap_masks(w: Sequence[int], R: RelationSet) -> list[int]:
    """Gap-interval bitmask of every relation occurrence (gap ``i`` is bit ``i - 1``)."""
    masks = {((1 << (b - a)) - 1) << (a - 1) for a, b in R.occurrences(w)}
    return sorted(masks)


def block_label(w: Sequence[int], merged: int, alphabet: Alphabet | None = None) -> str:
    """Render the block decomposition of *w* selected by the merged-gap mask."""
    tokens = [alphabet.letters[i] if alphabet else f"x{i}" for i in w]
    parts = [tokens[0]] if tokens else []
    for gap, token in enumerate(tokens[1:]):
        parts.append("." if merged >> gap & 1 else "|")
        parts.append(token)
    return "".join(parts)


def bar_subcomplex(
    w: Sequence[int],
    R: RelationSet,
    alphabet: Alphabet | None = None,
    limits: Limits = DEFAULT_LIMITS,
) -> GradedComplex:
    """Build ``B_w`` in cochain orientation (degree = number of merged gaps)."""
    n = len(w)
    if n == 0:
        return GradedComplex()
    word = tuple(w)
    return subset_complex(
        n - 1,
        gap_masks(word, R),
        lambda mask: block_label(word, mask, alphabet),
        limits,
    )


def word_homology(
    w: Sequence[int], R: RelationSet, f: FieldSpec, limits: Limits = DEFAULT_LIMITS,
) -> HomologyProfile:
    return homology_dims(bar_subcomplex(w, R, limits=limits), f, limits)


# ── Dyck path & prediction ────────────────────────────────────────────────────

class DyckReason(str, Enum):
    UNUSED_LETTER = "unused_letter"
    NON_INCREASING = "non_increasing"
    LAST_NOT_N = "last_not_n"
    NONEXACT = "nonexact"


@dataclass(frozen=True)
class DyckResult:
    d_sequence: tuple[int, ...]
    r: int
    exact: bool
    reason: DyckReason


def dyck_path(w: Sequence[int], R: RelationSet) -> DyckResult:
    """Walk the chain of minimal zero prefixes of *w*.

    The walk keeps the current block ``x_b..x_e`` (initially the first letter).
    From ``b`` the minimal zero prefix ends at ``d``; the next block is
    ``x_{e+1}..x_d``. The word is non-exact when a block reaches ``n``
    without any block containing a relation occurrence; a block that does
    contain one repeats the previous ``d``.

    :raises PreconditionError: For the empty word.
    """
    n = len(w)
    if n == 0:
        raise PreconditionError("dyck_path needs a nonempty word")
    occ = R.occurrences(w)
    unreachable = n + 1
    first_end = [unreachable] * (n + 2)
    covered = [False] * (n + 1)
    for a, b in occ:
        first_end[a] = min(first_end[a], b)
        for pos in range(a, b + 1):
            covered[pos] = True
    for s in range(n - 1, 0, -1):
        first_end[s] = min(first_end[s], first_end[s + 1])

    d: list[int] = []
    begin, end = 1, 1
    while True:
        if first_end[begin] <= end:
            d.append(first_end[begin])
            reason = DyckReason.NON_INCREASING
            break
        if end == n:
            reason = DyckReason.NONEXACT
            break
        nxt = first_end[begin]
        if nxt == unreachable:
            reason = DyckReason.LAST_NOT_N
            break
        d.append(nxt)
        begin, end = end + 1, nxt

    if n >= 2 and not all(covered[1:]):
        reason = DyckReason.UNUSED_LETTER
    result = DyckResult(tuple(d), len(set(d)), reason is not DyckReason.NONEXACT, reason)
    _logger.log_computation(
        "dyck_path", length=n, d_sequence=list(result.d_sequence), reason=reason.value,
    )
    return result


class PredictionKind(str, Enum):
    EXACT = "exact"
    ONE_DIM = "one_dim"


@dataclass(frozen=True)
class Prediction:
    """Closed-form homology prediction for a word of length ``n``."""

    kind: PredictionKind
    n: int
    bar_degree: int | None = None
    place: int | None = None

    @property
    def stored_degree(self) -> int | None:
        """Degree in the cochain-oriented complex (``n - bar_degree``)."""
        return None if self.bar_degree is None else self.n - self.bar_degree

    def agrees_with(self, profile: HomologyProfile) -> bool:
        if self.kind is PredictionKind.EXACT:
            return profile.total == 0
        return profile.total == 1 and profile.nonzero_degrees() == [self.stored_degree]


def predict_homology(w: Sequence[int], R: RelationSet) -> Prediction:
    n = len(w)
    dyck = dyck_path(w, R)
    if dyck.exact:
        return Prediction(PredictionKind.EXACT, n)
    return Prediction(
        PredictionKind.ONE_DIM, n, bar_degree=dyck.r + 1, place=n - dyck.r,
    )
