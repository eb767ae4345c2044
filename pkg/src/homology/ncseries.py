"""Truncated noncommutative Hilbert series of monomial algebras and their inverses."""
from __future__ import annotations

from collections import defaultdict
from collections.abc import Iterator, Mapping, Sequence
from dataclasses import dataclass, field
from types import MappingProxyType

from config.logging_system import get_logger
from homology.core_complex import DEFAULT_LIMITS, Limits
from homology.errors import CapacityError, InputError, InversionError, PreconditionError
from homology.monomial import Alphabet, RelationSet, Word, bar_subcomplex

_logger = get_logger("ncseries")


@dataclass(frozen=True)
class NCSeries:
    """Series truncated at degree ``truncation``; zero coefficients are not stored."""

    alphabet_size: int
    truncation: int
    coeffs: Mapping[Word, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.truncation < 0:
            raise InputError(f"negative truncation {self.truncation}")
        clean: dict[Word, int] = {}
        for word, value in self.coeffs.items():
            word = tuple(word)
            if len(word) > self.truncation:
                raise InputError(f"word of length {len(word)} beyond truncation {self.truncation}")
            if any(not 0 <= i < self.alphabet_size for i in word):
                raise InputError(f"word {word} outside an alphabet of size {self.alphabet_size}")
            if value:
                clean[word] = value
        object.__setattr__(self, "coeffs", MappingProxyType(clean))

    def coefficient(self, word: Sequence[int]) -> int:
        return self.coeffs.get(tuple(word), 0)

    def items_graded(self) -> list[tuple[Word, int]]:
        """Nonzero terms in graded lexicographic order (length first)."""
        return sorted(self.coeffs.items(), key=lambda item: (len(item[0]), item[0]))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, NCSeries):
            return NotImplemented
        return (
            self.alphabet_size == other.alphabet_size
            and self.truncation == other.truncation
            and dict(self.coeffs) == dict(other.coeffs)
        )


def _nonzero_words(size: int, R: RelationSet, N: int) -> Iterator[Word]:
    """Yield nonzero words of length ≤ N, extending only nonzero prefixes."""
    frontier: list[Word] = [()]
    yield ()
    for _ in range(N):
        nxt: list[Word] = []
        for prefix in frontier:
            for letter in range(size):
                word = prefix + (letter,)
                if not R.ends_with_relation(word):
                    nxt.append(word)
                    yield word
        frontier = nxt
        if not frontier:
            return


def hilbert_truncated(
    a: Alphabet | int, R: RelationSet, N: int, limits: Limits = DEFAULT_LIMITS,
) -> NCSeries:
    """Coefficient 1 on every nonzero word of length ≤ N (including the empty word).

    :raises CapacityError: If more than ``limits.max_basis`` nonzero words exist.
    """
    if N < 0:
        raise PreconditionError(f"negative truncation {N}")
    size = a.size if isinstance(a, Alphabet) else a
    coeffs: dict[Word, int] = {}
    for word in _nonzero_words(size, R, N):
        coeffs[word] = 1
        if len(coeffs) > limits.max_basis:
            raise CapacityError("nonzero words", len(coeffs), limits.max_basis)
    return NCSeries(size, N, coeffs)


def invert_series(s: NCSeries, limits: Limits = DEFAULT_LIMITS) -> NCSeries:
    """Return the inverse ``S`` with ``s · S = 1`` up to degree N.

    ``S(w) = -Σ s(u) S(v)`` over splittings ``w = u v`` with ``u`` nonempty.
    A word can only have a nonzero coefficient when it splits into a term of
    *s* followed by a term of ``S``, so only those candidates are visited,
    shortest first.

    :raises InversionError: If the constant term of *s* is not 1.
    :raises CapacityError: If more than ``limits.max_basis`` candidate words
        are visited.
    """
    if s.coefficient(()) != 1:
        raise InversionError(f"constant term is {s.coefficient(())}, expected 1")
    N = s.truncation
    terms_by_length: dict[int, list[Word]] = defaultdict(list)
    for word in s.coeffs:
        if word:
            terms_by_length[len(word)].append(word)

    inverse: dict[Word, int] = {(): 1}
    support_by_length: dict[int, list[Word]] = {0: [()]}
    visited = 0
    for length in range(1, N + 1):
        candidates = {
            u + v
            for head in range(1, length + 1)
            for u in terms_by_length.get(head, ())
            for v in support_by_length.get(length - head, ())
        }
        visited += len(candidates)
        if visited > limits.max_basis:
            raise CapacityError("series words", visited, limits.max_basis)
        support: list[Word] = []
        for word in sorted(candidates):
            value = 0
            for cut in range(1, length + 1):
                prefix_coeff = s.coeffs.get(word[:cut], 0)
                if prefix_coeff:
                    value -= prefix_coeff * inverse.get(word[cut:], 0)
            if value:
                inverse[word] = value
                support.append(word)
        support_by_length[length] = support
    _logger.log_computation(
        "invert_series", alphabet_size=s.alphabet_size, truncation=N,
        visited=visited, terms=len(inverse),
    )
    return NCSeries(s.alphabet_size, N, inverse)


def inverse_coefficient(w: Sequence[int], R: RelationSet) -> int:
    """Coefficient of *w* in the inverse Hilbert series, via suffix recursion.

    Only suffixes of *w* enter the recursion, so the value matches
    :func:`invert_series` without enumerating the whole free monoid.
    """
    word = tuple(w)
    n = len(word)
    suffix_value = [0] * (n + 1)
    suffix_value[n] = 1
    for start in range(n - 1, -1, -1):
        value = 0
        for cut in range(start + 1, n + 1):
            if R.is_zero(word[start:cut]):
                break
            value -= suffix_value[cut]
        suffix_value[start] = value
    return suffix_value[0]


def euler_crosscheck(
    w: Sequence[int], R: RelationSet, limits: Limits = DEFAULT_LIMITS,
) -> tuple[int, int]:
    """Return (inverse-series coefficient of *w*, ``Σ_k (-1)^k dim B_k(w)``).

    The bar index of stored degree ``g`` is ``k = n - g``.
    """
    n = len(w)
    if n == 0:
        raise PreconditionError("euler_crosscheck needs a nonempty word")
    coeff = inverse_coefficient(w, R)
    dims = bar_subcomplex(w, R, limits=limits).dims
    alternating = sum((-1) ** (n - g) * dim for g, dim in enumerate(dims))
    return coeff, alternating
