"""Exact linear algebra and the graded-complex container.

Every homology computation in the package runs on :class:`GradedComplex`:
per-degree bases plus integer differentials ``d_g`` raising the degree by one.
Ranks are computed by sparse Gaussian elimination, modulo a prime or with
fraction-free integer elimination over the rationals.
"""
from __future__ import annotations

import heapq
from collections import defaultdict
from collections.abc import Callable, Sequence
from dataclasses import dataclass
from enum import Enum
from math import gcd
from typing import Final

from sympy import isprime

from config.constants import (
    DEFAULT_MAX_BASIS,
    DEFAULT_MAX_RANK_CELLS,
    DEFAULT_MEMO_LIMIT,
    DEFAULT_PRIME,
)
from config.logging_system import get_logger
from homology.errors import (
    CapacityError,
    InputError,
    InternalConsistencyError,
    StructuralError,
)

_logger = get_logger("core_complex")


# ── Fields & limits ───────────────────────────────────────────────────────────

class FieldKind(str, Enum):
    RATIONAL = "rational"
    PRIME = "prime"


@dataclass(frozen=True)
class FieldSpec:
    """Coefficient field: the rationals or a prime field GF(p)."""

    kind: FieldKind
    p: int | None = None

    def __post_init__(self) -> None:
        if self.kind is FieldKind.RATIONAL:
            if self.p is not None:
                raise InputError("rational field takes no modulus")
        elif self.p is None or not isprime(self.p):
            raise InputError(f"field modulus {self.p} is not prime")

    @classmethod
    def rational(cls) -> FieldSpec:
        return cls(FieldKind.RATIONAL)

    @classmethod
    def prime(cls, p: int = DEFAULT_PRIME) -> FieldSpec:
        return cls(FieldKind.PRIME, p)

    @classmethod
    def parse(cls, text: str) -> FieldSpec:
        """Parse the ``--field`` flag value: ``q`` or a prime such as ``2``.

        :raises InputError: If *text* is neither ``q`` nor a prime number.
        """
        token = text.strip().lower()
        if token in ("q", "rational"):
            return cls.rational()
        try:
            p = int(token)
        except ValueError:
            raise InputError(f"unknown field '{text}' (expected q or a prime)") from None
        return cls.prime(p)

    @property
    def is_rational(self) -> bool:
        return self.kind is FieldKind.RATIONAL

    def __str__(self) -> str:
        return "q" if self.is_rational else str(self.p)


@dataclass(frozen=True)
class Limits:
    """Work limits shared by every enumeration and elimination."""

    max_basis: int = DEFAULT_MAX_BASIS
    max_rank_cells: int = DEFAULT_MAX_RANK_CELLS
    memo_limit: int = DEFAULT_MEMO_LIMIT


DEFAULT_LIMITS: Final[Limits] = Limits()


# ── Matrices ──────────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class IntMatrix:
    """Sparse integer matrix stored as ``(row, col, value)`` triples."""

    rows: int
    cols: int
    entries: tuple[tuple[int, int, int], ...] = ()

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise StructuralError(f"negative matrix shape {self.rows}x{self.cols}")
        seen: set[tuple[int, int]] = set()
        for r, c, v in self.entries:
            if not (0 <= r < self.rows and 0 <= c < self.cols):
                raise StructuralError(f"entry ({r}, {c}) outside {self.rows}x{self.cols}")
            if v == 0:
                raise StructuralError(f"stored zero at ({r}, {c})")
            if (r, c) in seen:
                raise StructuralError(f"duplicate entry at ({r}, {c})")
            seen.add((r, c))

    @classmethod
    def from_dense(cls, dense: Sequence[Sequence[int]], cols: int | None = None) -> IntMatrix:
        width = cols if cols is not None else (len(dense[0]) if dense else 0)
        entries = tuple(
            (r, c, v) for r, row in enumerate(dense) for c, v in enumerate(row) if v
        )
        return cls(len(dense), width, entries)

    def to_dense(self) -> list[list[int]]:
        dense = [[0] * self.cols for _ in range(self.rows)]
        for r, c, v in self.entries:
            dense[r][c] = v
        return dense

    def row_dicts(self) -> list[dict[int, int]]:
        rows: list[dict[int, int]] = [{} for _ in range(self.rows)]
        for r, c, v in self.entries:
            rows[r][c] = v
        return rows

    def compose(self, other: IntMatrix) -> IntMatrix:
        """Return ``self ∘ other`` over the integers.

        :raises StructuralError: If ``self.cols != other.rows``.
        """
        if self.cols != other.rows:
            raise StructuralError(
                f"cannot compose {self.rows}x{self.cols} after {other.rows}x{other.cols}"
            )
        by_col: dict[int, list[tuple[int, int]]] = defaultdict(list)
        for r, c, v in self.entries:
            by_col[c].append((r, v))
        acc: dict[tuple[int, int], int] = defaultdict(int)
        for k, j, w in other.entries:
            for i, v in by_col.get(k, ()):
                acc[(i, j)] += v * w
        entries = tuple(sorted((i, j, v) for (i, j), v in acc.items() if v))
        return IntMatrix(self.rows, other.cols, entries)

    def is_zero(self) -> bool:
        return not self.entries


# ── Complexes & profiles ──────────────────────────────────────────────────────

@dataclass(frozen=True)
class GradedComplex:
    """Cochain complex on degrees ``0..gmax``; ``differentials[g]`` maps g to g+1."""

    basis_labels: tuple[tuple[str, ...], ...] = ()
    differentials: tuple[IntMatrix, ...] = ()

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(len(labels) for labels in self.basis_labels)

    @property
    def gmax(self) -> int:
        return len(self.basis_labels) - 1

    @property
    def total_basis(self) -> int:
        return sum(self.dims)

    def is_empty(self) -> bool:
        return self.total_basis == 0


@dataclass(frozen=True)
class HomologyProfile:
    """Per-degree homology dimensions of a complex."""

    dims: tuple[int, ...] = ()

    @property
    def total(self) -> int:
        return sum(self.dims)

    @property
    def euler(self) -> int:
        return sum(d if g % 2 == 0 else -d for g, d in enumerate(self.dims))

    @classmethod
    def zero(cls) -> HomologyProfile:
        return cls(())

    @classmethod
    def point(cls) -> HomologyProfile:
        """Profile of the one-dimensional complex concentrated in degree 0."""
        return cls((1,))

    def trimmed(self) -> tuple[int, ...]:
        """Return the dims with trailing zero degrees removed."""
        dims = list(self.dims)
        while dims and dims[-1] == 0:
            dims.pop()
        return tuple(dims)

    def nonzero_degrees(self) -> list[int]:
        return [g for g, d in enumerate(self.dims) if d]

    def shifted(self, k: int) -> HomologyProfile:
        return HomologyProfile((0,) * k + self.dims)

    def __add__(self, other: HomologyProfile) -> HomologyProfile:
        width = max(len(self.dims), len(other.dims))
        left = self.dims + (0,) * (width - len(self.dims))
        right = other.dims + (0,) * (width - len(other.dims))
        return HomologyProfile(tuple(a + b for a, b in zip(left, right)))

    def convolve(self, other: HomologyProfile) -> HomologyProfile:
        """Graded product of two profiles (Künneth over a field)."""
        if not self.dims or not other.dims:
            return HomologyProfile.zero()
        out = [0] * (len(self.dims) + len(other.dims) - 1)
        for i, a in enumerate(self.dims):
            if a:
                for j, b in enumerate(other.dims):
                    out[i + j] += a * b
        return HomologyProfile(tuple(out))

    def same_homology(self, other: HomologyProfile) -> bool:
        return self.trimmed() == other.trimmed()


# ── Rank ──────────────────────────────────────────────────────────────────────

def rank(m: IntMatrix, f: FieldSpec, limits: Limits = DEFAULT_LIMITS) -> int:
    """Return the rank of *m* over *f*.

    Sparse elimination picks the active row with fewest nonzeros and, inside
    it, the pivot column touched by fewest rows. Over the rationals rows are
    combined fraction-free and divided by their content.

    :raises CapacityError: If ``rows * cols`` exceeds ``limits.max_rank_cells``.
    """
    cells = m.rows * m.cols
    if cells > limits.max_rank_cells:
        raise CapacityError("rank cells", cells, limits.max_rank_cells)
    if m.is_zero():
        return 0

    if f.is_rational:
        rows = m.row_dicts()
        combine = _combine_rational
    else:
        p = f.p
        assert p is not None
        rows = [{c: v % p for c, v in row.items() if v % p} for row in m.row_dicts()]

        def combine(target: dict[int, int], pivot: dict[int, int], col: int) -> dict[int, int]:
            return _combine_mod(target, pivot, col, p)

    result = _eliminate(rows, combine)
    _logger.log_computation("rank", rows=m.rows, cols=m.cols, field=str(f), rank=result)
    return result


def _eliminate(
    rows: list[dict[int, int]],
    combine: Callable[[dict[int, int], dict[int, int], int], dict[int, int]],
) -> int:
    active = {i: row for i, row in enumerate(rows) if row}
    col_rows: dict[int, set[int]] = defaultdict(set)
    for i, row in active.items():
        for c in row:
            col_rows[c].add(i)
    heap = [(len(row), i) for i, row in active.items()]
    heapq.heapify(heap)

    found = 0
    while heap:
        size, i = heapq.heappop(heap)
        pivot_row = active.get(i)
        if pivot_row is None or len(pivot_row) != size:
            continue
        col = min(pivot_row, key=lambda c: (len(col_rows[c]), c))
        del active[i]
        for c in pivot_row:
            col_rows[c].discard(i)
        for j in sorted(col_rows[col]):
            old = active[j]
            new = combine(old, pivot_row, col)
            for c in old.keys() - new.keys():
                col_rows[c].discard(j)
            for c in new.keys() - old.keys():
                col_rows[c].add(j)
            if new:
                active[j] = new
                heapq.heappush(heap, (len(new), j))
            else:
                del active[j]
        found += 1
    return found


def _combine_mod(
    target: dict[int, int], pivot: dict[int, int], col: int, p: int,
) -> dict[int, int]:
    factor = target[col] * pow(pivot[col], -1, p) % p
    out = dict(target)
    for c, v in pivot.items():
        value = (out.get(c, 0) - factor * v) % p
        if value:
            out[c] = value
        else:
            out.pop(c, None)
    return out


def _combine_rational(
    target: dict[int, int], pivot: dict[int, int], col: int,
) -> dict[int, int]:
    a, b = pivot[col], target[col]
    out = {c: a * v for c, v in target.items()}
    for c, v in pivot.items():
        value = out.get(c, 0) - b * v
        if value:
            out[c] = value
        else:
            out.pop(c, None)
    content = 0
    for v in out.values():
        content = gcd(content, v)
    if content > 1:
        out = {c: v // content for c, v in out.items()}
    return out


# ── Complex operations ────────────────────────────────────────────────────────

def validate_complex(c: GradedComplex) -> bool:
    """Return True iff every entry is ±1 and every ``d_{g+1} ∘ d_g`` vanishes over Z.

    :raises StructuralError: If differential shapes do not match the bases.
    """
    dims = c.dims
    expected = max(len(dims) - 1, 0)
    if len(c.differentials) != expected:
        raise StructuralError(
            f"{len(c.differentials)} differentials for {len(dims)} degrees"
        )
    for g, d in enumerate(c.differentials):
        if d.cols != dims[g] or d.rows != dims[g + 1]:
            raise StructuralError(
                f"d_{g} is {d.rows}x{d.cols}, expected {dims[g + 1]}x{dims[g]}"
            )
    for g, d in enumerate(c.differentials):
        bad = next(((r, col, v) for r, col, v in d.entries if v not in (-1, 1)), None)
        if bad is not None:
            _logger.debug("entry outside {-1, 0, 1}", degree=g, row=bad[0], col=bad[1], value=bad[2])
            return False
    for g in range(len(c.differentials) - 1):
        if not c.differentials[g + 1].compose(c.differentials[g]).is_zero():
            _logger.debug("d^2 != 0", degree=g)
            return False
    return True


def homology_dims(
    c: GradedComplex, f: FieldSpec, limits: Limits = DEFAULT_LIMITS,
) -> HomologyProfile:
    """Return ``dim ker d_g - rank d_{g-1}`` for every degree of *c*.

    :raises InternalConsistencyError: If a dimension comes out negative.
    """
    dims = c.dims
    ranks = [rank(d, f, limits) for d in c.differentials] + [0]
    out: list[int] = []
    for g, dim in enumerate(dims):
        below = ranks[g - 1] if g > 0 else 0
        h = dim - ranks[g] - below
        if h < 0:
            raise InternalConsistencyError(f"negative homology {h} in degree {g}")
        out.append(h)
    return HomologyProfile(tuple(out))


def euler_characteristic(c: GradedComplex) -> int:
    return sum(d if g % 2 == 0 else -d for g, d in enumerate(c.dims))


def compare_fields(
    c: GradedComplex, limits: Limits = DEFAULT_LIMITS,
) -> tuple[HomologyProfile, HomologyProfile, bool]:
    """Compute homology over Q and GF(32003) and report whether they agree."""
    over_q = homology_dims(c, FieldSpec.rational(), limits)
    over_p = homology_dims(c, FieldSpec.prime(DEFAULT_PRIME), limits)
    agree = over_q == over_p
    if not agree:
        _logger.log_finding(
            "field-robustness", "rational and prime homology differ",
            rational=list(over_q.dims), modular=list(over_p.dims),
        )
    return over_q, over_p, agree


# ── Subset complexes ──────────────────────────────────────────────────────────

def admissible_subsets(
    ground: int, relation_masks: Sequence[int], limits: Limits = DEFAULT_LIMITS,
) -> list[list[int]]:
    """Enumerate subsets of ``{0..ground-1}`` containing no relation mask.

    Subsets come back bucketed by size, each bucket in lexicographic order of
    sorted elements.

    :raises CapacityError: If more than ``limits.max_basis`` subsets exist.
    """
    by_elem: list[list[int]] = [[] for _ in range(ground)]
    for mask in relation_masks:
        for j in range(ground):
            if mask >> j & 1:
                by_elem[j].append(mask)

    buckets: list[list[int]] = [[]]
    count = 0

    def visit(current: int, size: int, start: int) -> None:
        nonlocal count
        count += 1
        if count > limits.max_basis:
            raise CapacityError("basis elements", count, limits.max_basis)
        while len(buckets) <= size:
            buckets.append([])
        buckets[size].append(current)
        for j in range(start, ground):
            extended = current | (1 << j)
            if any(mask & ~extended == 0 for mask in by_elem[j]):
                continue
            visit(extended, size + 1, j + 1)

    visit(0, 0, 0)
    return buckets


def subset_complex(
    ground: int,
    relation_masks: Sequence[int],
    label: Callable[[int], str],
    limits: Limits = DEFAULT_LIMITS,
) -> GradedComplex:
    """Build the complex on admissible subsets with the subset-sign differential.

    ``d(e_S) = Σ (-1)^{#{i in S : i > j}} e_{S ∪ {j}}`` over addable ``j``.
    """
    buckets = admissible_subsets(ground, relation_masks, limits)
    index = [{mask: pos for pos, mask in enumerate(bucket)} for bucket in buckets]

    differentials: list[IntMatrix] = []
    for g in range(len(buckets) - 1):
        upper = index[g + 1]
        entries: list[tuple[int, int, int]] = []
        for col, mask in enumerate(buckets[g]):
            for j in range(ground):
                bit = 1 << j
                if mask & bit:
                    continue
                row = upper.get(mask | bit)
                if row is None:
                    continue
                sign = -1 if (mask >> (j + 1)).bit_count() % 2 else 1
                entries.append((row, col, sign))
        differentials.append(IntMatrix(len(buckets[g + 1]), len(buckets[g]), tuple(entries)))

    labels = tuple(tuple(label(mask) for mask in bucket) for bucket in buckets)
    _logger.log_computation(
        "subset_complex", ground=ground, relations=len(relation_masks),
        dims=[len(b) for b in buckets],
    )
    return GradedComplex(labels, tuple(differentials))
