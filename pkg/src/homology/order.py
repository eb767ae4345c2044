"""Basic systems, contraction transformations and the order property.

A point is *basic* when exactly one relation contains it. A system is an
*order* when some sequence of contractions at basic points, passing only
through basic systems, ends at the one-point system ``({1}, {{1}})``.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from config.logging_system import get_logger
from homology.core_complex import DEFAULT_LIMITS, Limits
from homology.errors import CapacityError, PreconditionError
from homology.grassmann import SetSystem, format_set

_logger = get_logger("order")


class ContractionRule(str, Enum):
    """How the relation through a basic point is collapsed.

    ``KERNEL`` deletes the points of that relation and keeps the remainders
    of the other relations; total homology is unchanged. ``FRESH_POINT``
    replaces the relation by a new point joined to every relation it met.
    """

    KERNEL = "kernel"
    FRESH_POINT = "fresh"


def find_basic_points(s: SetSystem) -> list[tuple[int, frozenset[int]]]:
    owners: dict[int, list[frozenset[int]]] = {}
    for rel in s.relations:
        for point in rel:
            owners.setdefault(point, []).append(rel)
    return [(point, rels[0]) for point, rels in sorted(owners.items()) if len(rels) == 1]


def _relabel(points: list[int], relations: list[set[int]]) -> SetSystem:
    label = {p: i for i, p in enumerate(points, start=1)}
    return SetSystem.create(len(points), [{label[p] for p in rel} for rel in relations])


def contract(
    s: SetSystem, x: int, rule: ContractionRule = ContractionRule.KERNEL,
) -> SetSystem:
    """Contract the unique relation through the basic point *x*.

    Surviving points are relabelled ``1..m`` in increasing order; under
    ``FRESH_POINT`` the new point takes the last label.

    :raises PreconditionError: If *x* is not a basic point of *s*.
    """
    basics = dict(find_basic_points(s))
    if x not in basics:
        raise PreconditionError(f"point {x} is not covered by exactly one relation")
    r1 = basics[x]
    if len(r1) == s.n:
        return SetSystem.one_point()

    remaining = [p for p in range(1, s.n + 1) if p not in r1]
    others = [rel for rel in s.relations if rel != r1]
    if rule is ContractionRule.KERNEL:
        return _relabel(remaining, [set(rel - r1) for rel in others])

    fresh = s.n + 1
    rewritten = [set(rel) if rel.isdisjoint(r1) else set(rel - r1) | {fresh} for rel in others]
    return _relabel(remaining + [fresh], rewritten)


def canonical_key(s: SetSystem) -> tuple[int, tuple[tuple[int, ...], ...]]:
    """Relabel points by sorted relation-incidence signature (ties by label)."""
    signature: dict[int, list[int]] = {p: [] for p in range(1, s.n + 1)}
    for rel in s.relations:
        for p in rel:
            signature[p].append(len(rel))
    order = sorted(signature, key=lambda p: (sorted(signature[p]), p))
    label = {p: i for i, p in enumerate(order, start=1)}
    return s.n, tuple(sorted(tuple(sorted(label[p] for p in rel)) for rel in s.relations))


@dataclass(frozen=True)
class OrderCertificate:
    """Contraction steps, each in the coordinates of the system it applies to."""

    steps: tuple[tuple[int, frozenset[int]], ...] = ()
    rule: ContractionRule = ContractionRule.KERNEL

    def replay(self, s: SetSystem) -> bool:
        current = s
        for point, rel in self.steps:
            if dict(find_basic_points(current)).get(point) != rel:
                return False
            current = contract(current, point, self.rule)
        return current.is_one_point()

    def lines(self) -> list[str]:
        return [f"contract point={p} relation={format_set(rel)}" for p, rel in self.steps]


def is_order(
    s: SetSystem,
    rule: ContractionRule = ContractionRule.KERNEL,
    limits: Limits = DEFAULT_LIMITS,
) -> OrderCertificate | None:
    """Depth-first search for a contraction sequence reaching the one-point system.

    Contractions that do not shrink the ground set are skipped. Systems known
    to fail are memoized by :func:`canonical_key`.

    :raises PreconditionError: For an empty ground set.
    :raises CapacityError: If the memo table outgrows ``limits.memo_limit``.
    """
    if s.n == 0:
        raise PreconditionError("is_order needs a nonempty ground set")
    failed: set[tuple[int, tuple[tuple[int, ...], ...]]] = set()

    def search(system: SetSystem) -> list[tuple[int, frozenset[int]]] | None:
        if system.is_one_point():
            return []
        key = canonical_key(system)
        if key in failed:
            return None
        for point, rel in find_basic_points(system):
            nxt = contract(system, point, rule)
            if nxt.n >= system.n and not nxt.is_one_point():
                continue
            tail = search(nxt)
            if tail is not None:
                return [(point, rel)] + tail
        failed.add(key)
        if len(failed) > limits.memo_limit:
            raise CapacityError("order memo entries", len(failed), limits.memo_limit)
        return None

    steps = search(s)
    _logger.log_computation(
        "is_order", ground=s.n, relations=len(s.relations), rule=rule.value,
        order=steps is not None, memo=len(failed),
    )
    return None if steps is None else OrderCertificate(tuple(steps), rule)


def private_point_everywhere(s: SetSystem) -> bool:
    """Every relation owns a point covered by no other relation, and every point is covered."""
    if s.n == 0 or not s.is_covered():
        return False
    coverage = s.coverage()
    return all(any(coverage[p] == 1 for p in rel) for rel in s.relations)
