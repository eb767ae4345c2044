"""Set systems, their Grassmann complexes, and converters from words and trees.

A set system ``(X, R)`` on ground set ``{1..n}`` presents the monomial quotient
of the exterior algebra on ``x_1..x_n`` by the monomials ``Π_{i∈R_j} x_i``.
Its complex has the surviving monomials as basis and differential
``d(u) = u (x_1 + ... + x_n)``.
"""
from __future__ import annotations

from collections import deque
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

import networkx as nx

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
from homology.monomial import RelationSet

_logger = get_logger("grassmann")


# ── Set systems ───────────────────────────────────────────────────────────────

def _relation_key(rel: frozenset[int]) -> tuple[int, tuple[int, ...]]:
    return len(rel), tuple(sorted(rel))


@dataclass(frozen=True)
class SetSystem:
    """Ground set ``{1..n}`` with an antichain of nonempty relation subsets."""

    n: int
    relations: tuple[frozenset[int], ...] = ()

    def __post_init__(self) -> None:
        if self.n < 0:
            raise InputError(f"negative ground size {self.n}")
        for rel in self.relations:
            if not rel:
                raise InvalidRelationError("empty relation")
            if min(rel) < 1 or max(rel) > self.n:
                raise InvalidRelationError(
                    f"relation {format_set(rel)} outside ground set 1..{self.n}"
                )
        for i, small in enumerate(self.relations):
            for j, big in enumerate(self.relations):
                if i != j and small <= big:
                    raise InvalidRelationError(
                        f"relation {format_set(small)} is contained in {format_set(big)}"
                    )

    @classmethod
    def create(cls, n: int, relations: Iterable[Iterable[int]] = ()) -> SetSystem:
        """Build a system, keeping only the inclusion-minimal relations."""
        sets = {frozenset(rel) for rel in relations}
        if frozenset() in sets:
            raise InvalidRelationError("empty relation")
        minimal = [s for s in sets if not any(o < s for o in sets)]
        return cls(n, tuple(sorted(minimal, key=_relation_key)))

    @classmethod
    def one_point(cls) -> SetSystem:
        return cls(1, (frozenset({1}),))

    def is_one_point(self) -> bool:
        return self.n == 1 and self.relations == (frozenset({1}),)

    @property
    def masks(self) -> list[int]:
        return [sum(1 << (i - 1) for i in rel) for rel in self.relations]

    def coverage(self) -> dict[int, int]:
        counts = {point: 0 for point in range(1, self.n + 1)}
        for rel in self.relations:
            for point in rel:
                counts[point] += 1
        return counts

    def uncovered_points(self) -> list[int]:
        return [point for point, count in self.coverage().items() if count == 0]

    def is_covered(self) -> bool:
        return not self.uncovered_points()

    def is_quadratic(self) -> bool:
        return all(len(rel) <= 2 for rel in self.relations)

    def restrict(self, points: Iterable[int]) -> SetSystem:
        """Subsystem on *points* (relabelled ``1..m`` in order) with the relations inside it."""
        kept = sorted(set(points))
        label = {p: i for i, p in enumerate(kept, start=1)}
        inside = frozenset(kept)
        return SetSystem.create(
            len(kept),
            [{label[p] for p in rel} for rel in self.relations if rel <= inside],
        )

    def without_relation(self, index: int) -> SetSystem:
        return SetSystem(self.n, self.relations[:index] + self.relations[index + 1:])


def format_set(points: Iterable[int]) -> str:
    return "{" + ",".join(str(p) for p in sorted(points)) + "}"


def word_to_system(w: Sequence[int], R: RelationSet) -> SetSystem:
    """Gap set system of *w*: one relation ``{a..b-1}`` per occurrence ``[a, b]``."""
    n = len(w)
    if n == 0:
        raise PreconditionError("word_to_system needs a nonempty word")
    relations = [range(a, b) for a, b in R.occurrences(w)]
    return SetSystem.create(n - 1, relations)


# ── Rooted trees ──────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class TreeNode:
    id: str
    arity: int
    parent: str | None


@dataclass(frozen=True)
class RootedTree:
    """Planar rooted tree of operations; children unlisted up to the arity are inputs."""

    nodes: tuple[TreeNode, ...]

    def __post_init__(self) -> None:
        ids = [node.id for node in self.nodes]
        if not ids:
            raise InputError("tree has no nodes")
        if len(set(ids)) != len(ids):
            raise InputError("tree has repeated node ids")
        roots = [node.id for node in self.nodes if node.parent is None]
        if len(roots) != 1:
            raise InputError(f"tree must have exactly one root, found {len(roots)}")
        by_id = {node.id: node for node in self.nodes}
        children: dict[str, int] = {node_id: 0 for node_id in ids}
        for node in self.nodes:
            if node.arity < 0:
                raise InputError(f"node {node.id} has negative arity")
            if node.parent is not None:
                if node.parent not in by_id:
                    raise InputError(f"node {node.id} has unknown parent {node.parent}")
                children[node.parent] += 1
        for node_id, count in children.items():
            if count > by_id[node_id].arity:
                raise InputError(
                    f"node {node_id} has {count} children but arity {by_id[node_id].arity}"
                )
        for node in self.nodes:
            seen: set[str] = set()
            current: str | None = node.id
            while current is not None:
                if current in seen:
                    raise InputError(f"cycle through node {current}")
                seen.add(current)
                current = by_id[current].parent

    @classmethod
    def from_nodes(cls, nodes: Iterable[tuple[str, int, str | None]]) -> RootedTree:
        return cls(tuple(TreeNode(str(i), arity, None if p is None else str(p)) for i, arity, p in nodes))

    @property
    def root(self) -> str:
        return next(node.id for node in self.nodes if node.parent is None)

    def node(self, node_id: str) -> TreeNode:
        for node in self.nodes:
            if node.id == node_id:
                return node
        raise InputError(f"unknown tree node {node_id}")

    def children(self, node_id: str) -> list[str]:
        return [node.id for node in self.nodes if node.parent == node_id]

    def is_internal(self, node_id: str) -> bool:
        return self.node(node_id).arity >= 1

    def bfs_order(self) -> list[str]:
        order: list[str] = []
        queue = deque([self.root])
        while queue:
            current = queue.popleft()
            order.append(current)
            queue.extend(self.children(current))
        return order

    def internal_edges(self) -> list[tuple[str, str]]:
        """Edges joining two internal vertices, ordered by the child's BFS position."""
        edges: list[tuple[str, str]] = []
        for child in self.bfs_order()[1:]:
            parent = self.node(child).parent
            assert parent is not None
            if self.is_internal(child) and self.is_internal(parent):
                edges.append((parent, child))
        return edges

    def as_graph(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(node.id for node in self.nodes)
        graph.add_edges_from(
            (node.parent, node.id) for node in self.nodes if node.parent is not None
        )
        return graph


def tree_to_system(t: RootedTree, rels: Iterable[Iterable[str]]) -> SetSystem:
    """Internal-edge set system of *t*; each relation subtree maps to its edges.

    :raises InvalidRelationError: If a relation has fewer than two vertices,
        names a leaf or unknown node, or does not induce a connected subtree.
    """
    edges = t.internal_edges()
    graph = t.as_graph()
    known = {node.id for node in t.nodes}
    relations: list[set[int]] = []
    for rel in rels:
        vertices = {str(v) for v in rel}
        if len(vertices) < 2:
            raise InvalidRelationError(f"tree relation {sorted(vertices)} has fewer than 2 vertices")
        unknown = vertices - known
        if unknown:
            raise InvalidRelationError(f"tree relation names unknown nodes {sorted(unknown)}")
        leaves = [v for v in vertices if not t.is_internal(v)]
        if leaves:
            raise InvalidRelationError(f"tree relation contains non-internal nodes {sorted(leaves)}")
        if not nx.is_connected(graph.subgraph(vertices)):
            raise InvalidRelationError(f"tree relation {sorted(vertices)} is not connected")
        relations.append({
            index for index, (parent, child) in enumerate(edges, start=1)
            if parent in vertices and child in vertices
        })
    system = SetSystem.create(len(edges), relations)
    _logger.log_computation("tree_to_system", edges=len(edges), relations=len(system.relations))
    return system


# ── Complexes ─────────────────────────────────────────────────────────────────

def monomial_label(points: Sequence[int], mask: int) -> str:
    chosen = [f"x{p}" for j, p in enumerate(points) if mask >> j & 1]
    return "".join(chosen) or "1"


def grassmann_complex(
    s: SetSystem,
    w_mask: Iterable[int] | None = None,
    limits: Limits = DEFAULT_LIMITS,
) -> GradedComplex:
    """Complex of relation-free monomials with ``d(u) = u (x_1 + ... + x_n)``.

    With *w_mask* the complex lives on those variables only, with the
    relations contained in them; labels keep the original variable numbers.
    """
    points = sorted(set(w_mask)) if w_mask is not None else list(range(1, s.n + 1))
    local = {p: j for j, p in enumerate(points)}
    masks = [
        sum(1 << local[p] for p in rel)
        for rel in s.relations
        if all(p in local for p in rel)
    ]
    return subset_complex(len(points), masks, lambda mask: monomial_label(points, mask), limits)


def system_homology(
    s: SetSystem, f: FieldSpec, limits: Limits = DEFAULT_LIMITS,
) -> HomologyProfile:
    return homology_dims(grassmann_complex(s, limits=limits), f, limits)
