"""Relation graphs of quadratic set systems and the homology reduction rules.

Rules applied by :func:`reduce_homology`, in order:

1. an isolated vertex kills all homology;
2. a disconnected graph splits into components whose profiles multiply
   (graded convolution);
3. a vertex ``x`` whose neighbours ``a_1..a_m`` form a clique gives
   ``H_d(G) = Σ_i H_{d-1}(G - a_i - N(a_i))``;
4. anything else goes to the Grassmann oracle.
"""
from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property, reduce
from itertools import combinations

import networkx as nx

from config.constants import MAX_FAMILY_DEPTH
from config.logging_system import get_logger
from homology.core_complex import (
    DEFAULT_LIMITS,
    FieldSpec,
    HomologyProfile,
    Limits,
)
from homology.errors import CapacityError, NotQuadraticError, PreconditionError
from homology.grassmann import RootedTree, SetSystem, system_homology, tree_to_system

_logger = get_logger("quad_graph")


# ── Relation graphs ───────────────────────────────────────────────────────────

@dataclass(frozen=True)
class RelationGraph:
    """Simple undirected graph on integer vertices (original variable numbers)."""

    vertices: tuple[int, ...] = ()
    edges: tuple[tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        known = set(self.vertices)
        if len(known) != len(self.vertices):
            raise PreconditionError("repeated vertex")
        normalized: set[tuple[int, int]] = set()
        for u, v in self.edges:
            if u == v:
                raise PreconditionError(f"loop at vertex {u}")
            if u not in known or v not in known:
                raise PreconditionError(f"edge ({u}, {v}) uses an unknown vertex")
            normalized.add((min(u, v), max(u, v)))
        object.__setattr__(self, "vertices", tuple(sorted(self.vertices)))
        object.__setattr__(self, "edges", tuple(sorted(normalized)))

    @classmethod
    def from_networkx(cls, graph: nx.Graph) -> RelationGraph:
        return cls(tuple(graph.nodes), tuple(graph.edges))

    @cached_property
    def graph(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(self.vertices)
        graph.add_edges_from(self.edges)
        return nx.freeze(graph)

    @property
    def n(self) -> int:
        return len(self.vertices)

    def neighbors(self, v: int) -> list[int]:
        return sorted(self.graph.neighbors(v))

    def degree(self, v: int) -> int:
        return self.graph.degree(v)

    def isolated(self) -> list[int]:
        return sorted(nx.isolates(self.graph))

    def components(self) -> list[RelationGraph]:
        parts = sorted((sorted(c) for c in nx.connected_components(self.graph)), key=lambda c: c[0])
        return [RelationGraph.from_networkx(self.graph.subgraph(part)) for part in parts]

    def without(self, removed: Iterable[int]) -> RelationGraph:
        gone = set(removed)
        return RelationGraph.from_networkx(
            self.graph.subgraph([v for v in self.vertices if v not in gone])
        )

    def is_clique(self, vertices: Iterable[int]) -> bool:
        return all(self.graph.has_edge(u, v) for u, v in combinations(vertices, 2))

    def to_system(self) -> SetSystem:
        """Edge system on the vertices relabelled ``1..n`` in increasing order."""
        label = {v: i for i, v in enumerate(self.vertices, start=1)}
        return SetSystem.create(self.n, [{label[u], label[v]} for u, v in self.edges])


def graph_from_system(s: SetSystem) -> RelationGraph:
    """Relation graph of a quadratic system; variables in singleton relations are deleted.

    :raises NotQuadraticError: If some relation has three or more variables.
    """
    big = [rel for rel in s.relations if len(rel) > 2]
    if big:
        raise NotQuadraticError(f"relation of size {len(big[0])} in a quadratic-only operation")
    zero_vars = {next(iter(rel)) for rel in s.relations if len(rel) == 1}
    vertices = tuple(v for v in range(1, s.n + 1) if v not in zero_vars)
    edges = tuple(tuple(sorted(rel)) for rel in s.relations if len(rel) == 2)
    return RelationGraph(vertices, edges)  # type: ignore[arg-type]


def graph_homology(
    g: RelationGraph, f: FieldSpec, limits: Limits = DEFAULT_LIMITS,
) -> HomologyProfile:
    """Grassmann oracle on the edge system of *g*."""
    return system_homology(g.to_system(), f, limits)


# ── Reduction rules ───────────────────────────────────────────────────────────

def find_clique_vertex(g: RelationGraph) -> tuple[int, list[int]] | None:
    """Vertex of degree ≥ 1 with a clique neighbourhood; minimal degree, then label."""
    for v in sorted(g.vertices, key=lambda v: (g.degree(v), v)):
        nbrs = g.neighbors(v)
        if nbrs and g.is_clique(nbrs):
            return v, nbrs
    return None


def eliminate(g: RelationGraph, x: int) -> list[RelationGraph]:
    """Return ``G - a_i - N(a_i)`` for every neighbour ``a_i`` of *x*.

    :raises PreconditionError: If *x* has no neighbours or they are not a clique.
    """
    if x not in g.vertices:
        raise PreconditionError(f"vertex {x} is not in the graph")
    nbrs = g.neighbors(x)
    if not nbrs:
        raise PreconditionError(f"vertex {x} is isolated")
    if not g.is_clique(nbrs):
        raise PreconditionError(f"neighbours of {x} do not form a clique")
    return [g.without([a, *g.neighbors(a)]) for a in nbrs]


class ReductionRule(str, Enum):
    EMPTY = "empty"
    ISOLATED = "isolated"
    SPLIT = "split"
    ELIMINATE = "eliminate"
    ORACLE = "oracle"


@dataclass(frozen=True)
class ReductionTrace:
    """One applied rule with its subgraph, profile and child traces."""

    rule: ReductionRule
    graph: RelationGraph
    profile: HomologyProfile
    vertex: int | None = None
    neighbors: tuple[int, ...] = ()
    children: tuple[ReductionTrace, ...] = field(default_factory=tuple)

    def recombined(self) -> HomologyProfile:
        """Profile obtained from the children by this node's rule."""
        if self.rule is ReductionRule.SPLIT:
            return profile_product(c.profile for c in self.children)
        if self.rule is ReductionRule.ELIMINATE:
            return shifted_sum(c.profile for c in self.children)
        return self.profile

    def consistent(self) -> bool:
        return self.recombined().same_homology(self.profile) and all(
            child.consistent() for child in self.children
        )

    def render(self, depth: int = 0) -> list[str]:
        detail = ""
        if self.rule is ReductionRule.ELIMINATE:
            detail = f" vertex={self.vertex} neighbors={','.join(map(str, self.neighbors))}"
        elif self.rule is ReductionRule.ISOLATED:
            detail = f" vertex={self.vertex}"
        line = (
            f"{'  ' * depth}{self.rule.value} vertices={self.graph.n}"
            f" edges={len(self.graph.edges)} total={self.profile.total}{detail}"
        )
        return [line] + [l for child in self.children for l in child.render(depth + 1)]


def profile_product(profiles: Iterable[HomologyProfile]) -> HomologyProfile:
    """Graded product of the profiles (the empty product is a point)."""
    return reduce(HomologyProfile.convolve, profiles, HomologyProfile.point())


def shifted_sum(profiles: Iterable[HomologyProfile]) -> HomologyProfile:
    """Degreewise sum of the profiles, each raised by one degree."""
    return reduce(HomologyProfile.__add__, (p.shifted(1) for p in profiles), HomologyProfile.zero())


def _reduce(g: RelationGraph, f: FieldSpec, limits: Limits) -> ReductionTrace:
    if g.n == 0:
        return ReductionTrace(ReductionRule.EMPTY, g, HomologyProfile.point())
    isolated = g.isolated()
    if isolated:
        return ReductionTrace(ReductionRule.ISOLATED, g, HomologyProfile.zero(), vertex=isolated[0])
    parts = g.components()
    if len(parts) > 1:
        children = tuple(_reduce(part, f, limits) for part in parts)
        profile = profile_product(c.profile for c in children)
        return ReductionTrace(ReductionRule.SPLIT, g, profile, children=children)
    found = find_clique_vertex(g)
    if found is not None:
        x, nbrs = found
        children = tuple(_reduce(sub, f, limits) for sub in eliminate(g, x))
        profile = shifted_sum(c.profile for c in children)
        return ReductionTrace(ReductionRule.ELIMINATE, g, profile, x, tuple(nbrs), children)
    return ReductionTrace(ReductionRule.ORACLE, g, graph_homology(g, f, limits))


def components_homology(
    g: RelationGraph, f: FieldSpec, limits: Limits = DEFAULT_LIMITS,
) -> HomologyProfile:
    """Product of the component profiles (each reduced recursively)."""
    return profile_product(_reduce(part, f, limits).profile for part in g.components())


def reduce_homology(
    g: RelationGraph, f: FieldSpec, limits: Limits = DEFAULT_LIMITS,
) -> tuple[HomologyProfile, ReductionTrace]:
    trace = _reduce(g, f, limits)
    _logger.log_computation(
        "reduce_homology", vertices=g.n, edges=len(g.edges), rule=trace.rule.value,
        total=trace.profile.total,
    )
    return trace.profile, trace


# ── Truncated binary tree families ────────────────────────────────────────────

class TreeFamily(str, Enum):
    LINE_GRAPH = "line_graph_Cn"
    CHERRIES = "cherries_only_An"
    DEEP_SINGLETONS = "deep_singletons_An"


def full_binary_tree(n: int) -> RootedTree:
    """Binary tree whose internal vertices fill depths ``0..n-1`` (ids ``1..2^n-1`` in BFS order)."""
    tree = nx.balanced_tree(2, n - 1)
    parent = dict(nx.bfs_predecessors(tree, 0))
    return RootedTree.from_nodes(
        (str(v + 1), 2, None if v == 0 else str(parent[v] + 1)) for v in sorted(tree.nodes)
    )


def binary_tree_family(n: int, family: TreeFamily) -> SetSystem:
    """Internal-edge set system of ``T_n`` under the chosen relation convention.

    :raises PreconditionError: If ``n < 1``.
    :raises CapacityError: If ``n`` exceeds ``MAX_FAMILY_DEPTH``.
    """
    if n < 1:
        raise PreconditionError(f"family depth must be ≥ 1, got {n}")
    if n > MAX_FAMILY_DEPTH:
        raise CapacityError("family depth", n, MAX_FAMILY_DEPTH)
    tree = full_binary_tree(n)
    edges = tree.internal_edges()
    adjacent = nx.line_graph(nx.Graph(edges))
    line_relations = [set(e1) | set(e2) for e1, e2 in adjacent.edges]

    if family is TreeFamily.LINE_GRAPH:
        relations = line_relations
    elif family is TreeFamily.CHERRIES:
        relations = [
            {v, *tree.children(v)} for v in tree.bfs_order() if len(tree.children(v)) == 2
        ]
    else:
        depth = nx.shortest_path_length(tree.as_graph(), tree.root)
        deepest = [{p, c} for p, c in edges if depth[c] == n - 1]
        relations = line_relations + deepest
    return tree_to_system(tree, relations)
