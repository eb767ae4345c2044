"""Tests for homology/quad_graph.py — relation graphs, reduction rules and tree families."""
from __future__ import annotations

import networkx as nx
import pytest

from config.constants import MAX_FAMILY_DEPTH
from homology.core_complex import HomologyProfile
from homology.errors import CapacityError, NotQuadraticError, PreconditionError
from homology.grassmann import SetSystem, system_homology
from homology.quad_graph import (
    ReductionRule,
    RelationGraph,
    TreeFamily,
    binary_tree_family,
    components_homology,
    eliminate,
    find_clique_vertex,
    full_binary_tree,
    graph_from_system,
    graph_homology,
    profile_product,
    reduce_homology,
    shifted_sum,
)

TRIANGLE = RelationGraph((1, 2, 3), ((1, 2), (1, 3), (2, 3)))
EDGE = RelationGraph((1, 2), ((1, 2),))
FIVE_CYCLE = RelationGraph.from_networkx(nx.relabel_nodes(nx.cycle_graph(5), lambda v: v + 1))


# ---------------------------------------------------------------------------
# RelationGraph
# ---------------------------------------------------------------------------

class TestRelationGraph:
    def test_edges_normalized_and_sorted(self):
        g = RelationGraph((3, 1, 2), ((3, 1), (2, 1)))
        assert g.vertices == (1, 2, 3)
        assert g.edges == ((1, 2), (1, 3))

    def test_loop_raises(self):
        with pytest.raises(PreconditionError, match="loop"):
            RelationGraph((1,), ((1, 1),))

    def test_unknown_vertex_raises(self):
        with pytest.raises(PreconditionError, match="unknown vertex"):
            RelationGraph((1,), ((1, 2),))

    def test_components_keep_original_labels(self):
        g = RelationGraph((1, 2, 5, 7), ((1, 2), (5, 7)))
        assert [c.vertices for c in g.components()] == [(1, 2), (5, 7)]

    def test_without(self):
        assert TRIANGLE.without([2]).edges == ((1, 3),)

    def test_to_system_relabels(self):
        g = RelationGraph((4, 9), ((4, 9),))
        assert g.to_system() == SetSystem.create(2, [{1, 2}])

    def test_graph_from_system_drops_zero_variables(self):
        s = SetSystem.create(4, [{1}, {2, 3}, {3, 4}])
        g = graph_from_system(s)
        assert g.vertices == (2, 3, 4)
        assert g.edges == ((2, 3), (3, 4))

    def test_graph_from_system_rejects_cubic_relations(self):
        with pytest.raises(NotQuadraticError):
            graph_from_system(SetSystem.create(3, [{1, 2, 3}]))


# ---------------------------------------------------------------------------
# Reduction rules
# ---------------------------------------------------------------------------

class TestRules:
    def test_profile_product_of_nothing_is_point(self):
        assert profile_product([]) == HomologyProfile.point()

    def test_shifted_sum(self):
        total = shifted_sum([HomologyProfile.point(), HomologyProfile((0, 1))])
        assert total.dims == (0, 1, 1)

    def test_find_clique_vertex_prefers_low_degree(self):
        g = RelationGraph((1, 2, 3, 4), ((1, 2), (2, 3), (3, 4), (2, 4)))
        assert find_clique_vertex(g) == (1, [2])

    def test_cycle_has_no_clique_vertex(self):
        assert find_clique_vertex(FIVE_CYCLE) is None

    def test_eliminate_triangle(self):
        assert [sub.n for sub in eliminate(TRIANGLE, 1)] == [0, 0]

    def test_eliminate_isolated_raises(self):
        g = RelationGraph((1, 2), ())
        with pytest.raises(PreconditionError, match="isolated"):
            eliminate(g, 1)

    def test_eliminate_non_clique_raises(self):
        g = RelationGraph((1, 2, 3), ((1, 2), (1, 3)))
        with pytest.raises(PreconditionError, match="clique"):
            eliminate(g, 1)


# ---------------------------------------------------------------------------
# reduce_homology
# ---------------------------------------------------------------------------

class TestReduceHomology:
    def test_triangle_total_two(self, field):
        profile, trace = reduce_homology(TRIANGLE, field)
        assert profile.total == 2
        assert trace.rule is ReductionRule.ELIMINATE
        assert trace.consistent()

    def test_edge_total_one(self, field):
        assert reduce_homology(EDGE, field)[0].total == 1

    def test_isolated_vertex_kills_homology(self, field):
        g = RelationGraph((1, 2, 3), ((1, 2),))
        profile, trace = reduce_homology(g, field)
        assert profile.total == 0
        assert trace.rule is ReductionRule.ISOLATED
        assert trace.vertex == 3

    def test_empty_graph_is_point(self, field):
        profile, trace = reduce_homology(RelationGraph(), field)
        assert profile == HomologyProfile.point()
        assert trace.rule is ReductionRule.EMPTY

    def test_two_edges_split(self, field):
        g = RelationGraph((1, 2, 3, 4), ((1, 2), (3, 4)))
        profile, trace = reduce_homology(g, field)
        assert trace.rule is ReductionRule.SPLIT
        assert profile.trimmed() == (0, 0, 1)
        assert components_homology(g, field).same_homology(profile)

    def test_cycle_falls_back_to_oracle(self, field):
        profile, trace = reduce_homology(FIVE_CYCLE, field)
        assert trace.rule is ReductionRule.ORACLE
        assert profile == graph_homology(FIVE_CYCLE, field)

    @pytest.mark.parametrize("seed", range(6))
    def test_agrees_with_oracle_on_random_graphs(self, seed, field):
        graph = nx.gnp_random_graph(7, 0.4, seed=seed)
        g = RelationGraph.from_networkx(nx.relabel_nodes(graph, lambda v: v + 1))
        profile, trace = reduce_homology(g, field)
        assert profile.same_homology(graph_homology(g, field))
        assert trace.consistent()

    def test_trace_render_indents_children(self, rational):
        _, trace = reduce_homology(TRIANGLE, rational)
        lines = trace.render()
        assert lines[0] == "eliminate vertices=3 edges=3 total=2 vertex=1 neighbors=2,3"
        assert lines[1].startswith("  empty vertices=0")


# ---------------------------------------------------------------------------
# Truncated binary tree families
# ---------------------------------------------------------------------------

class TestTreeFamilies:
    def test_full_binary_tree_shape(self):
        tree = full_binary_tree(3)
        assert len(tree.nodes) == 7
        assert len(tree.internal_edges()) == 6

    def test_line_graph_depth_three(self, field):
        s = binary_tree_family(3, TreeFamily.LINE_GRAPH)
        assert (s.n, len(s.relations)) == (6, 7)
        assert system_homology(s, field).total == 3

    @pytest.mark.parametrize("n", range(2, 7))
    def test_cherries_total_one(self, n, field):
        s = binary_tree_family(n, TreeFamily.CHERRIES)
        assert reduce_homology(graph_from_system(s), field)[0].total == 1

    def test_deep_singletons_absorb_adjacent_pairs(self):
        line = binary_tree_family(3, TreeFamily.LINE_GRAPH)
        deep = binary_tree_family(3, TreeFamily.DEEP_SINGLETONS)
        assert deep.n == line.n
        assert len(deep.relations) == 5

    def test_depth_must_be_positive(self):
        with pytest.raises(PreconditionError):
            binary_tree_family(0, TreeFamily.CHERRIES)

    def test_depth_capacity(self):
        with pytest.raises(CapacityError):
            binary_tree_family(MAX_FAMILY_DEPTH + 1, TreeFamily.CHERRIES)
