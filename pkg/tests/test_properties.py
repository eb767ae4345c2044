"""Property tests over random small instances (hypothesis)."""
from __future__ import annotations

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from homology.core_complex import FieldSpec, validate_complex
from homology.grassmann import SetSystem, grassmann_complex, system_homology, word_to_system
from homology.monomial import (
    RelationSet,
    bar_subcomplex,
    predict_homology,
    reduce_antichain,
    word_homology,
)
from homology.ncseries import euler_crosscheck, hilbert_truncated, invert_series
from homology.order import is_order, private_point_everywhere
from homology.quad_graph import RelationGraph, graph_homology, reduce_homology

RATIONAL = FieldSpec.rational()
PROPERTY_SETTINGS = settings(
    max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow],
)


# ---------------------------------------------------------------------------
# Strategies
# ---------------------------------------------------------------------------

@st.composite
def relation_sets(draw, size: int) -> RelationSet:
    words = draw(st.lists(
        st.lists(st.integers(0, size - 1), min_size=2, max_size=4).map(tuple),
        max_size=3,
    ))
    return reduce_antichain(words)


@st.composite
def words_with_relations(draw) -> tuple[tuple[int, ...], RelationSet]:
    size = draw(st.integers(1, 3))
    relations = draw(relation_sets(size))
    word = tuple(draw(st.lists(st.integers(0, size - 1), min_size=1, max_size=9)))
    return word, relations


@st.composite
def set_systems(draw, max_ground: int = 6) -> SetSystem:
    n = draw(st.integers(1, max_ground))
    relations = draw(st.lists(
        st.sets(st.integers(1, n), min_size=1, max_size=min(n, 3)), max_size=n + 1,
    ))
    return SetSystem.create(n, relations)


@st.composite
def relation_graphs(draw) -> RelationGraph:
    n = draw(st.integers(0, 8))
    pairs = [(a, b) for a in range(1, n + 1) for b in range(a + 1, n + 1)]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return RelationGraph(tuple(range(1, n + 1)), tuple(edges))


# ---------------------------------------------------------------------------
# Monomial algebras
# ---------------------------------------------------------------------------

class TestWordProperties:
    @PROPERTY_SETTINGS
    @given(words_with_relations())
    def test_bar_and_gap_complexes_are_valid(self, case):
        word, relations = case
        assert validate_complex(bar_subcomplex(word, relations))
        assert validate_complex(grassmann_complex(word_to_system(word, relations)))

    @PROPERTY_SETTINGS
    @given(words_with_relations())
    def test_prediction_matches_homology(self, case):
        word, relations = case
        profile = word_homology(word, relations, RATIONAL)
        assert profile.total <= 1
        assert predict_homology(word, relations).agrees_with(profile)

    @PROPERTY_SETTINGS
    @given(words_with_relations())
    def test_gap_system_has_same_homology(self, case):
        word, relations = case
        gap = system_homology(word_to_system(word, relations), RATIONAL)
        assert gap.same_homology(word_homology(word, relations, RATIONAL))

    @PROPERTY_SETTINGS
    @given(words_with_relations())
    def test_inverse_coefficient_is_euler_characteristic(self, case):
        word, relations = case
        coeff, alternating = euler_crosscheck(word, relations)
        assert coeff == alternating
        assert coeff in (-1, 0, 1)


class TestSeriesProperties:
    @PROPERTY_SETTINGS
    @given(st.integers(1, 2).flatmap(lambda size: st.tuples(st.just(size), relation_sets(size))))
    def test_inverse_coefficients_are_units(self, case):
        size, relations = case
        inverse = invert_series(hilbert_truncated(size, relations, 6))
        assert all(c in (-1, 1) for c in inverse.coeffs.values())


# ---------------------------------------------------------------------------
# Set systems and graphs
# ---------------------------------------------------------------------------

class TestSystemProperties:
    @PROPERTY_SETTINGS
    @given(set_systems())
    def test_grassmann_complex_is_valid(self, s):
        assert validate_complex(grassmann_complex(s))

    @PROPERTY_SETTINGS
    @given(set_systems(max_ground=5), st.data())
    def test_restricted_complex_is_valid(self, s, data):
        mask = data.draw(st.sets(st.integers(1, s.n)))
        assert validate_complex(grassmann_complex(s, w_mask=mask))

    @PROPERTY_SETTINGS
    @given(set_systems())
    def test_order_dichotomy(self, s):
        certificate = is_order(s)
        if certificate is not None:
            assert certificate.replay(s)
            assert system_homology(s, RATIONAL).total <= 1
        else:
            assert not private_point_everywhere(s)

    @PROPERTY_SETTINGS
    @given(relation_graphs())
    def test_reduction_matches_oracle(self, g):
        profile, trace = reduce_homology(g, RATIONAL)
        assert profile.same_homology(graph_homology(g, RATIONAL))
        assert trace.consistent()
