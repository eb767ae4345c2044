"""Pinned instances with known answers, checked by the ``selftest`` command.

Field-dependent checks run over the rationals and over GF(32003); each
result is reported as ``<name>@<field>``.
"""
from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass

from config.logging_system import get_logger
from homology.core_complex import FieldSpec, Limits, homology_dims
from homology.errors import HomologyError
from homology.grassmann import RootedTree, SetSystem, system_homology, tree_to_system
from homology.monomial import (
    RelationSet,
    bar_subcomplex,
    dyck_path,
    predict_homology,
    word_homology,
)
from homology.ncseries import hilbert_truncated, invert_series
from homology.quad_graph import (
    RelationGraph,
    TreeFamily,
    binary_tree_family,
    graph_from_system,
    reduce_homology,
)
from homology.recurrence import (
    INITIAL_STATE,
    RewriteEngine,
    coeff_vector,
    derived_recurrence_step,
    recurrence_dims,
    x_power_iterate,
)

_logger = get_logger("selftest")

# x y z as 0 1 2
_XYZZ = (0, 1, 2, 2)
_XYZZ_RELATIONS = RelationSet(((0, 1, 2), (2, 2)))
_XXXX = (0, 0, 0, 0)
_CUBE = RelationSet(((0, 0, 0),))

FOUR_POINT_SYSTEM = SetSystem.create(4, [{1, 2, 3}, {1, 4}, {2, 4}, {3, 4}])
SIX_POINT_SYSTEM = SetSystem.create(
    6, [{1, 3}, {1, 4}, {1, 2}, {2, 5}, {2, 6}, {3, 4}, {5, 6}],
)
TERNARY_TREE = RootedTree.from_nodes([
    ("r", 3, None), ("a", 2, "r"), ("b", 2, "r"), ("c", 2, "r"),
])
TERNARY_TREE_RELATIONS = (("r", "a", "b"), ("r", "a", "c"), ("r", "b", "c"))


@dataclass(frozen=True)
class PinnedCheck:
    name: str
    run: Callable[[FieldSpec, Limits], bool]
    field_dependent: bool = True


def _dyck_xyzz(f: FieldSpec, limits: Limits) -> bool:
    result = dyck_path(_XYZZ, _XYZZ_RELATIONS)
    return result.d_sequence == (3, 4) and result.r == 2 and not result.exact


def _dyck_xxxx(f: FieldSpec, limits: Limits) -> bool:
    result = dyck_path(_XXXX, _CUBE)
    return result.d_sequence == (3, 4) and result.r == 2 and not result.exact


def _word_xxxx(f: FieldSpec, limits: Limits) -> bool:
    profile = word_homology(_XXXX, _CUBE, f, limits)
    prediction = predict_homology(_XXXX, _CUBE)
    return (
        profile.trimmed() == (0, 1)
        and prediction.bar_degree == 3
        and prediction.place == 2
        and prediction.agrees_with(profile)
    )


def _word_xyzz(f: FieldSpec, limits: Limits) -> bool:
    profile = word_homology(_XYZZ, _XYZZ_RELATIONS, f, limits)
    return predict_homology(_XYZZ, _XYZZ_RELATIONS).agrees_with(profile) and profile.total == 1


def _parity_xxxx(f: FieldSpec, limits: Limits) -> bool:
    complex_ = bar_subcomplex(_XXXX, _CUBE, limits=limits)
    return complex_.dims == (1, 3, 1) and homology_dims(complex_, f, limits).euler == -1


def _four_point_system(f: FieldSpec, limits: Limits) -> bool:
    return system_homology(FOUR_POINT_SYSTEM, f, limits).trimmed() == (0, 1, 1)


def _six_point_system(f: FieldSpec, limits: Limits) -> bool:
    return system_homology(SIX_POINT_SYSTEM, f, limits).trimmed() == (0, 0, 3)


def _ternary_tree(f: FieldSpec, limits: Limits) -> bool:
    s = tree_to_system(TERNARY_TREE, TERNARY_TREE_RELATIONS)
    profile = system_homology(s, f, limits)
    return s.n == 3 and profile.total == 2 and profile.nonzero_degrees() == [1]


def _graph_constants(f: FieldSpec, limits: Limits) -> bool:
    triangle = RelationGraph((1, 2, 3), ((1, 2), (1, 3), (2, 3)))
    edge = RelationGraph((1, 2), ((1, 2),))
    with_isolated = RelationGraph((1, 2, 3), ((1, 2),))
    return (
        reduce_homology(triangle, f, limits)[0].total == 2
        and reduce_homology(edge, f, limits)[0].total == 1
        and reduce_homology(with_isolated, f, limits)[0].total == 0
    )


def _line_graph_depth_three(f: FieldSpec, limits: Limits) -> bool:
    s = binary_tree_family(3, TreeFamily.LINE_GRAPH)
    return s.n == 6 and len(s.relations) == 7 and system_homology(s, f, limits).total == 3


def _cherries(f: FieldSpec, limits: Limits) -> bool:
    return all(
        reduce_homology(graph_from_system(binary_tree_family(n, TreeFamily.CHERRIES)), f, limits)[0].total == 1
        for n in range(2, 7)
    )


def _series_range(f: FieldSpec, limits: Limits) -> bool:
    inverse = invert_series(hilbert_truncated(2, RelationSet(((0, 0, 0), (0, 1))), 8, limits), limits)
    return all(c in (-1, 1) for _, c in inverse.items_graded())


def _recurrence_values(f: FieldSpec, limits: Limits) -> bool:
    return (
        INITIAL_STATE.vector == (0, 1, 1, 0, 0, 1)
        and [recurrence_dims(n) for n in (1, 2, 3)] == [3, 5, 51]
    )


def _rewrite_crosscheck(f: FieldSpec, limits: Limits) -> bool:
    state = INITIAL_STATE
    for n in range(1, 5):
        if coeff_vector(x_power_iterate(n, RewriteEngine())) != state.vector:
            return False
        state = derived_recurrence_step(state)
    return True


PINNED_CHECKS: tuple[PinnedCheck, ...] = (
    PinnedCheck("dyck-xyzz", _dyck_xyzz, field_dependent=False),
    PinnedCheck("dyck-xxxx", _dyck_xxxx, field_dependent=False),
    PinnedCheck("word-xxxx", _word_xxxx),
    PinnedCheck("word-xyzz", _word_xyzz),
    PinnedCheck("parity-xxxx", _parity_xxxx),
    PinnedCheck("four-point-system", _four_point_system),
    PinnedCheck("six-point-system", _six_point_system),
    PinnedCheck("ternary-tree", _ternary_tree),
    PinnedCheck("graph-constants", _graph_constants),
    PinnedCheck("line-graph-3", _line_graph_depth_three),
    PinnedCheck("cherries-2-6", _cherries),
    PinnedCheck("series-range", _series_range, field_dependent=False),
    PinnedCheck("recurrence-values", _recurrence_values, field_dependent=False),
    PinnedCheck("rewrite-crosscheck", _rewrite_crosscheck, field_dependent=False),
)


def run_selftest(limits: Limits) -> list[tuple[str, bool]]:
    """Run every pinned check; an exception counts as a failure."""
    fields = (FieldSpec.rational(), FieldSpec.prime())
    results: list[tuple[str, bool]] = []
    for check in PINNED_CHECKS:
        for f in fields if check.field_dependent else fields[:1]:
            name = f"{check.name}@{f}" if check.field_dependent else check.name
            try:
                ok = check.run(f, limits)
            except HomologyError as exc:
                _logger.error("Pinned check raised", check=name, error=str(exc))
                ok = False
            if not ok:
                _logger.log_finding("selftest", f"pinned check {name} failed")
            results.append((name, ok))
    return results
