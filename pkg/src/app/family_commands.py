"""Family and experiment command handlers: tree-family, recurrence, calibrate."""
from __future__ import annotations

import argparse
from typing import TYPE_CHECKING, Final

from config.constants import EXIT_OK, FAMILIES
from homology.errors import InputError
from homology.quad_graph import (
    TreeFamily,
    binary_tree_family,
    graph_from_system,
    reduce_homology,
)
from homology.recurrence import (
    INITIAL_STATE,
    RewriteEngine,
    RewriteTable,
    coeff_vector,
    derived_recurrence_step,
    recurrence_states,
    x_power_iterate,
)

if TYPE_CHECKING:
    from app.report import Report
    from config.di_container import SettingsManagerProtocol
    from config.logging_system import StructuredLogger
    from homology.core_complex import FieldSpec, HomologyProfile, Limits
    from homology.grassmann import SetSystem

    class _FamilyCommandsProtocol:
        """Typed view of the fully-assembled host class, for use in method stubs."""

        settings: SettingsManagerProtocol
        logger: StructuredLogger

        @property
        def limits(self) -> Limits: ...
        def field_for(self, args: argparse.Namespace, problem: None = None) -> FieldSpec: ...
else:
    _FamilyCommandsProtocol = object

CALIBRATE_DEPTH: Final[int] = 3
REWRITE_CHECK_DEPTH: Final[int] = 4
OFFSET_DEPTH: Final[int] = 3


def _family_homology(s: SetSystem, f: FieldSpec, limits: Limits) -> HomologyProfile:
    return reduce_homology(graph_from_system(s), f, limits)[0]


class FamilyCommandsMixin(_FamilyCommandsProtocol):  # type: ignore[misc]
    """Mixin with the commands that need no problem file."""

    def cmd_tree_family(self, args: argparse.Namespace, report: Report) -> int:
        """Homology of one truncated binary tree family member.

        :raises InputError: If ``--family`` or ``--n`` is missing.
        """
        if args.family is None or args.n is None:
            raise InputError("tree-family needs --family and --n")
        family = TreeFamily(FAMILIES[args.family])
        s = binary_tree_family(args.n, family)
        profile = _family_homology(s, self.field_for(args), self.limits)

        report.row("family", family.value)
        report.row("n", args.n)
        report.row("ground", s.n)
        report.row("relations", len(s.relations))
        report.homology(profile)
        return EXIT_OK

    def cmd_recurrence(self, args: argparse.Namespace, report: Report) -> int:
        if args.n is None:
            raise InputError("recurrence needs --n")
        report.row("n", "a", "b", "c", "p", "q", "r", "dim")
        for state in recurrence_states(args.n):
            report.row(state.n, *state.vector, state.dim)
        return EXIT_OK

    def cmd_calibrate(self, args: argparse.Namespace, report: Report) -> int:
        """Report the family conventions against each other and against the recurrence.

        Nothing is asserted; every row is informational and the exit code is 0
        unless a computation fails.
        """
        depth = args.n if args.n is not None else CALIBRATE_DEPTH
        f, limits = self.field_for(args), self.limits
        table = RewriteTable.standard(self.settings.get_xz_rewrite())

        totals: dict[tuple[TreeFamily, int], int] = {}
        report.row("family", "n", "ground", "relations", "total")
        for family in TreeFamily:
            for n in range(1, depth + 1):
                s = binary_tree_family(n, family)
                total = _family_homology(s, f, limits).total
                totals[family, n] = total
                report.row(family.value, n, s.n, len(s.relations), total)

        engine = RewriteEngine(table)
        published = recurrence_states(REWRITE_CHECK_DEPTH)
        derived = INITIAL_STATE
        for state in published:
            rewritten = coeff_vector(x_power_iterate(state.n, engine))
            report.row("published", state.n, *state.vector)
            report.row("derived", state.n, *derived.vector)
            report.row("rewrite", state.n, *rewritten)
            report.row(
                "agree", state.n,
                f"published={'yes' if state.vector == rewritten else 'no'}",
                f"derived={'yes' if derived.vector == rewritten else 'no'}",
            )
            derived = derived_recurrence_step(derived, table)
        report.row("ambiguous", *sorted(engine.ambiguous_consulted) or ["none"])

        for n in range(1, min(depth, OFFSET_DEPTH) + 1):
            dim = published[n - 1].dim
            for family in TreeFamily:
                total = totals[family, n]
                report.row("offset", family.value, n, total, dim, dim - total)
        self.logger.info("calibration finished", depth=depth, xz_rewrite=self.settings.get_xz_rewrite())
        return EXIT_OK
