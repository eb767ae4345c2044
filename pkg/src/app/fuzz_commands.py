"""Harness command handlers: fuzz and selftest."""
from __future__ import annotations

import argparse
from typing import TYPE_CHECKING

from app.fuzz import run_scenario
from app.selftest import run_selftest
from config.constants import DEFAULT_SERIES_DEPTH, EXIT_OK, EXIT_VIOLATION, SCENARIOS

if TYPE_CHECKING:
    from app.report import Report
    from config.di_container import FindingStoreProtocol, SettingsManagerProtocol
    from config.logging_system import StructuredLogger
    from homology.core_complex import FieldSpec, Limits

    class _FuzzCommandsProtocol:
        """Typed view of the fully-assembled host class, for use in method stubs."""

        settings: SettingsManagerProtocol
        logger: StructuredLogger

        @property
        def limits(self) -> Limits: ...
        @property
        def findings(self) -> FindingStoreProtocol: ...
        def field_for(self, args: argparse.Namespace, problem: None = None) -> FieldSpec: ...
else:
    _FuzzCommandsProtocol = object


class FuzzCommandsMixin(_FuzzCommandsProtocol):  # type: ignore[misc]
    """Mixin with the randomized harness and the pinned self-test."""

    def cmd_fuzz(self, args: argparse.Namespace, report: Report) -> int:
        """Run one scenario (``--scenario``) or all of them and save every finding.

        Each finding is minimized, written as a replayable problem file and
        listed as a ``finding`` row.
        """
        scenarios = [args.scenario] if args.scenario else list(SCENARIOS)
        seed, trials = self.settings.get_seed(), self.settings.get_trials()
        f, limits = self.field_for(args), self.limits
        depth = args.n if args.n is not None else DEFAULT_SERIES_DEPTH

        found = 0
        for name in scenarios:
            result = run_scenario(
                name, seed, trials, f, limits,
                workers=self.settings.get_workers(),
                exhaustive=args.exhaustive,
                series_depth=depth,
            )
            report.row("scenario", result.scenario)
            report.row("trials", result.trials)
            report.row("skipped", result.skipped)
            report.row("findings", len(result.findings))
            for outcome in result.findings:
                assert outcome.violation is not None
                path = self.findings.save_finding(
                    name, outcome.index, outcome.violation, seed, outcome.problem_text or "",
                )
                report.row("finding", path)
            found += len(result.findings)
        return EXIT_VIOLATION if found else EXIT_OK

    def cmd_selftest(self, args: argparse.Namespace, report: Report) -> int:
        results = run_selftest(self.limits)
        for name, ok in results:
            report.row("ok" if ok else "FAIL", name)
        return EXIT_OK if all(ok for _, ok in results) else EXIT_VIOLATION
