"""App package for the bar homology toolkit."""
from __future__ import annotations

import argparse
import sys
from collections.abc import Callable, Sequence
from pathlib import Path
from typing import TextIO, cast

from app.cli_parser import UsageError, build_parser
from app.family_commands import FamilyCommandsMixin
from app.fuzz_commands import FuzzCommandsMixin
from app.problem_commands import ProblemCommandsMixin
from app.problem_file import ProblemFile, ProblemKind, load_problem
from app.report import Report
from config.constants import EXIT_CAPACITY, EXIT_INPUT_ERROR, EXIT_VIOLATION
from config.di_container import DIContainer, FindingStoreProtocol, SettingsManagerProtocol
from config.logging_system import configure_logging, get_logger
from homology.core_complex import FieldSpec, Limits
from homology.errors import (
    CapacityError,
    HomologyError,
    InputError,
    InternalConsistencyError,
    ProblemFileError,
    StructuralError,
    SymmetryViolationError,
)
from homology.order import ContractionRule

KNOWN_OPTIONS = frozenset({"n", "field", "rule", "oracle"})


class HomologyCli(
    ProblemCommandsMixin,
    FamilyCommandsMixin,
    FuzzCommandsMixin,
):
    """Command-line application, assembled via mixin composition."""

    def __init__(
        self,
        settings_manager: SettingsManagerProtocol | None = None,
        finding_store: FindingStoreProtocol | None = None,
        container: DIContainer | None = None,
        stdout: TextIO | None = None,
        stderr: TextIO | None = None,
    ) -> None:
        """Resolve dependencies.

        :param settings_manager: Optional settings manager override.
        :param finding_store: Optional finding store override; otherwise
            resolved on first use, after flag overrides are applied.
        :param container: Optional DI container; used when no explicit managers
            are passed.  Falls back to direct instantiation when omitted.
        :param stdout: Report stream (default ``sys.stdout``).
        :param stderr: Error stream (default ``sys.stderr``).
        """
        self.container: DIContainer | None = container
        self.settings: SettingsManagerProtocol
        if settings_manager is not None:
            self.settings = settings_manager
        elif container:
            self.settings = cast(SettingsManagerProtocol, container.get("settings_manager"))
        else:
            from managers.settings import SettingsManager

            self.settings = cast(SettingsManagerProtocol, SettingsManager())
        self._findings = finding_store
        self.out = stdout if stdout is not None else sys.stdout
        self.err = stderr if stderr is not None else sys.stderr
        self.logger = get_logger("homology_cli")

    @property
    def findings(self) -> FindingStoreProtocol:
        if self._findings is None:
            if self.container is not None and self.settings is self.container.get("settings_manager"):
                self._findings = cast(FindingStoreProtocol, self.container.get("finding_store"))
            else:
                from managers.findings import FindingStore

                self._findings = FindingStore(self.settings.get_findings_dir())
        return self._findings

    @property
    def limits(self) -> Limits:
        return Limits(
            max_basis=self.settings.get_max_basis(),
            max_rank_cells=self.settings.get_max_rank_cells(),
            memo_limit=self.settings.get_memo_limit(),
        )

    # ── Entry point ───────────────────────────────────────────────────────────

    def run(self, argv: Sequence[str] | None = None) -> int:
        """Parse *argv*, run the command and write its report.

        :returns: 0 on success, 1 when a check is violated, 2 on input errors
            (including usage errors), 3 when a work limit is exceeded.
        """
        try:
            args = build_parser().parse_args(argv)
        except UsageError as exc:
            self.err.write(exc.usage)
            self.err.write(f"error\t{exc}\n")
            return EXIT_INPUT_ERROR
        except SystemExit as exc:
            return int(exc.code or 0)

        report = Report()
        try:
            self._apply_overrides(args)
            self.logger.log_command(args.command, input_file=args.input)
            code = self._handlers()[args.command](args, report)
        except CapacityError as exc:
            return self._fail(exc, EXIT_CAPACITY)
        except (InputError, StructuralError) as exc:
            return self._fail(exc, EXIT_INPUT_ERROR)
        except (InternalConsistencyError, SymmetryViolationError) as exc:
            return self._fail(exc, EXIT_VIOLATION)
        report.write(self.out)
        return code

    def _handlers(self) -> dict[str, Callable[[argparse.Namespace, Report], int]]:
        return {
            "word-homology": self.cmd_word_homology,
            "dyck": self.cmd_dyck,
            "series-invert": self.cmd_series_invert,
            "grassmann": self.cmd_grassmann,
            "order-check": self.cmd_order_check,
            "graph-reduce": self.cmd_graph_reduce,
            "tree-family": self.cmd_tree_family,
            "recurrence": self.cmd_recurrence,
            "calibrate": self.cmd_calibrate,
            "fuzz": self.cmd_fuzz,
            "selftest": self.cmd_selftest,
        }

    def _fail(self, exc: HomologyError, code: int) -> int:
        self.logger.error("Command failed", error=str(exc), exit_code=code)
        self.err.write(f"error\t{exc}\n")
        return code

    def _apply_overrides(self, args: argparse.Namespace) -> None:
        """Copy flag values into the settings (flags win) and configure logging."""
        if args.settings:
            self.settings.use_file(Path(args.settings))
        if args.max_basis is not None:
            self.settings.set_max_basis(args.max_basis)
        if args.seed is not None:
            self.settings.set_seed(args.seed)
        if args.trials is not None:
            self.settings.set_trials(args.trials)
        if args.workers is not None:
            self.settings.set_workers(args.workers)
        if args.findings_dir:
            self.settings.set_findings_dir(Path(args.findings_dir))
        if args.table_xz is not None:
            self.settings.set_xz_rewrite(args.table_xz)
        if args.log_level:
            self.settings.set_log_level(args.log_level)
        if args.log_dir:
            self.settings.set_log_dir(Path(args.log_dir))
        configure_logging(self.settings.get_log_dir(), self.settings.get_log_level())

    # ── Shared helpers ────────────────────────────────────────────────────────

    def load_input(self, args: argparse.Namespace, *kinds: ProblemKind) -> ProblemFile:
        """Load the problem file named on the command line.

        :raises InputError: If no file was given.
        :raises ProblemFileError: If the file is malformed, has an unknown
            option, or is not one of *kinds*.
        """
        if not args.input:
            raise InputError(f"{args.command} needs a problem file")
        problem = load_problem(Path(args.input))
        unknown = sorted(set(problem.options) - KNOWN_OPTIONS)
        if unknown:
            raise ProblemFileError(f"unknown options {unknown}")
        if kinds:
            problem.require(*kinds)
        return problem

    def field_for(self, args: argparse.Namespace, problem: ProblemFile | None = None) -> FieldSpec:
        """Coefficient field: flag, then problem option, then settings."""
        token = args.field or (problem.option("field") if problem else None) or self.settings.get_field()
        return FieldSpec.parse(token)

    def rule_for(self, args: argparse.Namespace, problem: ProblemFile) -> ContractionRule:
        """Contraction rule: flag, then problem option, then ``kernel``.

        :raises ProblemFileError: If the ``rule`` option names no rule.
        """
        token = args.rule or problem.option("rule") or ContractionRule.KERNEL.value
        try:
            return ContractionRule(token)
        except ValueError:
            choices = [r.value for r in ContractionRule]
            raise ProblemFileError(f"unknown rule {token!r} (expected one of {choices})") from None

    def yes_no_option(self, problem: ProblemFile, key: str) -> bool:
        """Read a ``yes``/``no`` option; absent means ``no``.

        :raises ProblemFileError: If the value is anything else.
        """
        raw = problem.option(key, "no")
        if raw not in ("yes", "no"):
            raise ProblemFileError(f"option {key} must be yes or no, got {raw!r}")
        return raw == "yes"

    def int_option(
        self, args: argparse.Namespace, problem: ProblemFile | None, default: int,
    ) -> int:
        """Value of ``--n``, else the ``n`` option of *problem*, else *default*."""
        if args.n is not None:
            return int(args.n)
        raw = problem.option("n") if problem else None
        if raw is None:
            return default
        try:
            value = int(raw)
        except ValueError:
            raise ProblemFileError(f"option n must be an integer, got {raw!r}") from None
        if value < 1:
            raise ProblemFileError(f"option n must be positive, got {value}")
        return value

    def check(self, report: Report, name: str, ok: bool, **fields: object) -> bool:
        """Append ``<name> ok|mismatch`` and log a finding on mismatch."""
        report.row(name, "ok" if ok else "mismatch")
        if not ok:
            self.logger.log_finding(name, f"{name} check failed", **fields)
        return ok
