"""Single-problem command handlers: word, series, Grassmann, order and graph commands."""
from __future__ import annotations

import argparse
from typing import TYPE_CHECKING

from app.problem_file import ProblemKind
from config.constants import DEFAULT_SERIES_DEPTH, EXIT_OK, EXIT_VIOLATION
from homology.core_complex import homology_dims
from homology.errors import PreconditionError
from homology.grassmann import system_homology, word_to_system
from homology.monomial import (
    PredictionKind,
    bar_subcomplex,
    dyck_path,
    predict_homology,
)
from homology.ncseries import euler_crosscheck, hilbert_truncated, invert_series
from homology.order import (
    ContractionRule,
    find_basic_points,
    is_order,
    private_point_everywhere,
)
from homology.quad_graph import graph_from_system, graph_homology, reduce_homology

if TYPE_CHECKING:
    from app.problem_file import ProblemFile
    from app.report import Report
    from config.di_container import SettingsManagerProtocol
    from config.logging_system import StructuredLogger
    from homology.core_complex import FieldSpec, Limits

    class _ProblemCommandsProtocol:
        """Typed view of the fully-assembled host class, for use in method stubs."""

        settings: SettingsManagerProtocol
        logger: StructuredLogger

        @property
        def limits(self) -> Limits: ...
        def load_input(self, args: argparse.Namespace, *kinds: ProblemKind) -> ProblemFile: ...
        def field_for(self, args: argparse.Namespace, problem: ProblemFile | None = None) -> FieldSpec: ...
        def int_option(self, args: argparse.Namespace, problem: ProblemFile | None, default: int) -> int: ...
        def rule_for(self, args: argparse.Namespace, problem: ProblemFile) -> ContractionRule: ...
        def yes_no_option(self, problem: ProblemFile, key: str) -> bool: ...
        def check(self, report: Report, name: str, ok: bool, **fields: object) -> bool: ...
else:
    _ProblemCommandsProtocol = object


class ProblemCommandsMixin(_ProblemCommandsProtocol):  # type: ignore[misc]
    """Mixin with the commands that read one problem file."""

    def cmd_word_homology(self, args: argparse.Namespace, report: Report) -> int:
        """Bar homology of the word, its prediction and the agreement checks."""
        problem = self.load_input(args, ProblemKind.WORD)
        assert problem.word is not None
        f, limits = self.field_for(args, problem), self.limits
        w, relations = problem.word, problem.relations

        complex_ = bar_subcomplex(w, relations, problem.alphabet, limits)
        profile = homology_dims(complex_, f, limits)
        prediction = predict_homology(w, relations)
        dyck = dyck_path(w, relations)

        report.homology(profile)
        report.row("prediction", prediction.kind.value)
        if prediction.kind is PredictionKind.ONE_DIM:
            report.row("bar_degree", prediction.bar_degree)
            report.row("place", prediction.place)
        report.sequence("dyck", dyck.d_sequence)
        report.row("r", dyck.r)

        ok = self.check(report, "predictor", prediction.agrees_with(profile), length=len(w))
        parity = (profile.total == 0) == (complex_.total_basis % 2 == 0)
        ok &= self.check(report, "parity", parity, basis=complex_.total_basis)
        gap = system_homology(word_to_system(w, relations), f, limits)
        ok &= self.check(report, "correspondence", gap.same_homology(profile))
        return EXIT_OK if ok else EXIT_VIOLATION

    def cmd_dyck(self, args: argparse.Namespace, report: Report) -> int:
        problem = self.load_input(args, ProblemKind.WORD)
        assert problem.word is not None
        dyck = dyck_path(problem.word, problem.relations)
        report.sequence("dyck", dyck.d_sequence)
        report.row("r", dyck.r)
        report.flag("exact", dyck.exact)
        report.row("reason", dyck.reason.value)
        return EXIT_OK

    def cmd_series_invert(self, args: argparse.Namespace, report: Report) -> int:
        """Inverse of the truncated Hilbert series; a word problem adds its cross-check."""
        problem = self.load_input(args, ProblemKind.ALGEBRA, ProblemKind.WORD)
        if problem.alphabet is None:
            raise PreconditionError("series-invert needs an alphabet")
        alphabet, relations, limits = problem.alphabet, problem.relations, self.limits
        depth = self.int_option(args, problem, DEFAULT_SERIES_DEPTH)

        hilbert = hilbert_truncated(alphabet, relations, depth, limits)
        inverse = invert_series(hilbert, limits)
        report.row("hilbert_terms", len(hilbert.coeffs))
        for word, coeff in inverse.items_graded():
            report.row("S", alphabet.render(word), coeff)
        report.row("terms", len(inverse.coeffs))
        in_range = all(c in (-1, 1) for c in inverse.coeffs.values())
        ok = self.check(report, "range", in_range, truncation=depth)

        if problem.word is not None:
            w = problem.word
            coeff, alternating = euler_crosscheck(w, relations, limits)
            report.row("word", alphabet.render(w), coeff)
            report.row("alternating", alternating)
            agrees = coeff == alternating
            if len(w) <= depth:
                agrees = agrees and inverse.coefficient(w) == coeff
            ok &= self.check(report, "euler_check", agrees, length=len(w))
        return EXIT_OK if ok else EXIT_VIOLATION

    def cmd_grassmann(self, args: argparse.Namespace, report: Report) -> int:
        problem = self.load_input(args, ProblemKind.SYSTEM, ProblemKind.TREE, ProblemKind.WORD)
        s = problem.as_system()
        report.homology(system_homology(s, self.field_for(args, problem), self.limits))
        report.row("ground", s.n)
        report.row("relations", len(s.relations))
        return EXIT_OK

    def cmd_order_check(self, args: argparse.Namespace, report: Report) -> int:
        """Basic points, private points, order certificate and total homology."""
        problem = self.load_input(args, ProblemKind.SYSTEM, ProblemKind.TREE, ProblemKind.WORD)
        s = problem.as_system()
        rule = self.rule_for(args, problem)
        limits = self.limits

        private = private_point_everywhere(s)
        certificate = is_order(s, rule, limits)
        report.flag("basic", bool(find_basic_points(s)))
        report.flag("private_points", private)
        report.flag("order", certificate is not None)
        if certificate is not None:
            for line in certificate.lines():
                report.line(line)
        total = system_homology(s, self.field_for(args, problem), limits).total
        report.row("total", total)

        ok = True
        if certificate is not None:
            ok &= self.check(report, "replay", certificate.replay(s))
            ok &= self.check(report, "dichotomy", total <= 1, total=total, rule=rule.value)
        elif rule is ContractionRule.KERNEL:
            ok &= self.check(report, "private_implies_order", not private)
        return EXIT_OK if ok else EXIT_VIOLATION

    def cmd_graph_reduce(self, args: argparse.Namespace, report: Report) -> int:
        """Relation-graph reduction; ``option oracle yes`` also compares with the oracle."""
        problem = self.load_input(args, ProblemKind.SYSTEM, ProblemKind.TREE, ProblemKind.WORD)
        g = graph_from_system(problem.as_system())
        f, limits = self.field_for(args, problem), self.limits

        profile, trace = reduce_homology(g, f, limits)
        report.homology(profile)
        for line in trace.render():
            report.row("trace", line)

        ok = self.check(report, "consistent", trace.consistent())
        if self.yes_no_option(problem, "oracle"):
            oracle = graph_homology(g, f, limits)
            ok &= self.check(report, "oracle", oracle.same_homology(profile), vertices=g.n)
        return EXIT_OK if ok else EXIT_VIOLATION
