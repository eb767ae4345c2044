"""Tests for HomologyCli — command dispatch, report rows and exit codes."""
from __future__ import annotations

import pytest

from app import HomologyCli
from config.constants import EXIT_CAPACITY, EXIT_INPUT_ERROR, EXIT_OK, EXIT_VIOLATION
from managers.findings import read_header
from tests.helpers import (
    ALGEBRA_CUBE_AND_XY,
    SYSTEM_FOUR_POINT,
    SYSTEM_SIX_POINT,
    TREE_TERNARY,
    TRIANGLE_SYSTEM,
    WORD_XXXX,
    WORD_XYZZ,
    homology_rows,
    report_rows,
    report_value,
)


def _run(cli: HomologyCli, *argv: str) -> int:
    return cli.run([*argv])


# ---------------------------------------------------------------------------
# word-homology and dyck
# ---------------------------------------------------------------------------

class TestWordCommands:
    def test_word_homology_xxxx(self, cli, write_problem):
        code = _run(cli, "word-homology", str(write_problem(WORD_XXXX)))
        assert code == EXIT_OK
        assert homology_rows(cli.out) == {0: 0, 1: 1, 2: 0}
        assert report_value(cli.out, "prediction") == "one_dim"
        assert report_value(cli.out, "bar_degree") == "3"
        assert report_value(cli.out, "place") == "2"
        assert report_value(cli.out, "r") == "2"
        for check in ("predictor", "parity", "correspondence"):
            assert report_value(cli.out, check) == "ok"

    def test_word_homology_rational_flag(self, cli, write_problem):
        assert _run(cli, "word-homology", str(write_problem(WORD_XYZZ)), "--field", "q") == EXIT_OK
        assert report_value(cli.out, "total") == "1"

    def test_word_homology_field_option(self, cli, write_problem):
        path = write_problem(WORD_XXXX + "option field 2\n")
        assert _run(cli, "word-homology", str(path)) == EXIT_OK

    def test_dyck_rows(self, cli, write_problem):
        assert _run(cli, "dyck", str(write_problem(WORD_XYZZ))) == EXIT_OK
        rows = report_rows(cli.out)
        assert ["dyck", "3", "4"] in rows
        assert report_value(cli.out, "exact") == "no"
        assert report_value(cli.out, "reason") == "nonexact"

    def test_dyck_rejects_system_file(self, cli, write_problem):
        assert _run(cli, "dyck", str(write_problem(TRIANGLE_SYSTEM))) == EXIT_INPUT_ERROR
        assert "expected a word problem" in cli.err.getvalue()


# ---------------------------------------------------------------------------
# series-invert
# ---------------------------------------------------------------------------

class TestSeriesInvert:
    def test_algebra_problem(self, cli, write_problem):
        assert _run(cli, "series-invert", str(write_problem(ALGEBRA_CUBE_AND_XY))) == EXIT_OK
        assert report_value(cli.out, "range") == "ok"
        coeffs = [int(row[2]) for row in report_rows(cli.out) if row[0] == "S"]
        assert coeffs and set(coeffs) <= {-1, 1}

    def test_word_problem_adds_euler_check(self, cli, write_problem):
        assert _run(cli, "series-invert", str(write_problem(WORD_XXXX)), "--n", "5") == EXIT_OK
        word_row = next(row for row in report_rows(cli.out) if row[0] == "word")
        assert word_row == ["word", "xxxx", "-1"]
        assert report_value(cli.out, "alternating") == "-1"
        assert report_value(cli.out, "euler_check") == "ok"

    def test_bad_n_option(self, cli, write_problem):
        path = write_problem(ALGEBRA_CUBE_AND_XY.replace("option n 6", "option n six"))
        assert _run(cli, "series-invert", str(path)) == EXIT_INPUT_ERROR


# ---------------------------------------------------------------------------
# grassmann, order-check, graph-reduce
# ---------------------------------------------------------------------------

class TestSystemCommands:
    def test_grassmann_four_point_system(self, cli, write_problem):
        assert _run(cli, "grassmann", str(write_problem(SYSTEM_FOUR_POINT))) == EXIT_OK
        assert homology_rows(cli.out) == {0: 0, 1: 1, 2: 1}

    def test_grassmann_six_point_system(self, cli, write_problem):
        assert _run(cli, "grassmann", str(write_problem(SYSTEM_SIX_POINT))) == EXIT_OK
        assert report_value(cli.out, "total") == "3"
        assert report_value(cli.out, "relations") == "7"

    def test_grassmann_tree(self, cli, write_problem):
        assert _run(cli, "grassmann", str(write_problem(TREE_TERNARY))) == EXIT_OK
        assert report_value(cli.out, "total") == "2"
        assert report_value(cli.out, "ground") == "3"

    def test_order_check_triangle(self, cli, write_problem):
        assert _run(cli, "order-check", str(write_problem(TRIANGLE_SYSTEM))) == EXIT_OK
        assert report_value(cli.out, "order") == "no"
        assert report_value(cli.out, "basic") == "no"
        assert report_value(cli.out, "total") == "2"
        assert report_value(cli.out, "private_implies_order") == "ok"

    def test_order_check_word_gives_certificate(self, cli, write_problem):
        assert _run(cli, "order-check", str(write_problem(WORD_XXXX))) == EXIT_OK
        assert report_value(cli.out, "order") == "yes"
        assert ["contract point=1 relation={1,2}"] in report_rows(cli.out)
        assert report_value(cli.out, "replay") == "ok"
        assert report_value(cli.out, "dichotomy") == "ok"

    def test_order_check_fresh_rule_flags_dichotomy(self, cli, write_problem):
        text = "ground 5\nrel 1 2\nrel 2 3 4\nrel 3 5\nrel 4 5\n"
        code = _run(cli, "order-check", str(write_problem(text)), "--rule", "fresh")
        assert code == EXIT_VIOLATION
        assert report_value(cli.out, "dichotomy") == "mismatch"

    def test_graph_reduce_with_oracle(self, cli, write_problem):
        path = write_problem(TRIANGLE_SYSTEM + "option oracle yes\n")
        assert _run(cli, "graph-reduce", str(path)) == EXIT_OK
        assert report_value(cli.out, "trace").startswith("eliminate")
        assert report_value(cli.out, "consistent") == "ok"
        assert report_value(cli.out, "oracle") == "ok"

    def test_graph_reduce_rejects_cubic_relation(self, cli, write_problem):
        assert _run(cli, "graph-reduce", str(write_problem(SYSTEM_FOUR_POINT))) == EXIT_INPUT_ERROR


# ---------------------------------------------------------------------------
# tree-family, recurrence, calibrate
# ---------------------------------------------------------------------------

class TestFamilyCommands:
    def test_tree_family_cherries(self, cli):
        assert _run(cli, "tree-family", "--family", "cherries", "--n", "3") == EXIT_OK
        assert report_value(cli.out, "family") == "cherries_only_An"
        assert report_value(cli.out, "total") == "1"

    def test_tree_family_line(self, cli):
        assert _run(cli, "tree-family", "--family", "line", "--n", "3") == EXIT_OK
        assert report_value(cli.out, "ground") == "6"
        assert report_value(cli.out, "relations") == "7"
        assert report_value(cli.out, "total") == "3"

    def test_tree_family_needs_n(self, cli):
        assert _run(cli, "tree-family", "--family", "line") == EXIT_INPUT_ERROR

    def test_tree_family_depth_capacity(self, cli):
        assert _run(cli, "tree-family", "--family", "line", "--n", "9") == EXIT_CAPACITY

    def test_recurrence_rows(self, cli):
        assert _run(cli, "recurrence", "--n", "3") == EXIT_OK
        rows = report_rows(cli.out)
        assert rows[0] == ["n", "a", "b", "c", "p", "q", "r", "dim"]
        assert rows[3] == ["3", "16", "25", "1", "12", "4", "5", "51"]

    def test_recurrence_needs_n(self, cli):
        assert _run(cli, "recurrence") == EXIT_INPUT_ERROR

    def test_calibrate(self, cli):
        assert _run(cli, "calibrate", "--n", "2") == EXIT_OK
        rows = report_rows(cli.out)
        assert ["agree", "1", "published=yes", "derived=yes"] in rows
        assert ["agree", "3", "published=no", "derived=yes"] in rows
        assert ["ambiguous", "xz", "zx"] in rows
        assert len([row for row in rows if row[0] == "offset"]) == 6

    def test_calibrate_xz_table_flag(self, cli):
        assert _run(cli, "calibrate", "--n", "1", "--table-xz", "0") == EXIT_OK
        agree = [row for row in report_rows(cli.out) if row[0] == "agree"]
        assert len(agree) == 4
        assert all(row[3] == "derived=yes" for row in agree)


# ---------------------------------------------------------------------------
# fuzz and selftest
# ---------------------------------------------------------------------------

class TestHarnessCommands:
    def test_selftest_passes(self, cli):
        assert _run(cli, "selftest") == EXIT_OK
        rows = report_rows(cli.out)
        assert ["ok", "four-point-system@q"] in rows
        assert all(row[0] == "ok" for row in rows)

    @pytest.mark.parametrize("scenario", ["algebra-dichotomy", "series-pm1", "graph-rules"])
    def test_fuzz_small_run_is_clean(self, cli, scenario):
        code = _run(cli, "fuzz", "--scenario", scenario, "--trials", "5", "--seed", "3", "--n", "4")
        assert code == EXIT_OK
        assert report_value(cli.out, "scenario") == scenario
        assert report_value(cli.out, "trials") == "5"
        assert report_value(cli.out, "findings") == "0"

    def test_fuzz_findings_dir_flag(self, cli, tmp_path):
        target = tmp_path / "elsewhere"
        code = _run(
            cli, "fuzz", "--scenario", "order-dichotomy", "--trials", "3",
            "--findings-dir", str(target),
        )
        assert code == EXIT_OK
        assert cli.settings.get_findings_dir() == target

    def test_finding_file_replays(self, cli, write_problem, finding_store):
        path = finding_store.save_finding("graph-rules", 4, "demo", 9, TRIANGLE_SYSTEM + "option oracle yes\n")
        assert read_header(finding_store.load_finding(path))["scenario"] == "graph-rules"
        assert _run(cli, "graph-reduce", str(path)) == EXIT_OK


# ---------------------------------------------------------------------------
# Errors and exit codes
# ---------------------------------------------------------------------------

class TestErrors:
    def test_unknown_command_is_usage_error(self, cli):
        assert _run(cli, "frobnicate") == EXIT_INPUT_ERROR
        assert cli.err.getvalue().startswith("usage: bar-homology")

    def test_bad_flag_value(self, cli):
        assert _run(cli, "recurrence", "--n", "0") == EXIT_INPUT_ERROR

    def test_missing_problem_argument(self, cli):
        assert _run(cli, "grassmann") == EXIT_INPUT_ERROR
        assert "needs a problem file" in cli.err.getvalue()

    def test_missing_file(self, cli, tmp_path):
        assert _run(cli, "grassmann", str(tmp_path / "nope.txt")) == EXIT_INPUT_ERROR

    def test_unknown_option(self, cli, write_problem):
        path = write_problem(TRIANGLE_SYSTEM + "option colour red\n")
        assert _run(cli, "grassmann", str(path)) == EXIT_INPUT_ERROR
        assert "unknown options" in cli.err.getvalue()

    def test_unknown_rule_option(self, cli, write_problem):
        path = write_problem(SYSTEM_FOUR_POINT + "option rule bogus\n")
        assert _run(cli, "order-check", str(path)) == EXIT_INPUT_ERROR
        assert "unknown rule 'bogus'" in cli.err.getvalue()
        assert cli.out.getvalue() == ""

    def test_rule_option_selects_fresh(self, cli, write_problem):
        text = "ground 5\nrel 1 2\nrel 2 3 4\nrel 3 5\nrel 4 5\noption rule fresh\n"
        assert _run(cli, "order-check", str(write_problem(text))) == EXIT_VIOLATION
        assert report_value(cli.out, "order") == "yes"

    def test_rule_flag_beats_option(self, cli, write_problem):
        text = "ground 5\nrel 1 2\nrel 2 3 4\nrel 3 5\nrel 4 5\noption rule fresh\n"
        assert _run(cli, "order-check", str(write_problem(text)), "--rule", "kernel") == EXIT_OK
        assert report_value(cli.out, "order") == "no"

    def test_oracle_option_must_be_yes_or_no(self, cli, write_problem):
        path = write_problem(TRIANGLE_SYSTEM + "option oracle maybe\n")
        assert _run(cli, "graph-reduce", str(path)) == EXIT_INPUT_ERROR
        assert "option oracle must be yes or no" in cli.err.getvalue()

    def test_invalid_utf8_file(self, cli, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_bytes(b"ground 2\nrel 1 \xff\n")
        assert _run(cli, "grassmann", str(path)) == EXIT_INPUT_ERROR
        assert "not valid UTF-8" in cli.err.getvalue()

    def test_parse_error_reports_line(self, cli, write_problem):
        assert _run(cli, "grassmann", str(write_problem("ground 2\nrel 1 9\n"))) == EXIT_INPUT_ERROR
        assert "line 2" in cli.err.getvalue()

    def test_capacity_limit(self, cli, write_problem):
        code = _run(cli, "word-homology", str(write_problem(WORD_XXXX)), "--max-basis", "2")
        assert code == EXIT_CAPACITY
        assert "limit is 2" in cli.err.getvalue()

    def test_bad_field(self, cli, write_problem):
        assert _run(cli, "grassmann", str(write_problem(TRIANGLE_SYSTEM)), "--field", "4") == EXIT_INPUT_ERROR

    def test_nothing_written_to_stdout_on_error(self, cli, write_problem):
        _run(cli, "word-homology", str(write_problem(WORD_XXXX)), "--max-basis", "2")
        assert cli.out.getvalue() == ""

    def test_settings_file_flag(self, cli, tmp_path, write_problem):
        settings = tmp_path / "other.json"
        settings.write_text('{"computation": {"max_basis": 2}}', encoding="utf-8")
        code = _run(cli, "word-homology", str(write_problem(WORD_XXXX)), "--settings", str(settings))
        assert code == EXIT_CAPACITY
