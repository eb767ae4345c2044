"""Tests for managers/findings.py — FindingStore and filename helpers."""
from __future__ import annotations

from unittest.mock import patch

from managers.findings import FindingStore, make_safe_filename, read_header
from tests.helpers import TRIANGLE_SYSTEM


# ---------------------------------------------------------------------------
# make_safe_filename
# ---------------------------------------------------------------------------

class TestMakeSafeFilename:
    def test_keeps_safe_characters(self):
        assert make_safe_filename("graph-rules.v2_a") == "graph-rules.v2_a"

    def test_replaces_unsafe_characters(self):
        assert make_safe_filename("a/b c:d") == "a_b_c_d"

    def test_truncates_to_64(self):
        assert len(make_safe_filename("x" * 100)) == 64


# ---------------------------------------------------------------------------
# FindingStore
# ---------------------------------------------------------------------------

class TestFindingStore:
    def test_path_for(self, finding_store):
        assert finding_store.path_for("order-dichotomy", 12).name == "order-dichotomy_12.txt"

    def test_save_writes_header_and_problem(self, finding_store):
        path = finding_store.save_finding("graph-rules", 3, "oracle disagrees", 5, TRIANGLE_SYSTEM)
        text = path.read_text(encoding="utf-8")
        assert text.startswith(
            "# scenario graph-rules\n# violation oracle disagrees\n# seed 5\n# trial 3\n"
        )
        assert text.endswith(TRIANGLE_SYSTEM)

    def test_save_creates_folder(self, tmp_path):
        store = FindingStore(tmp_path / "deep" / "er")
        store.save_finding("series-pm1", 0, "v", 0, "")
        assert (tmp_path / "deep" / "er" / "series-pm1_0.txt").exists()

    def test_same_trial_overwrites(self, finding_store):
        finding_store.save_finding("s", 1, "first", 0, "")
        path = finding_store.save_finding("s", 1, "second", 0, "")
        assert read_header(path.read_text(encoding="utf-8"))["violation"] == "second"
        assert len(finding_store.list_findings()) == 1

    def test_list_findings_sorted(self, finding_store):
        finding_store.save_finding("b", 0, "v", 0, "")
        finding_store.save_finding("a", 0, "v", 0, "")
        assert [p.name for p in finding_store.list_findings()] == ["a_0.txt", "b_0.txt"]

    def test_list_findings_missing_folder(self, tmp_path):
        assert FindingStore(tmp_path / "absent").list_findings() == []

    def test_load_finding(self, finding_store):
        path = finding_store.save_finding("s", 2, "v", 0, "ground 1\n")
        assert finding_store.load_finding(path).endswith("ground 1\n")

    def test_delete_finding(self, finding_store):
        path = finding_store.save_finding("s", 2, "v", 0, "")
        assert finding_store.delete_finding(path) is True
        assert finding_store.delete_finding(path) is False

    def test_default_folder(self, tmp_path):
        with patch("managers.findings.FINDINGS_FOLDER", tmp_path):
            assert FindingStore().folder == tmp_path


# ---------------------------------------------------------------------------
# read_header
# ---------------------------------------------------------------------------

class TestReadHeader:
    def test_reads_until_first_non_comment(self):
        text = "# scenario s\n# seed 4\nground 2\n# later comment\n"
        assert read_header(text) == {"scenario": "s", "seed": "4"}

    def test_value_keeps_spaces(self):
        assert read_header("# violation total homology 2 exceeds 1\n")["violation"] == (
            "total homology 2 exceeds 1"
        )

    def test_no_header(self):
        assert read_header("ground 1\n") == {}
