"""Tests for verdicts, homology records and reports."""

import json

import pytest

from fibrantkit.models import (
    CheckResult,
    CheckStatus,
    HomologyGroup,
    HomologyProfile,
    Report,
    Verdict,
    VerdictStatus,
    aggregate_verdicts,
)


class TestAggregateVerdicts:
    """Tests for combining verdicts."""

    def test_empty_is_certified(self):
        """Test that no verdicts aggregate to a vacuous certificate."""
        verdict = aggregate_verdicts([])

        assert verdict.is_certified
        assert verdict.witness["counts"] == {"certified": 0, "consistent": 0, "refuted": 0}

    def test_refuted_dominates(self):
        """Test that one refutation wins and its witness is kept."""
        verdict = aggregate_verdicts([
            Verdict.certified(certificate="x"),
            Verdict.consistent(),
            Verdict.refuted(pi0=[1, 2]),
        ])

        assert verdict.is_refuted
        assert verdict.witness["first"] == {"pi0": [1, 2]}
        assert verdict.witness["counts"]["certified"] == 1

    def test_consistent_over_certified(self):
        """Test that missing evidence outranks a certificate."""
        verdict = aggregate_verdicts([Verdict.certified(), Verdict.consistent(reason="no evidence")])

        assert verdict.status is VerdictStatus.CONSISTENT
        assert verdict.witness["first"] == {"reason": "no evidence"}

    def test_verdicts_are_frozen(self):
        """Test that verdicts cannot be mutated."""
        verdict = Verdict.certified()

        with pytest.raises(Exception):
            verdict.status = VerdictStatus.REFUTED


class TestHomologyRecords:
    """Tests for homology groups and profiles."""

    @pytest.mark.parametrize("group,text", [
        (HomologyGroup(), "0"),
        (HomologyGroup(free_rank=1), "Z"),
        (HomologyGroup(free_rank=2, torsion=[2, 4]), "Z^2 + Z/2 + Z/4"),
        (HomologyGroup(torsion=[3]), "Z/3"),
    ])
    def test_group_rendering(self, group, text):
        """Test the rendering of finitely generated abelian groups."""
        assert str(group) == text

    def test_first_difference(self):
        """Test that the lowest differing degree is reported."""
        a = HomologyProfile(dim=2, groups=[HomologyGroup(free_rank=1), HomologyGroup()])
        b = HomologyProfile(dim=2, groups=[HomologyGroup(free_rank=1), HomologyGroup(torsion=[2])])

        assert a.first_difference(b) == {"degree": 1, "source": "0", "target": "Z/2"}
        assert a.first_difference(a) == {}

    def test_two_components_not_acyclic(self):
        """Test that two components are not acyclic."""
        profile = HomologyProfile(dim=1, groups=[HomologyGroup(free_rank=2)])

        assert profile.components == 2
        assert not profile.is_acyclic


class TestReport:
    """Tests for report rows and rendering."""

    @pytest.fixture
    def report(self):
        """Create an unsorted report with one failure and one error."""
        return Report(suite="theorem-suite", fixture="demo", checks=[
            CheckResult.exact("b", "second", {"morphism": "f"}),
            CheckResult.exact("a", "first", None),
            CheckResult.error("c", "third", ValueError("boom")),
        ])

    def test_sorted_by_id(self, report):
        """Test that rows sort by check id."""
        assert [c.id for c in report.sorted().checks] == ["a", "b", "c"]

    def test_errors_are_not_failures(self, report):
        """Test that only fail and refuted rows count as failures."""
        assert [c.id for c in report.failures] == ["b"]
        assert not report.passed

    def test_error_witness(self, report):
        """Test that error rows name the exception."""
        row = report.checks[2]

        assert row.status is CheckStatus.ERROR
        assert row.witness == {"error": "ValueError", "message": "boom"}

    def test_to_json(self, report):
        """Test that the JSON rendering round-trips the rows."""
        data = json.loads(report.sorted().to_json())

        assert data["suite"] == "theorem-suite"
        assert [c["status"] for c in data["checks"]] == ["pass", "fail", "error"]
        assert data["checks"][0]["ms"] == 0

    def test_to_text(self, report):
        """Test the fixed-width text rendering."""
        text = report.sorted().to_text()

        assert text.startswith("suite: theorem-suite\nfixture: demo\n")
        assert "a      pass        first" in text
        assert text.endswith("3 checks, 1 failures\n")

    def test_of_verdict(self):
        """Test that verdict statuses map onto row statuses."""
        row = CheckResult.of_verdict("x", "anchor", Verdict.refuted(pi0=[0, 1]))

        assert row.status is CheckStatus.REFUTED
        assert row.status.is_failure
        assert row.witness == {"pi0": [0, 1]}
