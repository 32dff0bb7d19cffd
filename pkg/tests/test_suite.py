"""Tests for the theorem suite."""

import json

import pytest

from fibrantkit.config import Settings, get_settings
from fibrantkit.models import CheckStatus


@pytest.fixture
def settings():
    """Create small settings for quick suite runs."""
    return Settings(dim=2, kmax=0, lmax=0, sweep_objects=2)


def _fixture(name):
    from fibrantkit import load_fixture
    from fibrantkit.fixtures import shipped_fixture

    return load_fixture(shipped_fixture(name))


class TestTheoremSuite:
    """Tests for TheoremSuite on the shipped fixtures."""

    def test_terminal(self, settings):
        """Test that the one-object fixture passes and reports its hom oracle."""
        from fibrantkit import TheoremSuite

        report = TheoremSuite(settings).run(_fixture("terminal"))
        rows = {row.id: row for row in report.checks}

        assert report.suite == "theorem-suite"
        assert report.fixture == "terminal"
        assert report.passed
        assert [row.id for row in report.checks] == sorted(rows)
        assert rows["hom/*,*"].witness == {"size": 1}
        assert "axiom/A" in rows
        assert "reduction/*,*" in rows
        assert "right-fractions" in rows

    def test_m3(self, settings):
        """Test that the M3 lattice has no failing check."""
        from fibrantkit import run_suite

        report = run_suite(_fixture("semilattice_m3"), settings)

        assert report.failures == []
        assert all(row.ms == 0 for row in report.checks)

    def test_broken_v_control(self, settings):
        """Test that the broken-V control fails exactly where it declares."""
        from fibrantkit import run_suite

        report = run_suite(_fixture("semilattice_m3_broken_v"), settings)
        rows = {row.id: row for row in report.checks}

        assert report.passed
        assert rows["cocycle/condition-1"].witness["expected_failure"] is True
        assert rows["hom/a,b"].witness["observed"] == "fail"
        assert rows["hom/a,b"].witness["found"] == 0

    def test_no_top_control(self, settings):
        """Test that the control without a terminal object fails axiom E as declared."""
        from fibrantkit import run_suite

        report = run_suite(_fixture("semilattice_m3_no_top"), settings)
        rows = {row.id: row for row in report.checks}

        assert rows["axiom/E"].status is CheckStatus.PASS
        assert rows["axiom/E"].witness["observed"] == "fail"
        assert rows["cisinski/D0"].witness["expected_failure"] is True

    def test_unexpected_pass_fails(self, settings):
        """Test that a declared failure that passes becomes a failing row."""
        from fibrantkit import run_suite

        fixture = _fixture("terminal")
        fixture.expect.failures = ["hom/*,*", "no-such-check"]
        report = run_suite(fixture, settings)
        rows = {row.id: row for row in report.checks}

        assert rows["hom/*,*"].status is CheckStatus.FAIL
        assert rows["hom/*,*"].witness["observed"] == "pass"
        assert rows["no-such-check"].status is CheckStatus.FAIL
        assert rows["no-such-check"].witness["observed"] == "missing"

    def test_workers_do_not_change_report(self, settings):
        """Test that the report does not depend on the number of workers."""
        from fibrantkit import run_suite

        serial = run_suite(_fixture("terminal"), settings)
        parallel = run_suite(_fixture("terminal"), settings.model_copy(update={"workers": 4}))

        assert json.loads(serial.to_json()) == json.loads(parallel.to_json())

    def test_timings_recorded(self, settings):
        """Test that timings are recorded only when asked."""
        from fibrantkit import run_suite

        report = run_suite(_fixture("terminal"), settings.model_copy(update={"record_timings": True}))

        assert all(row.ms >= 0 for row in report.checks)
        assert report.passed

    def test_settings_restored(self, settings):
        """Test that the active settings are restored after a run."""
        from fibrantkit import TheoremSuite

        before = get_settings()
        TheoremSuite(settings).run(_fixture("terminal"))

        assert get_settings() is before

    def test_none_fixture(self, settings):
        """Test that None is rejected."""
        from fibrantkit import TheoremSuite

        with pytest.raises(ValueError, match="cannot be None"):
            TheoremSuite(settings).run(None)

    def test_invalid_fixture_passes_through(self, settings):
        """Test that validation errors from building the fixture are not wrapped."""
        from fibrantkit import Fixture, TheoremSuite
        from fibrantkit.exceptions import UnknownId

        fixture = Fixture.model_validate({
            "objects": ["*"],
            "morphisms": [{"id": "id_*", "dom": "*", "cod": "*"}],
            "identities": {"*": "id_*"},
            "composition": [["id_*", "id_*", "id_*"]],
            "weq": ["ghost"],
        })

        with pytest.raises(UnknownId):
            TheoremSuite(settings).run(fixture)
