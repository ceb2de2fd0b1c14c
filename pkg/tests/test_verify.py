from __future__ import annotations

import pytest

from futaki.verify import SUITES, run_suite


@pytest.mark.parametrize("suite", ["invariance", "decay", "calibration", "cubics"])
def test_suites_pass(suite):
    checks = run_suite(suite)
    assert checks and all(c.passed for c in checks), [c.line() for c in checks if not c.passed]


def test_all_covers_every_criterion():
    assert {c.criterion for c in run_suite("all")} == set(range(1, 10))


def test_unknown_suite():
    assert "all" in SUITES
    with pytest.raises(KeyError):
        run_suite("bogus")


def test_calibration_detail_reports_bound():
    check = next(c for c in run_suite("calibration") if "b = 1" in c.name)
    assert "measured_bound" in check.detail and "/" in check.detail["measured_bound"]
