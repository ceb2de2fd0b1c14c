"""Acceptance suite: one test per numbered criterion.

Each test runs the built-in verification checks for its criterion and
records a one-line PASS/FAIL verdict; ``conftest.py`` prints those lines at
the end of the pytest run. Running this file directly prints them too.
"""

from __future__ import annotations

import pytest

from futaki import verify

CRITERIA = {
    1: ("oracle equivalence of closed-form and brute-force characters", [verify.check_oracles]),
    2: ("linearization invariance", [verify.check_linearization]),
    3: ("power invariance", [verify.check_power]),
    4: ("polystable cubics have F0 = F1 = 0", [verify.check_polystable]),
    5: ("pullback equality on the uncut simplex", [verify.check_pullback]),
    6: ("continuity decay of the unit-cut family", [verify.check_decay]),
    7: ("corollary calibration against the toric oracle", [verify.check_calibration]),
    8: ("theorem / corollary consistency", [verify.check_consistency]),
    9: ("cubic instability verdicts", [verify.check_verdicts]),
}

RESULTS: dict[int, str] = {}


def evaluate(criterion: int) -> tuple[bool, str]:
    title, fns = CRITERIA[criterion]
    checks = [c for fn in fns for c in fn() if c.criterion == criterion]
    passed = bool(checks) and all(c.passed for c in checks)
    failed = [c.name for c in checks if not c.passed]
    line = f"criterion {criterion}: {'PASS' if passed else 'FAIL'} - {title} ({len(checks)} checks)"
    if failed:
        line += "; failing: " + "; ".join(failed)
    return passed, line


@pytest.mark.parametrize("criterion", sorted(CRITERIA))
def test_criterion(criterion):
    passed, line = evaluate(criterion)
    RESULTS[criterion] = line
    print(line)
    assert passed, line


if __name__ == "__main__":
    ok = True
    for n in sorted(CRITERIA):
        passed, line = evaluate(n)
        ok &= passed
        print(line)
    raise SystemExit(0 if ok else 1)
