"""The fourteen acceptance criteria, one test each.  Every test prints a
single [PASS]/[FAIL] line.  Run directly for the summary alone:

    python tests/test_acceptance.py
"""
import sys

import pytest

from mcmodels.acceptance import CHECKS, run_check

# wall-clock budgets in seconds, where the criterion sets one
BUDGET = {1: 60, 3: 60, 6: 60, 8: 120, 10: 300, 12: 60}


@pytest.mark.parametrize("number", sorted(CHECKS))
def test_criterion(number, capsys):
    r = run_check(number)
    with capsys.disabled():
        print("\n" + r.line())
    assert r.ok, r.details
    if number in BUDGET:
        assert r.seconds < BUDGET[number], f"took {r.seconds:.1f}s"


if __name__ == "__main__":
    results = [run_check(n) for n in sorted(CHECKS)]
    for r in results:
        print(r.line())
    sys.exit(0 if all(r.ok for r in results) else 1)
