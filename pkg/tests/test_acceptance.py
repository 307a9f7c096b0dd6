"""End-to-end acceptance gate.

Each criterion prints exactly one [PASS]/[FAIL] line with a short detail,
then asserts.  Budgeted work only; see the suite module for the checks."""

import pytest

from realizability.suite import run_all

RESULTS = None


def _results():
    global RESULTS
    if RESULTS is None:
        RESULTS = {r.index: r for r in run_all()}
    return RESULTS


@pytest.mark.parametrize("index", range(1, 13))
def test_criterion(index):
    r = _results()[index]
    print(r.line)
    assert r.ok, r.detail
