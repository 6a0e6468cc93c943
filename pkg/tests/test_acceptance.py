"""Acceptance criteria 1-9, each timed from cold caches and reported as one PASS/FAIL line."""
import pytest

from cyclic_mackey.acceptance import CRITERIA, run_criterion


@pytest.mark.parametrize("criterion", CRITERIA, ids=lambda c: f"criterion_{c.number}")
def test_criterion(criterion, capsys):
    outcome = run_criterion(criterion)
    with capsys.disabled():
        print("\n" + outcome.line())
    assert outcome.passed, outcome.line()
