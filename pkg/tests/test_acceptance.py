"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line."""

import pytest

from simplext.acceptance import CRITERIA, run_criterion

RESULT_LINES: list[str] = []


@pytest.mark.acceptance
@pytest.mark.parametrize("number", [num for num, _, _ in CRITERIA],
                         ids=[f"criterion_{num}_{name.replace(' ', '_')}" for num, name, _ in CRITERIA])
def test_criterion(number):
    result = run_criterion(number)
    line = result.line()
    RESULT_LINES.append(line)
    print(line)
    assert result.passed, line
