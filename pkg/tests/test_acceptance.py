"""Acceptance criteria; each test prints one PASS/FAIL line."""

import json

import pytest

from sumdilates.acceptance import CRITERIA


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number, capsys):
    outcome = CRITERIA[number]()
    with capsys.disabled():
        print()
        print(outcome.line())
        if not outcome.passed:
            print(json.dumps(outcome.details, default=str)[:4000])
    assert outcome.passed, outcome.details
