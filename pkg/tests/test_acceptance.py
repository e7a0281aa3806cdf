"""One test per acceptance criterion; each prints its pass/fail line."""
import pytest

from raagkit.acceptance import CRITERIA, run_criterion


@pytest.mark.parametrize("number", [c[0] for c in CRITERIA], ids=[f"c{c[0]:02d}-{c[1].replace(' ', '_')}" for c in CRITERIA])
def test_criterion(number, capsys):
    result = run_criterion(number)
    with capsys.disabled():
        print("\n" + result.line)
    assert result.passed, result.detail
