"""One test per acceptance criterion, printing a PASS/FAIL line for each."""
import pytest

from mfg.acceptance import CRITERIA, run_criterion


@pytest.mark.parametrize("number, title", [(n, t) for n, t, _ in CRITERIA], ids=[f"criterion-{n:02d}" for n, _, _ in CRITERIA])
def test_criterion(number, title, capsys):
    ok, detail = run_criterion(number)
    with capsys.disabled():
        print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {number}: {title}: {detail}")
    assert ok, detail
