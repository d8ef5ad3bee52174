"""One test per acceptance criterion; each prints its pass/fail line."""

import pytest

from arithmirror import acceptance


@pytest.mark.parametrize("fn", acceptance.ALL, ids=lambda f: f.__name__)
def test_criterion(fn, capsys):
    res = fn()
    with capsys.disabled():
        print("\n" + res.line())
        for label, ok, detail in res.checks:
            if not ok:
                print(f"    failed check: {label}: {detail}")
    assert res.passed, res.line()
