import sys
from functools import lru_cache

import pytest

from kldegree.finite_field import build_field
from kldegree.kloosterman import kloosterman_sweep


@lru_cache(maxsize=None)
def field(p, r=1):
    return build_field(p, r)


@lru_cache(maxsize=None)
def table(p, r, n):
    return kloosterman_sweep(field(p, r), n)


@pytest.fixture
def f25():
    return field(5, 2)


@pytest.fixture
def f5():
    return field(5, 1)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is not None and mod.LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(mod.LINES):
            terminalreporter.write_line(line)
