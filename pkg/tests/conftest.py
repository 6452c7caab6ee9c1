import sys

import pytest

from ulm_orbits.module import ModuleShape


def shape(mults, q=2, kind="int"):
    return ModuleShape.of(mults, q, kind)


@pytest.fixture
def A1():
    """Z/p + Z/p^2 at p=2."""
    return shape({1: 1, 2: 1})


@pytest.fixture
def A2():
    return shape({1: 1, 3: 1})


def pytest_terminal_summary(terminalreporter):
    acceptance = sys.modules.get("test_acceptance")
    results = getattr(acceptance, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        terminalreporter.write_line(results[number])
