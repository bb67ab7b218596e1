import pytest

from ppvgroup.algebra.field import FunctionField


@pytest.fixture
def F0():
    return FunctionField([])


@pytest.fixture
def F1():
    return FunctionField(["t1"])


@pytest.fixture
def F2():
    return FunctionField(["t1", "t2"])


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS, summary_line
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(RESULTS):
        terminalreporter.write_line(summary_line(n, RESULTS[n]))
