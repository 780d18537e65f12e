import mpmath as mp
import pytest

from airybounds import bounds_away, bounds_near, tables


@pytest.fixture(autouse=True)
def _dps50():
    with mp.workdps(50):
        yield


@pytest.fixture(scope="session")
def geo():
    with mp.workdps(50):
        return bounds_near.get_geometry(1, 4, 50)


@pytest.fixture(scope="session")
def cfg():
    return tables.Config()


@pytest.fixture(scope="session")
def ctx100():
    with mp.workdps(50):
        return bounds_away.ExpansionContext(100, 1, 4, 50)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
