import pytest

from lagrange_weyl import fixtures
from lagrange_weyl.verify import BATTERY, run_verify

CRITERION_LINES: list[str] = []


@pytest.fixture(scope="session")
def battery_reports():
    return run_verify(BATTERY, seed=7)


@pytest.fixture(autouse=True)
def _pristine_fixtures():
    yield
    fixtures.reset()


def pytest_terminal_summary(terminalreporter):
    if CRITERION_LINES:
        terminalreporter.section("acceptance criteria")
        for line in CRITERION_LINES:
            terminalreporter.write_line(line)
