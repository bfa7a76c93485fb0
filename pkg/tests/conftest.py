import pytest

from colpoly.verify import group as cached_group

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def group():
    return cached_group


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
