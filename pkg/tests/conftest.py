import itertools

import pytest

from hopsym.hopping import SignSeq


def periods(m):
    return [SignSeq(p) for p in itertools.product((1, -1), repeat=m)]


@pytest.fixture(scope="session")
def S15():
    from hopsym.symmetries import enumerate_S

    return enumerate_S(15)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
