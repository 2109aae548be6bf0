import pytest

from twolocal.series import Context


@pytest.fixture
def c2():
    return Context(p=2, e=1)


@pytest.fixture
def c4():
    return Context(p=2, e=2)


@pytest.fixture
def c3():
    return Context(p=3, e=1)


@pytest.fixture
def c5():
    return Context(p=5, e=1)


# -- acceptance report -------------------------------------------------------

ACCEPTANCE_LINES = {}


@pytest.fixture
def criterion():
    """Record one acceptance line; returns whether the criterion passed."""

    def record(number, title, passed, elapsed, limit, detail=""):
        ok = bool(passed) and elapsed < limit
        status = "PASS" if ok else "FAIL"
        line = f"{status} criterion {number:2d} {title}: {elapsed:.2f}s (limit {limit}s)"
        if detail:
            line += f" {detail}"
        ACCEPTANCE_LINES[number] = line
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[k])
