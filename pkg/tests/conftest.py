import pytest

from dgzgalois import build_dgz, default_L


@pytest.fixture(scope="session")
def curve2():
    return build_dgz(2, default_L(2))


@pytest.fixture(scope="session")
def curve3():
    return build_dgz(3, default_L(3))


_ACCEPTANCE_LINES: list[str] = []


def pytest_runtest_logreport(report):
    if report.when == "call":
        for key, value in report.user_properties:
            if key == "acceptance":
                _ACCEPTANCE_LINES.append(value)


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
