import pytest

# Acceptance outcomes, filled by test_acceptance.py and echoed at the end of the run.
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[n])


@pytest.fixture(scope="session")
def acceptance_lines():
    return ACCEPTANCE_LINES


@pytest.fixture(scope="session")
def suite_256():
    """Every default check at 256 bits, computed once per session."""
    from mtzeta.identities import SUITES, run_suite

    return {name: run_suite([name], prec=256) for name in SUITES}
