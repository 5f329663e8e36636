import pytest
from hypothesis import HealthCheck, settings

from sigquiver.acceptance import Workbench

settings.register_profile("default", max_examples=30, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

# filled by test_acceptance.py, printed after the run
ACCEPTANCE_LINES = {}


@pytest.fixture(scope="session")
def wb():
    """Gallery objects (curves, signatures, quivers) shared by the whole session."""
    return Workbench(seed=0)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])
