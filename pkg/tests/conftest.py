import pytest

from ftqc_estimate import HardwareProfile, LogicalRequirements

ACCEPTANCE_LINES = []


@pytest.fixture
def femoco():
    return LogicalRequirements(2196, toffoli_count=6_700_000_000, depth_fraction="1/100")


@pytest.fixture
def bitcoin():
    return LogicalRequirements(2871, t_count=5_760_000_000, measurement_depth=18_800_000)


@pytest.fixture
def sc_profile():
    return HardwareProfile(1e-6, 1e-3)


@pytest.fixture
def ion_profile():
    return HardwareProfile(235e-6, 1e-3)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
