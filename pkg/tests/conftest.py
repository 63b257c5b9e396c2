import numpy as np
import pytest

from vline_tomo import disk_phantom, vline_forward

# criterion lines collected by test_acceptance, echoed after the run
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def small_disk():
    return disk_phantom(0.5, size=101)


@pytest.fixture(scope="session")
def small_disk_sino(small_disk):
    return vline_forward(small_disk, 32, 40)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
