from pathlib import Path

import pytest

from pasdoppler import MotionConfig, uniform_pas, laplacian_pas, LaplacianPasParams

DATA = Path(__file__).parent / "data"

# (criterion, passed, detail) rows filled by test_acceptance.py
ACCEPTANCE_RESULTS = []


@pytest.fixture
def data_dir():
    return DATA


@pytest.fixture
def motion100():
    """fd_max of exactly 100 Hz at alpha = 0."""
    return MotionConfig(speed=100.0, carrier_frequency=299_792_458.0)


@pytest.fixture
def campaign_motion():
    return MotionConfig.from_scenario(30, 3.5, movement_deg=0, tx_dir_deg=-25)


@pytest.fixture
def uniform():
    return uniform_pas()


@pytest.fixture
def laplacian():
    return laplacian_pas(LaplacianPasParams(mu=0.0, b=25.7))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in sorted(ACCEPTANCE_RESULTS, key=lambda r: int(r[0].split()[1].rstrip(":"))):
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name} {detail}")
