import numpy as np
import pytest

from stirap import GaussianPulsePair, PulseSample, SystemParams

FIG2 = GaussianPulsePair(omega0=5.0, t_p=3.8, t_d=3.0)
WINDOW = (0.5, 7.5)


@pytest.fixture
def fig2():
    return FIG2


@pytest.fixture
def resonant():
    return SystemParams(0.0)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_sample(rng, lo=0.1, hi=10.0):
    op, od = rng.uniform(lo, hi, 2)
    opd, odd = rng.uniform(-hi, hi, 2)
    return PulseSample(op, od, opd, odd)


def pytest_terminal_summary(terminalreporter):
    try:
        from tests.test_acceptance import REPORT
    except ImportError:
        return
    if REPORT:
        terminalreporter.section("acceptance criteria")
        for line in REPORT:
            terminalreporter.write_line(line)
