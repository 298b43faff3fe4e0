import numpy as np
import pytest

from entropy_cf import _kernels
from entropy_cf.golden import load_fixture
from entropy_cf.linalg import validate_spd

ACCEPTANCE_LINES = []


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(params=["numpy", "numba"])
def backend(request, monkeypatch):
    """Run a test once per kernel flavour."""
    if request.param == "numba":
        pytest.importorskip("numba")
    monkeypatch.setattr(_kernels, "BACKEND", request.param)
    return request.param


@pytest.fixture(scope="session")
def example2_a():
    return validate_spd(load_fixture("example2_A.mat"))


@pytest.fixture(scope="session")
def example3_pair():
    return validate_spd(load_fixture("example3_A.mat")), validate_spd(load_fixture("example3_B.mat"))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
