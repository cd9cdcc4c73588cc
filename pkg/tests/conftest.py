import numpy as np
import pytest

from convchar import _kernels_py
from convchar.groups import FiniteAbelianGroup

try:
    from convchar import _kernels as _kernels_c
except ImportError:  # extension not built
    _kernels_c = None

BACKENDS = [pytest.param(_kernels_py, id="python")]
if _kernels_c is not None:
    BACKENDS.append(pytest.param(_kernels_c, id="cython"))

SMALL_GROUPS = ["1", "2", "3", "4", "5", "6", "8", "2x2", "2x3", "4x2", "3x3", "2x2x2"]


@pytest.fixture(params=BACKENDS)
def backend(request):
    return request.param


@pytest.fixture(params=SMALL_GROUPS)
def small_group(request):
    return FiniteAbelianGroup.parse(request.param)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
