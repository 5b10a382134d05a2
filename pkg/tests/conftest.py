import sys
import time
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from qeswell import numeric, report


@pytest.fixture(scope="session")
def table_battery():
    """All three comparison tables at defaults, plus the wall time spent."""
    start = time.perf_counter()
    tables = {i: report.reproduce_table(i) for i in (1, 2, 3)}
    elapsed = time.perf_counter() - start
    return tables, elapsed


@pytest.fixture(scope="session")
def harmonic_levels():
    """Oscillator self-test levels on [-10, 10] with n = 8000, plus wall time."""
    start = time.perf_counter()
    xs, h = numeric.interior_grid(10.0, 8000)
    op = numeric.fd_operator(xs * xs, h)
    levels = numeric.eigen_lowest(op, 3)
    elapsed = time.perf_counter() - start
    return levels, elapsed


@pytest.fixture()
def rng():
    return np.random.default_rng(1234)
