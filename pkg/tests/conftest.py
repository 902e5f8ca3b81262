import numpy as np
import pytest

from sbox_forge import MapParams


def random_keys(count, seed, mode="alg1"):
    """Keys spread over the valid domain; b is log-uniform so small scales are exercised."""
    rng = np.random.default_rng(seed)
    x0 = rng.uniform(0.01, 0.99, count)
    a = rng.uniform(0.05, 1.95, count)
    b = 10.0 ** rng.uniform(3.0, 9.0, count)
    return [MapParams(float(x0[i]), float(a[i]), float(b[i]), mode) for i in range(count)]


def random_permutation(rng, size=256):
    return rng.permutation(size).astype(np.int64)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def identity():
    return np.arange(256)


# acceptance lines are gathered here and printed after the run, captured or not
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: (len(s.split()[1]), s)):
            terminalreporter.write_line(line)
