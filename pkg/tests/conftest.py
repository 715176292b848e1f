import numpy as np
import pytest

from hoffman import random_instance


def oracle_instances(count=20):
    """The seeded random instances shared by the oracle-equivalence tests."""
    out = []
    for seed in range(count):
        m = 3 + seed % 6
        n = 1 + seed % 4
        out.append((seed, random_instance(m, n, seed)))
    return out


@pytest.fixture(scope="session")
def oracle_set():
    return oracle_instances()


def rel_close(a, b, rtol):
    return abs(a - b) <= rtol * max(abs(a), abs(b), 1e-300)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


ACCEPTANCE = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for line in ACCEPTANCE:
        terminalreporter.write_line(line)
