import numpy as np
import pytest

from jacobi_lt.inequalities import random_operator
from jacobi_lt.operator import JacobiOperator


def random_z(rng, size, r_min=0.05, r_max=0.95):
    r = rng.uniform(r_min, r_max, size)
    return r * np.exp(2j * np.pi * rng.uniform(0, 1, size))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def single_site():
    return JacobiOperator.single_site(1.5)


@pytest.fixture
def random_ops(rng):
    return [random_operator(rng, int(rng.integers(1, 8)), 0.6, potential=1.0) for _ in range(20)]


def pytest_terminal_summary(terminalreporter):
    lines = []
    for outcome in ("passed", "failed"):
        for rep in terminalreporter.stats.get(outcome, []):
            if "test_acceptance.py" in rep.nodeid and rep.when == "call":
                lines.append((rep.nodeid.split("::")[-1], outcome.upper()))
    if lines:
        terminalreporter.section("acceptance criteria")
        for name, outcome in sorted(lines):
            terminalreporter.write_line(f"{'PASS' if outcome == 'PASSED' else 'FAIL'}  {name}")
