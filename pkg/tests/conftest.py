import numpy as np
import pytest

from apnkit.boolfun import BooleanFunction

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def and2():
    return BooleanFunction.from_bits("0001")


@pytest.fixture
def x1_n2():
    return BooleanFunction.from_bits("0101")


@pytest.fixture
def quad3():
    """x1x2 + x3 on n=3"""
    return BooleanFunction.from_callable(3, lambda x: (x & 1) * (x >> 1 & 1) ^ (x >> 2 & 1))


def all_functions(n):
    for v in range(1 << (1 << n)):
        yield BooleanFunction.from_int(n, v)


def seeded_functions(n, count, seed=2024):
    rng = np.random.default_rng([seed, n])
    for _ in range(count):
        yield BooleanFunction(n, rng.integers(0, 2, 1 << n))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
