import cmath
import math

import numpy as np
import pytest

from ramanujan_primes.exact import first_primes


def naive_tau(n_max):
    """tau(0..n_max) by multiplying out q * prod (1 - q^n)^24 term by term."""
    size = n_max
    series = [0] * size
    series[0] = 1
    for n in range(1, size):
        for _ in range(24):
            for k in range(size - 1, n - 1, -1):
                series[k] -= series[k - n]
    return [0] + series


@pytest.fixture(scope="session")
def tau_small():
    return naive_tau(60)


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


@pytest.fixture(scope="session")
def primes100():
    return first_primes(100)


def unit(angle):
    return cmath.exp(1j * angle)


def nontempered_alphas(p, t, arg_u, arg_w):
    u, w = unit(arg_u), unit(arg_w)
    return (u * p ** t, u * p ** -t, w)


SQRT2 = math.sqrt(2.0)


ACCEPTANCE = {}


def record_acceptance(number, title, ok, detail=""):
    line = f"criterion {number} {'PASS' if ok else 'FAIL'}: {title}" + (f" ({detail})" if detail else "")
    ACCEPTANCE[number] = line
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for number in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[number])
