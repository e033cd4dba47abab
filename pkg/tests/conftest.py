import math
import random
from fractions import Fraction

import pytest

from ddx import SequencePrefix, inverse_binomial_transform, sieve, tau_greedy

ACCEPTANCE_LINES = []


def record(number, name, ok, detail=""):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {str(number):>2}: {name}" + (f" ({detail})" if detail else "")
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def extremal_value(m, n):
    """prod_{p<=n} p^tau_{p,m}(n), via the greedy count."""
    if n < m:
        return 0
    v = 1
    for p in range(2, n + 1):
        if all(p % q for q in range(2, math.isqrt(p) + 1)):
            v *= p ** tau_greedy(p, m, n)
    return v


def random_rational(rng, num=30, dens=(1, 2, 3, 4, 5, 6, 8, 9, 10, 12, 25, 27)):
    return Fraction(rng.randint(-num, num), rng.choice(dens))


def integral_dd_sequence(rng, m, N, head_rational=True, scale=3):
    """Sequence with delta^m s integer-valued: c(n) a multiple of the extremal value for n >= m."""
    c = []
    for n in range(N + 1):
        if n < m:
            c.append(random_rational(rng) if head_rational else Fraction(rng.randint(-9, 9)))
        else:
            c.append(Fraction(rng.randint(-scale, scale) * extremal_value(m, n)))
    return inverse_binomial_transform(c)


@pytest.fixture
def rng():
    return random.Random(20261014)
