import math

import pytest

from diophlab.dnset import Triple


def isqrt_oracle(n):
    """Floor square root by bisection with exact squaring."""
    lo, hi = 0, n + 1
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if mid * mid <= n:
            lo = mid
        else:
            hi = mid
    return lo


def trial_factor(n):
    out = {}
    m = abs(n)
    p = 2
    while p * p <= m:
        while m % p == 0:
            out[p] = out.get(p, 0) + 1
            m //= p
        p += 1
    if m > 1:
        out[m] = out.get(m, 0) + 1
    return sorted(out.items())


def spectrum_window(t: Triple):
    """Interval that provably contains every n of the spectrum.

    n >= -min(products) since the smallest product plus n is a square, and
    n <= ((N+1)/2)^2 - max(products) since r <= (N+1)/2 when r - t >= 1.
    """
    p1, _, p3 = sorted(t.products)
    big_n = p3 - p1
    return -p1, (big_n + 1) ** 2 // 4 - p3


def is_sq(n):
    return n >= 0 and math.isqrt(n) ** 2 == n


@pytest.fixture
def t420():
    return Triple(4, 12, 420)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
