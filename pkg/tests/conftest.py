import random
from fractions import Fraction

import pytest
import sympy


def rational_samples(seed, count, num=60, den=25, exclude=()):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        q = Fraction(rng.randint(-num, num), rng.randint(1, den))
        if q not in exclude:
            out.append(q)
    return out


def sympy_power_sum(D, points, k):
    """Independent oracle: sum of (x + y*w)^k with w the integral generator, via sympy."""
    if D % 4 == 3:
        w = (1 + sympy.sqrt(-D)) / 2
    else:
        w = sympy.sqrt(-D)
    total = sum((sympy.Rational(x.numerator, x.denominator) + sympy.Rational(y.numerator, y.denominator) * w) ** k
                for x, y in ((Fraction(a), Fraction(b)) for a, b in points))
    return sympy.nsimplify(sympy.expand(total))


def brute_mixed_sums(vectors, exps):
    total = Fraction(0)
    for v in vectors:
        term = Fraction(1)
        for c, e in zip(v, exps):
            term *= Fraction(c) ** e
        total += term
    return total


_ACCEPTANCE = []


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py" in report.nodeid:
        _ACCEPTANCE.append((report.nodeid.split("::")[-1], report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _ACCEPTANCE:
        mark = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"[{mark}] {name}")


@pytest.fixture
def hexagon():
    from pte_designs.ellipse import shell_points

    return shell_points(3, 1)
