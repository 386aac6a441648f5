import os
from fractions import Fraction

import hypothesis.strategies as st
from hypothesis import settings

from qcommute.algebra import Quaternion

settings.register_profile("default", max_examples=60, deadline=None)
settings.register_profile("stress", max_examples=3000, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)
floats = st.floats(min_value=-10, max_value=10, allow_nan=False, allow_infinity=False)


@st.composite
def exact_quaternions(draw, nonzero=False):
    q = Quaternion(*(draw(rationals) for _ in range(4)))
    if nonzero and q.is_zero():
        q = Quaternion(1, 0, 0, 0)
    return q


@st.composite
def float_quaternions(draw):
    return Quaternion(*(draw(floats) for _ in range(4)))


# Independent multiplication oracle: expand over the 16-entry basis table.
_NAMES = "1ijk"
_RULES = {
    ("i", "j"): (1, "k"), ("j", "k"): (1, "i"), ("k", "i"): (1, "j"),
    ("j", "i"): (-1, "k"), ("k", "j"): (-1, "i"), ("i", "k"): (-1, "j"),
    ("i", "i"): (-1, "1"), ("j", "j"): (-1, "1"), ("k", "k"): (-1, "1"),
}


def _basis(a, b):
    if a == "1":
        return 1, b
    if b == "1":
        return 1, a
    return _RULES[a, b]


def table_mul(p, q):
    p, q = tuple(p), tuple(q)
    out = [p[0] * 0] * 4
    for x, a in zip(p, _NAMES):
        for y, b in zip(q, _NAMES):
            sign, c = _basis(a, b)
            out[_NAMES.index(c)] += sign * x * y
    return Quaternion(*out)


def table_commutator(p, q):
    return table_mul(p, q) - table_mul(q, p)


def frac(*xs):
    return tuple(Fraction(x) for x in xs)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    results = getattr(config, "_acceptance_results", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for line in results:
            terminalreporter.write_line(line)
