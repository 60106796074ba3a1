import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from sumprod import FiniteSet

small_rationals = st.builds(
    Fraction,
    st.integers(min_value=-20, max_value=20),
    st.integers(min_value=1, max_value=6),
)
nonzero_rationals = small_rationals.filter(lambda x: x != 0)


def finite_sets(elements=small_rationals, min_size=0, max_size=6):
    return st.lists(elements, min_size=min_size, max_size=max_size, unique=True).map(FiniteSet)


def random_rational_set(rng: random.Random, size: int, num=30, den=8, nonzero=False):
    out = set()
    while len(out) < size:
        x = Fraction(rng.randint(-num, num), rng.randint(1, den))
        if nonzero and x == 0:
            continue
        out.add(x)
    return FiniteSet(out)


@pytest.fixture
def rng():
    return random.Random(20261016)


def pytest_terminal_summary(terminalreporter):
    lines = []
    for reports in terminalreporter.stats.values():
        for rep in reports:
            if getattr(rep, "when", None) != "call":
                continue
            for key, value in getattr(rep, "user_properties", ()):
                if key == "acceptance":
                    lines.append(value)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
