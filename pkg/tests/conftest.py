from fractions import Fraction

import pytest
from hypothesis import strategies as st

ACCEPTANCE_LINES = []


def rationals(max_num=9, max_den=6):
    return st.builds(
        Fraction,
        st.integers(-max_num, max_num),
        st.integers(1, max_den),
    )


def non_integer_rationals(max_num=9, max_den=6):
    """Rationals that can never be a nonpositive integer (safe denominators)."""
    return rationals(max_num, max_den).filter(lambda r: r.denominator != 1 or r > 0)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def acceptance_log():
    return ACCEPTANCE_LINES
