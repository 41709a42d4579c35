from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings, strategies as st

settings.register_profile(
    "exact", deadline=None, max_examples=30, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("exact")

# one line per acceptance criterion, printed at the end of the run
ACCEPTANCE_LINES = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])


def small_rationals(lo=Fraction(3, 5), hi=Fraction(5, 2), max_den=10):
    """Positive rationals with small denominators, bounded away from zero."""
    return st.fractions(min_value=lo, max_value=hi, max_denominator=max_den)


@pytest.fixture
def acceptance_lines():
    return ACCEPTANCE_LINES
