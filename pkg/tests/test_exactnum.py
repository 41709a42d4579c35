import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from racahalg.errors import PoleError
from racahalg.exactnum import (
    as_rational,
    format_rational,
    hyp4F3_terminating,
    parse_rational,
    pochhammer,
    pochhammer_ratio,
    racah_r,
)

rationals = st.fractions(min_value=-6, max_value=6, max_denominator=12)


def brute_4f3(num, den, degree):
    """Term-by-term sum with each Pochhammer product formed from scratch."""
    total = Fraction(0)
    for k in range(degree + 1):
        top = Fraction(1)
        bottom = Fraction(math.factorial(k))
        for a in num:
            for i in range(k):
                top *= a + i
        for b in den:
            for i in range(k):
                bottom *= b + i
        total += top / bottom
    return total


def test_pochhammer_examples():
    assert pochhammer(Fraction(7, 3), 0) == 1
    assert pochhammer(2, 3) == 24
    assert pochhammer(-3, 5) == 0


def test_pochhammer_rejects_negative_index():
    with pytest.raises(ValueError):
        pochhammer(1, -1)


@given(rationals, st.integers(0, 20), st.integers(0, 20))
def test_pochhammer_splits(a, j, k):
    assert pochhammer(a, j + k) == pochhammer(a, j) * pochhammer(a + j, k)


@given(rationals, st.integers(0, 10), st.data())
def test_pochhammer_ratio_matches_quotient(a, n, data):
    k = data.draw(st.integers(0, n))
    if pochhammer(a, k):
        assert pochhammer_ratio(a, n, k) == pochhammer(a, n) / pochhammer(a, k)


def test_hyp_degree_zero_is_one():
    assert hyp4F3_terminating((5, 6, 7, 8), (1, 2, 3), 0) == 1


def test_hyp_two_term_example():
    # 1 - bcd/(efg) with b=c=d=1, e=f=g=2
    assert hyp4F3_terminating((-1, 1, 1, 1), (2, 2, 2), 1) == Fraction(7, 8)


def test_hyp_generic_against_brute_force():
    num = (-2, Fraction(5, 3), Fraction(-7, 4), Fraction(9, 2))
    den = (Fraction(3, 2), Fraction(11, 5), Fraction(-1, 3))
    assert hyp4F3_terminating(num, den, 2) == brute_4f3(num, den, 2)


def test_hyp_pole_raises():
    with pytest.raises(PoleError):
        hyp4F3_terminating((-3, 1, 1, 1), (1, -1, 2), 3)


@given(st.integers(0, 5), st.lists(rationals, min_size=3, max_size=3), st.lists(rationals, min_size=3, max_size=3))
def test_hyp_matches_brute_force_and_is_symmetric(n, rest, den):
    num = [-n] + rest
    try:
        value = hyp4F3_terminating(num, den, n)
    except PoleError:
        return
    assert value == brute_4f3(num, den, n)
    for perm in itertools.permutations(num):
        assert hyp4F3_terminating(perm, den, n) == value
    for perm in itertools.permutations(den):
        assert hyp4F3_terminating(num, perm, n) == value


@given(st.integers(0, 4), st.lists(rationals, min_size=6, max_size=6))
def test_hyp_common_denominator_rebuild(n, params):
    """Clearing to integers over a common denominator and rebuilding the
    parameters gives back the same canonical value."""
    num = [-n] + params[:3]
    den = params[3:]
    try:
        value = hyp4F3_terminating(num, den, n)
    except PoleError:
        return
    D = math.lcm(*(Fraction(p).denominator for p in num + den))
    rebuilt_num = [Fraction(int(p * D), D) for p in num]
    rebuilt_den = [Fraction(int(p * D), D) for p in den]
    again = hyp4F3_terminating(rebuilt_num, rebuilt_den, n)
    assert again == value
    assert (again.numerator, again.denominator) == (value.numerator, value.denominator)
    assert math.gcd(value.numerator, value.denominator) == 1 and value.denominator > 0


def brute_racah(n, alpha, beta, gamma, delta, x):
    pref = pochhammer(alpha + 1, n) * pochhammer(beta + delta + 1, n) * pochhammer(gamma + 1, n)
    num = (-n, n + alpha + beta + 1, -x, x + gamma + delta + 1)
    den = (alpha + 1, beta + delta + 1, gamma + 1)
    return pref * brute_4f3(num, den, n)


@given(
    st.integers(0, 5),
    st.fractions(min_value=Fraction(1, 2), max_value=4, max_denominator=7),
    st.fractions(min_value=Fraction(1, 2), max_value=4, max_denominator=7),
    st.fractions(min_value=Fraction(1, 2), max_value=4, max_denominator=7),
    st.integers(0, 6),
)
def test_racah_r_matches_definition(n, alpha, beta, delta, x):
    gamma = Fraction(7, 3)  # keeps (gamma+1)_k away from zero
    assert racah_r(n, alpha, beta, gamma, delta, x) == brute_racah(n, alpha, beta, gamma, delta, x)


def test_racah_r_finite_through_denominator_zero():
    # gamma + 1 = -2: the 4F3 has a pole at k = 3 but the prefactor kills it
    # and the series stops at k = x = 1 anyway
    value = racah_r(4, Fraction(1, 2), Fraction(3, 2), -3, Fraction(5, 2), 1)
    assert value == 0


def test_rational_parsing_and_formatting():
    assert parse_rational("3/4") == Fraction(3, 4)
    assert parse_rational(" -7 ") == -7
    assert format_rational(Fraction(6, 3)) == "2"
    assert format_rational(Fraction(-3, 9)) == "-1/3"
    with pytest.raises(ValueError):
        parse_rational("0.75")
    with pytest.raises(TypeError):
        as_rational(0.5)


@given(st.fractions(max_denominator=10**6))
def test_format_parse_round_trip(q):
    assert parse_rational(format_rational(q)) == q


def test_large_values_stay_exact():
    # far past 64-bit range
    assert pochhammer(Fraction(1, 3), 40) * 3**40 == math.prod(1 + 3 * i for i in range(40))
