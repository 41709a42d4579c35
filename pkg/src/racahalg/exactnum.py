"""Exact rational arithmetic and terminating hypergeometric sums.

Every scalar in the package is a :class:`fractions.Fraction`; it keeps
numerator and denominator coprime with a positive denominator after each
operation, so a value is zero exactly when its numerator is zero.
"""
from fractions import Fraction
from numbers import Rational as _RationalABC

from .errors import PoleError

Rational = Fraction

__all__ = [
    "Rational",
    "as_rational",
    "parse_rational",
    "format_rational",
    "pochhammer",
    "pochhammer_ratio",
    "hyp4F3_terminating",
    "racah_r",
]


def as_rational(value):
    """Coerce ints, Fractions and "p/q" strings to a Fraction.

    Floats are refused: they would silently break exactness.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, (int, _RationalABC)):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"cannot use {type(value).__name__} as an exact rational")


def parse_rational(text):
    text = text.strip()
    if not text:
        raise ValueError("empty rational")
    if any(c in text for c in ".eE"):
        raise ValueError(f"decimal notation not accepted: {text!r}")
    return Fraction(text)


def format_rational(q):
    """Serialize as "p/q", or "p" when the denominator is 1."""
    q = as_rational(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def pochhammer(a, k):
    """Rising factorial (a)_k = a (a+1) ... (a+k-1); (a)_0 = 1."""
    if k < 0:
        raise ValueError("pochhammer index must be nonnegative")
    a = as_rational(a)
    result = Fraction(1)
    for i in range(k):
        result *= a + i
        if not result:
            return result
    return result


def pochhammer_ratio(a, n, k):
    """(a)_n / (a)_k for 0 <= k <= n, computed as (a+k)_{n-k} without division."""
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    return pochhammer(as_rational(a) + k, n - k)


def hyp4F3_terminating(num, den, degree):
    """Sum of the 4F3 series at unit argument, truncated after ``degree``.

    ``num`` holds four numerator parameters, ``den`` three denominator
    parameters.  The caller names the termination degree explicitly because
    several numerator parameters may be nonpositive integers at once.
    Raises PoleError when a denominator Pochhammer vanishes in range.
    """
    num = [as_rational(a) for a in num]
    den = [as_rational(b) for b in den]
    if len(num) != 4 or len(den) != 3:
        raise ValueError("4F3 needs four numerator and three denominator parameters")
    if degree < 0:
        raise ValueError("termination degree must be nonnegative")
    total = Fraction(1)
    term = Fraction(1)
    for k in range(degree):
        numer = (num[0] + k) * (num[1] + k) * (num[2] + k) * (num[3] + k)
        denom = (den[0] + k) * (den[1] + k) * (den[2] + k) * (k + 1)
        if not denom:
            raise PoleError(f"denominator Pochhammer vanishes at k={k + 1}")
        term = term * numer / denom
        total += term
    return total


def racah_r(n, alpha, beta, gamma, delta, x):
    """Unnormalized Racah polynomial r_n(alpha, beta, gamma, delta; x).

    r_n = (alpha+1)_n (beta+delta+1)_n (gamma+1)_n
          * 4F3(-n, n+alpha+beta+1, -x, x+gamma+delta+1;
                alpha+1, beta+delta+1, gamma+1; 1).

    The prefactors are folded into each term as (a)_n/(a)_k = (a+k)_{n-k},
    so the result is finite even where a denominator Pochhammer vanishes
    (e.g. gamma+1 = -x2 with x2 < n).  ``x`` may be any rational.
    """
    alpha, beta, gamma, delta, x = map(as_rational, (alpha, beta, gamma, delta, x))
    a1 = alpha + 1
    a2 = beta + delta + 1
    a3 = gamma + 1
    u = n + alpha + beta + 1
    v = x + gamma + delta + 1
    # tails[k] = (a1+k)_{n-k} (a2+k)_{n-k} (a3+k)_{n-k}, built from k = n down
    tails = [Fraction(1)] * (n + 1)
    for k in range(n - 1, -1, -1):
        tails[k] = tails[k + 1] * (a1 + k) * (a2 + k) * (a3 + k)
    total = Fraction(0)
    upper = Fraction(1)  # (-n)_k (u)_k (-x)_k (v)_k / k!
    for k in range(n + 1):
        if k:
            upper = upper * (k - 1 - n) * (u + k - 1) * (k - 1 - x) * (v + k - 1) / k
            if not upper:
                break
        total += upper * tails[k]
    return total
