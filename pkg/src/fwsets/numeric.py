"""Certified rational bounds for the few transcendental quantities we touch.

The polyhedral layers never need these; they exist so that membership in the
one built-in non-algebraic set (the epigraph of x^2 + exp(-x^2)) and
square-root comparisons for ball data can be certified with rational
arithmetic instead of floats.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt

from .linalg import rat

ONE = Fraction(1)


def exp_bounds(x, terms: int = 24) -> tuple[Fraction, Fraction]:
    """Rational ``(lo, hi)`` with ``lo <= exp(x) <= hi``.

    Taylor partial sums with the geometric tail bound; negative arguments
    go through ``exp(x) = 1/exp(-x)`` so the enclosure stays valid.
    """
    x = rat(x)
    if x < 0:
        lo, hi = exp_bounds(-x, terms)
        return ONE / hi, ONE / lo
    n = max(terms, int(x) * 3 + 8)
    term = ONE
    total = ONE
    for k in range(1, n + 1):
        term *= x / k
        total += term
    tail_ratio = x / (n + 2)
    if tail_ratio >= 1:
        return exp_bounds(x, 2 * n)
    tail = term * (x / (n + 1)) / (1 - tail_ratio)
    return total, total + tail


def sqrt_bounds(x, scale: int = 10**12) -> tuple[Fraction, Fraction]:
    """Rational ``(lo, hi)`` with ``lo <= sqrt(x) <= hi`` and width ~1/scale."""
    x = rat(x)
    if x < 0:
        raise ValueError("sqrt of a negative rational")
    if x == 0:
        return Fraction(0), Fraction(0)
    num = x.numerator * scale * scale
    den = x.denominator
    root = isqrt(num // den)
    lo = Fraction(root, scale)
    while lo * lo > x:
        root -= 1
        lo = Fraction(root, scale)
    hi = Fraction(root + 1, scale)
    while hi * hi < x:
        root += 1
        hi = Fraction(root + 1, scale)
    return lo, hi


def sqrt_upper(x, scale: int = 10**12) -> Fraction:
    return sqrt_bounds(x, scale)[1]


def sqrt_lower(x, scale: int = 10**12) -> Fraction:
    return sqrt_bounds(x, scale)[0]


def leq_sqrt(a, x) -> bool:
    """Exact test ``a <= sqrt(x)`` for rationals a and x >= 0."""
    a, x = rat(a), rat(x)
    if a <= 0:
        return True
    return a * a <= x


def geq_sqrt(a, x) -> bool:
    """Exact test ``a >= sqrt(x)`` for rationals a and x >= 0."""
    a, x = rat(a), rat(x)
    if a < 0:
        return False
    return a * a >= x


# ---------------------------------------------------------------------------
# exact arithmetic with quadratic surds a + b sqrt(m)
#
# Interval endpoints of univariate quadratic inequalities are numbers of this
# shape; comparing two of them exactly needs at most two squarings.
# ---------------------------------------------------------------------------

Surd = tuple[Fraction, Fraction, Fraction]  # (a, b, m) meaning a + b*sqrt(m)


def surd(a, b=0, m=0) -> Surd:
    a, b, m = rat(a), rat(b), rat(m)
    if m < 0:
        raise ValueError("radicand must be nonnegative")
    if b == 0 or m == 0:
        return (a, Fraction(0), Fraction(0))
    return (a, b, m)


def surd_sign(s: Surd) -> int:
    """Sign of a + b sqrt(m), exactly."""
    a, b, m = s
    if b == 0 or m == 0:
        return (a > 0) - (a < 0)
    if a == 0:
        return (b > 0) - (b < 0)
    if a > 0 and b > 0:
        return 1
    if a < 0 and b < 0:
        return -1
    lead = a * a - b * b * m
    inner = (lead > 0) - (lead < 0)
    return inner if a > 0 else -inner


def surd_cmp(x: Surd, y: Surd) -> int:
    """Sign of x - y for two quadratic surds (radicands may differ)."""
    a, b, m = x
    c, d, k = y
    if b == 0 or m == 0:
        return surd_sign((a - c, -d, k))
    if d == 0 or k == 0:
        return surd_sign((a - c, b, m))
    left_sign = surd_sign((a - c, b, m))
    right_sign = (d > 0) - (d < 0)
    if left_sign < 0 and right_sign >= 0:
        return -1
    if left_sign >= 0 and right_sign < 0:
        return 1
    if left_sign == 0 and right_sign == 0:
        return 0
    if left_sign == 0:
        return -right_sign
    if right_sign == 0:
        return left_sign
    # both sides share a strict sign s: compare squares, one surd remains
    p = a - c
    sq_diff = surd_sign((p * p + b * b * m - d * d * k, 2 * p * b, m))
    return sq_diff if left_sign > 0 else -sq_diff


def surd_float(s: Surd) -> float:
    a, b, m = s
    return float(a) + float(b) * float(m) ** 0.5

