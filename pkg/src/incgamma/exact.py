"""Exact rational combinatorics and p-adic valuations of rationals.

Everything in this module is exact: inputs are ints or Fractions, outputs are
ints, Fractions, or the infinite valuation marker.  The rest of the package
builds on these helpers, so they stay free of any p-adic rounding.
"""

from __future__ import annotations

import math
from fractions import Fraction

#: Valuation of zero.  Comparisons and min() work as expected.
INF = math.inf

Rational = Fraction


def as_rational(q) -> Fraction:
    """Coerce an int, Fraction, or 'a/b' string to a Fraction."""
    if isinstance(q, Fraction):
        return q
    if isinstance(q, int):
        return Fraction(q)
    if isinstance(q, str):
        return Fraction(q)
    raise TypeError(f"not a rational: {q!r}")


def format_rational(q: Fraction) -> str:
    """Render as 'a/b', or just 'a' for integers."""
    q = as_rational(q)
    return str(q)


def _check_prime(p: int) -> None:
    if not isinstance(p, int) or p < 2:
        raise ValueError(f"p must be a prime >= 2, got {p}")
    # cheap trial division; p stays small in practice
    if p % 2 == 0 and p != 2:
        raise ValueError(f"p must be prime, got {p}")
    d = 3
    while d * d <= p:
        if p % d == 0:
            raise ValueError(f"p must be prime, got {p}")
        d += 2


def vp(q, p: int):
    """p-adic valuation of a rational; vp(0) is +infinity.

    vp(a/b) = vp(a) - vp(b).
    """
    _check_prime(p)
    q = as_rational(q)
    if q == 0:
        return INF
    v = 0
    n = q.numerator
    while n % p == 0:
        n //= p
        v += 1
    d = q.denominator
    while d % p == 0:
        d //= p
        v -= 1
    return v


def binom(q, k: int) -> Fraction:
    """Binomial coefficient binom(q, k) = (q)_k / k! for rational q.

    Zero for k < 0.  Agrees with math.comb on nonnegative integer q.
    """
    if k < 0:
        return Fraction(0)
    q = as_rational(q)
    if q.denominator == 1 and q >= 0:
        return Fraction(math.comb(q.numerator, k))
    return falling(q, k) / math.factorial(k)


def falling(q, k: int) -> Fraction:
    """Falling factorial (q)_k = q (q-1) ... (q-k+1); empty product is 1."""
    if k < 0:
        raise ValueError("falling factorial needs k >= 0")
    q = as_rational(q)
    out = Fraction(1)
    for j in range(k):
        out *= q - j
    return out


def digit_sum(n: int, p: int) -> int:
    """Sum of base-p digits of a nonnegative integer."""
    if n < 0:
        raise ValueError("digit_sum needs n >= 0")
    _check_prime(p)
    s = 0
    while n:
        s += n % p
        n //= p
    return s


def vp_factorial(n: int, p: int) -> int:
    """vp(n!) = (n - digit_sum(n, p)) / (p - 1)   (Legendre)."""
    if n < 0:
        raise ValueError("vp_factorial needs n >= 0")
    _check_prime(p)
    return (n - digit_sum(n, p)) // (p - 1)


def digit_count(n: int, p: int) -> int:
    """Number of base-p digits of n >= 1 (so p^(count-1) <= n < p^count)."""
    if n < 1:
        raise ValueError("digit_count needs n >= 1")
    c = 0
    while n:
        n //= p
        c += 1
    return c
