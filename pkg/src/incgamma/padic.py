"""Z_p / Q_p arithmetic with zealous (pessimistic) precision tracking.

A PadicNumber is p^valuation * unit, with the value known modulo
p^abs_precision.  Every operation propagates the worst-case absolute
precision of its result; nothing is ever claimed beyond what the inputs
support.  Exact zero is the special case valuation = abs_precision = +inf.

The unit-group structure lives here too: the Teichmuller character (computed
by iterating x -> x^p to its fixed point), principal parts <u> = u/omega(u),
powers u^s of principal units by the binomial series, and the exponential and
logarithm with their convergence domains.  For p = 2 the only root of unity
of odd order in Q_2 is 1, so omega = 1 and <u> = u on all of Z_2^x; the
fixed-point iteration converges to exactly that.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .exact import INF, as_rational, binom as _binom_exact, digit_count, vp


class DivergentSeriesError(ArithmeticError):
    """Argument lies outside the disc of convergence of a p-adic series."""


class PrecisionError(ArithmeticError):
    """An operation needed more digits than its inputs carry."""


class PadicContext:
    """Carrier for the prime and the default working precision.

    precision is the number of p-adic digits of absolute precision that
    embeddings of exact rationals receive by default (values of positive
    valuation keep their full integral part on top of that).
    """

    def __init__(self, p: int, precision: int = 28):
        vp(1, p)  # primality check
        if precision < 1:
            raise ValueError("precision must be >= 1")
        self.p = p
        self.precision = precision

    def __repr__(self):
        return f"PadicContext(p={self.p}, precision={self.precision})"

    def __eq__(self, other):
        return (isinstance(other, PadicContext)
                and self.p == other.p and self.precision == other.precision)

    def __hash__(self):
        return hash((self.p, self.precision))

    def number(self, q, abs_prec=None) -> "PadicNumber":
        return from_rational(q, self, abs_prec)

    def zero(self) -> "PadicNumber":
        return PadicNumber(self, INF, 0, INF)

    def one(self) -> "PadicNumber":
        return self.number(1)


class PadicNumber:
    """p^valuation * unit, known modulo p^abs_precision."""

    __slots__ = ("ctx", "valuation", "unit", "abs_precision")

    def __init__(self, ctx: PadicContext, valuation, unit: int, abs_precision):
        self.ctx = ctx
        self.valuation = valuation
        self.unit = unit
        self.abs_precision = abs_precision

    # -- construction ------------------------------------------------------

    @staticmethod
    def _make(ctx: PadicContext, valuation: int, unit: int, abs_prec) -> "PadicNumber":
        """Normalize raw (v, u, A) data: strip p-factors from u, detect zeros."""
        p = ctx.p
        if abs_prec == INF:
            if unit == 0:
                return PadicNumber(ctx, INF, 0, INF)
            raise ValueError("finite nonzero value needs finite precision")
        rel = abs_prec - valuation
        if rel <= 0:
            # nothing is known beyond "v >= abs_prec"
            return PadicNumber(ctx, abs_prec, 0, abs_prec)
        unit %= p ** rel
        if unit == 0:
            return PadicNumber(ctx, abs_prec, 0, abs_prec)
        while unit % p == 0:
            unit //= p
            valuation += 1
            rel -= 1
        return PadicNumber(ctx, valuation, unit % (p ** rel), abs_prec)

    # -- basic queries -----------------------------------------------------

    def is_exact_zero(self) -> bool:
        return self.valuation == INF

    def is_zero(self) -> bool:
        """True when the value is indistinguishable from 0 at its precision."""
        return self.unit == 0

    def is_unit(self) -> bool:
        return self.valuation == 0

    def residue(self, k: int) -> int:
        """Integer in [0, p^k) congruent to the value mod p^k (needs v >= 0)."""
        if k > self.abs_precision:
            raise PrecisionError(
                f"residue mod p^{k} requested, known only mod p^{self.abs_precision}")
        if self.unit == 0:
            return 0
        if self.valuation < 0:
            raise ValueError("residue undefined at negative valuation")
        return (self.unit * self.ctx.p ** self.valuation) % self.ctx.p ** k

    def lift(self) -> int:
        """Integer lift at full stated precision (needs v >= 0)."""
        if self.unit == 0:
            return 0
        return self.residue(self.abs_precision)

    def digits(self, k: int | None = None) -> list[int]:
        """Base-p digits d_0, d_1, ... of the integer lift (needs v >= 0)."""
        if k is None:
            k = self.abs_precision
            if k == INF:
                k = self.ctx.precision
        n = self.residue(k)
        p = self.ctx.p
        out = []
        for _ in range(k):
            out.append(n % p)
            n //= p
        return out

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, PadicNumber):
            if other.ctx.p != self.ctx.p:
                raise ValueError("mixed primes")
            return other
        if isinstance(other, (int, Fraction)):
            q = as_rational(other)
            if q == 0:
                return PadicNumber(self.ctx, INF, 0, INF)
            # generous embedding so coercion never caps the other operand
            v = vp(q, self.ctx.p)
            pad = self.abs_precision if self.abs_precision != INF else self.ctx.precision
            return from_rational(q, self.ctx, abs_prec=pad + abs(v) + 4)
        return None

    def _scaled_lift(self):
        """(integer n, shift m) with value = n * p^m, n known mod p^(A - m)."""
        m = min(self.valuation, 0)
        if self.unit == 0:
            return 0, m
        return self.unit * self.ctx.p ** (self.valuation - m), m

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.is_exact_zero():
            return other
        if other.is_exact_zero():
            return self
        abs_prec = min(self.abs_precision, other.abs_precision)
        m = min(self.valuation, other.valuation, 0)
        a, ma = self._scaled_lift()
        b, mb = other._scaled_lift()
        p = self.ctx.p
        s = a * p ** (ma - m) + b * p ** (mb - m)
        return PadicNumber._make(self.ctx, m, s, abs_prec)

    __radd__ = __add__

    def __neg__(self):
        if self.unit == 0:
            return self
        rel = self.abs_precision - self.valuation
        return PadicNumber(self.ctx, self.valuation,
                           (-self.unit) % self.ctx.p ** rel, self.abs_precision)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.is_exact_zero() or other.is_exact_zero():
            return PadicNumber(self.ctx, INF, 0, INF)
        v = self.valuation + other.valuation
        abs_prec = min(self.abs_precision + other.valuation,
                       other.abs_precision + self.valuation)
        if self.unit == 0 or other.unit == 0:
            return PadicNumber(self.ctx, abs_prec, 0, abs_prec)
        rel = abs_prec - v
        return PadicNumber(self.ctx, v,
                           (self.unit * other.unit) % self.ctx.p ** rel, abs_prec)

    __rmul__ = __mul__

    def inverse(self) -> "PadicNumber":
        if self.unit == 0:
            raise ZeroDivisionError(
                "inverse of a value indistinguishable from zero")
        rel = self.abs_precision - self.valuation
        inv = pow(self.unit, -1, self.ctx.p ** rel)
        return PadicNumber(self.ctx, -self.valuation, inv,
                           rel - self.valuation)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        out = self.ctx.number(1, abs_prec=(
            self.abs_precision - self.valuation if self.abs_precision != INF
            else self.ctx.precision))
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    # -- comparisons -------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, PadicNumber):
            return NotImplemented
        return (self.ctx.p == other.ctx.p
                and self.valuation == other.valuation
                and self.unit == other.unit
                and self.abs_precision == other.abs_precision)

    def __hash__(self):
        return hash((self.ctx.p, self.valuation, self.unit, self.abs_precision))

    def __repr__(self):
        p = self.ctx.p
        if self.is_exact_zero():
            return "0"
        if self.unit == 0:
            return f"O({p}^{self.abs_precision})"
        if self.valuation >= 0:
            return f"{self.lift()} + O({p}^{self.abs_precision})"
        return f"{self.unit}*{p}^{self.valuation} + O({p}^{self.abs_precision})"


def from_rational(q, ctx: PadicContext, abs_prec=None) -> PadicNumber:
    """Image of a rational in Q_p.

    Default absolute precision is ctx.precision, extended by the valuation
    for values divisible by p (the claim stays true and keeps the integral
    part intact).  from_rational(0) is the exact zero with +inf valuation.
    """
    q = as_rational(q)
    if q == 0:
        return PadicNumber(ctx, INF, 0, INF)
    v = vp(q, ctx.p)
    if abs_prec is None:
        abs_prec = ctx.precision + max(v, 0)
    rel = abs_prec - v
    if rel <= 0:
        return PadicNumber(ctx, abs_prec, 0, abs_prec)
    num = q.numerator
    den = q.denominator
    if v >= 0:
        num //= ctx.p ** v
    else:
        den //= ctx.p ** (-v)
    mod = ctx.p ** rel
    unit = (num * pow(den, -1, mod)) % mod
    return PadicNumber(ctx, v, unit, abs_prec)


def congruent(x: PadicNumber, y, k: int) -> bool:
    """True when v_p(x - y) >= k, i.e. x and y agree mod p^k."""
    d = x - y
    if d.is_exact_zero():
        return True
    if d.abs_precision < k:
        raise PrecisionError(
            f"congruence mod p^{k} undecidable at precision {d.abs_precision}")
    return d.valuation >= k


def teichmuller(u: PadicNumber) -> PadicNumber:
    """Teichmuller representative: the root of unity of order prime to p
    congruent to u mod p, computed as the fixed point of x -> x^p.

    For p = 2 the iteration lands on 1 for every unit.
    """
    if not isinstance(u, PadicNumber):
        raise TypeError("teichmuller needs a PadicNumber; embed first")
    if not u.is_unit():
        raise ValueError("teichmuller character needs a p-adic unit")
    p = u.ctx.p
    k = u.abs_precision
    mod = p ** k
    x = u.lift() % mod
    for _ in range(k + 3):
        nxt = pow(x, p, mod)
        if nxt == x:
            break
        x = nxt
    else:
        raise ArithmeticError("Teichmuller iteration failed to stabilize")
    return PadicNumber(u.ctx, 0, x, k)


def principal_part(u: PadicNumber) -> PadicNumber:
    """<u> = u / omega(u), a principal unit (== 1 mod p; mod 1 trivially for
    p = 2 where omega = 1 and <u> = u)."""
    return u * teichmuller(u).inverse()


def principal_power(u: PadicNumber, s) -> PadicNumber:
    """u^s for a principal unit u and s in Z_p, via sum binom(s,j)(u-1)^j.

    The series converges whenever v(u - 1) >= 1 (including p = 2: the terms
    carry |binom(s, j)| <= 1).  s may be an int, a Fraction with p-free
    denominator, or a PadicNumber of valuation >= 0.
    """
    ctx = u.ctx
    t = u - 1
    if t.is_exact_zero():
        return ctx.number(1, abs_prec=u.abs_precision - u.valuation)
    if t.valuation < 1:
        raise DivergentSeriesError(
            f"principal_power needs a principal unit, got v(u-1) = {t.valuation}")
    target = u.abs_precision
    exact_s = not isinstance(s, PadicNumber)
    if exact_s:
        s = as_rational(s)
        if vp(s, ctx.p) < 0:
            raise ValueError("exponent must lie in Z_p")
    elif s.valuation < 0:
        raise ValueError("exponent must lie in Z_p")
    out = ctx.number(1, abs_prec=target)
    pw = t            # (u-1)^j
    fall = None       # (s)_j for the PadicNumber path
    j = 1
    while pw.unit != 0 and pw.valuation < target:
        if exact_s:
            coeff = _binom_exact(s, j)
            if coeff != 0:
                out = out + pw * coeff
        else:
            fall = s if fall is None else fall * (s - (j - 1))
            out = out + pw * fall * Fraction(1, math.factorial(j))
        j += 1
        pw = pw * t
    return out


def _exp_domain_valuation(p: int) -> int:
    # convergence needs v(x) > 1/(p-1)
    return 2 if p == 2 else 1


def p_exp(x: PadicNumber) -> PadicNumber:
    """exp(x) = sum x^n / n!, defined for v(x) >= 1 (p odd), >= 2 (p = 2)."""
    ctx = x.ctx
    p = ctx.p
    if x.is_exact_zero():
        return ctx.one()
    v = x.valuation
    if x.unit == 0:
        v = x.abs_precision  # only a lower bound on v, still enough to test
    if v < _exp_domain_valuation(p):
        raise DivergentSeriesError(
            f"exp diverges: v_p(x) = {v} <= 1/(p-1) at p = {p}")
    target = x.abs_precision
    out = ctx.number(1, abs_prec=target)
    term = x
    n = 1
    # v(x^n/n!) >= n*v - (n-1)/(p-1), increasing in n
    while n * v - (n - 1) / (p - 1) < target:
        out = out + term
        n += 1
        term = term * x / n
    return out


def p_log(u: PadicNumber) -> PadicNumber:
    """log(u) = sum (-1)^(n-1) (u-1)^n / n for v(u - 1) >= 1."""
    ctx = u.ctx
    p = ctx.p
    t = u - 1
    if t.is_exact_zero():
        return ctx.zero()
    vt = t.valuation if t.unit != 0 else t.abs_precision
    if vt < 1:
        raise DivergentSeriesError(
            f"log needs a principal unit, got v(u-1) = {vt}")
    target = u.abs_precision
    out = ctx.zero()
    pw = t
    n = 1
    # v(t^n/n) >= n*vt - (digit_count(n)-1), nondecreasing since vt >= 1
    while n * vt - (digit_count(n, p) - 1) < target:
        term = pw / n
        out = (out + term) if n % 2 == 1 else (out - term)
        n += 1
        pw = pw * t
    return out
