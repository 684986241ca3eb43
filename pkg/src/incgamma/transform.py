"""Incomplete shift operators on continuous functions of a p-adic variable.

The operator S^y convolves a function against the y-th convolution power of
1 - x; on the coefficient-series side this is multiplication by (1 - t)^y,
which makes sense for any y in Z_p.  Reading the value S^y(phi)(x) as a
function of y instead gives the L transform, whose Mahler coefficients at
x = -1 are k! phi(-1 - k).  Evaluating that expansion at s recovers the
sums sum_k (s)_k phi(-1 - k) that drive the interpolation machinery.
"""

from __future__ import annotations

from fractions import Fraction

from .exact import INF, as_rational, vp, vp_factorial
from .padic import PadicContext, PadicNumber, congruent
from .mahler import MahlerFn, Tail, convolve
from .measure import dirac, integrate


def factorial_length_for(p: int, target: int) -> int:
    """Smallest K with v_p((K+1)!) >= target."""
    K = max(0, (p - 1) * target - 1)
    while vp_factorial(K + 1, p) < target:
        K += 1
    return K


def one_minus_x_pow(y, ctx: PadicContext, length: int) -> MahlerFn:
    """Convolution power (1 - x)^{*y}: Mahler coefficients (-1)^n (y)_n.

    The falling factorials (y)_n = n! binom(y, n) are integral for y in Z_p,
    so the discarded coefficients all have valuation >= v_p((length+1)!).
    For integers 0 <= y <= length the support is finite and the tail exact.
    """
    if isinstance(y, PadicNumber):
        if not y.is_exact_zero() and y.valuation < 0:
            raise ValueError("exponent must lie in Z_p")
        coeffs = [ctx.one()]
        c = ctx.one()
        for n in range(1, length + 1):
            c = c * (ctx.number(n - 1) - y)
            coeffs.append(c)
        return MahlerFn(ctx, coeffs,
                        Tail(vp_factorial(length + 1, ctx.p), True, "factorial decay"))
    y = as_rational(y)
    if vp(y, ctx.p) < 0:
        raise ValueError("exponent must lie in Z_p")
    coeffs = [Fraction(1)]
    c = Fraction(1)
    for n in range(1, length + 1):
        c = c * (n - 1 - y)
        coeffs.append(c)
    if y.denominator == 1 and 0 <= y <= length:
        return MahlerFn(ctx, coeffs, Tail.exact())
    return MahlerFn(ctx, coeffs,
                    Tail(vp_factorial(length + 1, ctx.p), True, "factorial decay"))


def q_function(ctx: PadicContext, length: int) -> MahlerFn:
    """Mahler coefficients n!: the convolution inverse of 1 - x."""
    coeffs = []
    f = 1
    for n in range(length + 1):
        coeffs.append(ctx.number(f))
        f *= n + 1
    return MahlerFn(ctx, coeffs,
                    Tail(vp_factorial(length + 1, ctx.p), True, "factorial decay"))


def s_transform(phi: MahlerFn, y, length: int | None = None) -> MahlerFn:
    """S^y phi, computed as the convolution (1 - x)^{*y} * phi.

    The output tail is controlled by decay beyond index length // 2, so
    size length at roughly twice what a direct expansion would need.
    """
    ctx = phi.ctx
    if length is None:
        if phi.tail.exponent == INF:
            length = factorial_length_for(ctx.p, 2 * ctx.precision) + phi.length
        else:
            length = phi.length
    g = one_minus_x_pow(y, ctx, length)
    return convolve(g, phi)


def _binomial_walk(ctx: PadicContext, x, K: int) -> list:
    """[binom(x, k) for k <= K] as p-adic numbers, exact where possible."""
    if isinstance(x, PadicNumber):
        if not x.is_exact_zero() and x.valuation < 0:
            raise ValueError("point must lie in Z_p")
        M = x.abs_precision if x.abs_precision != INF else ctx.precision
        X = 0 if x.is_exact_zero() else x.residue(M)
        mod = ctx.p ** M
        out = []
        b = 1
        for k in range(K + 1):
            out.append(PadicNumber._make(ctx, 0, b % mod, M))
            b = b * (X - k) // (k + 1)
        return out
    x = as_rational(x)
    if vp(x, ctx.p) < 0:
        raise ValueError("point must lie in Z_p")
    out = []
    b = Fraction(1)
    for k in range(K + 1):
        out.append(ctx.number(b))
        b = b * (x - k) / (k + 1)
    return out


def two_var(phi: MahlerFn, x, y, target: int | None = None) -> PadicNumber:
    """Direct value sum_k (-1)^k (y)_k binom(x, k) phi(x - k).

    Agrees with s_transform(phi, y).eval(x) but needs no intermediate
    expansion; the sum is cut once v_p((k)!) clears the target.
    """
    ctx = phi.ctx
    if target is None:
        target = ctx.precision
    K = factorial_length_for(ctx.p, target)
    yy = y if isinstance(y, PadicNumber) else ctx.number(as_rational(y))
    if not yy.is_exact_zero() and yy.valuation < 0:
        raise ValueError("exponent must lie in Z_p")
    binoms = _binomial_walk(ctx, x, K)
    acc = ctx.zero()
    fall = ctx.one()  # (-1)^k (y)_k
    for k in range(K + 1):
        acc = acc + fall * binoms[k] * phi.eval(x - k)
        fall = fall * (ctx.number(k) - yy)
    e = phi.min_valuation()
    if e != INF:
        T = vp_factorial(K + 1, ctx.p) + e
        acc = acc + PadicNumber(ctx, T, 0, T)
    return acc


def l_x(phi: MahlerFn, x, length: int | None = None) -> MahlerFn:
    """y -> S^y(phi)(x) as an expansion in y.

    Its Mahler coefficients are (-1)^k k! binom(x, k) phi(x - k); the
    factorial keeps the tail certified without any division.
    """
    ctx = phi.ctx
    if length is None:
        length = factorial_length_for(ctx.p, ctx.precision)
    binoms = _binomial_walk(ctx, x, length)
    coeffs = []
    t = 1  # (-1)^k k!
    for k in range(length + 1):
        coeffs.append(binoms[k] * phi.eval(x - k) * t)
        t *= -(k + 1)
    e = phi.min_valuation()
    texp = INF if e == INF else vp_factorial(length + 1, ctx.p) + e
    return MahlerFn(ctx, coeffs, Tail(texp, phi.tail.certified, "factorial decay"))


def l_transform(phi: MahlerFn, length: int | None = None) -> MahlerFn:
    """The x = -1 slice of l_x: Mahler coefficients k! phi(-1 - k)."""
    return l_x(phi, Fraction(-1), length)


def l_value(phi: MahlerFn, s, target: int | None = None,
            values: list | None = None) -> PadicNumber:
    """sum_k (s)_k phi(-1 - k): l_transform(phi) evaluated at s directly.

    No binomial is ever divided by k!, so nothing is lost to the division;
    values, when given, caches phi(-1 - k) across calls.
    """
    ctx = phi.ctx
    if target is None:
        target = ctx.precision
    K = factorial_length_for(ctx.p, target)
    ss = s if isinstance(s, PadicNumber) else ctx.number(as_rational(s))
    if not ss.is_exact_zero() and ss.valuation < 0:
        raise ValueError("s must lie in Z_p")
    if values is not None and len(values) <= K:
        raise ValueError(f"need {K + 1} cached values, got {len(values)}")
    acc = ctx.zero()
    fall = ctx.one()  # (s)_k
    for k in range(K + 1):
        v = values[k] if values is not None else phi.eval(Fraction(-1 - k))
        acc = acc + fall * v
        fall = fall * (ss - ctx.number(k))
    e = phi.min_valuation()
    if e != INF:
        T = vp_factorial(K + 1, ctx.p) + e
        acc = acc + PadicNumber(ctx, T, 0, T)
    return acc


class AmiceElem:
    """Finite combination sum_n c_n (x - 1)^{*n} of convolution powers.

    Negative n is allowed since 1 - x is invertible for the convolution
    (its inverse is the factorial function q).  On the coefficient-series
    side these are Laurent polynomials in t - 1, and the derivation D
    below matches d/dt there.
    """

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: PadicContext, coeffs: dict):
        self.ctx = ctx
        self.coeffs = {}
        for n, c in coeffs.items():
            c = c if isinstance(c, PadicNumber) else ctx.number(as_rational(c))
            if not c.is_exact_zero():
                self.coeffs[int(n)] = c

    def support(self) -> list:
        return sorted(self.coeffs)

    def d(self) -> "AmiceElem":
        """Derivation: (x - 1)^{*n} -> n (x - 1)^{*(n-1)}."""
        return AmiceElem(self.ctx,
                         {n - 1: c * n for n, c in self.coeffs.items() if n != 0})

    def to_mahler(self, length: int) -> MahlerFn:
        """Expand through the given length using (x-1)^{*n} = (-1)^n (1-x)^{*n}."""
        out = MahlerFn(self.ctx, [self.ctx.zero()], Tail.exact())
        for n in sorted(self.coeffs):
            c = self.coeffs[n] if n % 2 == 0 else -self.coeffs[n]
            out = out.add(one_minus_x_pow(n, self.ctx, length).scale(c))
        return out

    def star(self, phi: MahlerFn, length: int | None = None) -> MahlerFn:
        """Convolve this element's expansion against phi."""
        if length is None:
            length = factorial_length_for(self.ctx.p, 2 * self.ctx.precision)
        return convolve(self.to_mahler(length), phi)

    def __repr__(self):
        return f"AmiceElem(p={self.ctx.p}, support={self.support()})"


def parts_check(psi: AmiceElem, phi: MahlerFn, x, k: int | None = None,
                length: int | None = None) -> bool:
    """Integration by parts for the Dirac pairing:

        int (psi * sigma phi) d delta_x
            = int (psi * phi) d delta_{x+1} - int (D psi * phi) d delta_x

    where sigma is the unit shift.  Compares both sides mod p^k (defaulting
    to the weaker of the two precision claims).
    """
    ctx = phi.ctx
    left_fn = psi.star(phi.shift(), length)
    lhs = integrate(left_fn, dirac(x, ctx, left_fn.length))
    a = psi.star(phi, length)
    b = psi.d().star(phi, length)
    xp = x + 1
    rhs = integrate(a, dirac(xp, ctx, a.length)) - integrate(b, dirac(x, ctx, b.length))
    if k is None:
        k = min(lhs.abs_precision, rhs.abs_precision)
        if k == INF:
            k = ctx.precision
    return congruent(lhs, rhs, k)
