"""The finite-place incomplete gamma construction.

The weight function phi_r is the continuous extension of the coefficient
data of exp(f_r), where f_r(t) = r(1 - (1-t)^{1/r}) so that
f_r'(t) = (1-t)^{1/r-1}.  Its L transform

    Phi(s) = sum_k (s)_k phi_r(-1 - k)

interpolates the rational sequence psi_tilde: for integers m >= 0,
Phi((m+1)/r - 1) = psi_tilde(m), and the twisted value
Psi(s) = <r>^s Phi((s+1)/r - 1) is continuous in s.  The incomplete gamma
value itself keeps the divergent exponential E(-r) as a symbolic factor.

Everything here needs r to be a p-adic unit; other places are excluded.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .exact import INF, as_rational, binom, format_rational, vp
from .padic import (PadicContext, PadicNumber, congruent, principal_part,
                    principal_power)
from .series import TruncSeries
from .mahler import (MahlerFn, Tail, convolve, from_gexp, gexp_length_for,
                     gexp_tail_floor, heuristic_tail)
from .measure import dirac, integrate
from .transform import factorial_length_for, l_value, one_minus_x_pow


class PlaceExcludedError(ValueError):
    """r is not a unit at p, so the weight exp(f_r) has no p-adic sense."""


class CompatibilityError(ValueError):
    """A polynomial weight violates the domain needed for the expansion."""


def f_r_series(r, order: int) -> TruncSeries:
    """f_r(t) = r(1 - (1-t)^{1/r}) = -r sum_k (-1)^k binom(1/r, k) t^k."""
    r = as_rational(r)
    if r == 0:
        raise ValueError("r must be nonzero")
    u = 1 / r
    coeffs = [Fraction(0)]
    for k in range(1, order + 1):
        coeffs.append(-r * (-1) ** k * binom(u, k))
    return TruncSeries(coeffs)


def require_unit(r, p: int) -> Fraction:
    """The place check: v_p(r) must vanish."""
    r = as_rational(r)
    if r == 0:
        raise ValueError("r must be nonzero")
    v = vp(r, p)
    if v != 0:
        raise PlaceExcludedError(
            f"v_{p}({format_rational(r)}) = {v}; the construction needs a unit")
    return r


def phi_values_exact(r, count: int) -> list:
    """phi_r(0), ..., phi_r(count) as exact rationals.

    Uses the shift relation sigma phi_r = S^{1/r-1} phi_r, which at integer
    points reads phi(n+1) = sum_k (-1)^k (1/r - 1)_k binom(n,k) phi(n-k).
    Independent of the EGF route, so the two engines cross-check.
    """
    r = as_rational(r)
    if r == 0:
        raise ValueError("r must be nonzero")
    u = 1 / r - 1
    vals = [Fraction(1)]
    for n in range(count):
        acc = Fraction(0)
        w = Fraction(1)  # (-1)^k (u)_k
        for k in range(n + 1):
            acc += w * math.comb(n, k) * vals[n - k]
            w *= k - u
        vals.append(acc)
    return vals


def _f_r_residues(A: int, B: int, p: int, K: int, M: int) -> list:
    """Mahler coefficients of phi_{A/B} mod p^M, all-integer recurrence.

    With G_1 = 1, G_{k+1} = -G_k (B - kA) the series coefficients are
    c_k = G_k / (A^{k-1} k!), and the scaled EGF coefficients
    D_n = A^n d_n of exp(f_r - t) satisfy
        D_n = A sum_{k=2}^n G_k binom(n-1, k-1) D_{n-k}.
    Only the unit A is ever inverted, so reducing mod p^M is exact.
    """
    mod = p ** M
    Ainv = pow(A % mod, -1, mod)
    G = [0, 1 % mod]
    for k in range(1, K):
        G.append(-G[k] * (B - k * A) % mod)
    row = [0] * (K + 2)  # row[k] = binom(n-1, k-1), updated in place
    row[1] = 1 % mod
    D = [1 % mod, 0]
    out = [1 % mod, 0]
    ainv_pow = Ainv
    for n in range(2, K + 1):
        for k in range(min(n, K + 1), 0, -1):
            row[k] = (row[k] + row[k - 1]) % mod
        acc = 0
        for k in range(2, n + 1):
            if G[k] and D[n - k]:
                acc += G[k] * row[k] * D[n - k]
        D.append(A * acc % mod)
        ainv_pow = ainv_pow * Ainv % mod
        out.append(D[n] * ainv_pow % mod)
    return out[:K + 1]


_phi_cache: dict = {}
_value_cache: dict = {}


def phi_fr(r, ctx: PadicContext, length: int | None = None,
           tail_target: int | None = None) -> MahlerFn:
    """The weight phi_r as a p-adic expansion with a certified tail.

    Default sizing picks the shortest length whose gexp certificate reaches
    the context precision; results are cached per (r, p, length, precision).
    """
    r = require_unit(r, ctx.p)
    want = ctx.precision if tail_target is None else tail_target
    if length is None:
        length = gexp_length_for(ctx.p, want)
    key = (r, ctx.p, length, ctx.precision)
    hit = _phi_cache.get(key)
    if hit is not None:
        return hit
    M = ctx.precision
    res = _f_r_residues(r.numerator, r.denominator, ctx.p, length, M)
    coeffs = [PadicNumber._make(ctx, 0, c, M) for c in res]
    cert = Tail(gexp_tail_floor(ctx.p, length), True, "gexp certificate")
    if cert.exponent < want:
        window = heuristic_tail(ctx, coeffs)
        if window.exponent > cert.exponent:
            cert = window
    fn = MahlerFn(ctx, coeffs, cert)
    _phi_cache[key] = fn
    return fn


def poly_gexp(coeffs, ctx: PadicContext, length: int | None = None,
              tail_target: int | None = None) -> MahlerFn:
    """Mahler expansion of exp(f) for a polynomial f = sum_{k>=1} g_k x^k.

    Same contract as from_gexp, but with denominators cleared up front:
    writing Q for their lcm and H_k = (g_k - [k=1]) Q, the scaled EGF
    coefficients D_n = Q^n d_n of exp(f - t) obey the integer recurrence
        D_n = sum_k k H_k Q^{k-1} (n-1)_{k-1} D_{n-k},
    so the whole computation runs mod p^M with only unit divisions.
    """
    p = ctx.p
    g = [as_rational(c) for c in coeffs]
    if not g:
        raise CompatibilityError("need at least the linear coefficient")
    for k, c in enumerate(g, start=1):
        if vp(c, p) < 0:
            raise CompatibilityError(f"coefficient of x^{k} is not p-integral: {c}")
    if vp(g[0] - 1, p) < 1:
        raise CompatibilityError("f'(0) must be a principal unit")
    want = ctx.precision if tail_target is None else tail_target
    if length is None:
        length = gexp_length_for(p, want)
    h = [g[0] - 1] + g[1:]
    Q = math.lcm(*(c.denominator for c in h))
    H = [int(c * Q) for c in h]
    deg = len(H)
    M = ctx.precision
    mod = p ** M
    Qinv = pow(Q % mod, -1, mod)
    Qpow = [pow(Q, k, mod) for k in range(deg)]
    D = [1 % mod]
    out = [PadicNumber._make(ctx, 0, 1 % mod, M)]
    qinv_pow = 1
    for n in range(1, length + 1):
        acc = 0
        fall = 1  # (n-1)_{k-1}
        for k in range(1, min(n, deg) + 1):
            if H[k - 1] and D[n - k]:
                acc += k * H[k - 1] * Qpow[k - 1] * fall * D[n - k]
            fall = fall * (n - k) % mod
        D.append(acc % mod)
        qinv_pow = qinv_pow * Qinv % mod
        out.append(PadicNumber._make(ctx, 0, D[n] * qinv_pow % mod, M))
    cert = Tail(gexp_tail_floor(p, length), True, "gexp certificate")
    if cert.exponent < want:
        window = heuristic_tail(ctx, out)
        if window.exponent > cert.exponent:
            cert = window
    return MahlerFn(ctx, out, cert)


def psi_tilde(r, m: int) -> Fraction:
    """The interpolated rational sequence: psi_tilde(0) = 1 and
    psi_tilde(m) = 1 + (m/r) psi_tilde(m-1)."""
    r = as_rational(r)
    if r == 0:
        raise ValueError("r must be nonzero")
    if m < 0:
        raise ValueError("m must be a nonnegative integer")
    val = Fraction(1)
    for j in range(1, m + 1):
        val = 1 + Fraction(j) / r * val
    return val


def psi_tilde_closed(r, m: int) -> Fraction:
    """Closed form (m!/r^m) sum_{k<=m} r^k/k! of the same sequence."""
    r = as_rational(r)
    if r == 0:
        raise ValueError("r must be nonzero")
    s = sum(r ** k / Fraction(math.factorial(k)) for k in range(m + 1))
    return math.factorial(m) / r ** m * s


def _phi_lvalues(r: Fraction, phi: MahlerFn, ctx: PadicContext, K: int) -> list:
    key = (r, ctx.p, phi.length, ctx.precision)
    vals = _value_cache.setdefault(key, [])
    while len(vals) <= K:
        vals.append(phi.eval(Fraction(-1 - len(vals))))
    return vals


def Phi(r, s, ctx: PadicContext, target: int | None = None,
        route: str = "direct") -> PadicNumber:
    """L-transform value sum_k (s)_k phi_r(-1 - k) for s in Z_p.

    route "direct" sums falling factorials against cached phi_r values;
    route "dirac" instead convolves phi_r with (1 - x)^{*s} and pairs the
    result against the Dirac measure at -1.  Both agree within precision
    and keep each other honest.
    """
    r = require_unit(r, ctx.p)
    if target is None:
        target = ctx.precision
    if route == "direct":
        phi = phi_fr(r, ctx)
        K = factorial_length_for(ctx.p, target)
        vals = _phi_lvalues(r, phi, ctx, K)
        return l_value(phi, s, target=target, values=vals)
    if route == "dirac":
        L = 2 * gexp_length_for(ctx.p, target)
        phi = phi_fr(r, ctx, length=L, tail_target=target)
        g = one_minus_x_pow(s, ctx, L)
        prod = convolve(g, phi)
        return integrate(prod, dirac(Fraction(-1), ctx, prod.length))
    raise ValueError(f"unknown route {route!r}")


def Psi(r, s, ctx: PadicContext, target: int | None = None,
        route: str = "direct") -> PadicNumber:
    """<r>^s Phi((s+1)/r - 1): the continuous interpolation of
    <r>^m psi_tilde(m)."""
    r = require_unit(r, ctx.p)
    pr = principal_part(ctx.number(r))
    if isinstance(s, PadicNumber):
        sprime = (s + ctx.one()) / ctx.number(r) - ctx.one()
    else:
        s = as_rational(s)
        sprime = (s + 1) / r - 1
    return principal_power(pr, s) * Phi(r, sprime, ctx, target=target, route=route)


@dataclass(frozen=True)
class GammaValue:
    """A p-adic incomplete gamma value E(exp_arg) * value.

    The exponential factor is symbolic: the series for E does not converge
    at a unit argument, and every identity downstream (recurrences, the
    interpolation checks) cancels it.
    """

    exp_arg: Fraction
    value: PadicNumber

    def __repr__(self):
        return f"E({format_rational(self.exp_arg)}) * ({self.value!r})"


def gamma_p(r, s, ctx: PadicContext, target: int | None = None,
            route: str = "direct") -> GammaValue:
    """The incomplete gamma value at the finite place: E(-r) Psi(s - 1)."""
    r = require_unit(r, ctx.p)
    if isinstance(s, PadicNumber):
        sm = s - ctx.one()
    else:
        sm = as_rational(s) - 1
    return GammaValue(-r, Psi(r, sm, ctx, target=target, route=route))


def fe_coefficients(coeffs) -> list:
    """Taylor coefficients of f' at 1: c_m = sum_{k>m} k binom(k-1, m) a_k."""
    a = [as_rational(c) for c in coeffs]
    deg = len(a)
    out = []
    for m in range(deg):
        out.append(sum((k * math.comb(k - 1, m) * a[k - 1] for k in range(m + 1, deg + 1)),
                       Fraction(0)))
    return out


def compatible_cubic(a, b, c) -> list:
    """The cubic with f'(x) = a - b(x-1) + c(x-1)^2, i.e. with functional
    equation 1 + s Phi(s-1) = a Phi(s) + b Phi(s+1) + c Phi(s+2)."""
    a, b, c = as_rational(a), as_rational(b), as_rational(c)
    return [a + b + c, -b / 2 - c, c / 3]


def functional_eq_parts(coeffs, s, ctx: PadicContext, target: int | None = None,
                        length: int | None = None):
    """Both sides of 1 + s Phi_f(s-1) = sum_m (-1)^m c_m Phi_f(s+m)
    for a polynomial weight f with no constant term, as (lhs, rhs)."""
    if target is None:
        target = ctx.precision
    phi = poly_gexp(coeffs, ctx, length=length)
    K = factorial_length_for(ctx.p, target)
    vals = [phi.eval(Fraction(-1 - j)) for j in range(K + 1)]

    def value_at(x):
        return l_value(phi, x, target=target, values=vals)

    if isinstance(s, PadicNumber):
        lhs = ctx.one() + s * value_at(s - ctx.one())
        args = [s + ctx.number(m) for m in range(len(coeffs))]
    else:
        s = as_rational(s)
        lhs = ctx.one() + ctx.number(s) * value_at(s - 1)
        args = [s + m for m in range(len(coeffs))]
    rhs = ctx.zero()
    for m, c in enumerate(fe_coefficients(coeffs)):
        if c:
            sign = c if m % 2 == 0 else -c
            rhs = rhs + ctx.number(sign) * value_at(args[m])
    return lhs, rhs


def functional_eq_check(coeffs, s, ctx: PadicContext, target: int | None = None,
                        k: int | None = None, length: int | None = None) -> bool:
    """Whether the two sides of the functional equation agree mod p^k
    (default: the weaker of the two precision claims)."""
    lhs, rhs = functional_eq_parts(coeffs, s, ctx, target=target, length=length)
    if k is None:
        k = min(lhs.abs_precision, rhs.abs_precision)
        if k == INF:
            k = ctx.precision
    return congruent(lhs, rhs, k)
