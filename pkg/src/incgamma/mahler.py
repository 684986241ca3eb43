"""Continuous functions on Z_p through their Mahler expansions.

phi = sum a_n binom(x, n), with ||phi|| = sup |a_n|.  A MahlerFn stores
a_0..a_K as PadicNumbers together with a Tail record bounding every
coefficient beyond K.  ExactMahler is the finitely-supported rational
counterpart used wherever exactness matters (oracles, the correspondence
checks, small building blocks); it reduces into a MahlerFn with an exact
tail.

The exponential-generating-function correspondences live here as well:
prodcorr(phi) = sum (nabla^n phi)(0) t^n/n!   (algebra map for convolution)
actcorr(phi)  = sum phi(n) t^n/n! = exp(t) * prodcorr(phi)
from_gexp inverts actcorr on grouplike exponentials: for f with p-integral
coefficients, f(0) in the exp disc and f'(0) a principal unit, the Mahler
coefficients of the preimage are exp(f(0)) * d_n where
exp(f - f(0) - t) = sum d_n t^n/n!.

Tail certificate for from_gexp: writing g = f - f(0) - t, a composition of n
into j parts all >= 1 with j_1 parts equal to 1 forces j <= (n + j_1)/2, and
each size-1 part contributes v_p >= v_p(g_1) >= 1, so
    v_p(d_n) >= v_p(n!) - v_p(floor(n/2)!) >= n/(2(p-1)) - log_p(n) - 1,
an increasing bound; gexp_tail_floor freezes its value at K+1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .exact import INF, as_rational, digit_count, vp
from .padic import PadicContext, PadicNumber, p_exp
from .series import TruncSeries, gexp as series_gexp


@dataclass(frozen=True)
class Tail:
    """Bound |a_n| <= p^(-exponent) for every n beyond the stored range.

    certified tails come with a proof (finite support, falling-factorial
    counting, factorial growth, or the gexp certificate); heuristic ones
    only record a window of observed valuations.
    """
    exponent: int | float
    certified: bool
    note: str = ""

    @staticmethod
    def exact() -> "Tail":
        return Tail(INF, True, "finite support")


def gexp_tail_floor(p: int, K: int) -> int:
    """Certified valuation floor for gexp Mahler coefficients beyond K."""
    n = K + 1
    return n // (2 * (p - 1)) - digit_count(n, p) - 1


def gexp_length_for(p: int, target: int) -> int:
    """Smallest K whose certified gexp tail reaches the target exponent."""
    K = max(8, 2 * (p - 1) * target)
    while gexp_tail_floor(p, K) < target:
        K += 1
    return K


class ExactMahler:
    """Finitely supported Mahler expansion over Q."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        coeffs = [as_rational(c) for c in coeffs]
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs.pop()
        if not coeffs:
            coeffs = [Fraction(0)]
        self.coeffs = coeffs

    @property
    def length(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, n: int) -> Fraction:
        return self.coeffs[n] if 0 <= n <= self.length else Fraction(0)

    def eval(self, x) -> Fraction:
        x = as_rational(x)
        out = Fraction(0)
        b = Fraction(1)
        for n, a in enumerate(self.coeffs):
            out += a * b
            b = b * (x - n) / (n + 1)
        return out

    def shift(self) -> "ExactMahler":
        """sigma phi : x -> phi(x + 1), coefficients a_n + a_{n+1}."""
        K = self.length
        return ExactMahler([self.coeff(n) + self.coeff(n + 1) for n in range(K + 1)])

    def nabla(self) -> "ExactMahler":
        """(sigma - 1) phi, coefficients a_{n+1}."""
        return ExactMahler(self.coeffs[1:] or [0])

    def convolve(self, other: "ExactMahler") -> "ExactMahler":
        Kc = self.length + other.length
        out = []
        for n in range(Kc + 1):
            acc = Fraction(0)
            for k in range(max(0, n - other.length), min(n, self.length) + 1):
                acc += math.comb(n, k) * self.coeffs[k] * other.coeff(n - k)
            out.append(acc)
        return ExactMahler(out)

    def prodcorr(self, order: int) -> TruncSeries:
        return TruncSeries([self.coeff(n) / math.factorial(n) for n in range(order + 1)])

    def actcorr(self, order: int) -> TruncSeries:
        return TruncSeries([self.eval(n) / math.factorial(n) for n in range(order + 1)])

    @staticmethod
    def from_prodcorr(s: TruncSeries) -> "ExactMahler":
        if s.is_padic:
            raise TypeError("exact lane only")
        return ExactMahler([s.coeff(n) * math.factorial(n) for n in range(s.order + 1)])

    def to_padic(self, ctx: PadicContext, abs_prec: int | None = None) -> "MahlerFn":
        return MahlerFn(ctx,
                        [ctx.number(c, abs_prec=abs_prec) for c in self.coeffs],
                        Tail.exact())

    def __eq__(self, other):
        if not isinstance(other, ExactMahler):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __repr__(self):
        return f"ExactMahler({self.coeffs[:6]}{'...' if self.length > 5 else ''})"


def one_exact() -> ExactMahler:
    return ExactMahler([1])


class MahlerFn:
    """Mahler expansion with p-adic coefficients and a tail record."""

    __slots__ = ("ctx", "coeffs", "tail")

    def __init__(self, ctx: PadicContext, coeffs, tail: Tail):
        self.ctx = ctx
        self.coeffs = [c if isinstance(c, PadicNumber) else ctx.number(as_rational(c))
                       for c in coeffs]
        if not self.coeffs:
            self.coeffs = [ctx.zero()]
        self.tail = tail

    @property
    def length(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, n: int) -> PadicNumber:
        if 0 <= n <= self.length:
            return self.coeffs[n]
        if self.tail.exponent == INF:
            return self.ctx.zero()
        raise IndexError(f"coefficient {n} beyond stored length {self.length}")

    # -- norms -------------------------------------------------------------

    def _coeff_valuation(self, n: int):
        c = self.coeffs[n]
        if c.is_exact_zero():
            return INF
        return c.valuation

    def min_valuation(self):
        """Exponent e with ||phi|| <= p^(-e); equality when the stored
        minimum does not exceed the tail bound (the usual case)."""
        stored = min((self._coeff_valuation(n) for n in range(self.length + 1)),
                     default=INF)
        return min(stored, self.tail.exponent)

    def sup_norm(self) -> float:
        e = self.min_valuation()
        if e == INF:
            return 0.0
        return float(self.ctx.p) ** (-e)

    def valuation_beyond(self, m: int):
        """Lower bound for min valuation over indices n > m."""
        stored = min((self._coeff_valuation(n) for n in range(m + 1, self.length + 1)),
                     default=INF)
        return min(stored, self.tail.exponent)

    # -- evaluation --------------------------------------------------------

    def _arith_precision(self):
        return min((c.abs_precision for c in self.coeffs), default=INF)

    def eval(self, x) -> PadicNumber:
        """phi(x) for x in Z_p.

        x may be an int, a Fraction with p-free denominator, or a
        PadicNumber of valuation >= 0 (evaluated at its integer lift).
        Reported precision is min(coefficient precision, tail exponent).
        """
        ctx = self.ctx
        p = ctx.p
        neg = any(c.valuation < 0 for c in self.coeffs if not c.is_exact_zero())
        if isinstance(x, PadicNumber):
            if not x.is_exact_zero() and x.valuation < 0:
                raise ValueError("evaluation point must lie in Z_p")
            M = min(self._arith_precision(), x.abs_precision)
            if M == INF:
                M = ctx.precision
            X = x.residue(min(M, x.abs_precision)) if not x.is_exact_zero() else 0
            if neg:
                return self._eval_objects(X)
            return self._eval_int_mod(X, M)
        x = as_rational(x)
        if vp(x, p) < 0:
            raise ValueError("evaluation point must lie in Z_p")
        M = self._arith_precision()
        if M == INF:
            M = ctx.precision
        if neg:
            return self._eval_objects(x)
        if x.denominator == 1:
            return self._eval_int_mod(x.numerator, M)
        return self._eval_rational_mod(x, M)

    def _eval_objects(self, x) -> PadicNumber:
        """Fallback for coefficients of negative valuation (norm > 1)."""
        ctx = self.ctx
        acc = ctx.zero()
        x = as_rational(x) if not isinstance(x, int) else x
        b = Fraction(1)
        for n, c in enumerate(self.coeffs):
            if not c.is_exact_zero() and b != 0:
                acc = acc + c * b
            b = b * (x - n) / (n + 1)
        integral_point = (isinstance(x, int) or x.denominator == 1)
        if 0 <= x <= self.length and integral_point:
            return acc  # the tail never enters
        if self.tail.exponent != INF:
            acc = acc + PadicNumber(ctx, self.tail.exponent, 0, self.tail.exponent)
        return acc

    def _eval_int_mod(self, X: int, M) -> PadicNumber:
        ctx = self.ctx
        mod = ctx.p ** M
        acc = 0
        b = 1  # binom(X, n), exact integer, updated incrementally
        stop = min(self.length, X) if X >= 0 else self.length
        for n in range(stop + 1):
            c = self.coeffs[n]
            if c.unit != 0:
                acc = (acc + c.residue(M) * (b % mod)) % mod
            b = b * (X - n) // (n + 1)
        if 0 <= X <= self.length:
            claim = M  # binom(X, n) = 0 beyond X: the tail never enters
        else:
            claim = min(M, self.tail.exponent)
        return PadicNumber._make(ctx, 0, acc, claim)

    def _eval_rational_mod(self, x: Fraction, M) -> PadicNumber:
        ctx = self.ctx
        mod = ctx.p ** M
        acc = 0
        b = Fraction(1)
        for n, c in enumerate(self.coeffs):
            if c.unit != 0 and b != 0:
                r = (b.numerator * pow(b.denominator, -1, mod)) % mod
                acc = (acc + c.residue(M) * r) % mod
            b = b * (x - n) / (n + 1)
        claim = min(M, self.tail.exponent)
        return PadicNumber._make(ctx, 0, acc, claim)

    # -- shift algebra -----------------------------------------------------

    def shift(self) -> "MahlerFn":
        """sigma phi : x -> phi(x + 1), coefficients a_n + a_{n+1}.

        With a finite tail the last stored coefficient absorbs an O(p^T)
        term for the unknown a_{K+1}; the tail exponent is unchanged.
        """
        K = self.length
        if self.tail.exponent == INF:
            coeffs = [self.coeff(n) + self.coeff(n + 1) for n in range(K + 1)]
            return MahlerFn(self.ctx, coeffs, self.tail)
        unknown = PadicNumber(self.ctx, self.tail.exponent, 0, self.tail.exponent)
        coeffs = [self.coeffs[n] + self.coeffs[n + 1] for n in range(K)]
        coeffs.append(self.coeffs[K] + unknown)
        return MahlerFn(self.ctx, coeffs, self.tail)

    def nabla(self) -> "MahlerFn":
        if self.length == 0:
            if self.tail.exponent == INF:
                return MahlerFn(self.ctx, [self.ctx.zero()], self.tail)
            z = PadicNumber(self.ctx, self.tail.exponent, 0, self.tail.exponent)
            return MahlerFn(self.ctx, [z], self.tail)
        return MahlerFn(self.ctx, self.coeffs[1:], self.tail)

    def scale(self, c) -> "MahlerFn":
        if not isinstance(c, PadicNumber):
            c = self.ctx.number(as_rational(c))
        v = c.valuation if not c.is_exact_zero() else INF
        texp = self.tail.exponent + v if self.tail.exponent != INF else INF
        return MahlerFn(self.ctx, [a * c for a in self.coeffs],
                        Tail(texp, self.tail.certified, self.tail.note))

    def add(self, other: "MahlerFn") -> "MahlerFn":
        if self.ctx.p != other.ctx.p:
            raise ValueError("mixed primes")
        Ka, Kb = self.length, other.length
        exp_a, exp_b = self.tail.exponent, other.tail.exponent
        if exp_a == INF and exp_b == INF:
            K = max(Ka, Kb)
        elif exp_a == INF:
            K = Kb
        elif exp_b == INF:
            K = Ka
        else:
            K = min(Ka, Kb)
        coeffs = [self.coeff(n) + other.coeff(n) for n in range(K + 1)]
        texp = min(self.valuation_beyond(K), other.valuation_beyond(K))
        certified = self.tail.certified and other.tail.certified
        return MahlerFn(self.ctx, coeffs, Tail(texp, certified, "sum"))

    def sub(self, other: "MahlerFn") -> "MahlerFn":
        return self.add(other.scale(-1))

    def prodcorr(self, order: int) -> TruncSeries:
        coeffs = [self.coeff(n) * Fraction(1, math.factorial(n))
                  for n in range(order + 1)]
        return TruncSeries(coeffs, ctx=self.ctx)

    def actcorr(self, order: int) -> TruncSeries:
        coeffs = [self.eval(n) * Fraction(1, math.factorial(n))
                  for n in range(order + 1)]
        return TruncSeries(coeffs, ctx=self.ctx)

    def __repr__(self):
        t = "inf" if self.tail.exponent == INF else str(self.tail.exponent)
        kind = "certified" if self.tail.certified else "heuristic"
        return (f"MahlerFn(p={self.ctx.p}, K={self.length}, "
                f"tail {kind} >= {t})")


def one_fn(ctx: PadicContext) -> MahlerFn:
    """The constant function 1."""
    return MahlerFn(ctx, [ctx.number(1)], Tail.exact())


def convolve(a: MahlerFn, b: MahlerFn, length: int | None = None) -> MahlerFn:
    """Multiplicative convolution: c_n = sum_k binom(n,k) a_k b_{n-k}.

    Output length: full support when both tails are exact, otherwise the
    shortest certain range (or an explicit cap).  The output tail pairs each
    factor's tail beyond index floor(K/2) with the other factor's norm.
    """
    if a.ctx.p != b.ctx.p:
        raise ValueError("mixed primes")
    ctx = a.ctx
    Ka, Kb = a.length, b.length
    exp_a, exp_b = a.tail.exponent, b.tail.exponent
    if exp_a == INF and exp_b == INF:
        K_out = Ka + Kb
    elif exp_a == INF:
        K_out = Kb
    elif exp_b == INF:
        K_out = Ka
    else:
        K_out = min(Ka, Kb)
    if length is not None:
        K_out = min(K_out, length)

    neg = any(c.valuation < 0 for c in a.coeffs if not c.is_exact_zero()) or \
        any(c.valuation < 0 for c in b.coeffs if not c.is_exact_zero())
    Ma = a._arith_precision()
    Mb = b._arith_precision()
    M = min(Ma, Mb)
    if M == INF:
        M = ctx.precision
    if neg:
        coeffs = _convolve_objects(a, b, K_out)
    else:
        coeffs = _convolve_residues(a, b, K_out, M)

    half = K_out // 2
    texp = min(a.valuation_beyond(half) + _norm_exponent(b),
               b.valuation_beyond(half) + _norm_exponent(a))
    certified = a.tail.certified and b.tail.certified
    return MahlerFn(ctx, coeffs, Tail(texp, certified, "convolution"))


def _norm_exponent(f: MahlerFn):
    # INF means certified zero: every product term vanishes exactly
    return f.min_valuation()


def _convolve_residues(a: MahlerFn, b: MahlerFn, K_out: int, M) -> list:
    ctx = a.ctx
    mod = ctx.p ** M
    ra = [c.residue(M) if c.unit != 0 else 0 for c in a.coeffs]
    rb = [c.residue(M) if c.unit != 0 else 0 for c in b.coeffs]
    ra += [0] * (K_out + 1 - len(ra))
    rb += [0] * (K_out + 1 - len(rb))
    out = []
    row = [1]  # Pascal row binom(n, k) mod p^M
    for n in range(K_out + 1):
        acc = 0
        for k in range(n + 1):
            if ra[k] and rb[n - k]:
                acc += row[k] * ra[k] * rb[n - k]
        out.append(PadicNumber._make(ctx, 0, acc % mod, M))
        nxt = [1] + [(row[k - 1] + row[k]) % mod for k in range(1, n + 1)] + [1]
        row = nxt
    return out


def _convolve_objects(a: MahlerFn, b: MahlerFn, K_out: int) -> list:
    za = a.coeffs + [a.ctx.zero()] * (K_out + 1 - len(a.coeffs))
    zb = b.coeffs + [b.ctx.zero()] * (K_out + 1 - len(b.coeffs))
    out = []
    for n in range(K_out + 1):
        acc = a.ctx.zero()
        for k in range(n + 1):
            acc = acc + math.comb(n, k) * za[k] * zb[n - k]
        out.append(acc)
    return out


def prodcorr(phi, order: int) -> TruncSeries:
    return phi.prodcorr(order)


def actcorr(phi, order: int) -> TruncSeries:
    return phi.actcorr(order)


def heuristic_tail(ctx: PadicContext, coeffs, guard: int = 5) -> Tail:
    """Window evidence: minimum valuation over the last 3p stored
    coefficients, recorded as a heuristic tail."""
    W = 3 * ctx.p
    window = coeffs[-W:]
    vals = []
    for c in window:
        if c.is_exact_zero():
            continue
        vals.append(c.valuation if c.unit != 0 else c.abs_precision)
    e = min(vals, default=INF)
    return Tail(e, False, f"window W={len(window)}, guard={guard}")


def from_gexp(f: TruncSeries, ctx: PadicContext | None = None,
              length: int | None = None,
              tail_target: int | None = None) -> MahlerFn:
    """The continuous phi with actcorr(phi) = gexp(f).

    Requires p-integral coefficients, f(0) inside the exp disc, and f'(0) a
    principal unit.  Exact input: the EGF coefficients d_n of
    exp(f - f(0) - t) are computed exactly in Q and reduced afterwards.
    The tail is the certified gexp bound whenever it reaches tail_target
    (default: the context precision); otherwise the stronger of the
    certificate and the observed heuristic window.  p-adic input falls back
    to zealous series arithmetic and the heuristic window alone.
    """
    if ctx is None:
        if not f.is_padic:
            raise ValueError("need a context for exact input")
        ctx = f.ctx
    p = ctx.p
    K = f.order if length is None else min(length, f.order)

    if f.order < 1:
        raise ValueError("need at least the linear coefficient of f")

    if not f.is_padic:
        for n, c in enumerate(f.coeffs):
            if vp(c, p) < 0:
                raise ValueError(f"coefficient {n} is not p-integral: {c}")
        f0 = f.coeff(0)
        _check_gexp_domain(f0, f.coeff(1), p)
        # exact EGF coefficients of exp(g), g = f - f0 - t
        g = [Fraction(0), f.coeff(1) - 1] + list(f.coeffs[2:])
        d = _egf_exact(g, K)
        head = p_exp(ctx.number(f0)) if f0 != 0 else None
        coeffs = []
        for n in range(K + 1):
            c = ctx.number(d[n])
            coeffs.append(c if head is None else c * head)
        cert = Tail(gexp_tail_floor(p, K), True, "gexp certificate")
        want = ctx.precision if tail_target is None else tail_target
        if cert.exponent < want:
            window = heuristic_tail(ctx, coeffs)
            if window.exponent > cert.exponent:
                cert = window
        return MahlerFn(ctx, coeffs, cert)

    f0 = f.coeff(0)
    one = ctx.number(1)
    g = TruncSeries([ctx.zero(), f.coeff(1) - one] + list(f.coeffs[2:]), ctx=ctx)
    e = series_gexp(g)
    head = p_exp(f0) if not f0.is_exact_zero() else one
    coeffs = [e.coeff(n) * head * math.factorial(n) for n in range(K + 1)]
    return MahlerFn(ctx, coeffs, heuristic_tail(ctx, coeffs))


def _check_gexp_domain(f0, f1: Fraction, p: int) -> None:
    v0 = vp(f0, p)
    need = 2 if p == 2 else 1
    if v0 != INF and v0 < need:
        raise ValueError(f"f(0) outside the exp disc: v_p = {v0} < {need}")
    if vp(f1 - 1, p) < 1:
        raise ValueError("f'(0) must be a principal unit")


def _egf_exact(g: list, K: int) -> list:
    """d_n with exp(sum g_k t^k) = sum d_n t^n / n!, exact in Q.

    d_n = sum_k k! binom(n-1, k-1) g_k d_{n-k} (from the exp ODE).
    """
    d = [Fraction(1)]
    deg = len(g) - 1
    for n in range(1, K + 1):
        acc = Fraction(0)
        for k in range(1, min(n, deg) + 1):
            if g[k]:
                acc += math.factorial(k) * math.comb(n - 1, k - 1) * g[k] * d[n - k]
        d.append(acc)
    return d
