import random
from fractions import Fraction

import pytest

from incgamma.mahler import ExactMahler, one_fn
from incgamma.measure import Measure, dirac, integrate, mu_psi_x
from incgamma.padic import PadicContext, congruent


def rand_exact(rng, support=6):
    return ExactMahler([Fraction(rng.randint(-9, 9), rng.choice([1, 2, 3]))
                        for _ in range(support)])


def test_dirac_minus_one_moments():
    ctx = PadicContext(3, 10)
    mu = dirac(-1, ctx, 8)
    for n in range(9):
        assert congruent(mu.coeff(n), ctx.number((-1) ** n), 10)


def test_dirac_integer_point_is_finite():
    ctx = PadicContext(5, 10)
    mu = dirac(3, ctx, 8)
    assert congruent(mu.coeff(2), ctx.number(3), 10)
    assert congruent(mu.coeff(4), ctx.number(0), 10)
    assert mu.bound.exponent == float("inf")


def test_integrate_against_dirac_is_evaluation():
    rng = random.Random(51)
    ctx = PadicContext(5, 14)
    for _ in range(25):
        f = rand_exact(rng)
        x = Fraction(rng.randint(-30, 30), rng.choice([1, 2, 3]))
        mu = dirac(x, ctx, f.length + 2)
        got = integrate(f.to_padic(ctx), mu)
        assert congruent(got, ctx.number(f.eval(x)), 12)


def test_integrate_with_padic_dirac_point():
    ctx = PadicContext(3, 12)
    rng = random.Random(52)
    for _ in range(10):
        f = rand_exact(rng, 5)
        n = rng.randrange(0, 3 ** 12)
        mu = dirac(ctx.number(n), ctx, f.length)
        assert congruent(integrate(f.to_padic(ctx), mu), ctx.number(f.eval(n)), 10)


def test_mu_psi_x_moments_example():
    # psi = identity function x; moments at x = -1: (-1)^n * (-1 - n)
    ctx = PadicContext(5, 12)
    psi = ExactMahler([0, 1]).to_padic(ctx)
    mu = mu_psi_x(psi, -1, length=6)
    for n in range(7):
        assert congruent(mu.coeff(n), ctx.number((-1) ** n * (-1 - n)), 12)


def test_integrate_mu_psi_is_convolution_value():
    rng = random.Random(53)
    ctx = PadicContext(3, 16)
    for _ in range(20):
        psi = rand_exact(rng, 5)
        phi = rand_exact(rng, 5)
        x = rng.randint(-6, 6)
        conv = psi.convolve(phi)
        mu = mu_psi_x(psi.to_padic(ctx), x, length=conv.length + 1)
        got = integrate(phi.to_padic(ctx), mu)
        assert congruent(got, ctx.number(conv.eval(x)), 13)


def test_bilinearity():
    rng = random.Random(54)
    ctx = PadicContext(5, 14)
    for _ in range(10):
        f, g = rand_exact(rng), rand_exact(rng)
        x = rng.randint(-10, 10)
        mu = dirac(x, ctx, 8)
        lhs = integrate(f.to_padic(ctx), mu) + integrate(g.to_padic(ctx), mu) * 3
        pf = f.to_padic(ctx)
        pg = g.to_padic(ctx).scale(3)
        rhs = integrate(pf.add(pg), mu)
        assert congruent(lhs, rhs, 12)
        nu = mu.scale(7).add(mu)  # (7 + 1) * mu
        assert congruent(integrate(pf, nu), integrate(pf, mu) * 8, 12)


def test_norm_exponent():
    ctx = PadicContext(3, 10)
    mu = dirac(-1, ctx, 5).scale(9)
    assert mu.norm_exponent() == 2


def test_moment_access_guard():
    ctx = PadicContext(3, 10)
    mu = dirac(-1, ctx, 4)
    with pytest.raises(IndexError):
        mu.coeff(5)
