import cmath
import math
import random
from fractions import Fraction

import pytest
from scipy.special import gamma as sp_gamma, gammainc, gammaincc

from incgamma.gamma_complex import (QuadConfig, gammahat, gfn, lgfn,
                                    log_theta, lower_gamma, mellin_fe_residual,
                                    mellin_phi, psi_complex, recurrence_check,
                                    upper_gamma)
from incgamma.gamma_padic import compatible_cubic, psi_tilde


def rel_err(got, want):
    return abs(got - want) / max(1.0, abs(want))


def test_gfn_at_zero_is_one():
    for r in (0.5, 1.0, 2.0, 3.0):
        assert abs(gfn(0, r) - 1.0) <= 1e-10


def test_gfn_frozen_factorial_sums():
    for m, want in enumerate([1, 2, 5, 16, 65]):
        assert rel_err(gfn(m, 1.0), want) <= 1e-9


def test_gfn_interpolates_psi_tilde():
    for r in (Fraction(1, 2), Fraction(2), Fraction(3)):
        for m in range(9):
            want = float(r ** m * psi_tilde(r, m))
            assert rel_err(gfn(m, float(r)), want) <= 1e-9


def test_gfn_rejects_nonpositive_r():
    with pytest.raises(ValueError):
        gfn(1, -2.0)


def test_upper_gamma_frozen():
    assert abs(upper_gamma(1, 1.0) - math.exp(-1)) <= 1e-10


def test_upper_gamma_against_scipy():
    rng = random.Random(91)
    for _ in range(10):
        s = 0.5 + 3.5 * rng.random()
        x = 0.3 + 4.7 * rng.random()
        want = float(gammaincc(s, x) * sp_gamma(s))
        assert rel_err(upper_gamma(s, x), want) <= 1e-8


def test_lgfn_frozen():
    assert abs(lgfn(0, -1.0) - (math.exp(-1) - 1.0)) <= 1e-10
    assert abs(lgfn(1, -1.0) - math.exp(-1)) <= 1e-10


def test_lower_gamma_frozen():
    assert abs(lower_gamma(1, -1.0) - (1.0 - math.e)) <= 1e-10


def test_lower_gamma_against_scipy():
    # s in (0, 1) exercises the substitution branch of lgfn
    rng = random.Random(92)
    for _ in range(10):
        s = 0.1 + 0.8 * rng.random()
        x = 0.2 + 3.0 * rng.random()
        want = float(gammainc(s, x) * sp_gamma(s))
        assert rel_err(lower_gamma(s, x), want) <= 1e-8


def test_lgfn_domain():
    with pytest.raises(ValueError):
        lgfn(-1.5, -1.0)
    with pytest.raises(ValueError):
        lgfn(complex(-0.5, 1.0), -1.0)
    with pytest.raises(ValueError):
        lgfn(1, 0.0)


def test_gammahat_exact_factorials():
    for m in range(13):
        assert gammahat(m + 1) == float(math.factorial(m))
    assert rel_err(gammahat(0.5), math.sqrt(math.pi)) <= 1e-12


def test_psi_complex_negative_r():
    assert abs(psi_complex(-1.0, 0) - 1.0) <= 1e-10
    for r in (Fraction(-1), Fraction(-1, 2)):
        for m in range(8):
            want = float(r ** m * psi_tilde(r, m))
            assert abs(psi_complex(float(r), m) - want) <= 1e-8 * max(1.0, abs(want))


def test_psi_complex_positive_matches_gfn():
    for r in (0.5, 2.0):
        for m in range(6):
            assert abs(psi_complex(r, m) - gfn(m, r)) <= 1e-12


def test_psi_complex_guards():
    with pytest.raises(ValueError):
        psi_complex(0.0, 1)
    with pytest.raises(ValueError):
        psi_complex(1.0, -2)


def test_recurrence_residuals():
    for s, r in ((0.3, 0.5), (2.5, 3.0), (0.0, 1.0)):
        assert recurrence_check(s, r) <= 1e-9
    for s, r in ((0.2, -1.0), (1.5, -0.5)):
        assert recurrence_check(s, r) <= 1e-9


def test_recurrence_complex_s():
    assert recurrence_check(complex(1.0, 2.0), 2.0) <= 1e-9
    assert recurrence_check(complex(0.5, -1.0), -1.0) <= 1e-9


def test_gfn_complex_matches_real_on_axis():
    a = gfn(complex(1.5, 0.7), 2.0)
    assert isinstance(a, complex)
    b = gfn(1.5, 2.0)
    assert abs(gfn(complex(1.5, 0.0), 2.0) - b) <= 1e-10


def test_log_theta_branches():
    assert abs(log_theta(-1.0) - complex(0, math.pi)) <= 1e-15
    assert abs(log_theta(-1.0, theta=0.0) - complex(0, -math.pi)) <= 1e-15
    got = log_theta(1j, theta=-math.pi / 2)
    assert abs(got - complex(0, -1.5 * math.pi)) <= 1e-15
    assert abs(cmath.exp(log_theta(2.0 - 3.0j)) - (2.0 - 3.0j)) <= 1e-12
    with pytest.raises(ValueError):
        log_theta(0)


def test_mellin_phi_linear_weight_is_gfn():
    for s in (0.0, 1.0, 2.5):
        assert abs(mellin_phi([1], s) - gfn(s, 1.0)) <= 1e-9


def test_mellin_phi_rejects_growth():
    with pytest.raises(ValueError):
        mellin_phi([1, 1], 0.0)
    with pytest.raises(ValueError):
        mellin_phi([1, 0, -1], 0.0)


def test_mellin_fe_residual_random_cubics():
    rng = random.Random(93)
    for _ in range(6):
        b = rng.randint(-4, 4)
        c = rng.randint(1, 4)
        a = 1 - b - c + 5 * rng.randint(-1, 1)
        g = compatible_cubic(a, b, c)
        s = rng.choice([0.0, 0.5, 1.0, 2.0, 3.5])
        assert mellin_fe_residual(g, s) <= 1e-7


def test_quad_config_is_used():
    loose = QuadConfig(epsabs=1e-6, epsrel=1e-6, limit=60, tail_tol=1e-7)
    assert abs(gfn(3, 2.0, loose) - gfn(3, 2.0)) <= 1e-4
