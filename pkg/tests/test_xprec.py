from fractions import Fraction
import math

import mpmath as mp
import pytest
from hypothesis import given, settings, strategies as st

from airybounds import xprec
from airybounds.xprec import exp_m1_stable, g_at_one


def test_expm1_zero():
    assert exp_m1_stable(0) == 0


def test_expm1_tiny_real_against_high_precision():
    w = mp.mpf("1e-20")
    with mp.workdps(200):
        ref = mp.exp(mp.mpf("1e-20")) - 1
    val = exp_m1_stable(w)
    assert abs(val / ref - 1) < mp.mpf(10) ** -48
    assert mp.nstr(val, 22).startswith("1.00000000000000000000")


def test_g_at_one_value():
    assert mp.nstr(g_at_one(), 3) == "0.218"
    assert abs(xprec.g_remainder(1) - g_at_one()) < mp.mpf(10) ** -45


@settings(max_examples=60, deadline=None)
@given(st.floats(-1, 1), st.floats(-1, 1))
def test_expm1_cubic_bound_and_agreement(a, b):
    w = mp.mpc(a, b)
    if abs(w) > 1:
        w = w / (2 * abs(w))
    v = exp_m1_stable(w)
    aw = abs(w)
    assert abs(v) <= aw + aw ** 2 / 2 + g_at_one() * aw ** 3 + mp.mpf(10) ** -45
    if w != 0:
        assert abs((v + 1) - mp.exp(w)) <= 4 * mp.eps * max(1, abs(mp.exp(w)))


def test_gamma_small_values():
    assert xprec.gamma_exact(1) == 1
    assert abs(xprec.gamma_exact(Fraction(1, 2)) - mp.sqrt(mp.pi)) < mp.mpf(10) ** -48


def test_gamma_100_is_99_factorial():
    val = xprec.gamma_exact(100)
    assert abs(val / math.factorial(99) - 1) < mp.mpf(10) ** -48
    assert mp.nstr(val, 9).startswith("9.33262154")


@given(st.integers(1, 60))
def test_gamma_recurrence_exact(n):
    g1, _ = xprec.gamma_exact_rational(n + 1)
    g0, _ = xprec.gamma_exact_rational(n)
    assert g1 == n * g0


def test_gamma_rejects_non_half_integer():
    with pytest.raises(xprec.UnsupportedArgumentError):
        xprec.gamma_exact(Fraction(1, 3))


def test_bernoulli_values():
    assert xprec.bernoulli_exact(2) == Fraction(1, 6)
    assert xprec.bernoulli_exact(4) == Fraction(-1, 30)


def test_stirling_coefficients():
    assert xprec.stirling_C(0) == Fraction(1, 12)
    assert xprec.stirling_C(1) == Fraction(-1, 360)


def test_stirling_reproduces_gamma_100():
    nu = mp.mpf(100)
    approx = mp.sqrt(2 * mp.pi) * mp.exp(-nu) * nu ** (nu - mp.mpf(1) / 2) * mp.exp(xprec.stirling_sum(nu, 5))
    assert abs(approx / xprec.gamma_exact(100) - 1) < mp.mpf(10) ** -14


def test_precision_context_and_check():
    with xprec.precision(30):
        assert mp.mp.dps == 30
        xprec.check_precision(30)
        with pytest.raises(xprec.PrecisionError):
            xprec.check_precision(50)
