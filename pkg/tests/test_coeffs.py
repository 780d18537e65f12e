import math
import random
from fractions import Fraction as Fr

import mpmath as mp
import pytest
from hypothesis import given, settings, strategies as st

from airybounds import coeffs, maps, quad
from airybounds.coeffs import PLAIN, TILDE, RationalPoly


def test_fhat1():
    assert coeffs.fhat(1) == RationalPoly([0, 0, Fr(-1, 8), 0, Fr(6, 8), 0, Fr(-5, 8)])


def test_fhat1_matches_z_form():
    # F_1(z) = z^2 (z^2 + 4)/(8 (z^2 - 1)^3)
    for z in (mp.mpf("0.3"), mp.mpc("0.4", "0.7")):
        ref = z ** 2 * (z ** 2 + 4) / (8 * (z ** 2 - 1) ** 3)
        assert abs(coeffs.fhat(1)(maps.p(z)) - ref) < mp.mpf(10) ** -45


def test_fhat2_is_p_operator_of_fhat1():
    assert coeffs.fhat(2) == coeffs.fhat(1).p_operator()


def test_fhat_divisible_by_p2_p2m1():
    for s in range(1, 31):
        coeffs.fhat(s).divide_p2_p2m1()  # raises ConsistencyError otherwise


def test_ehat1():
    # sign fixed by the E_s recursion convention used throughout (see ledger)
    assert coeffs.ehat(1) == RationalPoly([0, Fr(-3, 24), 0, Fr(5, 24)])


def test_ehat_zero_constant_term():
    for s in range(1, 31):
        assert coeffs.ehat(s)[0] == 0


def test_ehat1_against_ray_quadrature():
    # E_1(p(z)) = integral from i inf to z of dE_1/dp * dp/dz, dp/dz = z p^3
    z = mp.mpf("0.2")
    dE = coeffs.ehat(1).derivative()
    g = lambda t: dE(maps.p(t)) * t * maps.p(t) ** 3
    # along t = 0.2 + i y: integral_{inf}^{0} g i dy = -i integral_0^inf g dy
    seg = quad.gl_interval(lambda y: g(z + 1j * y), 0, 1, 60, 4)
    tail = quad.gl_interval(lambda s: g(z + 1j / s) / s ** 2, 0, 1, 60, 4)
    val = -1j * (seg + tail)
    assert abs(val - coeffs.ehat(1)(maps.p(z))) < mp.mpf(10) ** -25


def test_sequence_initial_values():
    t = coeffs.seq_a(30)
    assert t.a[1] == t.a[2] == Fr(5, 72)
    assert t.at[1] == t.at[2] == Fr(-7, 72)
    assert t.a[3] == Fr(1105, 10368)
    assert t.at[3] == Fr(-1463, 10368)
    assert t.c[5] == Fr(36, 5) * 32 * t.a[5]


def test_theorem_bounds_exact():
    assert coeffs.certify_sequences(200) == []


def test_s_n():
    assert coeffs.s_n(2) == 1
    assert coeffs.s_n(3) == 2
    for s in (24, 100, 500):
        assert Fr(7, 36) * coeffs.s_n(s) < 1


def test_appendix_exact():
    assert coeffs.certify_appendix(500, 24) == []


def test_s_n_approaches_two():
    vals = [(n, abs(coeffs.s_n(n) - 2) * n) for n in range(20, 501, 40)]
    assert max(v for _, v in vals) < 10


def test_cal_E_difference():
    z = mp.mpc("0.3", "0.1")
    xi = maps.xi(z)
    assert abs(coeffs.cal_E(1, z, PLAIN) - coeffs.cal_E(1, z, TILDE) + 1 / (6 * xi)) < mp.mpf(10) ** -45


def test_cal_E_pole():
    with pytest.raises(coeffs.PoleError):
        coeffs.cal_E(1, 1)


def _approach(s, variant):
    return [abs(coeffs.cal_E(s, 1 - mp.mpf(10) ** -k, variant)) for k in range(3, 7)]


def test_E1_bounded_at_turning_point():
    # E_1 = O((1 - z)^{1/2}): bounded, in fact vanishing at z0
    vals = _approach(1, PLAIN)
    assert all(b < a for a, b in zip(vals, vals[1:]))
    assert max(vals) < mp.mpf("1e-3")


def test_E2_E3_singular_at_turning_point():
    # E_2 ~ (1-z)^-3 and E_3 ~ (1-z)^-5/2 (see ledger); growth per decade 10^3, 10^2.5
    for s, order in ((2, 3), (3, mp.mpf(5) / 2)):
        vals = _approach(s, PLAIN)
        assert abs(mp.log10(vals[-1] / vals[-2]) - order) < 0.05


def test_tilde_E_has_full_xi_power_singularity():
    # a~_s does not cancel the leading singularity: E~_s ~ xi^{-s} ~ (1-z)^{-3s/2}
    for s in (1, 2, 3):
        vals = _approach(s, TILDE)
        assert abs(mp.log10(vals[-1] / vals[-2]) - mp.mpf(3 * s) / 2) < 0.05


def test_E1_at_high_precision():
    z = mp.mpf("0.2")
    val = coeffs.cal_E(1, z, PLAIN)
    with mp.workdps(100):
        zz = mp.mpf("0.2")
        s = mp.sqrt(1 - zz * zz)
        xi = mp.log((1 + s) / zz) - s
        pp = 1 / s
        ref = (5 * pp ** 3 - 3 * pp) / 24 - mp.mpf(5) / 72 / xi
    assert abs(val - ref) < mp.mpf(10) ** -45


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 12), st.floats(0.05, 0.9), st.floats(0.05, 0.9))
def test_ehat_schwarz_symmetry(s, x, y):
    p = mp.mpc(x, y)
    assert abs(coeffs.ehat(s)(mp.conj(p)) - mp.conj(coeffs.ehat(s)(p))) <= mp.mpf(10) ** -40 * max(1, abs(coeffs.ehat(s)(p)))


def test_g_series_leading_terms():
    m, r = 1, 4
    z = mp.mpc("0.6", "0.3")
    v = maps.bessel_vars(z)
    gp = coeffs.g_series(m, r, z, 6, PLAIN)
    pp, pt = coeffs.g_prefactor(v, PLAIN), coeffs.g_prefactor(v, TILDE)
    assert abs(pp ** 4 * v.f * v.zeta - 1) < mp.mpf(10) ** -40
    assert abs(pt ** 4 * v.f / v.zeta - 1) < mp.mpf(10) ** -40
    assert abs(gp[2 * m + 1] - 2 * coeffs.cal_E(2 * m + 1, z, PLAIN) * pp) < mp.mpf(10) ** -40
    gt = coeffs.g_series(m, r, z, 6, TILDE)
    assert abs(gt[2 * m + 2] - 2 * pt * coeffs.cal_E(2 * m + 2, z, TILDE)) < mp.mpf(10) ** -40


def test_g_series_next_term_closed_form():
    # G_{m,2m+3}: coefficient of w^{2m+3} of 2 pref [e^{even} sinh(odd) - main]
    m, r = 1, 4
    rng = random.Random(9)
    for _ in range(10):
        z = mp.mpc(rng.uniform(0.1, 0.9), rng.uniform(-0.5, 0.5))
        v = maps.bessel_vars(z)
        E = [None] + [coeffs.cal_E(s, z, PLAIN) for s in range(1, 6)]
        pref = coeffs.g_prefactor(v, PLAIN)
        assert abs(pref ** 4 * v.f * v.zeta - 1) < mp.mpf(10) ** -40
        # order 5 coefficient of exp(E2 w^2 + E4 w^4) sinh(E1 w + E3 w^3 + E5 w^5) minus the
        # main term exp(E2 w^2) sinh(E1 w): E5 + E2 E3 + E1 E4 + E1^2 E3 / 2 + E1^3 E2/6 ... + ...
        full = E[5] + E[2] * E[3] + E[4] * E[1] + E[1] ** 2 * E[3] / 2 + E[2] * E[1] ** 3 / 6 \
            + E[2] ** 2 * E[1] / 2 + E[1] ** 5 / 120
        main = E[2] ** 2 * E[1] / 2 + E[2] * E[1] ** 3 / 6 + E[1] ** 5 / 120
        ref = 2 * pref * (full - main)
        val = coeffs.g_series(m, r, z, 6, PLAIN)[2 * m + 3]
        assert abs(val - ref) < mp.mpf(10) ** -(mp.mp.dps - 8) * max(1, abs(ref))


def test_g_series_truncation_consistency():
    z = mp.mpc("0.7", "0.2")
    a = coeffs.g_series(1, 4, z, 6, PLAIN)
    b = coeffs.g_series(1, 4, z, 8, PLAIN)
    for k in range(0, 14):
        assert a[k] == b[k]


def test_formal_series_exp_log_consistency():
    s = coeffs.FormalSeries([0, mp.mpf(1), 0, 0, 0, 0])
    e = s.exp()
    for k in range(6):
        assert abs(e[k] - mp.mpf(1) / math.factorial(k)) < mp.mpf(10) ** -45
