import mpmath as mp
import pytest

from airybounds import bounds_away, bounds_near as bn, coeffs, maps, quad
from airybounds.coeffs import PLAIN, TILDE

import reference_values as pv


def digits_ok(x, ref, k):
    return abs(mp.mpf(x) / mp.mpf(ref) - 1) <= 5 * mp.mpf(10) ** -k


def test_contour_scalars(geo):
    U, Ut, rho = geo.contour_scalars()
    assert digits_ok(U, "0.935", 3)
    assert digits_ok(rho, "0.685", 3)
    assert digits_ok(Ut, "1.079", 3)


def test_sups_certified(geo):
    assert geo.certify_sups(2000) == []


def test_f_table_values(geo):
    assert digits_ok(geo.f_mk(1, 10), "3.15e4", 3)
    assert digits_ok(mp.sqrt(geo.f_mk(2, 10)), "2.84e4", 3)
    seg, ray, q1, q2 = geo.f_parts(2, 10)
    assert digits_ok(q1, "8.06e8", 3)
    assert digits_ok(ray, "1.14e6", 3)
    assert seg == 0  # r0 = 1: the segment from z0 - r0 = 0 is empty


def test_bold_omega_structure(geo):
    F = geo.f_table()
    nu = mp.mpf(100)
    om, vp = bn.bold_omega_varpi(2, nu, geo)
    assert abs(om - (2 * F[1, 2] + F[2, 1] / nu)) < mp.mpf(10) ** -40
    assert abs(vp - 4 * F[1, 1]) < mp.mpf(10) ** -40
    vals = [bn.bold_omega_varpi(geo.n, nu, geo)[0] for nu in (50, 100, 200)]
    assert vals[0] > vals[1] > vals[2]


def test_bold_omega_missing_entries(geo):
    with pytest.raises(bn.PrecomputeError):
        bn.bold_omega_varpi(4, 100, geo, table={})


def test_bold_e_order_one(geo):
    for variant in (TILDE, PLAIN):
        a, b = (bn.bold_e(geo.n, nu, variant, geo) for nu in (50, 100))
        assert max(a, b) / min(a, b) < 2


def test_d_term_small_part_of_table6_bound(geo):
    br = bn.kappa_bound(mp.mpf("1.1"), 100, geo, PLAIN)
    assert br.d_term < mp.mpf("1e-3") * br.total


def test_cauchy_radius_independence(geo):
    g2 = bn.get_geometry(1, 4, 50, R="1.1")
    z = mp.mpf("0.9")
    for variant in (TILDE, PLAIN):
        a, b = bn.cauchy_main(z, 100, geo, variant), bn.cauchy_main(z, 100, g2, variant)
        assert abs(a - b) < mp.mpf(10) ** -20 * abs(a)


def test_cauchy_equals_direct_plus_pole_contribution(geo):
    # The main term has an essential singularity at z0, which sits inside the
    # contour: Cauchy(big) - Cauchy(small circle about z0) = direct value.
    z, nu = mp.mpf("0.9"), 100
    v = maps.bessel_vars(z)
    for variant in (TILDE, PLAIN):
        f = lambda t: bounds_away.main_term(t, nu, 1, variant) * coeffs.g_prefactor(maps.bessel_vars(t), variant)
        small = bn.regular_part(f, z, 1, "0.05", 400)
        direct = bounds_away.main_term(z, nu, 1, variant) * coeffs.g_prefactor(v, variant)
        assert abs(bn.cauchy_main(z, nu, geo, variant) - small - direct) < mp.mpf(10) ** -20 * abs(direct)


def test_cauchy_outside_contour(geo):
    with pytest.raises(bn.ContourDomainError):
        bn.cauchy_main(3, 100, geo, TILDE)


def test_regular_part_known_function():
    z0 = mp.mpf(1)
    z = mp.mpc("1.2", "0.3")
    G = bn.regular_part(lambda t: 1 / (t - z0) + (t - z0), z, "1.5", "1.3", 200)
    assert abs(G - (z - z0)) < mp.mpf(10) ** -40


def test_regular_part_linearity():
    z = mp.mpc("0.8", "-0.2")
    g1 = lambda t: 1 / (t - 1) ** 2 + mp.exp(t)
    g2 = lambda t: 3 / (t - 1) + t ** 3
    a = mp.mpf("2.5")
    lhs = bn.regular_part(lambda t: a * g1(t) + g2(t), z, "1.5", "1.3", 200)
    rhs = a * bn.regular_part(g1, z, "1.5", "1.3", 200) + bn.regular_part(g2, z, "1.5", "1.3", 200)
    assert abs(lhs - rhs) < mp.mpf(10) ** -40
    assert abs(lhs - (a * mp.exp(z) + z ** 3)) < mp.mpf(10) ** -35


def test_g_star_dominant_part_of_bound(geo):
    z = mp.mpc(1, "0.1")
    br = bn.kappa_bound(z, 100, geo, TILDE, N=4)
    assert br.series > mp.mpf("0.99") * br.total


def test_kappa_examples(geo):
    assert digits_ok(bn.kappa_bound(mp.mpc(1, "0.1"), 100, geo, TILDE).total, pv.TABLE5[3, 100][1], 6)
    assert digits_ok(bn.kappa_bound(mp.mpf("1.1"), 50, geo, PLAIN).total, pv.TABLE6[0, 50][1], 6)
    assert digits_ok(bn.kappa_bound(mp.mpf("0.7"), 100, geo, TILDE).total, pv.TABLE7["0.3", "tilde"][1], 6)


def test_u_m_and_G_m(geo):
    ut, up = bn.u_m(geo, TILDE), bn.u_m(geo, PLAIN)
    assert 1 < up < ut < 5
    assert bn.G_m(geo, TILDE) > 0 and bn.G_m(geo, PLAIN) > 0


def test_kappa_tail_error(geo):
    with pytest.raises(bn.TailBoundError):
        bn.kappa_bound(mp.mpf("1.1"), 2, geo, TILDE)
    with pytest.raises(ValueError):
        bn.kappa_bound(mp.mpf("1.1"), 100, geo, TILDE, N=1)


def test_true_kappa_examples(geo):
    assert digits_ok(bn.true_kappa(mp.mpf("0.9"), 100, geo, TILDE), pv.TABLE5[6, 100][0], 6)
    z = 1 + mp.mpf("0.1") * mp.expj(mp.pi / 3)
    assert digits_ok(bn.true_kappa(z, 50, geo, PLAIN), pv.TABLE6[2, 50][0], 6)


def test_turning_point_itself(geo):
    for variant in (TILDE, PLAIN):
        t = bn.true_kappa(1, 100, geo, variant)
        b = bn.kappa_bound(1, 100, geo, variant).total
        assert mp.isfinite(b) and t <= b


def test_maclaurin_tail_bound(geo):
    for k in range(10):
        t = 1 + mp.expj(mp.pi * k / 9)
        for variant in (PLAIN, TILDE):
            actual, bound = bn.maclaurin_tail_check(t, 100, 4, geo, variant)
            assert actual <= bound


def test_trapezoid_node_doubling(geo):
    g2 = bn.get_geometry(1, 4, 50, N_contour=1000)
    z = mp.mpc(1, "0.1")
    a, b = bn.cauchy_main(z, 100, geo, TILDE), bn.cauchy_main(z, 100, g2, TILDE)
    assert abs(a - b) < mp.mpf(10) ** -20 * abs(a)
