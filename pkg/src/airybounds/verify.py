"""Verification suites: exact sequence certification, the appendix
inequalities, quadrature self-checks, oracle identities and soundness
(true error <= bound) on the reproduction grids."""
from __future__ import annotations

import random
import warnings
from dataclasses import dataclass

import mpmath as mp

from . import coeffs, quad, specfun
from .xprec import PrecisionWarning

SUITES = ("sequences", "appendix", "quadrature", "oracles", "soundness")


@dataclass(frozen=True)
class Check:
    suite: str
    name: str
    ok: bool
    detail: str = ""


def _num(x, d=6):
    return mp.nstr(x, d)


def suite_sequences(cfg=None):
    fails = coeffs.certify_sequences(200)
    yield Check("sequences", "theorem bounds s<=200, a_s>0, a~_s<0", not fails, "; ".join(fails[:5]))


def suite_appendix(cfg=None):
    fails = coeffs.certify_appendix(500, 24)
    yield Check("appendix", "S_n bound, (7/36)S_s<1, c~_s>=(s-1)!", not fails, "; ".join(fails[:5]))


def suite_quadrature(cfg=None):
    dps = cfg.dps if cfg else 50
    with mp.workdps(dps):
        tol = mp.mpf(10) ** (-(dps - 10))
        # GL exactness for degree 2n-1
        rng = random.Random(1)
        n = 8
        cs = [mp.mpf(rng.randint(-9, 9)) / rng.randint(1, 9) for _ in range(2 * n)]
        val = quad.gauss_legendre(lambda t: mp.polyval(cs[::-1], t), quad.Segment(0, 1), n)
        exact = mp.fsum(c / (k + 1) for k, c in enumerate(cs))
        yield Check("quadrature", "GL exact for degree 2n-1", abs(val - exact) < tol, _num(abs(val - exact)))
        # trapezoid on Laurent monomials
        worst = mp.mpf(0)
        c = mp.mpc("0.3", "0.2")
        for k in range(-4, 5):
            v = quad.trapezoid_circle(lambda t: (t - c) ** k, c, "0.7", 64)
            ref = 2j * mp.pi if k == -1 else 0
            worst = max(worst, abs(v - ref))
        yield Check("quadrature", "trapezoid Laurent monomials", worst < tol, _num(worst))
        # l0 versus its defining integral
        worst = mp.mpf(0)
        for k in range(5):
            z = 1 + mp.mpf(k) / 10 * mp.expj(k)
            direct = quad.integrate_abs(lambda t: 1 / (t - z), quad.Circle(1, 1), 40, 16)
            worst = max(worst, abs(direct / quad.l0(z) - 1))
        yield Check("quadrature", "l0 equals contour integral", worst < mp.mpf("1e-20"), _num(worst))
        # AGM against Gauss-Legendre of the defining integral
        k = mp.mpf(1) / 2
        gl = quad.gl_interval(lambda th: 1 / mp.sqrt(1 - (k * mp.sin(th)) ** 2), 0, mp.pi / 2, 30)
        err = abs(gl - quad.agm_elliptic_K(k))
        yield Check("quadrature", "AGM K(1/2) vs GL", err < mp.mpf("1e-25"), _num(err))


def airy_connection_residual(x):
    w = mp.expj(2 * mp.pi / 3)
    a0, _ = specfun.airy(0, x)
    a1, _ = specfun.airy(1, x)
    am, _ = specfun.airy(-1, x)
    return abs(a0 + a1 / w + w * am) / max(abs(a0), abs(a1), abs(am))


def wronskian_residual(n: int, x):
    J = specfun.bessel_J(n, x)
    Y = specfun.bessel_Y(n, x)
    Jp = specfun.bessel_J_prime(n, x)
    Yp = specfun.bessel_Y_prime(n, x)
    ref = 2 / (mp.pi * x)
    return abs(J * Yp - Jp * Y - ref) / abs(ref)


def suite_oracles(cfg=None):
    dps = cfg.dps if cfg else 50
    with mp.workdps(dps):
        rng = random.Random(7)
        worst = mp.mpf(0)
        for _ in range(20):
            x = mp.mpc(rng.uniform(-12, 12), rng.uniform(-12, 12))
            worst = max(worst, airy_connection_residual(x))
        yield Check("oracles", "Airy connection residual", worst < mp.mpf(10) ** (-(dps - 10)), _num(worst))
        worst = mp.mpf(0)
        for n, x in ((100, mp.mpc(20, 5)), (100, mp.mpf(50)), (50, mp.mpc(30, -4)), (10, mp.mpf(2))):
            worst = max(worst, wronskian_residual(n, x))
        yield Check("oracles", "Bessel Wronskian residual", worst < mp.mpf(10) ** (-(dps - 10)), _num(worst))
        # series / asymptotic overlap for Airy
        R = specfun.airy_switch_radius(dps)
        worst = mp.mpf(0)
        for rad in (R - 2, R, R + 2):
            for ang in (0, 1, 2):
                x = rad * mp.expj(ang)
                s, _ = specfun._airy_maclaurin(x)
                a, _ = specfun._airy_asymptotic(x)
                worst = max(worst, abs(s - a) / abs(s))
        yield Check("oracles", "Airy series/asymptotic overlap", worst < mp.mpf(10) ** (-(dps - 10)), _num(worst))


def soundness_points(cfg):
    """(kind, z, nu, variant) for the reproduction grids plus random extras."""
    from . import tables
    from .coeffs import PLAIN, TILDE
    pts = []
    for z in cfg.z_grid_1:
        pts.append(("away", mp.mpf(z), cfg.nu, TILDE))
    for z in cfg.z_grid_2:
        pts.append(("away", mp.mpf(z), cfg.nu, PLAIN))
    for nu in cfg.nu_grid_34:
        pts.append(("away", mp.mpf(cfg.z_34), nu, TILDE))
        pts.append(("away", mp.mpf(cfg.z_34), nu, PLAIN))
    for k in range(cfg.alpha_steps + 1):
        z = tables.near_point(k, cfg.alpha_steps, cfg.near_radius)
        for nu in cfg.nu_grid_56:
            pts.append(("near", z, nu, TILDE))
            pts.append(("near", z, nu, PLAIN))
    for rz in cfg.rz_grid_7:
        pts.append(("near", 1 - mp.mpf(rz), cfg.nu, TILDE))
        pts.append(("near", 1 - mp.mpf(rz), cfg.nu, PLAIN))
    pts.extend(random_points(20))
    return pts


def random_points(count: int, seed: int = 2024):
    """Off-grid (kind, z, nu, variant) samples: away points in (0, 0.45) and
    near points in the disc |z - 1| <= 0.45, integer nu in [30, 120]."""
    from .coeffs import PLAIN, TILDE
    rng = random.Random(seed)
    out = []
    for i in range(count):
        nu = rng.randint(30, 120)
        var = TILDE if i % 2 == 0 else PLAIN
        if i % 4 < 2:
            out.append(("away", mp.mpf(rng.uniform(0.02, 0.45)), nu, var))
        else:
            rad, ang = rng.uniform(0.0, 0.45), rng.uniform(-3.1, 3.1)
            out.append(("near", 1 + rad * mp.expj(ang), nu, var))
    return out


def check_point(kind, z, nu, variant, cfg):
    from . import tables
    row = (tables.away_row if kind == "away" else tables.near_row)(z, nu, variant, cfg)
    return row.true_error <= row.bound, row


def suite_soundness(cfg=None):
    from . import tables
    cfg = cfg or tables.Config()
    bad = []
    pts = soundness_points(cfg)
    for kind, z, nu, var in pts:
        ok, row = check_point(kind, z, nu, var, cfg)
        if not ok:
            bad.append(f"{kind} z={_num(z, 8)} nu={nu} {var}: {_num(row.true_error)} > {_num(row.bound)}")
    yield Check("soundness", f"true <= bound on {len(pts)} points", not bad, "; ".join(bad[:5]))


_RUNNERS = {
    "sequences": suite_sequences,
    "appendix": suite_appendix,
    "quadrature": suite_quadrature,
    "oracles": suite_oracles,
    "soundness": suite_soundness,
}


def run_suite(name: str, cfg=None):
    """(checks, degraded) where degraded is True if a precision warning fired."""
    if name not in _RUNNERS:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", PrecisionWarning)
        checks = list(_RUNNERS[name](cfg))
    degraded = any(issubclass(w.category, PrecisionWarning) for w in caught)
    return checks, degraded
