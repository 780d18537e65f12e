"""Bessel functions J_nu(nu z) and H^(1)_nu(nu z) from the Airy-type
expansion together with a certified absolute error.

    J_nu(nu z)   = c_{m,0}  z^{-1/2} {Ai(nu^{2/3} zeta) A + Ai'(nu^{2/3} zeta) B}
    H1_nu(nu z)  = c_{m,-1} z^{-1/2} {Ai_{-1}(nu^{2/3} zeta) A + Ai_{-1}'(nu^{2/3} zeta) B}

where A = A_{2m+2}(nu, z), B = B_{2m+1}(nu, z).  ``exact_AB`` inverts these
relations with the extended-precision Airy/Bessel oracles; ``eval_certified``
replaces A, B by the truncated expansion (elementary form away from z0 = 1,
Cauchy-integral form near it) and propagates the error bounds.
"""
from __future__ import annotations

from dataclasses import dataclass

import mpmath as mp

from . import bounds_away, coeffs, maps, specfun
from .coeffs import PLAIN, TILDE
from .xprec import (DEFAULT_DPS, UnsupportedArgumentError, ln_gamma_exact,
                    stirling_sum)

NEAR_RADIUS = mp.mpf("0.5")
J_KIND, H1_KIND = "J", "H1"


def _integer_order(nu) -> int:
    n = int(mp.nint(nu))
    if n != nu or n < 1:
        raise UnsupportedArgumentError("the Bessel oracles support positive integer orders only")
    return n


def normalizer_K(m: int, r: int, nu):
    """K = pi^{1/2} e^nu nu^{5/6-nu} Gamma(nu) exp(-sum_{j<m+r} C_{2j+1}/nu^{2j+1})."""
    nu = mp.mpf(nu)
    lg = ln_gamma_exact(_integer_order(nu)) if nu == int(nu) else mp.loggamma(nu)
    with mp.extradps(10):
        ln = mp.log(mp.pi) / 2 + nu + (mp.mpf(5) / 6 - nu) * mp.log(nu) + lg - stirling_sum(nu, m + r - 1)
        return mp.exp(ln)


def _ab_upper(m, r, nu, z, extra):
    """A, B and the cancellation loss (digits) for Im z >= 0."""
    n = _integer_order(nu)
    v = maps.bessel_vars(z)
    x = mp.mpf(nu) ** (mp.mpf(2) / 3) * v.zeta
    am1, am1p = specfun.airy(-1, x)
    a0, a0p = specfun.airy(0, x)
    J = specfun.bessel_J(n, nu * z)
    H = specfun.bessel_H1(n, nu * z)
    K = normalizer_K(m, r, nu)
    e6 = mp.expj(mp.pi / 6)
    tA1, tA2 = e6 * am1p * J, mp.mpf(1) / 2 * 1j * a0p * H
    tB1, tB2 = mp.mpf(1) / 2 * 1j * a0 * H, e6 * am1 * J
    sz = mp.sqrt(z)
    A = K * sz * (tA1 - tA2)
    B = K * sz * (tB1 - tB2)
    lost = 0
    for (t1, t2), val in (((tA1, tA2), A / (K * sz)), ((tB1, tB2), B / (K * sz))):
        big = max(abs(t1), abs(t2))
        if val == 0:
            lost = max(lost, mp.mp.dps)
        elif big > 0:
            lost = max(lost, int(mp.ceil(mp.log10(big / abs(val)))))
    return A, B, lost


def exact_AB(m: int, r: int, nu, z):
    """(A_{2m+2}(nu, z), B_{2m+1}(nu, z)) from J, H1 and the Airy functions,
    with guard digits raised until the cancellation between the two products
    is covered. Lower half-plane values follow by conjugation."""
    z = mp.mpmathify(z)
    if mp.im(z) < 0:
        A, B = exact_AB(m, r, nu, mp.conj(z))
        return mp.conj(A), mp.conj(B)
    dps = mp.mp.dps
    guard = 20
    for _ in range(8):
        with mp.workdps(dps + guard):
            A, B, lost = _ab_upper(m, r, mp.mpf(nu), mp.mpmathify(z), guard)
        if guard >= lost + 15:
            return +A, +B
        guard = lost + 25
    raise ArithmeticError("could not cover cancellation in the exact A, B")


# ---------------------------------------------------------------------------
# Normalizing constants
# ---------------------------------------------------------------------------

def c_constants(m: int, r: int, nu, route: str = "exact"):
    """(c_{m,0}(nu), c_{m,-1}(nu)).

    route="exact":  c_{m,0} = 2 pi/K, c_{m,-1} = 4 pi e^{-pi i/3}/K, which is
    what the end-point formulas reduce to once the values of the error terms
    at z = 0 and z = i inf are inserted exactly.
    route="expansion": the end-point formulas with eps~, eps at z = 0 and
    i inf replaced by the remainder of the expansion through order n - 1
    (n = 2m+2r+2); agrees with the exact route to O(nu^{-n+1}).
    """
    nu = mp.mpf(nu)
    if route == "exact":
        K = normalizer_K(m, r, nu)
        return 2 * mp.pi / K, 4 * mp.pi * mp.expj(-mp.pi / 3) / K
    if route != "expansion":
        raise ValueError("route must be 'exact' or 'expansion'")
    et = eps_limit_at_zero(m, r, nu, TILDE)
    ep = eps_limit_at_zero(m, r, nu, PLAIN)
    lg = ln_gamma_exact(_integer_order(nu)) if nu == int(nu) else mp.loggamma(nu)
    pref = 2 * mp.sqrt(mp.pi) * mp.exp((nu - mp.mpf(5) / 6) * mp.log(nu) - nu - lg)
    c0 = pref / (mp.exp(-stirling_sum(nu, m + r)) + et / 2 - ep / 2)
    # at i inf every E_s vanishes (p -> 0, xi -> inf), so the remainders do too
    cm1 = mp.mpf(2) ** (mp.mpf(3) / 2) * mp.expj(-mp.pi / 3) / nu ** (mp.mpf(1) / 3)
    return c0, cm1


def _ehat_at_one(s: int):
    return coeffs.ehat(s)(mp.mpf(1))


def eps_limit_at_zero(m: int, r: int, nu, variant: str):
    """Expansion estimate of eps~_{2m+2,r}(nu, 0) or eps_{2m+1,r}(nu, 0):
    twice the difference between the expansion through order n - 1 and the
    main term, with E_s(0) = E^_s(p = 1)."""
    nu = mp.mpf(nu)
    n = 2 * m + 2 * r + 2
    E = [None] + [_ehat_at_one(s) for s in range(1, n)]
    full_even = mp.fsum(E[s] / nu ** s for s in range(2, n, 2))
    full_odd = mp.fsum(E[s] / nu ** s for s in range(1, n, 2))
    main = bounds_away.main_term(None, nu, m, variant, E=E)
    if variant == TILDE:
        full = mp.exp(full_even) * mp.cosh(full_odd)
    else:
        full = mp.exp(full_even) * mp.sinh(full_odd)
    return 2 * (full - main)


# ---------------------------------------------------------------------------
# Certified evaluation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CertifiedValue:
    value: object
    certificate: object
    regime: str          # "away" or "near"
    A: object
    B: object
    bound_A: object      # bound on |A - approximation|
    bound_B: object


def _approx_AB_away(m, r, nu, z, dps):
    ctx = bounds_away.ExpansionContext(nu, m, r, dps)
    v = maps.bessel_vars(z)
    mt = bounds_away.main_term(z, nu, m, TILDE)
    mp_ = bounds_away.main_term(z, nu, m, PLAIN)
    bt = bounds_away.bound_eps(z, ctx, TILDE).total
    bp = bounds_away.bound_eps(z, ctx, PLAIN).total
    nu13 = mp.mpf(nu) ** (mp.mpf(1) / 3)
    A = v.zeta_over_f_q * mt
    B = mp_ / (nu13 * v.zeta_f_q)
    return A, B, abs(v.zeta_over_f_q) * bt / 2, bp / (2 * nu13 * abs(v.zeta_f_q))


def _approx_AB_near(m, r, nu, z, dps):
    from . import bounds_near
    geo = bounds_near.get_geometry(m, r, dps)
    nu13 = mp.mpf(nu) ** (mp.mpf(1) / 3)
    A = bounds_near.cauchy_main(z, nu, geo, TILDE)
    B = bounds_near.cauchy_main(z, nu, geo, PLAIN) / nu13
    kt = bounds_near.kappa_bound(z, nu, geo, TILDE).total
    kp = bounds_near.kappa_bound(z, nu, geo, PLAIN).total
    return A, B, kt / 2, kp / (2 * nu13)


def eval_certified(kind: str, m: int, r: int, nu, z, dps: int = DEFAULT_DPS,
                   regime: str | None = None) -> CertifiedValue:
    """Approximate J_nu(nu z) (kind "J") or H^(1)_nu(nu z) (kind "H1") with an
    absolute error certificate. The near form is used for |z - 1| <= 0.5."""
    if kind not in (J_KIND, H1_KIND):
        raise ValueError("kind must be 'J' or 'H1'")
    with mp.workdps(dps):
        z = mp.mpmathify(z)
        nu = mp.mpf(nu)
        if regime is None:
            regime = "near" if abs(z - 1) <= NEAR_RADIUS else "away"
        if regime == "near":
            A, B, eA, eB = _approx_AB_near(m, r, nu, z, dps)
        elif regime == "away":
            A, B, eA, eB = _approx_AB_away(m, r, nu, z, dps)
        else:
            raise ValueError("regime must be 'near' or 'away'")
        c0, cm1 = c_constants(m, r, nu)
        x = nu ** (mp.mpf(2) / 3) * maps.bessel_vars(z).zeta
        if kind == J_KIND:
            ai, aip = specfun.airy(0, x)
            c = c0
        else:
            ai, aip = specfun.airy(-1, x)
            c = cm1
        pre = c / mp.sqrt(z)
        value = pre * (ai * A + aip * B)
        cert = abs(pre) * (abs(ai) * eA + abs(aip) * eB)
        # rounding allowance for the working precision
        cert += abs(value) * mp.mpf(10) ** (-(dps - 5))
        return CertifiedValue(value, cert, regime, A, B, eA, eB)


def bessel_oracle(kind: str, nu, z):
    """Reference J_nu(nu z) or H^(1)_nu(nu z) from the series oracles."""
    n = _integer_order(nu)
    x = mp.mpf(nu) * mp.mpmathify(z)
    return specfun.bessel_J(n, x) if kind == J_KIND else specfun.bessel_H1(n, x)
