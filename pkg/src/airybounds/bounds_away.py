"""Error bounds for the Airy-type expansions of the Bessel coefficient
functions A_{2m+2}(nu, z), B_{2m+1}(nu, z) at points away from the turning
point z0 = 1.

The bound for eps~ (resp. eps) consists of two exp-minus-one terms built from
the calligraphic coefficients E~_s (resp. E_s) with 2m+2 <= s <= 2m+2r+1
(resp. 2m+1 <= s <= 2m+2r+1) plus d_n/nu^n, n = 2m+2r+2, where d_n collects
path integrals of the F_s (omega, varpi), the sequence-driven terms
(gamma, beta) and the connection constant delta.

Reference points for the Bessel instance: z^(0) = 0, z^(-1) = +i inf,
z^(1) = -i inf; paths are the segment 0 -> z and vertical rays from z.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import mpmath as mp

from . import coeffs, maps, quad
from .coeffs import PLAIN, TILDE
from .xprec import (DEFAULT_DPS, MIN_BOUND_DPS, exp_m1_stable, gamma_exact,
                    ln_gamma_exact, stirling_sum, to_mp)


class PathError(ValueError):
    """An integration path would cross the branch cut (1, inf) or hit z0."""


@dataclass(frozen=True)
class BoundBreakdown:
    total: object
    exp_term_1: object
    exp_term_2: object
    d_term: object      # d_n / nu^n
    e_j: object
    e_k: object
    region: tuple
    jk: tuple


@dataclass(frozen=True)
class ExpansionContext:
    """(nu, m, r, precision) with the tables a bound evaluation needs."""
    nu: object
    m: int = 1
    r: int = 4
    dps: int = DEFAULT_DPS
    gl_nodes: int = 30
    gl_panels: int = 1
    delta: object = field(init=False, repr=False)
    table: object = field(init=False, repr=False)

    def __post_init__(self):
        if self.m < 1 or self.r < 1:
            raise ValueError("m and r must be positive integers")
        if self.dps < MIN_BOUND_DPS:
            raise ValueError(f"bound evaluation needs at least {MIN_BOUND_DPS} digits")
        with mp.workdps(self.dps):
            nu = mp.mpf(self.nu)
            if not nu > 0:
                raise ValueError("nu must be positive")
            object.__setattr__(self, "nu", nu)
            object.__setattr__(self, "table", coeffs.seq_a(max(30, 2 * self.n + 2)))
            object.__setattr__(self, "delta", delta_n(nu, self.m, self.r))

    @property
    def n(self) -> int:
        return 2 * self.m + 2 * self.r + 2

    def delta_j(self, j: int):
        """delta_{n,j}: zero for j = 0, the Gamma-function constant for j = +-1."""
        return mp.mpf(0) if j == 0 else self.delta


def lambda_(n: int):
    """Lambda_n = sqrt(pi) Gamma(n/2 - 1/2)/(2 Gamma(n/2))."""
    if n < 2:
        raise ValueError("Lambda_n requires n >= 2")
    from fractions import Fraction
    return mp.sqrt(mp.pi) * gamma_exact(Fraction(n - 1, 2)) / (2 * gamma_exact(Fraction(n, 2)))


Lambda = lambda_


def gamma_beta(n: int, xi_abs, nu, variant: str = PLAIN, table=None):
    """(gamma_n, beta_n) for the plain variant or (gamma~_n, beta~_n) for tilde."""
    tl = variant == TILDE
    if variant not in (PLAIN, TILDE):
        raise ValueError("variant must be 'plain' or 'tilde'")
    xi_abs = mp.mpf(xi_abs)
    if xi_abs == 0:
        raise coeffs.PoleError("gamma_n has a pole at xi = 0")
    nu = mp.mpf(nu)
    t = table or coeffs.seq_a(max(30, 2 * n + 2))
    seq = t.at if tl else t.a
    a = [None] + [to_mp(seq[i]) for i in range(1, 2 * n + 1)]
    A = [None] + [abs(v) for v in a[1:]]
    g = 2 * A[n] * lambda_(n + 1) / xi_abs ** n
    inner = mp.mpf(0)
    for s in range(0, n - 1):
        conv = mp.mpf(0)
        for k in range(s + 1, n):
            conv += a[k] * a[s + n - k]
        inner += lambda_(n + s + 2) / (nu * xi_abs) ** s * conv
    g += inner / (nu * xi_abs ** (n + 1))
    b = mp.mpf(0)
    for s in range(0, n - 1):
        b += A[s + 1] * lambda_(s + 2) / (nu * xi_abs) ** s
    return g, 4 * b / xi_abs


def delta_n(nu, m: int, r: int):
    """delta = (2 pi)^{-1/2} e^nu Gamma(nu) nu^{1/2-nu} exp(-sum_{j<=m+r} C_{2j+1}/nu^{2j+1}) - 1,
    evaluated as expm1 of the logarithm so that no cancellation occurs."""
    nu = mp.mpf(nu)
    if nu == int(nu):
        lg = ln_gamma_exact(int(nu))
    else:
        lg = mp.loggamma(nu)
    with mp.extradps(10):
        w = lg + nu - (nu - mp.mpf(1) / 2) * mp.log(nu) - mp.log(2 * mp.pi) / 2 - stirling_sum(nu, m + r)
        val = exp_m1_stable(w)
    return +val


# ---------------------------------------------------------------------------
# omega / varpi path integrals
# ---------------------------------------------------------------------------

def _omega_integrands(n: int):
    """Vector of integrands [F_n f^{1/2}, sum_k F_k F_{s+n-k-1} f^{1/2} (s=1..n-1),
    F_{s+1} f^{1/2} (s=0..n-2)], each depending on t only through |.|."""
    polys = [None] + [coeffs.fhat(k) for k in range(1, n + 1)]

    def fvec(t):
        sq = mp.sqrt(1 - t * t)
        p = 1 / sq
        fh = sq / t
        F = [None] + [polys[k](p) for k in range(1, n + 1)]
        out = [F[n] * fh]
        for s in range(1, n):
            acc = mp.mpf(0)
            for k in range(s, n):
                acc += F[k] * F[s + n - k - 1]
            out.append(acc * fh)
        for s in range(0, n - 1):
            out.append(F[s + 1] * fh)
        return out

    return fvec


def omega_varpi_path(n: int, path, nu, nodes: int = 30, panels: int = 1):
    """omega_n and varpi_n for an explicit integration path."""
    nu = mp.mpf(nu)
    I = quad.integrate_abs_many(_omega_integrands(n), path, nodes, panels)
    om = 2 * I[0]
    for s in range(1, n):
        om += I[s] / nu ** s
    vp = mp.mpf(0)
    for s in range(0, n - 1):
        vp += I[n + s] / nu ** s
    return om, 4 * vp


def reference_path(z, j: int):
    """Path from z^(j) to z: segment from 0 (j = 0), vertical ray to +i inf
    (j = -1) or to -i inf (j = +1)."""
    z = mp.mpmathify(z)
    x, y = mp.re(z), mp.im(z)
    if j == 0:
        if y == 0 and x >= 1:
            raise PathError("segment 0 -> z runs along the cut [1, inf)")
        return quad.Segment(mp.mpf(0), z)
    if j not in (1, -1):
        raise ValueError("j must be 0 or +-1")
    direction = -j  # j = -1 -> upward ray
    crosses = (y * direction < 0) or (y == 0 and direction == -1)
    if x >= 1 and crosses:
        raise PathError("vertical ray from z crosses the cut [1, inf)")
    if x == 1 and y == 0:
        raise PathError("path starts at the turning point")
    return quad.VerticalRay(z, direction)


def omega_varpi(n: int, z, j: int, nu, nodes: int = 30, panels: int = 1):
    """(omega_{n,j}(nu, z), varpi_{n,j}(nu, z))."""
    z = mp.mpmathify(z)
    if j == 0 and z == 0:
        return mp.mpf(0), mp.mpf(0)
    return omega_varpi_path(n, reference_path(z, j), nu, nodes, panels)


def omega_fallback(n: int, nu, nodes: int = 30, panels: int = 1):
    """Omega_n: max over reference-point pairs of omega exp(varpi/nu + omega/nu^n).

    Pairs (0, +-i inf) use the imaginary half-axes, the pair (+i inf, -i inf)
    the whole imaginary axis (twice the half-axis integrals by symmetry)."""
    nu = mp.mpf(nu)
    om, vp = omega_varpi_path(n, quad.VerticalRay(mp.mpf(0), 1), nu, nodes, panels)
    cands = [(om, vp), (2 * om, 2 * vp)]
    return max(o * mp.exp(v / nu + o / nu ** n) for o, v in cands)


def delta_fallback_bound(n: int, nu, nodes: int = 30, panels: int = 1):
    """|delta_{n,+-1}| <= 2 Omega_n/(nu^n - Omega_n) when lambda is not known."""
    nu = mp.mpf(nu)
    Om = omega_fallback(n, nu, nodes, panels)
    den = nu ** n - Om
    if den <= 0:
        raise ValueError("nu too small for the Omega fallback bound")
    return 2 * Om / den


# ---------------------------------------------------------------------------
# Bound assembly
# ---------------------------------------------------------------------------

def region_jk(z, nu) -> tuple[tuple[int, int], tuple[int, int]]:
    """(region tag, (j, k)) for the d-term selection rule."""
    tag = maps.classify(z, nu)
    a, b = tag
    if a == 0:
        return tag, (b, 0)
    if b == 0:
        return tag, (a, 0)
    return tag, (a, b)


def e_term(ctx: ExpansionContext, z, j: int, xi_abs, variant: str):
    nu, n = ctx.nu, ctx.n
    om, vp = omega_varpi(n, z, j, nu, ctx.gl_nodes, ctx.gl_panels)
    g, b = gamma_beta(n, xi_abs, nu, variant, ctx.table)
    return (nu ** n * abs(ctx.delta_j(j))
            + om * mp.exp(vp / nu + om / nu ** n)
            + g * mp.exp(b / nu + g / nu ** n))


def _exp_partial(E, lo: int, hi: int, nu, sign: int, real: bool):
    """sum_{s=lo}^{hi} sign^s E_s/nu^s (real parts if requested), ascending s."""
    acc = mp.mpf(0)
    for s in range(lo, hi + 1):
        v = sign ** s * E[s] / nu ** s
        acc += mp.re(v) if real else v
    return acc


def d_terms(z, ctx: ExpansionContext, variant: str = PLAIN, E=None):
    """(d_n, e_j, e_k, region, (j, k)) at z."""
    with mp.workdps(ctx.dps):
        z = mp.mpmathify(z)
        nu, n = ctx.nu, ctx.n
        v = maps.bessel_vars(z)
        if v.xi == 0:
            raise coeffs.PoleError("away-from-turning-point bound undefined at z0")
        if E is None:
            E = coeffs.cal_E_list(z, n - 1, variant)
        tag, (j, k) = region_jk(z, nu)
        ej = e_term(ctx, z, j, abs(v.xi), variant)
        ek = e_term(ctx, z, k, abs(v.xi), variant)
        d = (mp.exp(_exp_partial(E, 1, n - 1, nu, 1, True)) * ej * (1 + ej / (2 * nu ** n)) ** 2
             + mp.exp(_exp_partial(E, 1, n - 1, nu, -1, True)) * ek * (1 + ek / (2 * nu ** n)) ** 2)
        return d, ej, ek, tag, (j, k)


def bound_eps(z, ctx: ExpansionContext, variant: str = TILDE) -> BoundBreakdown:
    """Bound on |eps~_{2m+2,r}(nu, z)| (tilde) or |eps_{2m+1,r}(nu, z)| (plain)."""
    with mp.workdps(ctx.dps):
        z = mp.mpmathify(z)
        nu, n, m = ctx.nu, ctx.n, ctx.m
        E = coeffs.cal_E_list(z, n - 1, variant)
        lo = 2 * m + 2 if variant == TILDE else 2 * m + 1
        t1 = mp.exp(_exp_partial(E, 1, lo - 1, nu, 1, True)) * \
            abs(exp_m1_stable(_exp_partial(E, lo, n - 1, nu, 1, False)))
        t2 = mp.exp(_exp_partial(E, 1, lo - 1, nu, -1, True)) * \
            abs(exp_m1_stable(_exp_partial(E, lo, n - 1, nu, -1, False)))
        d, ej, ek, tag, jk = d_terms(z, ctx, variant, E)
        dterm = d / nu ** n
        return BoundBreakdown(t1 + t2 + dterm, t1, t2, dterm, ej, ek, tag, jk)


def main_term(z, nu, m: int, variant: str, E=None):
    """exp(sum E~_{2s}/nu^{2s}) cosh(sum E~_{2s+1}/nu^{2s+1}) (tilde, s <= m)
    or exp(sum E_{2s}/nu^{2s}) sinh(sum_{s<m} E_{2s+1}/nu^{2s+1}) (plain)."""
    nu = mp.mpf(nu)
    if E is None:
        E = coeffs.cal_E_list(z, 2 * m + 1, variant)
    even = mp.mpf(0)
    for s in range(1, m + 1):
        even += E[2 * s] / nu ** (2 * s)
    odd = mp.mpf(0)
    for s in range(0, m + 1 if variant == TILDE else m):
        odd += E[2 * s + 1] / nu ** (2 * s + 1)
    return mp.exp(even) * (mp.cosh(odd) if variant == TILDE else mp.sinh(odd))


def true_eps(z, ctx: ExpansionContext, variant: str = TILDE):
    """|eps~_{2m+2,r}| = 2|(f/zeta)^{1/4} A - main| or
    |eps_{2m+1,r}| = 2|nu^{1/3} (zeta f)^{1/4} B - main| from the exact A, B."""
    from .bessel_app import exact_AB
    with mp.workdps(ctx.dps):
        z = mp.mpmathify(z)
        v = maps.bessel_vars(z)
        A, B = exact_AB(ctx.m, ctx.r, ctx.nu, z)
        main = main_term(z, ctx.nu, ctx.m, variant)
        if variant == TILDE:
            val = A / v.zeta_over_f_q
        else:
            val = ctx.nu ** (mp.mpf(1) / 3) * v.zeta_f_q * B
        return 2 * abs(val - main)


def relative_sharpness(true, bound):
    """e_r = |1 - true/bound|."""
    return abs(1 - mp.mpf(true) / mp.mpf(bound))
