"""Bessel turning-point variables and sector classification.

For f(z) = (1 - z^2)/z^2 the turning point is z0 = 1 and

    xi = (2/3) zeta^{3/2} = ln{(1 + s)/z} - s,   s = (1 - z^2)^{1/2},  p = 1/s.

Branches: principal square root, except that on the cut z > 1 the limit
from the upper half plane (s = -i (z^2 - 1)^{1/2}) is taken; values in the
lower half plane follow by Schwarz reflection. arg xi is taken in
(-7 pi/4, pi/4] and zeta = |3 xi/2|^{2/3} e^{2 i arg(xi)/3}, which makes
zeta real positive on (0, 1), real negative on (1, inf) and analytic at z = 1.
Within |z - 1| < 1e-3 zeta comes from its Taylor series at z = 1.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath as mp

from .xprec import to_mp

Z0 = 1
TAYLOR_RADIUS = mp.mpf("1e-3")


class LogSingularityError(ZeroDivisionError):
    """xi has a logarithmic singularity at z = 0."""


@dataclass(frozen=True)
class BesselVars:
    z: object
    s: object            # (1 - z^2)^{1/2} on the chosen sheet
    p: object            # 1/s (inf at the turning point)
    xi: object
    zeta: object
    f: object            # (1 - z^2)/z^2
    zeta_over_f_q: object  # (zeta/f)^{1/4}, principal (analytic near z0)
    zeta_f_q: object       # (zeta f)^{1/4} = (zeta/f)^{1/4} s/z, consistent with s


@lru_cache(maxsize=None)
def _zeta_taylor_rational(K: int) -> tuple:
    """Rational y_n with zeta = 2^{1/3} sum_{n<K} y_n eps^{n+1}, eps = 1 - z."""
    # sqrt(1 - e/2)/(1 - e) = sum b_k e^k
    binom = [Fraction(1)]
    for k in range(1, K):
        binom.append(binom[-1] * (Fraction(1, 2) - (k - 1)) / k)
    sq = [binom[k] * Fraction(-1, 2) ** k for k in range(K)]
    b = [sum(sq[: k + 1], Fraction(0)) for k in range(K)]
    T = [3 * b[k] / (2 * k + 3) for k in range(K)]  # T_0 = 1
    alpha = Fraction(2, 3)
    y = [Fraction(1)]
    for n in range(1, K):
        acc = sum(((alpha * k - (n - k)) * T[k] * y[n - k] for k in range(1, n + 1)), Fraction(0))
        y.append(acc / n)
    return tuple(y)


def zeta_taylor(z, K: int | None = None):
    """zeta(z) from its Taylor series about z = 1 (for |z - 1| small)."""
    z = mp.mpmathify(z)
    eps = 1 - z
    if K is None:
        K = max(8, int(mp.mp.dps / 2.5) + 4)
    acc = mp.mpf(0)
    for c in reversed(_zeta_taylor_rational(K)):
        acc = acc * eps + to_mp(c)
    return mp.cbrt(2) * eps * acc


def _upper(z):
    """s, p, xi, zeta for Im z >= 0."""
    if mp.im(z) == 0 and mp.re(z) > 1:
        s = -1j * mp.sqrt(mp.re(z) ** 2 - 1)
    else:
        s = mp.sqrt(1 - z * z)
    near = abs(z - 1) < TAYLOR_RADIUS
    if s == 0:
        return s, mp.inf, mp.mpf(0), mp.mpf(0)
    p = 1 / s
    if near:
        zeta = zeta_taylor(z)
        # same sheet as below: arg zeta in (-7 pi/6, pi/6]
        az = mp.arg(zeta)
        if az > mp.pi / 6:
            az -= 2 * mp.pi
        xi = mp.mpf(2) / 3 * abs(zeta) ** (mp.mpf(3) / 2) * mp.expj(mp.mpf(3) / 2 * az)
        return s, p, xi, zeta
    xi = mp.log((1 + s) / z) - s
    ar = mp.arg(xi)
    if ar > mp.pi / 4:
        ar -= 2 * mp.pi
    zeta = abs(mp.mpf(3) / 2 * xi) ** (mp.mpf(2) / 3) * mp.expj(mp.mpf(2) / 3 * ar)
    return s, p, xi, zeta


def bessel_vars(z) -> BesselVars:
    """All turning-point variables at z on consistent branches."""
    z = mp.mpmathify(z)
    if z == 0:
        raise LogSingularityError("xi is logarithmically singular at z = 0")
    reflect = mp.im(z) < 0
    zz = mp.conj(z) if reflect else z
    s, p, xi, zeta = _upper(zz)
    f = (1 - zz * zz) / (zz * zz)
    if s == 0:
        # turning point: zeta/f -> 2^{-2/3}
        zq = mp.mpf(2) ** (-mp.mpf(1) / 6)
        zfq = mp.mpf(0)
    else:
        zq = (zeta / f) ** (mp.mpf(1) / 4)
        zfq = zq * s / zz
    vals = (s, p, xi, zeta, f, zq, zfq)
    if reflect:
        vals = tuple(mp.conj(v) if v != mp.inf else v for v in vals)
    s, p, xi, zeta, f, zq, zfq = vals
    return BesselVars(z, s, p, xi, zeta, f, zq, zfq)


def xi(z):
    return bessel_vars(z).xi


def zeta(z):
    return bessel_vars(z).zeta


def p(z):
    return bessel_vars(z).p


# ---------------------------------------------------------------------------
# Sector classification
# ---------------------------------------------------------------------------

_SUBSECTORS = (
    # (j, k, lower arg, upper arg) in terms of arg(u^{2/3} zeta) in [-pi, pi]
    (0, -1, -1, 0),
    (0, 1, 0, 1),
    (1, 0, 1, 2),
    (1, -1, 2, 3),
    (-1, 0, -2, -1),
    (-1, 1, -3, -2),
)


def classify(z, nu=1) -> tuple[int, int]:
    """Region tag (j, k) of T_{j,k} containing z for real u = nu > 0.

    Boundary points belong to several closed sub-sectors; ties go to the
    smaller |k - j| and then to the larger k (so z in (0, 1) -> T_{0,1}).
    """
    v = bessel_vars(z)
    w = mp.mpmathify(nu) ** (mp.mpf(2) / 3) * v.zeta
    if w == 0:
        return (0, 1)
    th = mp.arg(w) / (mp.pi / 3)  # in (-3, 3]
    tol = mp.mpf(10) ** (-(mp.mp.dps - 10))
    hits = [(j, k) for j, k, lo, hi in _SUBSECTORS if lo - tol <= th <= hi + tol]
    if abs(abs(th) - 3) <= tol:  # arg = -pi and arg = pi are the same ray
        hits += [(1, -1), (-1, 1)]
    hits = sorted(set(hits), key=lambda jk: (abs(jk[1] - jk[0]), -jk[1]))
    return hits[0]
