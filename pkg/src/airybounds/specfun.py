"""Extended-precision Airy and Bessel oracles.

* ``airy(l, x)`` returns Ai_l(x) = Ai(x e^{-2 pi i l/3}) and its derivative;
  Ai is evaluated by its Maclaurin series (with guard digits covering the
  cancellation) or, for large |x|, by the exponential asymptotic expansion
  truncated at its smallest term, with the connection formula
  Ai(x) = -w Ai(w x) - w^2 Ai(w^2 x) (w = e^{2 pi i/3}) when |arg x| > 2 pi/3.
* ``bessel_J``, ``bessel_Y`` and ``bessel_H1`` for positive integer order by
  their power series; the precision is raised until the cancellation
  between series terms is covered.
"""
from __future__ import annotations

import math

import mpmath as mp

from .xprec import warn_degraded

_LN10 = math.log(10)


def airy_switch_radius(dps: int | None = None) -> float:
    """|x| beyond which the asymptotic expansion is used.

    At least max(9, dps/3); additionally large enough that the smallest
    asymptotic term, about e^{-2|xi|} with |xi| = (2/3)|x|^{3/2}, is below
    10^-(dps+10).
    """
    if dps is None:
        dps = mp.mp.dps
    need = (0.75 * (dps + 10) * _LN10) ** (2.0 / 3.0)
    return max(9.0, dps / 3.0, need)


# ---------------------------------------------------------------------------
# Airy
# ---------------------------------------------------------------------------

def _airy_maclaurin(x):
    """Ai(x), Ai'(x) by the Maclaurin series, guard digits for cancellation."""
    dps = mp.mp.dps
    ax = abs(complex(x))
    xi_abs = (2.0 / 3.0) * ax ** 1.5
    # terms grow like e^{|xi|}, result can be as small as e^{-|xi|}
    guard = int(2 * xi_abs / _LN10) + 15
    with mp.workdps(dps + guard):
        x = mp.mpmathify(x)
        c1 = mp.mpf(3) ** (-mp.mpf(2) / 3) / mp.gamma(mp.mpf(2) / 3)
        c2 = mp.mpf(3) ** (-mp.mpf(1) / 3) / mp.gamma(mp.mpf(1) / 3)
        x3 = x ** 3
        tol = mp.mpf(10) ** (-(dps + guard + 2))
        a = mp.mpf(1)   # a_k x^{3k}
        b = x           # b_k x^{3k+1}
        f, fp = a, mp.mpf(0)
        g, gp = b, mp.mpf(1)
        k = 0
        while True:
            k += 1
            a = a * x3 / ((3 * k - 1) * (3 * k))
            b = b * x3 / ((3 * k) * (3 * k + 1))
            f += a
            g += b
            fp += 3 * k * a / x if x != 0 else 0
            gp += (3 * k + 1) * b / x if x != 0 else 0
            if (abs(a) + abs(b)) * (1 + 3 * k) < tol * (1 + abs(f) + abs(g)) and k > 2:
                break
            if k > 10 ** 6:
                raise ArithmeticError("Airy Maclaurin series did not converge")
        ai = c1 * f - c2 * g
        aip = c1 * fp - c2 * gp
    return +ai, +aip


def _airy_asymptotic(x):
    """Ai, Ai' for |arg x| <= 2 pi/3 by the expansion truncated at its smallest term."""
    dps = mp.mp.dps
    with mp.extradps(15):
        x = mp.mpmathify(x)
        xi = mp.mpf(2) / 3 * x ** (mp.mpf(3) / 2)
        tol = mp.mpf(10) ** (-(dps + 5))
        u = mp.mpf(1)
        su, sv = mp.mpf(1), mp.mpf(1)
        smallest = mp.inf
        k = 0
        achieved = None
        while True:
            k += 1
            u = u * mp.mpf((6 * k - 5) * (6 * k - 3) * (6 * k - 1)) / ((2 * k - 1) * 216 * k)
            v = -u * mp.mpf(6 * k + 1) / (6 * k - 1)
            tu = (-1) ** k * u / xi ** k
            tv = (-1) ** k * v / xi ** k
            size = abs(tu) + abs(tv)
            if size > smallest:
                achieved = smallest
                break
            smallest = size
            su += tu
            sv += tv
            if size < tol:
                break
        pref = mp.exp(-xi) / (2 * mp.sqrt(mp.pi))
        q = x ** (mp.mpf(1) / 4)
        ai = pref / q * su
        aip = -pref * q * sv
    if achieved is not None and achieved > mp.mpf(10) ** (-dps):
        warn_degraded("Airy asymptotic expansion", float(-mp.log10(achieved)))
    return +ai, +aip


def airy_ai(x):
    """(Ai(x), Ai'(x)) at the working precision."""
    x = mp.mpmathify(x)
    if abs(x) <= airy_switch_radius():
        return _airy_maclaurin(x)
    if abs(mp.arg(x)) <= 2 * mp.pi / 3:
        return _airy_asymptotic(x)
    with mp.extradps(5):
        w = mp.expj(2 * mp.pi / 3)
        a1, d1 = _airy_asymptotic(w * x)
        a2, d2 = _airy_asymptotic(w * w * x)
        ai = -w * a1 - w * w * a2
        aip = -w * w * d1 - w * d2
    return +ai, +aip


def airy(l: int, x):
    """(Ai_l(x), Ai_l'(x)) with Ai_l(x) = Ai(x e^{-2 pi i l/3})."""
    if l not in (0, 1, -1):
        raise ValueError("l must be 0, +1 or -1")
    x = mp.mpmathify(x)
    if l == 0:
        return airy_ai(x)
    with mp.extradps(5):
        rot = mp.expj(-2 * mp.pi * l / 3)
        ai, aip = airy_ai(x * rot)
        res = ai, rot * aip
    return +res[0], +res[1]


# ---------------------------------------------------------------------------
# Bessel functions of positive integer order
# ---------------------------------------------------------------------------

_MAX_TERMS = 10 ** 6


def _check_order(nu) -> int:
    n = int(nu)
    if n != nu or n < 0:
        raise ValueError("only nonnegative integer orders are supported")
    return n


def _j_series(n: int, x):
    """Return (J_n(x), max |term|) at the current precision."""
    tol = mp.mpf(10) ** (-(mp.mp.dps + 2))
    h = x / 2
    h2 = -h * h
    term = h ** n / mp.mpf(math.factorial(n))
    total = term
    biggest = abs(term)
    k = 0
    while True:
        k += 1
        term = term * h2 / (k * (n + k))
        total += term
        at = abs(term)
        if at > biggest:
            biggest = at
        if k > abs(h) and at <= tol * biggest:
            break
        if k > _MAX_TERMS:
            raise ArithmeticError("Bessel series did not converge within 10^6 terms")
    return total, biggest


def _y_series(n: int, x):
    """Return (Y_n(x), max |term|) at the current precision (integer order)."""
    h = x / 2
    j, jmax = _j_series(n, x)
    tol = mp.mpf(10) ** (-(mp.mp.dps + 2))
    # finite part: sum_{k<n} (n-k-1)!/k! h^{2k-n}
    fin = mp.mpf(0)
    fmax = mp.mpf(0)
    for k in range(n):
        t = mp.mpf(math.factorial(n - k - 1)) / math.factorial(k) * h ** (2 * k - n)
        fin += t
        fmax = max(fmax, abs(t))
    # log-series part: sum_k (H_k + H_{n+k}) t_k with t_k the J_n series terms
    h2 = -h * h
    Hk = mp.mpf(0)
    Hnk = sum((mp.mpf(1) / i for i in range(1, n + 1)), mp.mpf(0))
    term = h ** n / mp.mpf(math.factorial(n))
    ser = (Hk + Hnk) * term
    smax = abs(ser)
    k = 0
    while True:
        k += 1
        term = term * h2 / (k * (n + k))
        Hk += mp.mpf(1) / k
        Hnk += mp.mpf(1) / (n + k)
        t = (Hk + Hnk) * term
        ser += t
        at = abs(t)
        if at > smax:
            smax = at
        if k > abs(h) and at <= tol * smax:
            break
        if k > _MAX_TERMS:
            raise ArithmeticError("Bessel series did not converge within 10^6 terms")
    lg = mp.log(h) + mp.euler
    y = (2 * lg * j - fin - ser) / mp.pi
    biggest = max(abs(2 * lg) * jmax, fmax, smax) / mp.pi
    return y, biggest


def _adaptive(series, n, x, extra: int = 10):
    """Evaluate a (value, max-term) series with enough guard digits."""
    dps = mp.mp.dps
    guard = extra
    for _ in range(6):
        with mp.workdps(dps + guard):
            xv = mp.mpmathify(x)
            val, big = series(n, xv)
            if val == 0:
                lost = 0 if big == 0 else dps
            else:
                lost = max(0, int(mp.ceil(mp.log10(big / abs(val)))))
        if guard >= lost + extra:
            return +val
        guard = lost + extra + 5
    warn_degraded("Bessel series", dps + guard - lost)
    return +val


def bessel_J(nu, x):
    """J_nu(x), nu a nonnegative integer, via its Maclaurin series."""
    n = _check_order(nu)
    return _adaptive(_j_series, n, x)


def bessel_Y(nu, x):
    """Y_nu(x), nu a nonnegative integer, via the logarithmic series."""
    n = _check_order(nu)
    x = mp.mpmathify(x)
    if x == 0:
        raise ZeroDivisionError("Y_nu is singular at x = 0")
    return _adaptive(_y_series, n, x)


def bessel_H1(nu, x):
    """H^(1)_nu(x) = J_nu(x) + i Y_nu(x) with cancellation-aware precision."""
    n = _check_order(nu)
    x = mp.mpmathify(x)
    if x == 0:
        raise ZeroDivisionError("H1_nu is singular at x = 0")
    dps = mp.mp.dps
    guard = 10
    for _ in range(6):
        with mp.workdps(dps + guard):
            j = bessel_J(n, x)
            y = bessel_Y(n, x)
            h = j + 1j * y
            big = max(abs(j), abs(y))
            lost = 0 if h == 0 else max(0, int(mp.ceil(mp.log10(big / abs(h)))))
        if guard >= lost + 10:
            return +h
        guard = lost + 15
    warn_degraded("Hankel function", dps + guard - lost)
    return +h


def bessel_J_prime(nu, x):
    n = _check_order(nu)
    if n == 0:
        return -bessel_J(1, x)
    with mp.extradps(5):
        v = (bessel_J(n - 1, x) - bessel_J(n + 1, x)) / 2
    return +v


def bessel_Y_prime(nu, x):
    n = _check_order(nu)
    if n == 0:
        return -bessel_Y(1, x)
    with mp.extradps(5):
        v = (bessel_Y(n - 1, x) - bessel_Y(n + 1, x)) / 2
    return +v
