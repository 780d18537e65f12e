"""Extended-precision helpers: precision context, stable e^w - 1, exact Gamma
values at integers and half-integers, Bernoulli numbers and Stirling
coefficients.

All floating work is done with mpmath ``mpf``/``mpc`` numbers, which play the
role of the extended-precision complex scalar throughout the package.
"""
from __future__ import annotations

import math
import warnings
from contextlib import contextmanager
from fractions import Fraction

import mpmath as mp

DEFAULT_DPS = 50
MIN_BOUND_DPS = 30


class PrecisionError(ValueError):
    """Raised when objects built at different precisions are mixed."""


class PrecisionWarning(UserWarning):
    """Emitted when a computation could not reach the requested accuracy.

    ``digits`` carries the number of correct decimal digits actually achieved.
    """

    def __init__(self, message: str, digits: float):
        super().__init__(message)
        self.digits = digits


class UnsupportedArgumentError(ValueError):
    pass


def warn_degraded(what: str, digits: float) -> None:
    warnings.warn(PrecisionWarning(f"{what}: only {digits:.1f} digits achieved", digits),
                  stacklevel=3)


@contextmanager
def precision(dps: int):
    """Run a block at ``dps`` significant decimal digits."""
    if dps < 1:
        raise ValueError("precision must be positive")
    with mp.workdps(dps):
        yield


def check_precision(dps: int) -> None:
    """Raise if the ambient mpmath precision differs from ``dps``."""
    if mp.mp.dps != dps:
        raise PrecisionError(f"object built at {dps} digits used at {mp.mp.dps} digits")


def to_mp(x):
    """Convert Fraction/int/str/float/complex to an mpmath number."""
    if isinstance(x, Fraction):
        return mp.mpf(x.numerator) / x.denominator
    if isinstance(x, (mp.mpf, mp.mpc)):
        return x
    if isinstance(x, complex):
        return mp.mpc(x)
    if isinstance(x, str) and ("j" in x or "i" in x):
        return mp.mpc(x.replace("i", "j"))
    return mp.mpf(x)


# ---------------------------------------------------------------------------
# e^w - 1
# ---------------------------------------------------------------------------

def g_remainder(w):
    """g(w) = (e^w - 1 - w - w^2/2)/w^3 by its Maclaurin series (|w| <= 1).

    g(w) = sum_{k>=0} w^k/(k+3)!; the series stops once a term drops below
    10^-(dps+5) relative to the leading coefficient 1/6.
    """
    w = mp.mpmathify(w)
    tol = mp.mpf(10) ** (-(mp.mp.dps + 5))
    term = mp.mpf(1) / 6
    total = term
    k = 0
    while True:
        k += 1
        term = term * w / (k + 3)
        total += term
        if abs(term) < tol:
            return total


def g_at_one():
    """g(1) = e - 5/2 = 0.218..., the constant in |e^w - 1| <= |w| + |w|^2/2 + g(1)|w|^3."""
    return mp.e - mp.mpf(5) / 2


def exp_m1_stable(w):
    """e^w - 1 without cancellation.

    For |w| <= 1 uses e^w - 1 = w + w^2/2 + w^3 g(w); otherwise the direct
    formula is already stable.
    """
    w = mp.mpmathify(w)
    if w == 0:
        return w * 0
    if abs(w) <= 1:
        with mp.extradps(5):
            val = w + w * w / 2 + w ** 3 * g_remainder(w)
        return +val
    return mp.exp(w) - 1


# ---------------------------------------------------------------------------
# Gamma at integers and half-integers
# ---------------------------------------------------------------------------

def _as_half_integer(x) -> Fraction:
    if isinstance(x, Fraction):
        q = x
    elif isinstance(x, int):
        q = Fraction(x)
    else:
        twice = 2 * mp.mpf(x)
        if twice != mp.nint(twice):
            raise UnsupportedArgumentError(f"Gamma only supported at (half-)integers, got {x}")
        q = Fraction(int(mp.nint(twice)), 2)
    if q.denominator not in (1, 2) or q <= 0:
        raise UnsupportedArgumentError(f"Gamma only supported at positive (half-)integers, got {x}")
    return q


def gamma_exact_rational(x) -> tuple[Fraction, bool]:
    """Return (R, has_sqrt_pi) with Gamma(x) = R * sqrt(pi)^has_sqrt_pi exactly."""
    q = _as_half_integer(x)
    if q.denominator == 1:
        return Fraction(math.factorial(q.numerator - 1)), False
    k = (q.numerator - 1) // 2  # x = k + 1/2
    # Gamma(k + 1/2) = (2k)! / (4^k k!) sqrt(pi)
    return Fraction(math.factorial(2 * k), 4 ** k * math.factorial(k)), True


def gamma_exact(x):
    """Gamma(x) for x = k or k + 1/2 from exact factorials, rounded once."""
    r, has_pi = gamma_exact_rational(x)
    val = to_mp(r)
    if has_pi:
        val *= mp.sqrt(mp.pi)
    return val


def ln_gamma_exact(x):
    """ln Gamma(x) from the exact value (integer / half-integer argument)."""
    r, has_pi = gamma_exact_rational(x)
    val = mp.log(mp.mpf(r.numerator)) - mp.log(mp.mpf(r.denominator))
    if has_pi:
        val += mp.log(mp.pi) / 2
    return val


# ---------------------------------------------------------------------------
# Bernoulli numbers and Stirling coefficients
# ---------------------------------------------------------------------------

_B_TABLE = [Fraction(1)]


def _bernoulli_table(n: int) -> list[Fraction]:
    # standard recurrence, extended in place:
    # sum_{k=0}^{m} C(m+1, k) B_k = 0 (B_1 = -1/2 convention); odd B_k = 0 for k >= 3.
    B = _B_TABLE
    while len(B) <= n:
        mm = len(B)
        if mm >= 3 and mm % 2:
            B.append(Fraction(0))
            continue
        s = sum(math.comb(mm + 1, k) * B[k] for k in range(mm) if B[k])
        B.append(-s / (mm + 1))
    return B


def bernoulli_exact(n: int) -> Fraction:
    if n < 0:
        raise ValueError("n >= 0 required")
    return _bernoulli_table(n)[n]


def stirling_C(j: int) -> Fraction:
    """C_{2j+1} = B_{2j+2}/((2j+1)(2j+2)): ln Gamma(v) ~ (v-1/2)ln v - v
    + ln(2 pi)/2 + sum_j C_{2j+1} v^{-(2j+1)}."""
    if j < 0:
        raise ValueError("j >= 0 required")
    return bernoulli_exact(2 * j + 2) / ((2 * j + 1) * (2 * j + 2))


def stirling_sum(nu, J: int):
    """sum_{j=0}^{J} C_{2j+1}/nu^{2j+1} (empty sum if J < 0)."""
    nu = mp.mpmathify(nu)
    total = mp.mpf(0)
    for j in range(J + 1):
        total += to_mp(stirling_C(j)) / nu ** (2 * j + 1)
    return total
