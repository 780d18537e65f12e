"""Exact-rational coefficient algebra for the Bessel instance.

With p = (1 - z^2)^{-1/2} the operator (z/(2 (1-z^2)^{1/2})) d/dz becomes
((p^4 - p^2)/2) d/dp, so every F_s and E_s is a polynomial in p with
rational coefficients:

    F_1 = -(5p^6 - 6p^4 + p^2)/8,
    F_{s+1} = ((p^4-p^2)/2) F_s' - (1/2) sum_{j=1}^{s-1} F_j F_{s-j},
    E_s = integral of -F_s/(p^4 - p^2) dp, zero constant term.

Also: the sequences a_s, a~_s, their scaled forms c_s, c~_s, the sums S_n
with their upper bound, the calligraphic coefficients E_s(z) and the formal
w-series G_{m,n}(z) built from them.
"""
from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath as mp

from . import maps
from .xprec import stirling_C, to_mp


class ConsistencyError(ArithmeticError):
    """An exact identity that must hold failed (internal error)."""


# ---------------------------------------------------------------------------
# Rational polynomials in p
# ---------------------------------------------------------------------------

class RationalPoly:
    """Polynomial sum_k c_k p^k with exact rational coefficients (immutable)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("RationalPoly is immutable")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def __eq__(self, other):
        if isinstance(other, RationalPoly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"RationalPoly({[str(c) for c in self.coeffs]})"

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        return RationalPoly(self[k] + other[k] for k in range(n))

    def __sub__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        return RationalPoly(self[k] - other[k] for k in range(n))

    def __neg__(self):
        return RationalPoly(-c for c in self.coeffs)

    def scale(self, c) -> "RationalPoly":
        c = Fraction(c)
        return RationalPoly(c * x for x in self.coeffs)

    def __mul__(self, other):
        if not isinstance(other, RationalPoly):
            return self.scale(other)
        if not self.coeffs or not other.coeffs:
            return RationalPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    out[i + j] += x * y
        return RationalPoly(out)

    __rmul__ = scale

    def derivative(self) -> "RationalPoly":
        return RationalPoly(k * self.coeffs[k] for k in range(1, len(self.coeffs)))

    def p_operator(self) -> "RationalPoly":
        """((p^4 - p^2)/2) d/dp."""
        d = self.derivative()
        out = [Fraction(0)] * (len(d.coeffs) + 4)
        for k, c in enumerate(d.coeffs):
            out[k + 4] += c / 2
            out[k + 2] -= c / 2
        return RationalPoly(out)

    def divide_p2_p2m1(self) -> "RationalPoly":
        """Exact quotient by p^2 (p^2 - 1); raises if not divisible."""
        c = list(self.coeffs)
        if not c:
            return RationalPoly()
        if c[0] != 0 or (len(c) > 1 and c[1] != 0):
            raise ConsistencyError("polynomial not divisible by p^2")
        b = c[2:]
        q = [Fraction(0)] * max(len(b) - 2, 0)
        rem = list(b)
        for k in range(len(b) - 1, 1, -1):
            lead = rem[k]
            q[k - 2] = lead
            rem[k] -= lead
            rem[k - 2] += lead
        if any(rem):
            raise ConsistencyError("polynomial not divisible by p^2 - 1")
        return RationalPoly(q)

    def antiderivative(self) -> "RationalPoly":
        """Antiderivative with zero constant term."""
        return RationalPoly([Fraction(0)] + [c / (k + 1) for k, c in enumerate(self.coeffs)])

    def __call__(self, x):
        """Horner evaluation in mpmath arithmetic."""
        acc = mp.mpf(0)
        for c in reversed(self.coeffs):
            acc = acc * x + to_mp(c)
        return acc

    def parity(self) -> int | None:
        """+1 if only even powers occur, -1 if only odd, None otherwise."""
        ev = any(c for k, c in enumerate(self.coeffs) if k % 2 == 0)
        od = any(c for k, c in enumerate(self.coeffs) if k % 2 == 1)
        if ev and od:
            return None
        return -1 if od else 1


_F_LOCK = threading.Lock()
_F_TABLE: list[RationalPoly] = [RationalPoly(), RationalPoly([0, 0, Fraction(-1, 8), 0, Fraction(6, 8), 0, Fraction(-5, 8)])]


def fhat(s: int) -> RationalPoly:
    """F_s as a polynomial in p (memoized)."""
    if s < 1:
        raise ValueError("s >= 1 required")
    with _F_LOCK:
        while len(_F_TABLE) <= s:
            k = len(_F_TABLE) - 1  # build F_{k+1}
            nxt = _F_TABLE[k].p_operator()
            conv = RationalPoly()
            for j in range(1, k):
                conv = conv + _F_TABLE[j] * _F_TABLE[k - j]
            _F_TABLE.append(nxt - conv.scale(Fraction(1, 2)))
        return _F_TABLE[s]


@lru_cache(maxsize=None)
def ehat(s: int) -> RationalPoly:
    """E_s as a polynomial in p with zero constant term (z -> i inf is p -> 0)."""
    try:
        q = fhat(s).divide_p2_p2m1()
    except ConsistencyError as exc:
        raise ConsistencyError(f"F_{s} not divisible by p^2(p^2-1)") from exc
    return (-q).antiderivative()


# ---------------------------------------------------------------------------
# Sequences
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SeqTable:
    """Exact tables indexed from 1 (index 0 unused, stored as None)."""
    a: tuple
    at: tuple
    c: tuple
    ct: tuple
    S: tuple           # S[n] for n >= 2; S[0], S[1] are None
    C_stirling: tuple  # C_{2j+1} for j = 0..S_max

    @property
    def S_max(self) -> int:
        return len(self.a) - 1


def _recur(first: Fraction, S_max: int) -> list:
    a = [None, first, first]
    for s in range(2, S_max):
        conv = sum((a[j] * a[s - j] for j in range(1, s)), Fraction(0))
        a.append(Fraction(s + 1, 2) * a[s] + conv / 2)
    return a[: S_max + 1]


@lru_cache(maxsize=None)
def seq_a(S_max: int = 30) -> SeqTable:
    """a_s, a~_s, c_s = (36/5) 2^s a_s, c~_s = -(36/7) 2^s a~_s for s <= S_max."""
    if S_max < 2:
        raise ValueError("S_max >= 2 required")
    a = _recur(Fraction(5, 72), S_max)
    at = _recur(Fraction(-7, 72), S_max)
    c = [None] + [Fraction(36, 5) * 2 ** s * a[s] for s in range(1, S_max + 1)]
    ct = [None] + [Fraction(-36, 7) * 2 ** s * at[s] for s in range(1, S_max + 1)]
    S = [None, None] + [s_n(n) for n in range(2, S_max + 1)]
    C = [stirling_C(j) for j in range(S_max + 1)]
    return SeqTable(tuple(a), tuple(at), tuple(c), tuple(ct), tuple(S), tuple(C))


def s_n(n: int) -> Fraction:
    """S_n = sum_{j=1}^{n-1} j!(n-j)!/(n-1)!."""
    if n < 2:
        raise ValueError("n >= 2 required")
    den = math.factorial(n - 1)
    return Fraction(sum(math.factorial(j) * math.factorial(n - j) for j in range(1, n)), den)


def s_n_bound(n: int) -> Fraction:
    """Upper bound 2n/(n+2) (1 + 32/(n+3)) + (3n(n+1)/2)(3/4)^n, exact."""
    if n < 2:
        raise ValueError("n >= 2 required")
    return Fraction(2 * n, n + 2) * (1 + Fraction(32, n + 3)) + Fraction(3 * n * (n + 1), 2) * Fraction(3, 4) ** n


def certify_sequences(S_max: int = 200) -> list[str]:
    """Check positivity/negativity and the factorial bounds on a_s, a~_s
    exactly for s <= S_max; returns a list of failure messages (empty = pass)."""
    t = seq_a(S_max)
    fails = []
    for s in range(1, S_max + 1):
        fs, fs1 = math.factorial(s), math.factorial(s - 1)
        a, at = t.a[s], t.at[s]
        if not a > 0:
            fails.append(f"a_{s} not positive")
        if not at < 0:
            fails.append(f"a~_{s} not negative")
        if not (Fraction(5, 36) * Fraction(1, 2) ** s * fs <= a <= Fraction(5, 36) * Fraction(4453, 6912) ** s * fs):
            fails.append(f"a_{s} violates its factorial bounds")
        if not (Fraction(7, 36) * Fraction(1, 2) ** s * fs1 <= -at <= Fraction(7, 36) * Fraction(1, 2) ** s * fs):
            fails.append(f"a~_{s} violates its factorial bounds")
    return fails


def certify_appendix(n_max: int = 500, ct_max: int = 24) -> list[str]:
    """S_n <= bound (2 <= n <= n_max), (7/36) S_s < 1 (24 <= s <= n_max),
    c~_s >= (s-1)! (s <= ct_max), c_s >= s! and c~_s <= s!; failures listed."""
    fails = []
    for n in range(2, n_max + 1):
        S = s_n(n)
        if not S <= s_n_bound(n):
            fails.append(f"S_{n} exceeds its bound")
        if n >= 24 and not Fraction(7, 36) * S < 1:
            fails.append(f"(7/36) S_{n} >= 1")
    t = seq_a(max(ct_max, 2))
    for s in range(1, ct_max + 1):
        if not t.ct[s] >= math.factorial(s - 1):
            fails.append(f"c~_{s} < (s-1)!")
        if not t.ct[s] <= math.factorial(s):
            fails.append(f"c~_{s} > s!")
        if not t.c[s] >= math.factorial(s):
            fails.append(f"c_{s} < s!")
    return fails


# ---------------------------------------------------------------------------
# Calligraphic coefficients
# ---------------------------------------------------------------------------

PLAIN = "plain"
TILDE = "tilde"


class PoleError(ZeroDivisionError):
    """Evaluation at the turning point, where E_s has a pole."""


def _check_variant(variant: str) -> bool:
    if variant not in (PLAIN, TILDE):
        raise ValueError("variant must be 'plain' or 'tilde'")
    return variant == TILDE


def cal_E_from_vars(s: int, p, xi, variant: str, table: SeqTable | None = None):
    """E_s (plain, a_s) or E~_s (tilde, a~_s) from precomputed p and xi."""
    tl = _check_variant(variant)
    t = table or seq_a(max(30, s))
    if xi == 0:
        raise PoleError("E_s has a pole at the turning point")
    a = t.at[s] if tl else t.a[s]
    return ehat(s)(p) + (-1) ** s * to_mp(a) / (s * xi ** s)


def cal_E(s: int, z, variant: str = PLAIN):
    """E_s(z) = E^_s(p(z)) + (-1)^s a_s/(s xi^s) (a~_s for the tilde variant)."""
    v = maps.bessel_vars(z)
    if v.xi == 0:
        raise PoleError("E_s has a pole at the turning point z = 1")
    return cal_E_from_vars(s, v.p, v.xi, variant)


def cal_E_list(z, n_max: int, variant: str):
    """[None, E_1(z), ..., E_{n_max}(z)]."""
    v = maps.bessel_vars(z)
    if v.xi == 0:
        raise PoleError("E_s has a pole at the turning point z = 1")
    t = seq_a(max(30, n_max))
    return [None] + [cal_E_from_vars(s, v.p, v.xi, variant, t) for s in range(1, n_max + 1)]


# ---------------------------------------------------------------------------
# Formal power series in w = 1/u
# ---------------------------------------------------------------------------

class FormalSeries:
    """Truncated power series sum_{k<=N} c_k w^k (immutable)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        object.__setattr__(self, "coeffs", tuple(coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("FormalSeries is immutable")

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else mp.mpf(0)

    def _n(self, other):
        if self.order != other.order:
            raise ValueError("series truncation orders differ")
        return self.order

    def __add__(self, other):
        self._n(other)
        return FormalSeries(x + y for x, y in zip(self.coeffs, other.coeffs))

    def __sub__(self, other):
        self._n(other)
        return FormalSeries(x - y for x, y in zip(self.coeffs, other.coeffs))

    def scale(self, c):
        return FormalSeries(c * x for x in self.coeffs)

    def __mul__(self, other):
        N = self._n(other)
        out = []
        for k in range(N + 1):
            acc = mp.mpf(0)
            for i in range(k + 1):
                acc += self.coeffs[i] * other.coeffs[k - i]
            out.append(acc)
        return FormalSeries(out)

    def exp(self):
        """exp of a series with zero constant term: k y_k = sum_j j c_j y_{k-j}."""
        if self.coeffs[0] != 0:
            raise ValueError("exp requires a zero constant term")
        N = self.order
        c = self.coeffs
        nz = [(j, j * c[j]) for j in range(1, N + 1) if c[j] != 0]
        y = [mp.mpf(1)]
        for k in range(1, N + 1):
            acc = mp.mpf(0)
            for j, jc in nz:
                if j > k:
                    break
                acc += jc * y[k - j]
            y.append(acc / k)
        return FormalSeries(y)

    def evaluate(self, w):
        acc = mp.mpf(0)
        for c in reversed(self.coeffs):
            acc = acc * w + c
        return acc

    @classmethod
    def from_terms(cls, terms: dict, N: int):
        out = [mp.mpf(0)] * (N + 1)
        for k, v in terms.items():
            if 0 <= k <= N:
                out[k] = v
        return cls(out)


def g_series_from_values(E: list, prefactor, m: int, r: int, Nw: int, variant: str) -> FormalSeries:
    """The w-series of

        pref * sum_{sign=+-1} sgn * exp(sum_{s<lo} sign^s E_s w^s)
                              * (exp(sum_{lo<=s<=2m+2r+1} sign^s E_s w^s) - 1),

    where lo = 2m+2 and sgn = +1 (tilde, the cosh form) or lo = 2m+1 and
    sgn = sign (plain, the sinh form). E[s] holds E_s at the point.
    """
    tl = _check_variant(variant)
    n_top = 2 * m + 2 * r + 1
    lo = 2 * m + 2 if tl else 2 * m + 1
    total = FormalSeries([mp.mpf(0)] * (Nw + 1))
    for sign in (1, -1):
        head = {s: sign ** s * E[s] for s in range(1, lo) if s <= Nw}
        full = dict(head)
        full.update({s: sign ** s * E[s] for s in range(lo, n_top + 1) if s <= Nw})
        # exp(head) (exp(tail) - 1) = exp(head + tail) - exp(head); both
        # exponentials have sparse generators, so this costs O(n_top Nw)
        prod = FormalSeries.from_terms(full, Nw).exp() - FormalSeries.from_terms(head, Nw).exp()
        total = total + (prod if (tl or sign == 1) else prod.scale(-1))
    return total.scale(prefactor)


def g_prefactor(v: "maps.BesselVars", variant: str):
    """(zeta/f)^{1/4} for tilde, 1/(f zeta)^{1/4} for plain."""
    return v.zeta_over_f_q if _check_variant(variant) else 1 / v.zeta_f_q


def g_series(m: int, r: int, z, N: int, variant: str = PLAIN) -> FormalSeries:
    """Coefficients G_{m,2s+1}(z) (plain) or G~_{m,2s}(z) (tilde) as a
    w-series truncated at order 2N+2."""
    tl = _check_variant(variant)
    if N < (m + 1 if tl else m):
        raise ValueError("N too small for the requested variant")
    v = maps.bessel_vars(z)
    E = cal_E_list(z, 2 * m + 2 * r + 1, variant)
    return g_series_from_values(E, g_prefactor(v, variant), m, r, 2 * N + 2, variant)
