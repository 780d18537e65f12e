"""Error bounds valid at and near the turning point z0 = 1.

Near z0 the coefficient functions are represented by Cauchy integrals of
the truncated expansions over a circle enclosing z0,

    A ~ (1/2 pi i) oint exp(sum E~_{2s}/nu^{2s}) cosh(sum E~_{2s+1}/nu^{2s+1}) (zeta/f)^{1/4} dt/(t - z),
    nu^{1/3} B ~ (1/2 pi i) oint exp(sum E_{2s}/nu^{2s}) sinh(sum E_{2s+1}/nu^{2s+1}) (zeta f)^{-1/4} dt/(t - z),

and the errors kappa~, kappa are bounded by the regular parts G* of the
Maclaurin coefficients of G(w, t) (the difference between the expansion
through order 2m+2r+1 and the main term, as a power series in w = 1/nu),
a tail bound for that Maclaurin series, and a d-term.

Two circles are used: Gamma (centre z0, radius r0 = 1) carries the suprema
Upsilon, Upsilon~, rho, E_s, E~_s and the path integrals F_{m,k}; the
integration contour (centre 1.5, radius 1.3, 500 trapezoid nodes) carries
the Cauchy integrals. Only the upper half Gamma+ is sampled (Schwarz
symmetry).
"""
from __future__ import annotations

import threading
from dataclasses import dataclass, field

import mpmath as mp

from . import bounds_away, coeffs, maps, quad
from .coeffs import PLAIN, TILDE, FormalSeries
from .xprec import DEFAULT_DPS, MIN_BOUND_DPS

N_CAP = 200
TAIL_RATIO = mp.mpf("1e-12")


class ContourDomainError(ValueError):
    """The evaluation point is not strictly inside the integration contour."""


class TailBoundError(ValueError):
    """nu <= u_m: the Maclaurin tail bound is not applicable."""


class PrecomputeError(KeyError):
    """A required F_{m,k} entry was not precomputed."""


def _variants():
    return (TILDE, PLAIN)


@dataclass(frozen=True)
class KappaBreakdown:
    total: object
    series: object
    tail: object
    d_term: object
    N: int
    u_m: object
    G_m: object


@dataclass(eq=False)
class TurningPointGeometry:
    """One-time data for the bounds near z0 (built lazily, then read-only)."""
    m: int = 1
    r: int = 4
    dps: int = DEFAULT_DPS
    r0: object = 1
    zc: object = "1.5"
    R: object = "1.3"
    N_contour: int = 500
    n_samples: int = 2000
    f_nodes: int = 60
    f_panels: int = 4
    _cache: dict = field(default_factory=dict, repr=False)
    _lock: object = field(default_factory=threading.RLock, repr=False)

    def __post_init__(self):
        if self.dps < MIN_BOUND_DPS:
            raise ValueError(f"bound evaluation needs at least {MIN_BOUND_DPS} digits")
        with mp.workdps(self.dps):
            self.r0 = mp.mpf(self.r0)
            self.zc = mp.mpmathify(self.zc)
            self.R = mp.mpf(self.R)
        if not (0 < self.r0 <= 1):
            raise ValueError("Gamma radius r0 must satisfy 0 < r0 <= 1")
        if not abs(self.zc - 1) < self.R:
            raise ValueError("integration contour must enclose z0 = 1")
        if self.R >= abs(self.zc):
            raise ValueError("integration contour must exclude z = 0")
        if self.N_contour < 16 or self.n_samples < 16:
            raise ValueError("too few nodes")

    @property
    def n(self) -> int:
        return 2 * self.m + 2 * self.r + 2

    def _cached(self, key, build):
        with self._lock:
            if key not in self._cache:
                with mp.workdps(self.dps):
                    self._cache[key] = build()
            return self._cache[key]

    # -- Gamma+ sampling --------------------------------------------------

    def gamma_point(self, phi):
        return 1 + self.r0 * mp.expj(phi)

    def _at_gamma(self, phi):
        """(|zeta f|^{1/4}, |zeta/f|^{1/4}, |xi|, {variant: [|E_s|]})."""
        t = self.gamma_point(phi)
        if abs(t) < mp.mpf(10) ** (-self.dps // 2):
            # limit t -> 0 (r0 = 1, phi = pi): xi -> inf, E_s -> E^_s(1)
            vals = [abs(coeffs.ehat(s)(mp.mpf(1))) for s in range(1, self.n)]
            return mp.inf, mp.mpf(0), mp.inf, {TILDE: vals, PLAIN: vals}
        v = maps.bessel_vars(t)
        tab = coeffs.seq_a(max(30, self.n))
        Es = {var: [abs(coeffs.cal_E_from_vars(s, v.p, v.xi, var, tab)) for s in range(1, self.n)]
              for var in _variants()}
        return abs(v.zeta_f_q), abs(v.zeta_over_f_q), abs(v.xi), Es

    def _abs_E(self, phi, s, var):
        t = self.gamma_point(phi)
        if abs(t) < mp.mpf(10) ** (-self.dps // 2):
            return abs(coeffs.ehat(s)(mp.mpf(1)))
        v = maps.bessel_vars(t)
        return abs(coeffs.cal_E_from_vars(s, v.p, v.xi, var))

    def _refine(self, fn, phis, vals, maximize: bool):
        """3-point local refinement around the best sample by golden section."""
        sgn = 1 if maximize else -1
        k = max(range(len(vals)), key=lambda i: sgn * vals[i])
        best = vals[k]
        lo = phis[max(k - 1, 0)]
        hi = phis[min(k + 1, len(phis) - 1)]
        g = (mp.sqrt(5) - 1) / 2
        a, b = lo, hi
        for _ in range(25):
            c1 = b - g * (b - a)
            c2 = a + g * (b - a)
            if sgn * fn(c1) >= sgn * fn(c2):
                b = c2
            else:
                a = c1
        cand = fn((a + b) / 2)
        return max(best, cand) if maximize else min(best, cand)

    def _phis(self, count):
        return [mp.pi * k / count for k in range(count + 1)]

    def _scan(self, count):
        phis = self._phis(count)
        return phis, [self._at_gamma(ph) for ph in phis]

    def _sups(self):
        phis, data = self._scan(self.n_samples)
        out = {}
        col = lambda i: [d[i] for d in data]
        out["Upsilon"] = self._refine(lambda ph: self._at_gamma(ph)[0], phis, col(0), False)
        out["Upsilon_tilde"] = self._refine(lambda ph: self._at_gamma(ph)[1], phis, col(1), True)
        out["rho"] = self._refine(lambda ph: self._at_gamma(ph)[2], phis, col(2), False)
        for var in _variants():
            sups = [None]
            for s in range(1, self.n):
                vals = [d[3][var][s - 1] for d in data]
                sups.append(self._refine(lambda ph, s=s, var=var: self._abs_E(ph, s, var),
                                         phis, vals, True))
            out["E", var] = sups
        return out

    def sups(self):
        return self._cached("sups", self._sups)

    def certify_sups(self, count: int = 8000, rel_tol="1e-6"):
        """Dense re-scan of Gamma+; returns the list of scalars whose cached
        value is beaten by more than rel_tol (empty when the cache is sound)."""
        with mp.workdps(self.dps):
            _, data = self._scan(count)
            cached = self.sups()
            tol = mp.mpf(rel_tol)
            bad = []
            if min(d[0] for d in data) < cached["Upsilon"] * (1 - tol):
                bad.append("Upsilon")
            if max(d[1] for d in data) > cached["Upsilon_tilde"] * (1 + tol):
                bad.append("Upsilon_tilde")
            if min(d[2] for d in data) < cached["rho"] * (1 - tol):
                bad.append("rho")
            for var in _variants():
                for s in range(1, self.n):
                    if max(d[3][var][s - 1] for d in data) > cached["E", var][s] * (1 + tol):
                        bad.append(f"E_{s} ({var})")
            return bad

    def contour_scalars(self):
        """(Upsilon, Upsilon~, rho)."""
        s = self.sups()
        return s["Upsilon"], s["Upsilon_tilde"], s["rho"]

    def E_sup(self, s: int, variant: str):
        return self.sups()["E", variant][s]

    # -- F_{m,k} -------------------------------------------------------------

    def f_parts(self, mm: int, k: int):
        """(segment 0 -> 1 - r0, ray from 1 + i r0, quarter circle 1, quarter
        circle 2) integrals of |F_k^mm f^{1/2}| (arc integrals in phi)."""
        key = ("Fparts", mm, k)

        def build():
            poly = coeffs.fhat(k)

            def g(t):
                sq = mp.sqrt(1 - t * t)
                return abs(poly(1 / sq) ** mm * sq / t)

            r0 = self.r0
            seg = mp.mpf(0)
            if r0 < 1:
                seg = quad.gl_interval(lambda x: g(mp.mpf(x)), mp.mpf(0), 1 - r0,
                                       self.f_nodes, self.f_panels)
            ray = quad.gl_interval(lambda s: g(1 + 1j / s) / (s * s), mp.mpf(0), 1 / r0,
                                   self.f_nodes, self.f_panels)

            def arc(ph):
                t = self.gamma_point(ph)
                if abs(t) == 0:
                    return mp.mpf(0)
                return g(t)

            q1 = quad.gl_interval(arc, mp.mpf(0), mp.pi / 2, self.f_nodes, self.f_panels)
            q2 = quad.gl_interval(arc, mp.pi / 2, mp.pi, self.f_nodes, self.f_panels)
            return seg, ray, q1, q2

        return self._cached(key, build)

    def f_mk(self, mm: int, k: int):
        if mm not in (1, 2):
            raise ValueError("m must be 1 or 2 in F_{m,k}")
        seg, ray, q1, q2 = self.f_parts(mm, k)
        return max(seg, ray) + self.r0 * max(q1, q2)

    def f_table(self):
        def build():
            t = {}
            for k in range(1, self.n + 1):
                t[1, k] = self.f_mk(1, k)
            for k in range(1, self.n):
                t[2, k] = self.f_mk(2, k)
            return t
        return self._cached("Ftable", build)

    # -- integration contour --------------------------------------------------

    def contour_nodes(self):
        return self._cached("nodes", lambda: quad.circle_nodes(self.zc, self.R, self.N_contour))

    def _node_vars(self):
        def build():
            out = []
            for t in self.contour_nodes():
                v = maps.bessel_vars(t)
                E = {var: coeffs.cal_E_list(t, self.n - 1, var) for var in _variants()}
                out.append((v, E))
            return out
        return self._cached("nodevars", build)

    def node_main(self, nu, variant: str):
        """Contour-node values of the Cauchy integrand (main term times prefactor)."""
        with mp.workdps(self.dps):
            nu = mp.mpf(nu)
        key = ("main", variant, nu)

        def build():
            vals = []
            for v, E in self._node_vars():
                main = bounds_away.main_term(v.z, nu, self.m, variant, E=E[variant])
                vals.append(main * coeffs.g_prefactor(v, variant))
            return vals
        return self._cached(key, build)

    def node_gseries(self, Nw: int, variant: str):
        """G-series coefficients at the contour nodes, to order >= Nw."""
        with self._lock:
            have = self._cache.get(("G", variant))
            if have is not None and have[0].order >= Nw:
                return have
        Nw = max(Nw, 40)

        def build():
            return [coeffs.g_series_from_values(E[variant], coeffs.g_prefactor(v, variant),
                                                self.m, self.r, Nw, variant)
                    for v, E in self._node_vars()]
        with self._lock:
            self._cache.pop(("G", variant), None)
            return self._cached(("G", variant), build)

    def check_inside(self, z):
        if not abs(mp.mpmathify(z) - self.zc) < self.R:
            raise ContourDomainError("z must lie strictly inside the integration contour")

    def dump(self):
        """Cached scalars as (name, value) rows."""
        with mp.workdps(self.dps):
            U, Ut, rho = self.contour_scalars()
            rows = [("Upsilon", U), ("Upsilon_tilde", Ut), ("rho", rho)]
            for var in _variants():
                for s in range(1, self.n):
                    rows.append((f"E_{s}_{var}", self.E_sup(s, var)))
            for (mm, k), v in sorted(self.f_table().items()):
                rows.append((f"F_{mm}_{k}", v))
            return rows


_GEOMS: dict = {}
_GEOMS_LOCK = threading.Lock()


def get_geometry(m: int = 1, r: int = 4, dps: int = DEFAULT_DPS, **kw) -> TurningPointGeometry:
    """Shared geometry per configuration."""
    key = (m, r, dps) + tuple(sorted((k, str(v)) for k, v in kw.items()))
    with _GEOMS_LOCK:
        g = _GEOMS.get(key)
        if g is None:
            g = TurningPointGeometry(m, r, dps, **kw)
            _GEOMS[key] = g
        return g


# ---------------------------------------------------------------------------
# Bound ingredients
# ---------------------------------------------------------------------------

def contour_scalars(r0=1, geo: TurningPointGeometry | None = None):
    """(Upsilon, Upsilon~, rho) over Gamma+ for the given radius."""
    geo = geo or get_geometry(r0=r0)
    return geo.contour_scalars()


def f_mk(mm: int, k: int, geo: TurningPointGeometry | None = None):
    geo = geo or get_geometry()
    return geo.f_mk(mm, k)


def bold_omega_varpi(n: int, nu, geo: TurningPointGeometry | None = None, table=None):
    """(bold omega_n(nu), bold varpi_n(nu)) from the F_{m,k} table."""
    geo = geo or get_geometry()
    F = table if table is not None else geo.f_table()
    need = [(1, k) for k in range(1, n + 1)] + [(2, k) for k in range(1, n)]
    miss = [key for key in need if key not in F]
    if miss:
        raise PrecomputeError(f"F entries not precomputed: {miss}")
    nu = mp.mpf(nu)
    om = 2 * F[1, n]
    for s in range(1, n):
        acc = mp.mpf(0)
        for k in range(s, n):
            acc += mp.sqrt(F[2, k]) * mp.sqrt(F[2, s + n - k - 1])
        om += acc / nu ** s
    vp = mp.mpf(0)
    for s in range(0, n - 1):
        vp += F[1, s + 1] / nu ** s
    return om, 4 * vp


def bold_e(n: int, nu, variant: str, geo: TurningPointGeometry):
    nu = mp.mpf(nu)
    om, vp = bold_omega_varpi(n, nu, geo)
    _, _, rho = geo.contour_scalars()
    delta = bounds_away.delta_n(nu, geo.m, geo.r)
    g, b = bounds_away.gamma_beta(n, rho, nu, variant)
    return (nu ** n * abs(delta) + om * mp.exp(vp / nu + om / nu ** n)
            + g * mp.exp(b / nu + g / nu ** n))


def bold_d(n: int, nu, variant: str = PLAIN, geo: TurningPointGeometry | None = None):
    """bold d_n(nu) = 2 exp(sum E_s/nu^s) e_n (1 + e_n/(2 nu^n))^2."""
    geo = geo or get_geometry()
    with mp.workdps(geo.dps):
        nu = mp.mpf(nu)
        e = bold_e(n, nu, variant, geo)
        ssum = mp.fsum(geo.E_sup(s, variant) / nu ** s for s in range(1, n))
        return 2 * mp.exp(ssum) * e * (1 + e / (2 * nu ** n)) ** 2


def u_m(geo: TurningPointGeometry, variant: str):
    top = 2 * geo.m + 2 * geo.r + 1
    return geo.E_sup(top, variant) ** (mp.mpf(1) / top)


def G_m(geo: TurningPointGeometry, variant: str):
    """Bound for |G(w, t)| on |w| = 1/u_m, t on Gamma."""
    m, r = geo.m, geo.r
    U, Ut, _ = geo.contour_scalars()
    u = u_m(geo, variant)
    E = lambda s: geo.E_sup(s, variant) / u ** s
    full_even = mp.fsum(E(2 * s) for s in range(1, m + r + 1))
    full_odd = mp.fsum(E(2 * s + 1) for s in range(0, m + r + 1))
    main_even = mp.fsum(E(2 * s) for s in range(1, m + 1))
    if variant == TILDE:
        main_odd = mp.fsum(E(2 * s + 1) for s in range(0, m + 1))
        return 2 * Ut * (mp.exp(full_even) * mp.cosh(full_odd) + mp.exp(main_even) * mp.cosh(main_odd))
    main_odd = mp.fsum(E(2 * s + 1) for s in range(0, m))
    return 2 / U * (mp.exp(full_even) * mp.sinh(full_odd) + mp.exp(main_even) * mp.sinh(main_odd))


# ---------------------------------------------------------------------------
# Cauchy integrals
# ---------------------------------------------------------------------------

def cauchy_main(z, nu, geo: TurningPointGeometry, variant: str):
    """Cauchy integral of the main-term integrand (tilde: approximates A;
    plain: approximates nu^{1/3} B)."""
    with mp.workdps(geo.dps):
        z = mp.mpmathify(z)
        geo.check_inside(z)
        vals = geo.node_main(nu, variant)
        return quad.cauchy_trapezoid(vals, geo.contour_nodes(), geo.zc, z)


def cauchy_AB(m: int, nu, z, geo: TurningPointGeometry | None = None):
    """(main-term approximation of A_{2m+2}, of B_{2m+1}) at z."""
    geo = geo or get_geometry(m)
    if geo.m != m:
        raise ValueError("geometry built for a different m")
    with mp.workdps(geo.dps):
        nu = mp.mpf(nu)
        return (cauchy_main(z, nu, geo, TILDE),
                cauchy_main(z, nu, geo, PLAIN) / nu ** (mp.mpf(1) / 3))


def regular_part(fn, z, center, radius, N: int = 500):
    """G*(z) = (1/2 pi i) oint G(t)/(t - z) dt for a function G analytic on
    the circle and with poles only inside it at isolated points."""
    nodes = quad.circle_nodes(center, radius, N)
    return quad.cauchy_trapezoid([fn(t) for t in nodes], nodes, center, z)


def g_star(m: int, s: int, z, variant: str = PLAIN, geo: TurningPointGeometry | None = None):
    """Regular part of G_{m,2s+1} (plain) or G~_{m,2s} (tilde) at z."""
    geo = geo or get_geometry(m)
    j = 2 * s + 1 if variant == PLAIN else 2 * s
    with mp.workdps(geo.dps):
        z = mp.mpmathify(z)
        geo.check_inside(z)
        ser = geo.node_gseries(j, variant)
        return quad.cauchy_trapezoid([g[j] for g in ser], geo.contour_nodes(), geo.zc, z)


def _series_sum(z, nu, geo, variant, N):
    m = geo.m
    idx = range(2 * (m + 1), 2 * N + 1, 2) if variant == TILDE else range(2 * m + 1, 2 * N + 2, 2)
    top = max(idx) if len(idx) else 0
    ser = geo.node_gseries(top, variant)
    nodes = geo.contour_nodes()
    acc = mp.mpf(0)
    for j in idx:
        acc += abs(quad.cauchy_trapezoid([g[j] for g in ser], nodes, geo.zc, z)) / nu ** j
    return acc


def kappa_bound(z, nu, geo: TurningPointGeometry | None = None, variant: str = TILDE,
                N: int | None = None) -> KappaBreakdown:
    """Bound on |kappa~_{2m+2,r}(nu, z)| (tilde) or |kappa_{2m+1,r}(nu, z)| (plain).

    With N=None the truncation index starts at m+3 and is increased until the
    Maclaurin tail term is below 1e-12 of the rest of the bound (at most 200).
    """
    geo = geo or get_geometry()
    with mp.workdps(geo.dps):
        z = mp.mpmathify(z)
        nu = mp.mpf(nu)
        geo.check_inside(z)
        if abs(z - 1) >= geo.r0:
            raise ContourDomainError("z must lie inside Gamma (|z - 1| < r0)")
        m, n = geo.m, geo.n
        Nmin = m + 1 if variant == TILDE else m
        if N is not None and N < Nmin:
            raise ValueError(f"N must be at least {Nmin}")
        u = u_m(geo, variant)
        if nu <= u:
            raise TailBoundError(f"nu = {mp.nstr(nu, 6)} <= u_m = {mp.nstr(u, 6)}")
        Gm = G_m(geo, variant)
        U, Ut, _ = geo.contour_scalars()
        l0 = quad.l0(z, 1, geo.r0)
        d = bold_d(n, nu, variant, geo)
        dterm = (Ut * d if variant == TILDE else d / U) * l0 / (2 * mp.pi * nu ** n)
        expo_off = 2 if variant == TILDE else 3

        def tail(NN):
            return (u / nu) ** (2 * NN + expo_off) * Gm * l0 / (2 * mp.pi * (1 - u / nu))

        if N is None:
            NN = max(m + 3, Nmin)
            while True:
                ser = _series_sum(z, nu, geo, variant, NN)
                if tail(NN) <= TAIL_RATIO * (ser + dterm) or NN >= N_CAP:
                    break
                # jump close to the required index, then confirm
                need = int(mp.ceil((mp.log(TAIL_RATIO * (ser + dterm) / tail(NN)))
                                   / (2 * mp.log(u / nu)))) if ser + dterm > 0 else 1
                NN = min(N_CAP, NN + max(1, need))
        else:
            NN = N
            ser = _series_sum(z, nu, geo, variant, NN)
        tl = tail(NN)
        return KappaBreakdown(ser + tl + dterm, ser, tl, dterm, NN, u, Gm)


def true_kappa(z, nu, geo: TurningPointGeometry | None = None, variant: str = TILDE):
    """2|A - Cauchy main term| (tilde) or 2|nu^{1/3} B - Cauchy main term| (plain)."""
    from .bessel_app import exact_AB
    geo = geo or get_geometry()
    with mp.workdps(geo.dps):
        z = mp.mpmathify(z)
        nu = mp.mpf(nu)
        A, B = exact_AB(geo.m, geo.r, nu, z)
        approx = cauchy_main(z, nu, geo, variant)
        val = A if variant == TILDE else nu ** (mp.mpf(1) / 3) * B
        return 2 * abs(val - approx)


# ---------------------------------------------------------------------------
# Maclaurin tail
# ---------------------------------------------------------------------------

def g_closed_form(w, t, geo: TurningPointGeometry, variant: str):
    """G(w, t) = prefactor * 2 [expansion through order 2m+2r+1 - main term]."""
    m, r = geo.m, geo.r
    v = maps.bessel_vars(t)
    E = coeffs.cal_E_list(t, 2 * m + 2 * r + 1, variant)
    fe = mp.fsum(E[2 * s] * w ** (2 * s) for s in range(1, m + r + 1))
    fo = mp.fsum(E[2 * s + 1] * w ** (2 * s + 1) for s in range(0, m + r + 1))
    me = mp.fsum(E[2 * s] * w ** (2 * s) for s in range(1, m + 1))
    if variant == TILDE:
        mo = mp.fsum(E[2 * s + 1] * w ** (2 * s + 1) for s in range(0, m + 1))
        core = mp.exp(fe) * mp.cosh(fo) - mp.exp(me) * mp.cosh(mo)
    else:
        mo = mp.fsum(E[2 * s + 1] * w ** (2 * s + 1) for s in range(0, m))
        core = mp.exp(fe) * mp.sinh(fo) - mp.exp(me) * mp.sinh(mo)
    return 2 * coeffs.g_prefactor(v, variant) * core


def maclaurin_tail_check(t, nu, N: int, geo: TurningPointGeometry, variant: str = PLAIN):
    """(|R_{m,2N+3}(1/nu, t)| by direct subtraction, its bound G_m (u_m/nu)^{2N+3}/(1 - u_m/nu))
    at a point t of Gamma (tilde: exponent 2N+2)."""
    with mp.workdps(geo.dps + 20):
        w = 1 / mp.mpf(nu)
        off = 2 if variant == TILDE else 3
        top = 2 * N + off - 1
        v = maps.bessel_vars(t)
        E = coeffs.cal_E_list(t, geo.n - 1, variant)
        ser: FormalSeries = coeffs.g_series_from_values(E, coeffs.g_prefactor(v, variant),
                                                        geo.m, geo.r, top, variant)
        actual = abs(g_closed_form(w, t, geo, variant) - ser.evaluate(w))
    with mp.workdps(geo.dps):
        u = u_m(geo, variant)
        bound = G_m(geo, variant) * (u * w) ** (2 * N + off) / (1 - u * w)
    return +actual, bound
