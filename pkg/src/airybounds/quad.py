"""Deterministic quadrature: Gauss-Legendre on segments and arcs, arc-length
integrals of |f| along paths (with infinite vertical rays mapped to finite
intervals), the periodic trapezoid rule on circles, the AGM complete elliptic
integral K(k) and the Cauchy-kernel length l0(z).
"""
from __future__ import annotations

import threading
from dataclasses import dataclass

import mpmath as mp


class QuadratureError(RuntimeError):
    """Gauss-Legendre node computation failed to converge."""


class SingularIntegrandError(ArithmeticError):
    """A quadrature sample produced NaN or infinity."""

    def __init__(self, point):
        super().__init__(f"non-finite integrand value at t = {mp.nstr(point, 15)}")
        self.point = point


# ---------------------------------------------------------------------------
# Paths
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Segment:
    a: object
    b: object

    def point(self, sigma):
        """sigma in [-1, 1] -> (t, dt/dsigma)."""
        a, b = mp.mpmathify(self.a), mp.mpmathify(self.b)
        half = (b - a) / 2
        return (a + b) / 2 + half * sigma, half


@dataclass(frozen=True)
class Arc:
    center: object
    radius: object
    phi0: object
    phi1: object

    def __post_init__(self):
        if not mp.mpf(self.radius) > 0:
            raise ValueError("arc radius must be positive")
        if not mp.mpf(self.phi0) < mp.mpf(self.phi1):
            raise ValueError("arc requires phi0 < phi1")

    def point(self, sigma):
        c, R = mp.mpmathify(self.center), mp.mpf(self.radius)
        p0, p1 = mp.mpf(self.phi0), mp.mpf(self.phi1)
        half = (p1 - p0) / 2
        phi = (p0 + p1) / 2 + half * sigma
        e = mp.expj(phi)
        return c + R * e, 1j * R * e * half


@dataclass(frozen=True)
class Circle:
    center: object
    radius: object

    def __post_init__(self):
        if not mp.mpf(self.radius) > 0:
            raise ValueError("circle radius must be positive")


@dataclass(frozen=True)
class VerticalRay:
    """The ray t = z + i*direction*y, y >= 0 (direction +1: to +i inf)."""
    z: object
    direction: int = 1


# ---------------------------------------------------------------------------
# Gauss-Legendre nodes
# ---------------------------------------------------------------------------

_GL_CACHE: dict = {}
_GL_LOCK = threading.Lock()


def _legendre(n, x):
    p0, p1 = mp.mpf(1), x
    for k in range(2, n + 1):
        p0, p1 = p1, ((2 * k - 1) * x * p1 - (k - 1) * p0) / k
    dp = n * (x * p1 - p0) / (x * x - 1)
    return p1, dp


def gauss_legendre_nodes(n: int):
    """Nodes and weights on [-1, 1] at the working precision, cached by (n, dps)."""
    if n < 2:
        raise ValueError("at least 2 nodes required")
    key = (n, mp.mp.dps)
    hit = _GL_CACHE.get(key)
    if hit is not None:
        return hit
    with mp.extradps(10):
        tol = mp.mpf(10) ** (-(mp.mp.dps - 5))
        xs, ws = [], []
        for i in range(1, n + 1):
            x = mp.cos(mp.pi * (i - mp.mpf(1) / 4) / (n + mp.mpf(1) / 2))
            for _ in range(100):
                p, dp = _legendre(n, x)
                dx = p / dp
                x -= dx
                if abs(dx) < tol:
                    break
            else:
                raise QuadratureError(f"Newton iteration for GL node {i} of {n} did not converge")
            p, dp = _legendre(n, x)
            xs.append(x)
            ws.append(2 / ((1 - x * x) * dp * dp))
    nodes = (tuple(+x for x in xs), tuple(+w for w in ws))
    with _GL_LOCK:
        _GL_CACHE.setdefault(key, nodes)
    return _GL_CACHE[key]


def _finite(v) -> bool:
    return mp.isfinite(v) if not isinstance(v, mp.mpc) else (mp.isfinite(v.real) and mp.isfinite(v.imag))


def gl_interval(g, a, b, n: int = 30, panels: int = 1):
    """Composite Gauss-Legendre for a real parameter integral over [a, b]."""
    xs, ws = gauss_legendre_nodes(n)
    a, b = mp.mpf(a), mp.mpf(b)
    h = (b - a) / panels
    total = mp.mpf(0)
    for p in range(panels):
        lo = a + p * h
        for x, w in zip(xs, ws):
            total += w * g(lo + h * (x + 1) / 2)
    return total * h / 2


def gauss_legendre(f, path, n: int = 30, panels: int = 1):
    """GL approximation of the complex line integral of f along a segment or arc."""
    if not isinstance(path, (Segment, Arc)):
        raise TypeError("gauss_legendre accepts Segment or Arc paths")

    def g(sigma):
        t, dt = path.point(sigma)
        v = f(t)
        if not _finite(v):
            raise SingularIntegrandError(t)
        return v * dt

    xs, ws = gauss_legendre_nodes(n)
    total = mp.mpc(0)
    for p in range(panels):
        for x, w in zip(xs, ws):
            # panel p covers [-1 + 2p/P, -1 + 2(p+1)/P]
            sigma = -1 + (2 * p + x + 1) / panels
            total += w * g(sigma)
    return total / panels


def ray_to_finite(f, z, direction: int = 1):
    """Split the vertical ray from z at height H = max(|Im z|, 1) (measured on
    the side the ray travels) and map the tail t = Re z + i*dir/s, s in (0, 1/H].

    Returns (segment or None, tail integrand s -> |f(t(s))|/s^2, upper limit 1/H).
    """
    z = mp.mpmathify(z)
    if direction not in (1, -1):
        raise ValueError("direction must be +1 or -1")
    x0 = mp.re(z)
    y0 = mp.im(z) * direction
    H = max(y0, mp.mpf(1))
    seg = Segment(z, x0 + 1j * direction * H) if H > y0 else None

    def tail(s):
        t = x0 + 1j * direction / s
        v = f(t)
        if not _finite(v):
            raise SingularIntegrandError(t)
        return abs(v) / (s * s)

    return seg, tail, 1 / H


def abs_samples(path, n: int = 30, panels: int = 1):
    """Nodes t_i and weights w_i with sum w_i |f(t_i)| ~ integral of |f| |dt|."""
    out = []
    if isinstance(path, VerticalRay):
        z = mp.mpmathify(path.z)
        d = path.direction
        if d not in (1, -1):
            raise ValueError("direction must be +1 or -1")
        x0, y0 = mp.re(z), mp.im(z) * d
        H = max(y0, mp.mpf(1))
        xs, ws = gauss_legendre_nodes(n)
        h = (1 / H) / panels
        for p in range(panels):
            for x, w in zip(xs, ws):
                sg = p * h + h * (x + 1) / 2
                out.append((x0 + 1j * d / sg, w * h / 2 / (sg * sg)))
        if H > y0:
            out.extend(abs_samples(Segment(z, x0 + 1j * d * H), n, panels))
        return out
    if isinstance(path, Circle):
        c = mp.mpmathify(path.center)
        return abs_samples(Arc(c, path.radius, 0, mp.pi), n, panels) + \
            abs_samples(Arc(c, path.radius, mp.pi, 2 * mp.pi), n, panels)
    xs, ws = gauss_legendre_nodes(n)
    for p in range(panels):
        for x, w in zip(xs, ws):
            sigma = -1 + (2 * p + x + 1) / panels
            t, dt = path.point(sigma)
            out.append((t, w * abs(dt) / panels))
    return out


def integrate_abs_many(fvec, path, n: int = 30, panels: int = 1):
    """Integrals of |f_i| |dt| for a vector-valued integrand sharing nodes."""
    totals = None
    for t, w in abs_samples(path, n, panels):
        vals = fvec(t)
        if totals is None:
            totals = [mp.mpf(0)] * len(vals)
        for i, v in enumerate(vals):
            if not _finite(v):
                raise SingularIntegrandError(t)
            totals[i] += w * abs(v)
    return totals


def integrate_abs(f, path, n: int = 30, panels: int = 1):
    """Arc-length integral of |f| along a Segment, Arc, Circle or VerticalRay;
    infinite rays are mapped to finite intervals by ray_to_finite's rule."""
    return integrate_abs_many(lambda t: (f(t),), path, n, panels)[0]


# ---------------------------------------------------------------------------
# Circles
# ---------------------------------------------------------------------------

def circle_nodes(center, radius, N: int):
    c = mp.mpmathify(center)
    R = mp.mpf(radius)
    return [c + R * mp.expj(2 * mp.pi * k / N) for k in range(N)]


def trapezoid_circle(f, center, radius, N: int = 500):
    """Periodic trapezoid value of the contour integral of f around the circle
    |t - center| = radius (positive orientation)."""
    if N < 16:
        raise ValueError("N >= 16 required")
    c = mp.mpmathify(center)
    total = mp.mpc(0)
    for t in circle_nodes(c, radius, N):
        total += f(t) * (t - c)
    return 2j * mp.pi * total / N


def cauchy_trapezoid(values, nodes, center, z):
    """(1/2 pi i) * contour integral of v(t)/(t - z) dt from node samples."""
    c = mp.mpmathify(center)
    total = mp.mpc(0)
    for v, t in zip(values, nodes):
        total += v * (t - c) / (t - z)
    return total / len(nodes)


# ---------------------------------------------------------------------------
# Elliptic kernel
# ---------------------------------------------------------------------------

def agm(a, b):
    a, b = mp.mpf(a), mp.mpf(b)
    tol = mp.mpf(10) ** (-(mp.mp.dps + 3))
    for _ in range(200):
        if abs(a - b) <= tol * abs(a):
            break
        a, b = (a + b) / 2, mp.sqrt(a * b)
    return (a + b) / 2


def agm_elliptic_K(k):
    """Complete elliptic integral of the first kind, modulus k, via the AGM."""
    k = mp.mpf(k)
    if k < 0 or k >= 1:
        raise ValueError("agm_elliptic_K requires 0 <= k < 1")
    return mp.pi / (2 * agm(1, mp.sqrt(1 - k * k)))


def l0(z, z0=1, r0=1):
    """Integral of |dt/(t - z)| over |t - z0| = r0 for an interior point z."""
    z, z0, r0 = mp.mpmathify(z), mp.mpmathify(z0), mp.mpf(r0)
    d = abs(z - z0)
    if d >= r0:
        raise ValueError("l0 requires |z - z0| < r0")
    k = 2 * mp.sqrt(r0 * d) / (d + r0)
    return 4 * r0 * agm_elliptic_K(k) / (d + r0)
