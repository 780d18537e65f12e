"""Reproduction grids: true errors, bounds and relative sharpness for the
away-from-turning-point tables (1-4), the near-turning-point tables (5-7)
and the relative-error curves."""
from __future__ import annotations

from dataclasses import dataclass, field, fields

import mpmath as mp

from . import bounds_away, bounds_near
from .coeffs import PLAIN, TILDE
from .xprec import DEFAULT_DPS


@dataclass
class Config:
    """Run parameters (all overridable from a key = value file or flags)."""
    dps: int = DEFAULT_DPS
    m: int = 1
    r: int = 4
    nu: int = 100
    gl_nodes: int = 30
    gl_panels: int = 1
    contour_nodes: int = 500
    n_samples: int = 2000
    r0: str = "1"
    zc: str = "1.5"
    R: str = "1.3"
    z_grid_1: list = field(default_factory=lambda: ["0.01", "0.05", "0.15", "0.2", "0.25",
                                                    "0.3", "0.35", "0.4"])
    z_grid_2: list = field(default_factory=lambda: ["0.01", "0.05", "0.1", "0.15", "0.2",
                                                    "0.25", "0.3", "0.35", "0.4"])
    nu_grid_34: list = field(default_factory=lambda: [10, 20, 30, 40, 50])
    z_34: str = "0.2"
    nu_grid_56: list = field(default_factory=lambda: [50, 100])
    alpha_steps: int = 6          # alpha = k pi/alpha_steps, k = 0..alpha_steps
    near_radius: str = "0.1"
    rz_grid_7: list = field(default_factory=lambda: ["1e-3", "1e-2", "0.1", "0.2", "0.3",
                                                     "0.4", "0.5"])
    figure_z: list = field(default_factory=lambda: [f"{k / 100:.2f}" for k in range(1, 41)])

    @classmethod
    def field_types(cls):
        return {f.name: f.type for f in fields(cls)}

    def update(self, mapping: dict):
        """Apply string-valued overrides; list fields take comma-separated values."""
        for key, raw in mapping.items():
            if not hasattr(self, key):
                raise KeyError(f"unknown configuration key: {key}")
            cur = getattr(self, key)
            if isinstance(cur, list):
                items = [s.strip() for s in str(raw).split(",") if s.strip()]
                kind = type(cur[0]) if cur else str
                setattr(self, key, [kind(s) for s in items])
            elif isinstance(cur, int):
                setattr(self, key, int(raw))
            else:
                setattr(self, key, str(raw))
        return self

    def context(self, nu) -> bounds_away.ExpansionContext:
        return bounds_away.ExpansionContext(nu, self.m, self.r, self.dps, self.gl_nodes, self.gl_panels)

    def geometry(self) -> bounds_near.TurningPointGeometry:
        return bounds_near.get_geometry(self.m, self.r, self.dps, r0=self.r0, zc=self.zc, R=self.R,
                                        N_contour=self.contour_nodes, n_samples=self.n_samples)


def parse_config_text(text: str) -> dict:
    """key = value lines; '#' starts a comment."""
    out = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"config line {lineno}: expected key = value")
        k, v = line.split("=", 1)
        out[k.strip()] = v.strip()
    return out


@dataclass(frozen=True)
class Row:
    key: tuple           # identifying columns
    true_error: object
    bound: object

    @property
    def e_r(self):
        return bounds_away.relative_sharpness(self.true_error, self.bound)


TABLE_VARIANT = {1: TILDE, 2: PLAIN, 3: TILDE, 4: PLAIN, 5: TILDE, 6: PLAIN}
TABLE_COLUMNS = {
    1: ("z",), 2: ("z",), 3: ("nu",), 4: ("nu",),
    5: ("alpha", "nu"), 6: ("alpha", "nu"), 7: ("R_z", "variant"),
}


def near_point(k: int, steps: int, radius):
    """z = 1 + radius e^{i k pi/steps}, with exactly real / imaginary offsets
    where the angle makes them so."""
    radius = mp.mpf(radius)
    if (2 * k) % (2 * steps) == 0:
        return 1 + radius * (1 if (k // steps) % 2 == 0 else -1)
    if 2 * k == steps:
        return mp.mpc(1, radius)
    return 1 + radius * mp.expj(mp.pi * k / steps)


def alpha_label(k: int, steps: int) -> str:
    if k == 0:
        return "0"
    from fractions import Fraction
    q = Fraction(k, steps)
    num = "" if q.numerator == 1 else str(q.numerator)
    return f"{num}pi" + ("" if q.denominator == 1 else f"/{q.denominator}")


def away_row(z, nu, variant, cfg: Config) -> Row:
    with mp.workdps(cfg.dps):
        ctx = cfg.context(nu)
        zz = mp.mpmathify(z)
        return Row((), bounds_away.true_eps(zz, ctx, variant), bounds_away.bound_eps(zz, ctx, variant).total)


def near_row(z, nu, variant, cfg: Config) -> Row:
    geo = cfg.geometry()
    with mp.workdps(cfg.dps):
        return Row((), bounds_near.true_kappa(z, nu, geo, variant),
                   bounds_near.kappa_bound(z, nu, geo, variant).total)


def _keyed(row: Row, key) -> Row:
    return Row(tuple(key), row.true_error, row.bound)


def run_table(table_id: int, cfg: Config | None = None) -> list[Row]:
    cfg = cfg or Config()
    if table_id not in range(1, 8):
        raise ValueError("table id must be 1..7")
    with mp.workdps(cfg.dps):
        if table_id in (1, 2):
            grid = cfg.z_grid_1 if table_id == 1 else cfg.z_grid_2
            return [_keyed(away_row(mp.mpf(z), cfg.nu, TABLE_VARIANT[table_id], cfg), (z,)) for z in grid]
        if table_id in (3, 4):
            return [_keyed(away_row(mp.mpf(cfg.z_34), nu, TABLE_VARIANT[table_id], cfg), (nu,))
                    for nu in cfg.nu_grid_34]
        if table_id in (5, 6):
            rows = []
            for k in range(cfg.alpha_steps + 1):
                z = near_point(k, cfg.alpha_steps, cfg.near_radius)
                for nu in cfg.nu_grid_56:
                    rows.append(_keyed(near_row(z, nu, TABLE_VARIANT[table_id], cfg),
                                       (alpha_label(k, cfg.alpha_steps), nu)))
            return rows
        rows = []
        for rz in cfg.rz_grid_7:
            z = 1 - mp.mpf(rz)
            for variant in (TILDE, PLAIN):
                rows.append(_keyed(near_row(z, cfg.nu, variant, cfg), (rz, variant)))
        return rows


def run_figure(cfg: Config | None = None) -> list[tuple]:
    """(z, e_r tilde, e_r plain) at nu = cfg.nu over cfg.figure_z."""
    cfg = cfg or Config()
    out = []
    with mp.workdps(cfg.dps):
        for z in cfg.figure_z:
            t = away_row(mp.mpf(z), cfg.nu, TILDE, cfg)
            p = away_row(mp.mpf(z), cfg.nu, PLAIN, cfg)
            out.append((z, t.e_r, p.e_r))
    return out
