"""Command-line driver.

    airybounds table --id N          CSV reproduction of table N (1..7)
    airybounds figure relerr         (z, e_r) data for both away bounds
    airybounds verify --suite NAME   sequences | appendix | quadrature | oracles | soundness
    airybounds coeffs                F^_s, E^_s, a_s, a~_s as exact rationals
    airybounds geometry --dump       cached turning-point scalars
    airybounds eval --kind J|H1 ...  certified Bessel values (JSON lines)

Options may also come from a ``key = value`` file given with --config;
command-line flags override the file. Exit codes: 0 ok, 2 verification
failure, 3 precision degradation.
"""
from __future__ import annotations

import argparse
import csv
import json
import sys
import warnings

import mpmath as mp

from . import bessel_app, coeffs, tables, verify
from .xprec import PrecisionWarning, to_mp

EXIT_OK, EXIT_FAIL, EXIT_DEGRADED = 0, 2, 3


def _fmt(x, digits):
    return mp.nstr(x, digits, min_fixed=1, max_fixed=0)


def _load_config(args) -> tables.Config:
    cfg = tables.Config()
    if getattr(args, "config", None):
        with open(args.config, "r", encoding="utf-8") as fh:
            cfg.update(tables.parse_config_text(fh.read()))
    over = {}
    for key in ("dps", "m", "r", "nu", "gl_nodes", "contour_nodes"):
        v = getattr(args, key, None)
        if v is not None:
            over[key] = v
    cfg.update(over)
    return cfg


def _comment_lines(cfg: tables.Config, extra: dict):
    out = [f"# {k} = {v}" for k, v in extra.items()]
    out += [f"# dps = {cfg.dps}", f"# m = {cfg.m}", f"# r = {cfg.r}",
            f"# gl_nodes = {cfg.gl_nodes}", f"# contour_nodes = {cfg.contour_nodes}",
            f"# r0 = {cfg.r0}", f"# zc = {cfg.zc}", f"# R = {cfg.R}"]
    return out


TABLE_TITLES = {
    1: "away bound for eps~ (A coefficient) versus z",
    2: "away bound for eps (B coefficient) versus z",
    3: "away bound for eps~ versus nu",
    4: "away bound for eps versus nu",
    5: "near bound for kappa~ at z = 1 + 0.1 e^{i alpha}",
    6: "near bound for kappa at z = 1 + 0.1 e^{i alpha}",
    7: "near bounds at z = 1 - R_z",
}


def write_table(table_id: int, cfg: tables.Config, out) -> None:
    rows = tables.run_table(table_id, cfg)
    extra = {"table": table_id, "title": TABLE_TITLES[table_id]}
    if table_id in (1, 2, 5, 6, 7):
        extra["nu"] = cfg.nu if table_id in (1, 2, 7) else ",".join(map(str, cfg.nu_grid_56))
    if table_id in (3, 4):
        extra["z"] = cfg.z_34
    for line in _comment_lines(cfg, extra):
        out.write(line + "\n")
    w = csv.writer(out, lineterminator="\n")
    w.writerow(list(tables.TABLE_COLUMNS[table_id]) + ["true_error", "bound", "e_r"])
    with mp.workdps(cfg.dps):
        for row in rows:
            w.writerow([*row.key, _fmt(row.true_error, cfg.dps), _fmt(row.bound, cfg.dps),
                        _fmt(row.e_r, cfg.dps)])


def write_figure(cfg: tables.Config, out) -> None:
    data = tables.run_figure(cfg)
    for line in _comment_lines(cfg, {"figure": "relerr", "nu": cfg.nu}):
        out.write(line + "\n")
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["z", "e_r_tilde", "e_r_plain"])
    with mp.workdps(cfg.dps):
        for z, et, ep in data:
            w.writerow([z, _fmt(et, cfg.dps), _fmt(ep, cfg.dps)])


def write_coeffs(s_max: int, out) -> None:
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["quantity", "s", "power", "value"])
    for s in range(1, s_max + 1):
        for name, poly in (("Fhat", coeffs.fhat(s)), ("Ehat", coeffs.ehat(s))):
            for k in range(poly.degree + 1):
                c = poly[k]
                if c != 0:
                    w.writerow([name, s, k, str(c)])
    t = coeffs.seq_a(max(30, s_max))
    for s in range(1, s_max + 1):
        w.writerow(["a", s, "", str(t.a[s])])
        w.writerow(["a_tilde", s, "", str(t.at[s])])


def write_geometry(cfg: tables.Config, out) -> None:
    geo = cfg.geometry()
    for line in _comment_lines(cfg, {"geometry": "turning point", "n_samples": cfg.n_samples}):
        out.write(line + "\n")
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["name", "value"])
    with mp.workdps(cfg.dps):
        for name, v in geo.dump():
            w.writerow([name, _fmt(v, cfg.dps)])


def eval_record(kind, nu, z, m, r, dps, oracle: bool):
    with mp.workdps(dps):
        zz = to_mp(z)
        res = bessel_app.eval_certified(kind, m, r, nu, zz, dps)
        rec = {
            "kind": kind, "nu": str(nu), "z": str(z), "m": m, "r": r,
            "value_re": mp.nstr(mp.re(res.value), dps), "value_im": mp.nstr(mp.im(res.value), dps),
            "certificate": mp.nstr(res.certificate, 10), "regime": res.regime,
        }
        if oracle:
            o = bessel_app.bessel_oracle(kind, nu, zz)
            rec["oracle_re"] = mp.nstr(mp.re(o), dps)
            rec["oracle_im"] = mp.nstr(mp.im(o), dps)
            rec["abs_error"] = mp.nstr(abs(o - res.value), 10)
            rec["enclosed"] = bool(abs(o - res.value) <= res.certificate)
        return rec


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="airybounds", description="Airy-expansion error bounds for Bessel functions")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key = value configuration file")
    common.add_argument("--dps", type=int, help="decimal precision (default 50)")
    common.add_argument("--m", type=int)
    common.add_argument("--r", type=int)
    common.add_argument("--gl-nodes", dest="gl_nodes", type=int)
    common.add_argument("--contour-nodes", dest="contour_nodes", type=int)
    common.add_argument("--output", "-o", help="write to file instead of stdout")
    sub = p.add_subparsers(dest="cmd", required=True)

    t = sub.add_parser("table", parents=[common], help="reproduce a table as CSV")
    t.add_argument("--id", type=int, required=True, choices=range(1, 8))
    t.add_argument("--nu", type=int)

    f = sub.add_parser("figure", parents=[common], help="relative-error curve data")
    f.add_argument("id", choices=["relerr"])
    f.add_argument("--nu", type=int)

    v = sub.add_parser("verify", parents=[common], help="run a verification suite")
    v.add_argument("--suite", required=True, choices=verify.SUITES)

    c = sub.add_parser("coeffs", parents=[common], help="exact coefficient dump")
    c.add_argument("--smax", type=int, default=6)

    g = sub.add_parser("geometry", parents=[common], help="turning-point scalars")
    g.add_argument("--dump", action="store_true", required=True)

    e = sub.add_parser("eval", parents=[common], help="certified Bessel evaluation")
    e.add_argument("--kind", choices=["J", "H1"])
    e.add_argument("--nu", type=int)
    e.add_argument("--z")
    e.add_argument("--batch", help="file with lines 'kind nu z'")
    e.add_argument("--oracle", action="store_true", help="also report the series oracle value")
    return p


def _open_out(args):
    if getattr(args, "output", None):
        return open(args.output, "w", encoding="utf-8", newline="")
    return sys.stdout


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    cfg = _load_config(args)
    out = _open_out(args)
    code = EXIT_OK
    try:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always", PrecisionWarning)
            if args.cmd == "table":
                write_table(args.id, cfg, out)
            elif args.cmd == "figure":
                write_figure(cfg, out)
            elif args.cmd == "coeffs":
                write_coeffs(args.smax, out)
            elif args.cmd == "geometry":
                write_geometry(cfg, out)
            elif args.cmd == "verify":
                checks, degraded = verify.run_suite(args.suite, cfg)
                for ch in checks:
                    out.write(json.dumps({"suite": ch.suite, "check": ch.name, "ok": ch.ok,
                                          "detail": ch.detail}) + "\n")
                ok = all(ch.ok for ch in checks)
                out.write(json.dumps({"suite": args.suite, "result": "pass" if ok else "fail"}) + "\n")
                if not ok:
                    code = EXIT_FAIL
                elif degraded:
                    code = EXIT_DEGRADED
            elif args.cmd == "eval":
                jobs = []
                if args.batch:
                    with open(args.batch, encoding="utf-8") as fh:
                        for line in fh:
                            line = line.split("#", 1)[0].split()
                            if line:
                                jobs.append((line[0], int(line[1]), line[2]))
                if args.kind:
                    if args.nu is None or args.z is None:
                        raise SystemExit("eval needs --nu and --z with --kind")
                    jobs.append((args.kind, args.nu, args.z))
                if not jobs:
                    raise SystemExit("eval needs --kind/--nu/--z or --batch")
                for kind, nu, z in jobs:
                    out.write(json.dumps(eval_record(kind, nu, z, cfg.m, cfg.r, cfg.dps, args.oracle)) + "\n")
        if code == EXIT_OK and any(issubclass(w.category, PrecisionWarning) for w in caught):
            for w in caught:
                print(f"warning: {w.message}", file=sys.stderr)
            code = EXIT_DEGRADED
    finally:
        if out is not sys.stdout:
            out.close()
    return code


if __name__ == "__main__":
    sys.exit(main())
