"""Acceptance criteria 1-11, each at its stated tolerance.

Every criterion records one PASS/FAIL line (printed in the terminal summary
and to stdout) and then asserts its result; nothing here is loosened to
force a pass.  "k significant digits" means relative error <= 5e-k.
"""
import random
import time

import mpmath as mp
import pytest

from airybounds import bounds_away, bounds_near, coeffs, quad, specfun, tables, verify
from airybounds.coeffs import PLAIN, TILDE

import reference_values as pv
from conftest import ACCEPTANCE_LINES


def rel(x, ref):
    return abs(mp.mpf(x) / mp.mpf(ref) - 1)


def ok_digits(x, ref, k):
    return rel(x, ref) <= 5 * mp.mpf(10) ** -k


def report(k, ok, detail):
    line = f"CRITERION {k}: {'PASS' if ok else 'FAIL'} - {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


_rows = {}


def table_rows(tid):
    if tid not in _rows:
        t0 = time.time()
        _rows[tid] = (tables.run_table(tid, tables.Config()), time.time() - t0)
    return _rows[tid]


def _compare(rows, ref, keyfn, k_val, k_er=None):
    bad, worst = [], mp.mpf(0)
    for row in rows:
        key = keyfn(row)
        true_ref, bound_ref = ref[key][0], ref[key][1]
        for name, x, r in (("true", row.true_error, true_ref), ("bound", row.bound, bound_ref)):
            e = rel(x, r)
            worst = max(worst, e)
            if not ok_digits(x, r, k_val):
                bad.append(f"{key} {name} rel {mp.nstr(e, 2)}")
        if k_er is not None and not ok_digits(row.e_r, ref[key][2], k_er):
            bad.append(f"{key} e_r {mp.nstr(row.e_r, 2)} vs {ref[key][2]}")
    return bad, worst


def _key_z(row):
    return row.key[0]


def _key_alpha(row):
    from fractions import Fraction
    lab, nu = row.key
    if lab == "0":
        return (0, nu)
    num, _, den = lab.replace("pi", "1" if lab.startswith("pi") else "").partition("/")
    q = Fraction(int(num or 1), int(den or 1))
    return (int(q * 6), nu)


def test_criterion_01_table1():
    rows, dt = table_rows(1)
    bad, worst = _compare(rows, pv.TABLE1, _key_z, 10)
    ok = not bad and len(rows) == 8 and dt <= 300
    report(1, ok, f"{len(rows)} rows, {dt:.1f}s, worst rel {mp.nstr(worst, 2)}"
           + (f"; misses: {', '.join(bad)}" if bad else ""))


def test_criterion_02_table2():
    rows, dt = table_rows(2)
    bad, worst = _compare(rows, pv.TABLE2, _key_z, 10)
    ok = not bad and len(rows) == 9
    report(2, ok, f"{len(rows)} rows, {dt:.1f}s, worst rel {mp.nstr(worst, 2)}"
           + (f"; misses: {', '.join(bad)}" if bad else ""))


def test_criterion_03_tables34():
    bad = []
    worst = mp.mpf(0)
    for tid, ref in ((3, pv.TABLE3), (4, pv.TABLE4)):
        rows, _ = table_rows(tid)
        b, w = _compare(rows, ref, _key_z, 7, 2)
        bad += [f"T{tid} {x}" for x in b]
        worst = max(worst, w)
    report(3, not bad, f"10 rows, worst rel {mp.nstr(worst, 2)}" + (f"; misses: {', '.join(bad)}" if bad else ""))


def test_criterion_04_tables56():
    bad, worst, total = [], mp.mpf(0), 0.0
    for tid, ref in ((5, pv.TABLE5), (6, pv.TABLE6)):
        rows, dt = table_rows(tid)
        total += dt
        if len(rows) != 14:
            bad.append(f"T{tid} has {len(rows)} rows")
        b, w = _compare(rows, ref, _key_alpha, 6, 2)
        bad += [f"T{tid} {x}" for x in b]
        worst = max(worst, w)
    ok = not bad and total <= 900
    report(4, ok, f"28 rows, {total:.1f}s, worst rel {mp.nstr(worst, 2)}"
           + (f"; misses: {', '.join(bad)}" if bad else ""))


def test_criterion_05_table7():
    rows, _ = table_rows(7)
    bad, worst = _compare(rows, pv.TABLE7, lambda r: r.key, 6, 2)
    t5, _ = table_rows(5)
    t6, _ = table_rows(6)
    r7 = {r.key: r for r in rows}
    r5 = {_key_alpha(r): r for r in t5}
    r6 = {_key_alpha(r): r for r in t6}
    same = (r7["0.1", TILDE].true_error == r5[6, 100].true_error and r7["0.1", TILDE].bound == r5[6, 100].bound
            and r7["0.1", PLAIN].true_error == r6[6, 100].true_error and r7["0.1", PLAIN].bound == r6[6, 100].bound)
    if not same:
        bad.append("R_z = 0.1 row not bit-identical to alpha = pi row")
    report(5, not bad, f"{len(rows)} rows (7 R_z x 2 bounds), worst rel {mp.nstr(worst, 2)}, "
           f"R_z=0.1 == alpha=pi bit-identical: {same}" + (f"; misses: {', '.join(bad)}" if bad else ""))


def test_criterion_06_scalars(geo):
    U, Ut, rho = geo.contour_scalars()
    _, ray1, q11, q12 = geo.f_parts(1, 10)
    _, ray2, q21, q22 = geo.f_parts(2, 10)
    got = {
        "Upsilon": U, "rho": rho, "Upsilon_tilde": Ut, "ray_F1_10": ray1,
        "quarter1_F1_10": q11, "quarter2_F1_10": q12, "quarter1_F2_10": q21,
        "quarter2_F2_10": q22, "ray_F2_10": ray2, "F_1_10": geo.f_mk(1, 10),
        "sqrt_F_2_10": mp.sqrt(geo.f_mk(2, 10)),
    }
    bad = [f"{k} = {mp.nstr(got[k], 6)} vs {v}" for k, (v, d) in pv.SCALARS.items()
           if not ok_digits(got[k], v, d)]
    report(6, not bad, f"{len(got)} scalars" + (f"; misses: {', '.join(bad)}" if bad else ""))


def test_criterion_07_theorem_certification():
    t0 = time.time()
    fails = coeffs.certify_sequences(200)
    dt = time.time() - t0
    report(7, not fails and dt <= 10, f"s <= 200 exact, {dt:.2f}s" + (f"; {fails[:3]}" if fails else ""))


def test_criterion_08_appendix():
    fails = coeffs.certify_appendix(500, 24)
    report(8, not fails, "S_n bound 2..500, (7/36)S_s < 1 for 24..500, c~_s >= (s-1)! for s <= 24"
           + (f"; {fails[:3]}" if fails else ""))


def test_criterion_09_soundness():
    cfg = tables.Config()
    checked, bad = 0, []
    for tid in range(1, 8):
        rows, _ = table_rows(tid)
        for r in rows:
            checked += 1
            if not r.true_error <= r.bound:
                bad.append(f"T{tid} {r.key}")
    for kind, z, nu, var in verify.random_points(20):
        ok, row = verify.check_point(kind, z, nu, var, cfg)
        checked += 1
        if not ok:
            bad.append(f"{kind} nu={nu} z={mp.nstr(z, 6)} {var}")
    report(9, not bad, f"{checked} points (grids of criteria 1-5 + 20 random), violations: {len(bad)}"
           + (f"; {bad[:5]}" if bad else ""))


def _slope(xs, ys):
    lx = [mp.log(x) for x in xs]
    ly = [mp.log(y) for y in ys]
    n = len(xs)
    mx, my = sum(lx) / n, sum(ly) / n
    return sum((a - mx) * (b - my) for a, b in zip(lx, ly)) / sum((a - mx) ** 2 for a in lx)


def test_criterion_10_order():
    m, z = 1, mp.mpf("0.2")
    nus = [25, 50, 100, 200]
    out, bad = [], []
    for variant, target in ((TILDE, -(2 * m + 2)), (PLAIN, -(2 * m + 1))):
        b = [bounds_away.bound_eps(z, bounds_away.ExpansionContext(nu), variant).total for nu in nus]
        s = _slope(nus, b)
        out.append(f"{variant} slope {mp.nstr(s, 5)} (target {target})")
        if abs(s / target - 1) > mp.mpf("0.05"):
            bad.append(variant)
    report(10, not bad, "; ".join(out))


def test_criterion_11_oracles(geo):
    dps = mp.mp.dps
    lim = mp.mpf(10) ** -(dps - 10)
    rng = random.Random(2024)
    airy = max(verify.airy_connection_residual(mp.mpc(rng.uniform(-12, 12), rng.uniform(-12, 12)))
               for _ in range(20))
    wr = max(verify.wronskian_residual(n, x) for n, x in
             ((100, mp.mpc(20, 5)), (100, mp.mpf(20)), (50, mp.mpc(30, -4)), (10, mp.mpf(2)), (100, mp.mpf(90))))
    # Cauchy main terms versus direct main terms, literally, at points inside the contour
    from airybounds import maps
    nu = 100
    literal = mp.mpf(0)
    dual = mp.mpf(0)
    for z in (mp.mpf("0.9"), mp.mpc("1.3", "0.4")):
        v = maps.bessel_vars(z)
        for variant in (TILDE, PLAIN):
            direct = bounds_away.main_term(z, nu, 1, variant) * coeffs.g_prefactor(v, variant)
            c = bounds_near.cauchy_main(z, nu, geo, variant)
            literal = max(literal, abs(c - direct) / abs(direct))
            f = lambda t: bounds_away.main_term(t, nu, 1, variant) * coeffs.g_prefactor(maps.bessel_vars(t), variant)
            small = bounds_near.regular_part(f, z, 1, "0.05", 400)
            dual = max(dual, abs(c - small - direct) / abs(direct))
    g2 = bounds_near.get_geometry(1, 4, dps, R="1.1")
    pert = mp.mpf(0)
    for z in (mp.mpf("0.9"), mp.mpc(1, "0.1"), mp.mpf(1)):
        for variant in (TILDE, PLAIN):
            a = bounds_near.cauchy_main(z, nu, geo, variant)
            b = bounds_near.cauchy_main(z, nu, g2, variant)
            pert = max(pert, abs(a - b) / abs(a))
    parts = {
        "Airy residual": (airy, airy < lim),
        "Wronskian residual": (wr, wr < lim),
        "Cauchy vs direct (literal)": (literal, literal < mp.mpf("1e-20")),
        "Cauchy - pole circle vs direct": (dual, dual < mp.mpf("1e-20")),
        "contour radius 1.3 vs 1.1": (pert, pert < mp.mpf("1e-20")),
    }
    ok = all(v[1] for v in parts.values())
    report(11, ok, "; ".join(f"{k} {mp.nstr(v[0], 3)} {'ok' if v[1] else 'MISS'}" for k, v in parts.items()))
