"""Certified J_nu(nu z) and H1_nu(nu z) against the series oracle.

    python3 demo/certified_eval.py
"""
import mpmath as mp

from airybounds import bessel_app


def main():
    m, r, dps = 1, 4, 50
    mp.mp.dps = dps
    for kind, nu, z in (("J", 100, "0.2"), ("J", 100, "0.9"), ("J", 50, "1.1"),
                        ("H1", 100, "1"), ("H1", 100, "0.6")):
        res = bessel_app.eval_certified(kind, m, r, nu, mp.mpf(z), dps)
        err = abs(bessel_app.bessel_oracle(kind, nu, mp.mpf(z)) - res.value)
        print(f"{kind:2s} nu={nu:3d} z={z:4s} [{res.regime}] value={mp.nstr(res.value, 15)} "
              f"certificate={mp.nstr(res.certificate, 3)} actual={mp.nstr(err, 3)} "
              f"enclosed={err <= res.certificate}")


if __name__ == "__main__":
    main()
