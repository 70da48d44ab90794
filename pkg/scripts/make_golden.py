"""Regenerate src/zexplore/data/golden.csv with mpmath at 40 digits.

This is the independent oracle for the binary64 engine: nothing from the
package is imported.  The LogGamma branch is fixed by unwrapping
arg Gamma(sigma + i t) in steps of 0.1 from t = 0 and checked against
mpmath.loggamma before anything is written.

    python scripts/make_golden.py
"""

import csv
from pathlib import Path

import mpmath as mp

mp.mp.dps = 40

POINTS = [
    (0.5, 0.5), (0.5, 6.0), (0.5, 14.0), (0.5, 14.134725), (0.5, 25.0),
    (0.5, 50.0), (0.5, 99.0), (0.1, 2.0), (0.1, 47.0), (0.25, 3.5),
    (0.25, 21.0), (0.3, 7.0), (0.3, 8.0), (0.3, 33.0), (1 / 3, 10.0),
    (0.4, 63.0), (0.6, 12.5), (0.7, 8.0), (0.75, 12.0), (0.9, 18.0),
    (0.9, 80.0), (1.0, 5.0), (1.2, 1.5), (1.5, 0.75), (1.5, 40.0),
]


def tracked_loggamma(sigma, rho, step=mp.mpf("0.1")):
    """Im LogGamma by phase unwrapping along sigma + i t, 0 <= t <= rho."""
    t = mp.mpf(0)
    angle = mp.arg(mp.gamma(mp.mpf(sigma)))
    prev = angle
    while t < rho:
        t = min(t + step, mp.mpf(rho))
        cur = mp.arg(mp.gamma(mp.mpc(sigma, t)))
        d = cur - prev
        d -= 2 * mp.pi * mp.nint(d / (2 * mp.pi))
        angle += d
        prev = cur
    return angle


def main():
    rows = []
    for sigma, rho in POINTS:
        s = mp.mpc(mp.mpf(sigma), mp.mpf(rho))
        lg = mp.loggamma(s)
        unwrapped = tracked_loggamma(mp.mpf(sigma), mp.mpf(rho))
        assert abs(unwrapped - lg.imag) < mp.mpf("1e-25"), (sigma, rho)
        values = {
            "zeta": mp.zeta(s),
            "zeta_d1": mp.zeta(s, derivative=1),
            "zeta_d2": mp.zeta(s, derivative=2),
            "gamma": mp.gamma(s),
            "loggamma": lg,
            "digamma": mp.digamma(s),
        }
        for name, v in values.items():
            v = mp.mpc(v)
            rows.append([repr(float(sigma)), repr(float(rho)),
                         mp.nstr(v.real, 20), mp.nstr(v.imag, 20), name])
    out = Path(__file__).resolve().parents[1] / "src" / "zexplore" / "data" / "golden.csv"
    with out.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["sigma", "rho", "re", "im", "quantity"])
        w.writerows(rows)
    print(f"wrote {len(rows)} rows to {out}")


if __name__ == "__main__":
    main()
