"""The twelve acceptance criteria, each at its stated tolerance.

Every criterion prints one ``CRITERION n: PASS|FAIL`` line (also collected
into the pytest terminal summary).  Run directly with
``python3 tests/test_acceptance.py`` for the lines alone.
"""

import math
import time

import mpmath as mp
import pytest

from zexplore import counterexample as cx
from zexplore import figures as fg
from zexplore import identities as idn
from zexplore import oracle
from zexplore.argtrack import track
from zexplore.complexfn import ComplexPoint
from zexplore.symbols import asymptotic_symbols, build_symbols
from zexplore.zeros import f_sign_change, find_zeros, tan2beta_asy_gap, zero_conditions

PI = math.pi


def _oracle_zeros(lo, hi):
    out, n = [], 1
    while True:
        t = float(mp.zetazero(n).imag)
        if t > hi:
            return out
        if t >= lo:
            out.append(t)
        n += 1


def criterion_1():
    t0 = time.perf_counter()
    results = oracle.check_golden()
    dt = time.perf_counter() - t0
    points = {(r.row.sigma, r.row.rho) for r in results}
    bad = [r for r in results if not r.ok]
    worst = {}
    for r in results:
        worst[r.row.quantity] = max(worst.get(r.row.quantity, 0.0), r.abs_err)
    ok = not bad and len(points) == 25 and dt < 5
    detail = ", ".join(f"{q} {e:.1e}" for q, e in worst.items())
    return ok, f"{len(results) - len(bad)}/{len(results)} rows at 25 points in {dt:.2f}s; worst abs: {detail}"


def criterion_2():
    t0 = time.perf_counter()
    rep = idn.sweep(idn.IDS)
    dt = time.perf_counter() - t0
    c = rep.counts()
    unguarded = [r for r in rep.results if r.status == idn.SKIPPED and not r.note]
    worst = max((r.rel_residual for r in rep.results if r.status == idn.OK), default=0.0)
    ok = c[idn.FAILED] == 0 and not unguarded and worst < 1e-7 and dt < 60
    return ok, (f"{len(idn.IDS)} identities, ok={c[idn.OK]} skipped={c[idn.SKIPPED]} "
                f"failed={c[idn.FAILED]}, worst rel {worst:.1e}, {dt:.1f}s")


def criterion_3():
    errs = [abs(build_symbols(ComplexPoint(0.5, r)).Phi - 1) for r in (1.0, 5.0, 14.1347, 30.0, 50.0)]
    return max(errs) < 1e-12, f"max |Phi - 1| = {max(errs):.1e}"


def criterion_4():
    rows = fg.figure1_data(1 / 3, 2.0, 14.0)
    ks = {r.k for r in rows}
    worst = max(abs(r.residual) for r in rows)
    ta = track(1 / 3, 14.0, "alpha")
    tt = track(1 / 3, 14.0, "alpha_tilde")
    events = ta.jumps_between(2.0, 14.0) + tt.jumps_between(2.0, 14.0)
    ok = ks == {2} and worst < 1e-6 and not events
    return ok, f"k values {sorted(ks)}, max |residual| {worst:.1e}, branch events {len(events)}"


def criterion_5():
    first = _oracle_zeros(0, 15)[0]
    rows = fg.figure2_data()
    below = [r for r in rows if r.rho < first]
    above = [r for r in rows if r.rho > first]
    # part 1 as stated: continuous reading against tracked -arg(zeta)
    d1 = max(abs(r.brent_continuous - (-r.alpha)) for r in below)
    # part 2: the two readings of theta differ by an integer multiple of pi
    d2 = 0.0
    for r in above:
        x = (r.brent_continuous - r.brent_principal) / PI
        d2 = max(d2, abs(x - round(x)) * PI)
    # for reference: against +arg(zeta) the gap is a constant multiple of pi
    plus = [(r.alpha - r.brent_continuous) / PI for r in below]
    ok = d1 < 1e-6 and d2 < 1e-6
    return ok, (f"below first zero max |B_cont + alpha| = {d1:.3f} (need 1e-6); "
                f"above, max |gap mod pi| = {d2:.1e}; "
                f"(alpha - B_cont)/pi in [{min(plus):.9f}, {max(plus):.9f}]")


def criterion_6():
    rows, jumps = fg.figure3_data(30.0, 50.0)
    zeros = _oracle_zeros(30.0, 50.0)
    slopes = [r.slope for r in rows if not math.isnan(r.slope)]
    in_band = [r.rho for r in rows if -PI / 2 < r.beta_minus_alpha < PI / 2]
    match = len(jumps) == len(zeros) and all(abs(a - b) < 1e-6 for a, b in zip(jumps, zeros))
    ok = max(slopes) < 0 and match and not in_band
    return ok, (f"max slope {max(slopes):.3f} over {len(slopes)} samples; "
                f"{len(jumps)} discontinuities vs {len(zeros)} oracle zeros "
                f"({', '.join(f'{z:.4f}' for z in zeros)}); samples in band {len(in_band)}")


def criterion_7():
    recs = find_zeros(10.0, 30.0)
    ref = _oracle_zeros(10.0, 30.0)
    loc = len(recs) == len(ref) == 3 and all(abs(r.rho0 - z) < 1e-6 for r, z in zip(recs, ref))
    albe = tanb = 0.0
    for r in recs:
        rep = zero_conditions(ComplexPoint(0.5, r.rho0))
        albe = max(albe, rep["al-be"].residual)
        tanb = max(tanb, rep["tanBeta"].residual)
    ok = loc and albe < 1e-5 and tanb < 1e-5
    return ok, (f"found {[round(r.rho0, 6) for r in recs]}, "
                f"max loc err {max(abs(r.rho0 - z) for r, z in zip(recs, ref)):.1e}; "
                f"al-be {albe:.1e}, tanBeta {tanb:.1e}")


def criterion_8():
    rho_s = f_sign_change()
    worst = -math.inf
    for i in range(100):
        rho = 7.0 + 43.0 * i / 99
        c = idn.Ctx(ComplexPoint(0.5, rho), idn.DEFAULT_CONFIG)
        worst = max(worst, math.cos(c.alpha - c.beta))
    ok = abs(rho_s - 6.28) <= 0.01 and worst <= 1e-9
    return ok, f"rho_s = {rho_s:.6f}; max cos(alpha - beta) on [7, 50] = {worst:.3e}"


def criterion_9():
    errs = []
    for lo, hi in ((15.0, 20.0), (26.0, 29.0)):
        ratio, expint = idn.exprep_interval(lo, hi)
        errs.append(abs(expint - ratio) / ratio)
    return max(errs) < 1e-6, "relative errors " + ", ".join(f"{e:.1e}" for e in errs)


def criterion_10():
    cfg = cx.FIGURE4
    z0 = abs(cx.zeta_c(cfg.s0))
    res = abs(cx.residue_at_one(cfg) - 1)
    sym = cx.verify_w_symmetry(cfg)
    zcrat = max(sym.worst["zcrat"], cx.zcrat_residual(complex(0.25, 9.0)))
    rows = cx.figure4_data(cfg)
    left = [r.ratio for r in rows if r.sigma < 0.5]
    at_half = [r.ratio for r in rows if r.sigma == 0.5][0]
    lim = cx.limit_ratio_at_zero(cfg)
    ok = (z0 < 1e-12 and res < 1e-4 and zcrat < 1e-8 and min(left) > 1
          and abs(at_half - 1) < 1e-10 and abs(lim.ratio - lim.phi) < 1e-6 and lim.ratio > 1)
    return ok, (f"|zeta_c(s0)| {z0:.1e}, residue err {res:.1e}, Zcrat {zcrat:.1e}, "
                f"min ratio left of line {min(left):.6f}, ratio at 1/2 {at_half:.12f}, "
                f"limit {lim.ratio:.8f} vs Phi {lim.phi:.8f}")


def criterion_11():
    rows = idn.phi_derivative_sign(idn.Grid.linear(0.05, 0.95, 10.0, 60.0, 20, 20))
    neg = all(r[2] < 0 for r in rows)
    worst = max(r[4] for r in rows)
    return len(rows) == 400 and neg and worst < 1e-5, f"{len(rows)} points, all negative: {neg}, max rel fd diff {worst:.1e}"


def criterion_12():
    from zexplore import complexfn as cf

    rho = 50.0
    psi_err = 0.0
    for sig in (0.1, 0.3, 0.5, 0.7, 0.9):
        a = asymptotic_symbols(ComplexPoint(sig, rho))
        d = cf.digamma(complex(sig, rho))
        psi_err = max(psi_err, abs(a.psi_re - d.real), abs(a.psi_im - d.imag))
    p_err = 0.0
    for sig in (0.1, 0.3, 0.7, 0.9):  # exact p1 vanishes at sigma = 1/2
        a = asymptotic_symbols(ComplexPoint(sig, rho))
        s = build_symbols(ComplexPoint(sig, rho))
        p_err = max(p_err, abs(a.p1 - s.p1) / abs(s.p1), abs(a.p2 - s.p2) / abs(s.p2))
    gap = tan2beta_asy_gap(rho)
    ok = psi_err < 1e-5 and p_err < 1e-3 and gap < 1e-8
    return ok, f"psi forms max err {psi_err:.1e} (need 1e-5); p1/p2 max rel err {p_err:.2e} (need 1e-3); Tan2Beta_Asy gap {gap:.1e}"


CRITERIA = {n: globals()[f"criterion_{n}"] for n in range(1, 13)}


def _line(n, ok, detail):
    return f"CRITERION {n:>2}: {'PASS' if ok else 'FAIL'}  {detail}"


@pytest.mark.parametrize("n", sorted(CRITERIA))
def test_criterion(n, acceptance_log):
    ok, detail = CRITERIA[n]()
    line = _line(n, ok, detail)
    acceptance_log[n] = line
    print(line)
    assert ok, line


if __name__ == "__main__":
    for n, fn in CRITERIA.items():
        print(_line(n, *fn()), flush=True)
