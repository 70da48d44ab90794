"""Zeros and half-zeros on vertical lines, and the at-a-zero conditions.

Full zeros are found as minima of |F|^2 along a vertical line: the sign of
d|F|^2/d rho = 2 Re(conj(F) i F') is scanned for a - to + change and the
bracket is bisected.  A minimum counts as a zero when |F| < ``ZERO_ABS``.
Here F is zeta, or any source with the same (value, d/ds, d2/ds2) signature.
"""

from __future__ import annotations

import cmath
import csv
import math
import os
from dataclasses import dataclass, field

from .argtrack import track
from .complexfn import DEFAULT_CONFIG, ComplexPoint, EvalConfig
from .errors import DomainError
from .quad import wrap_pi
from .symbols import ZetaLike, build_bundle, build_symbols, f_critical, zeta_source

PI = math.pi

SCAN_STEP = 0.05
RHO_TOL = 1e-10
ZERO_ABS = 1e-8
APPROACH = 1e-6
CONDITION_TOL = 1e-5

FULL, REAL_HALF, IMAG_HALF = "FULL", "REAL_HALF", "IMAG_HALF"


@dataclass(frozen=True)
class ZeroRecord:
    rho0: float
    kind: str
    n: int
    residual_abs_zeta: float
    beta0: float
    criterion_residual: float = 0.0
    sigma: float = 0.5
    anomalous: bool = False


def _check_range(rho_min: float, rho_max: float) -> None:
    if not 0 < rho_min < rho_max <= 100:
        raise DomainError("need 0 < rho_min < rho_max <= 100")


def _bisect(fun, a: float, b: float, fa: float, tol: float = RHO_TOL) -> float:
    while b - a > tol:
        m = 0.5 * (a + b)
        fm = fun(m)
        if fm == 0.0:
            return m
        if (fm > 0) == (fa > 0):
            a, fa = m, fm
        else:
            b = m
    return 0.5 * (a + b)


def _scan(fun, lo: float, hi: float, step: float = SCAN_STEP):
    """Yield brackets (a, b, fa, fb) where ``fun`` changes sign.

    Samples that are exactly zero are stepped over, so a root sitting on a
    grid point is bracketed by its nonzero neighbours.
    """
    n = max(1, math.ceil((hi - lo) / step))
    xs = [lo + (hi - lo) * i / n for i in range(n + 1)]
    a, prev = xs[0], fun(xs[0])
    for b in xs[1:]:
        cur = fun(b)
        if cur == 0.0:
            continue
        if prev != 0.0 and (prev > 0) != (cur > 0):
            yield a, b, prev, cur
        a, prev = b, cur


def mod_sq_slope(sigma: float, cfg: EvalConfig = DEFAULT_CONFIG, source: ZetaLike = zeta_source):
    """rho -> d|F(sigma + i rho)|^2 / d rho."""

    def g(rho):
        z, z1, _ = source(complex(sigma, rho), cfg)
        return 2.0 * (z.conjugate() * 1j * z1).real

    return g


def _minima(sigma, rho_min, rho_max, cfg, source):
    g = mod_sq_slope(sigma, cfg, source)
    for a, b, fa, fb in _scan(g, rho_min, rho_max):
        if fa < 0 < fb:
            yield _bisect(g, a, b, fa)


def _approach_alpha_minus_beta(trace_a, trace_b, rho0: float, h: float = APPROACH):
    """Continuous alpha - beta just below and just above rho0."""
    lo = trace_a.angle_at(rho0 - h) - trace_b.angle_at(rho0 - h)
    hi = trace_a.angle_at(rho0 + h) - trace_b.angle_at(rho0 + h)
    return lo, hi


def find_zeros(
    rho_min: float,
    rho_max: float,
    cfg: EvalConfig = DEFAULT_CONFIG,
    sigma: float = 0.5,
    source: ZetaLike = zeta_source,
) -> list[ZeroRecord]:
    """Zeros of ``source`` on the line ``sigma`` with rho in [rho_min, rho_max].

    Each record carries n with alpha - beta = (n + 1/2) pi as the zero is
    approached from below, and the worst deviation from that criterion on
    either side at distance ``APPROACH``.
    """
    _check_range(rho_min, rho_max)
    cands = [r for r in _minima(sigma, rho_min, rho_max, cfg, source)
             if abs(source(complex(sigma, r), cfg)[0]) < ZERO_ABS]
    if not cands:
        return []
    end = max(cands) + 2 * APPROACH + 1e-3
    ta = track(sigma, end, "alpha", cfg, source)
    tb = track(sigma, end, "beta", cfg, source)
    out = []
    for r in cands:
        lo, hi = _approach_alpha_minus_beta(ta, tb, r)
        n = math.floor(lo / PI)
        res = max(abs(wrap_pi(2 * lo - PI)), abs(wrap_pi(2 * hi - PI))) / 2
        out.append(ZeroRecord(
            rho0=r, kind=FULL, n=n,
            residual_abs_zeta=abs(source(complex(sigma, r), cfg)[0]),
            beta0=tb.angle_at(r), criterion_residual=res, sigma=sigma,
        ))
    return out


def find_half_zeros(
    rho_min: float,
    rho_max: float,
    kind: str = IMAG_HALF,
    cfg: EvalConfig = DEFAULT_CONFIG,
    source: ZetaLike = zeta_source,
) -> list[ZeroRecord]:
    """Roots of zeta_R (REAL_HALF) or zeta_I (IMAG_HALF) on the critical line.

    Points where the companion component also vanishes (full zeros) are
    dropped.  IMAG_HALF records with zeta_R < 0 and zeta'_R > 0 are flagged
    anomalous.
    """
    _check_range(rho_min, rho_max)
    if kind not in (REAL_HALF, IMAG_HALF):
        raise ValueError(f"unknown half-zero kind {kind!r}")

    def comp(rho):
        z = source(complex(0.5, rho), cfg)[0]
        return z.real if kind == REAL_HALF else z.imag

    roots = []
    for a, b, fa, _ in _scan(comp, rho_min, rho_max):
        r = _bisect(comp, a, b, fa)
        z, z1, _ = source(complex(0.5, r), cfg)
        other = z.imag if kind == REAL_HALF else z.real
        if abs(other) > ZERO_ABS:
            roots.append((r, z, z1))
    if not roots:
        return []
    ta = track(0.5, max(r for r, _, _ in roots) + 1e-3, "alpha", cfg, source)
    tb = track(0.5, max(r for r, _, _ in roots) + 1e-3, "beta", cfg, source)
    out = []
    for r, z, z1 in roots:
        alpha = ta.angle_at(r)
        shift = 0.5 * PI if kind == REAL_HALF else 0.0
        n = round((alpha - shift) / PI)
        res = abs(alpha - shift - n * PI)
        anomalous = kind == IMAG_HALF and z.real < 0 and z1.real > 0
        out.append(ZeroRecord(r, kind, n, abs(z.real if kind == REAL_HALF else z.imag),
                              tb.angle_at(r), res, 0.5, anomalous))
    return out


def f_sign_change(lo: float = 1.0, hi: float = 20.0) -> float:
    """Root rho_s of 1/f on the critical line (f changes sign there)."""
    inv = lambda r: 1.0 / f_critical(r)
    fa = inv(lo)
    if (fa > 0) == (inv(hi) > 0):
        raise DomainError("1/f does not change sign on the bracket")
    return _bisect(inv, lo, hi, fa, 1e-12)


def write_zero_csv(records, path_or_file) -> None:
    own = isinstance(path_or_file, (str, os.PathLike))
    fh = open(path_or_file, "w", newline="") if own else path_or_file
    try:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["kind", "rho0", "n", "residual", "beta0"])
        for r in records:
            w.writerow([r.kind, f"{r.rho0:.14e}", r.n, f"{r.residual_abs_zeta:.14e}", f"{r.beta0:.14e}"])
    finally:
        if own:
            fh.close()


# ---------------------------------------------------------------- conditions at a zero


@dataclass(frozen=True)
class Condition:
    name: str
    lhs: complex
    rhs: complex
    residual: float
    holds: bool
    note: str = ""


@dataclass
class ZeroConditionReport:
    point: ComplexPoint
    conditions: dict[str, Condition] = field(default_factory=dict)

    def __getitem__(self, name: str) -> Condition:
        return self.conditions[name]

    @property
    def all_hold(self) -> bool:
        return all(c.holds for c in self.conditions.values())


def tan_cross(angle: float, num: float, den: float) -> float:
    """|sin(angle - atan2-free R)| for tan R = num/den, scale free."""
    m = math.hypot(num, den)
    return abs(math.sin(angle) * den - math.cos(angle) * num) / m


def tan2beta_rhs(rho: float, rho_theta: float) -> tuple[float, float]:
    """(num, den) of the critical-line double-angle condition, cleared of cos(rho_theta).

    Here and in :func:`beta_condition_rhs` the angle is theta - rho ln 2pi.
    """
    t = math.tanh(0.5 * PI * rho)
    return -(math.sin(rho_theta) - t * math.cos(rho_theta)), math.cos(rho_theta) + t * math.sin(rho_theta)


def beta_condition_rhs(sigma: float, rho: float, rho_theta: float) -> tuple[float, float]:
    """(num, den) of the general beta + beta~ condition, cleared of cosines."""
    tt = math.sin(0.5 * PI * sigma) * math.tanh(0.5 * PI * rho)
    c = math.cos(0.5 * PI * sigma)
    num = -(math.sin(rho_theta) * c - tt * math.cos(rho_theta))
    den = c * math.cos(rho_theta) + tt * math.sin(rho_theta)
    return num, den


def zero_conditions(
    s0,
    cfg: EvalConfig = DEFAULT_CONFIG,
    source: ZetaLike = zeta_source,
    tol: float = CONDITION_TOL,
) -> ZeroConditionReport:
    """Residual of every at-a-zero condition at ``s0``.

    Magnitude conditions use relative residuals; tangent conditions use the
    scale-free cross product ``|sin(L) D - cos(L) N| / |(N, D)|``.
    """
    pt = s0 if isinstance(s0, ComplexPoint) else ComplexPoint.from_complex(s0)
    b = build_bundle(pt, cfg, source)
    sym = build_symbols(pt, cfg, bundle=b, source=source)
    rep = ZeroConditionReport(pt)

    def add(name, lhs, rhs, res, note=""):
        rep.conditions[name] = Condition(name, lhs, rhs, res, res < tol, note)

    def rel(lhs, rhs):
        return abs(lhs - rhs) / max(abs(lhs), abs(rhs), 1e-300)

    a1 = abs(b.z1) ** 2
    ps = sym.pi_sigma
    zabs1 = 2 * (b.z1i * b.tz1i - b.z1r * b.tz1r) * ps / sym.g2
    zabs2 = -2 * (b.z1i * b.tz1r + b.z1r * b.tz1i) * ps / sym.g1
    add("Zabs1", a1, zabs1, rel(a1, zabs1))
    add("Zabs2", a1, zabs2, rel(a1, zabs2))
    add("Zabs1=Zabs2", zabs1, zabs2, rel(zabs1, zabs2))

    k = ps / (8 * sym.gamma_abs**2 * sym.c0)
    zr = -k * (b.tz1i * sym.g1 + b.tz1r * sym.g2)
    zi = k * (b.tz1i * sym.g2 - b.tz1r * sym.g1)
    add("ZcondR", b.z1r, zr, rel(b.z1r, zr))
    add("ZcondI", b.z1i, zi, rel(b.z1i, zi))

    beta, beta_t = cmath.phase(b.z1), cmath.phase(b.tz1)
    g1, g2 = sym.g1, sym.g2

    def tbw(src, dst):
        num = -(g2 * math.sin(src) - g1 * math.cos(src))
        den = math.sin(src) * g1 + g2 * math.cos(src)
        return tan_cross(dst, num, den), num / den

    res, r = tbw(beta, beta_t)
    add("tanBetaW", math.tan(beta_t), r, res)
    res, r = tbw(beta_t, beta)
    add("tanBetaWInv", math.tan(beta), r, res)

    gap = -sym.rho_theta  # theta - rho ln 2pi
    num, den = beta_condition_rhs(pt.sigma, pt.rho, gap)
    res = max(tan_cross(beta + beta_t, num, den), tan_cross(beta + beta_t, g1, g2))
    add("BetaCondition", math.tan(beta + beta_t), num / den, res)

    asy = 0.5 * PI * pt.sigma - gap
    add("Tan2Beta_Asy_Gen", math.tan(beta + beta_t), math.tan(asy),
        tan_cross(beta + beta_t, math.sin(asy), math.cos(asy)), "asymptotic")

    if pt.sigma == 0.5:
        num, den = tan2beta_rhs(pt.rho, gap)
        add("Tan2Beta", math.tan(2 * beta), num / den, tan_cross(2 * beta, num, den))
        asy = 0.25 * PI - gap
        add("Tan2Beta_Asy", math.tan(2 * beta), math.tan(asy),
            tan_cross(2 * beta, math.sin(asy), math.cos(asy)), "asymptotic")
        root = math.hypot(g1, g2)
        best = min(
            ((tan_cross(beta, -g2 + sgn * root, g1), sgn) for sgn in (1, -1)),
            key=lambda x: x[0],
        )
        add("tanBeta", math.tan(beta), (-g2 + best[1] * root) / g1, best[0],
            f"sign {'+' if best[1] > 0 else '-'}")
        # alpha - beta = (n + 1/2) pi, judged on approach from both sides
        sides = []
        for h in (-APPROACH, APPROACH):
            z, z1, _ = source(complex(0.5, pt.rho + h), cfg)
            sides.append(abs(wrap_pi(2 * (cmath.phase(z) - cmath.phase(z1)) - PI)) / 2)
        add("al-be", max(sides), 0.0, max(sides), "on approach")
    return rep


def tan2beta_vs_tan2alpha(rho: float, cfg: EvalConfig = DEFAULT_CONFIG) -> float:
    """Cross-product residual between the double-angle condition and tan(2 alpha)."""
    sym = build_symbols(ComplexPoint(0.5, rho), cfg)
    alpha = cmath.phase(cf_zeta(rho, cfg))
    num, den = tan2beta_rhs(rho, -sym.rho_theta)
    return tan_cross(2 * alpha, num, den)


def tan2beta_asy_gap(rho: float, cfg: EvalConfig = DEFAULT_CONFIG) -> float:
    """Cross-product gap between the exact and large-rho double-angle right-hand sides."""
    sym = build_symbols(ComplexPoint(0.5, rho), cfg)
    num, den = tan2beta_rhs(rho, -sym.rho_theta)
    asy = 0.25 * PI + sym.rho_theta
    return tan_cross(asy, num, den)


def cf_zeta(rho: float, cfg: EvalConfig) -> complex:
    return zeta_source(complex(0.5, rho), cfg)[0]
