"""A zeta multiple with planted off-line zeros that still obeys the functional equation.

zeta_c(s) = w(s) zeta(s) with

    w(s) = sin(pi(s - s0)) sin(pi(s + s0)) sin(pi(s - s0bar)) sin(pi(s + s0bar)) / D^2,
    D = cosh^2(pi rho0) - cos^2(pi sigma0).

Pairing the sines gives sin(pi(s - a)) sin(pi(s + a)) = (cos 2 pi a - cos 2 pi s)/2, so

    w(s) = (A - u(s)) (conj(A) - u(s)),   A = cos(2 pi s0)/(2D),   u = cos(2 pi s)/(2D).

Every term is divided by 2D before it is formed, which keeps the factor finite
up to rho0 + 30 without going through logarithms.
"""

from __future__ import annotations

import cmath
import csv
import math
import os
from dataclasses import dataclass, field

from . import complexfn as cf
from .complexfn import DEFAULT_CONFIG, ComplexPoint, EvalConfig
from .errors import DomainError, OverflowGuard, PoleError
from .symbols import build_symbols

PI = math.pi
TWO_PI = 2.0 * PI
OVERFLOW_MARGIN = 30.0
PLANTED_SKIP = 1e-3


@dataclass(frozen=True)
class CounterexampleConfig:
    sigma0: float = 0.75
    rho0: float = 12.0

    def __post_init__(self):
        if not 0.5 < self.sigma0 < 1.0:
            raise DomainError("sigma0 must lie in (1/2, 1)")
        if not self.rho0 > 1.0:
            raise DomainError("rho0 must exceed 1")

    @property
    def s0(self) -> complex:
        return complex(self.sigma0, self.rho0)

    @property
    def log_2d(self) -> float:
        """ln(2D) with 2D = cosh(2 pi rho0) - cos(2 pi sigma0)."""
        x = TWO_PI * self.rho0
        return x - math.log(2.0) + math.log1p(math.exp(-2 * x) - 2 * math.cos(TWO_PI * self.sigma0) * math.exp(-x))

    def planted_zeros(self) -> tuple[complex, ...]:
        """The planted zeros in the strip with positive ordinate."""
        return (self.s0, complex(1.0 - self.sigma0, self.rho0))


FIGURE4 = CounterexampleConfig(0.75, 12.0)


def _scaled_cos_sin(s: complex, log_2d: float) -> tuple[complex, complex]:
    """(cos 2 pi s, sin 2 pi s) / (2D) without forming cosh/sinh of large arguments."""
    x, y = TWO_PI * s.real, TWO_PI * s.imag
    ep = math.exp(abs(y) - log_2d)
    em = math.exp(-abs(y) - log_2d)
    ch, sh = 0.5 * (ep + em), math.copysign(0.5 * (ep - em), y)
    cos_ = complex(math.cos(x) * ch, -math.sin(x) * sh)
    sin_ = complex(math.sin(x) * ch, math.cos(x) * sh)
    return cos_, sin_


def w_derivs(s, cfg: CounterexampleConfig = FIGURE4) -> tuple[complex, complex, complex]:
    """(w, w', w'') at ``s``, derivatives in s."""
    s = complex(s)
    if abs(s.imag) > cfg.rho0 + OVERFLOW_MARGIN:
        raise OverflowGuard(f"|rho| = {abs(s.imag)} exceeds rho0 + {OVERFLOW_MARGIN:g}")
    lg = cfg.log_2d
    a, _ = _scaled_cos_sin(cfg.s0, lg)
    b = a.conjugate()
    u, v = _scaled_cos_sin(s, lg)
    u1 = -TWO_PI * v
    u2 = -TWO_PI * TWO_PI * u
    w = (a - u) * (b - u)
    w1 = -u1 * (a + b - 2.0 * u)
    w2 = -u2 * (a + b - 2.0 * u) + 2.0 * u1 * u1
    return w, w1, w2


def w(s, cfg: CounterexampleConfig = FIGURE4) -> complex:
    return w_derivs(s, cfg)[0]


def zeta_c_derivs(s, cfg: CounterexampleConfig = FIGURE4, eval_cfg: EvalConfig = DEFAULT_CONFIG):
    """(zeta_c, zeta_c', zeta_c'') at ``s``."""
    s = complex(s)
    if abs(s - 1.0) < cf.POLE_GUARD:
        raise PoleError("zeta_c has a pole at s = 1")
    ww, w1, w2 = w_derivs(s, cfg)
    z, z1, z2 = cf.zeta_derivs(s, eval_cfg, order=2)
    return ww * z, w1 * z + ww * z1, w2 * z + 2.0 * w1 * z1 + ww * z2


def zeta_c(s, cfg: CounterexampleConfig = FIGURE4, eval_cfg: EvalConfig = DEFAULT_CONFIG) -> complex:
    s = complex(s)
    if abs(s - 1.0) < cf.POLE_GUARD:
        raise PoleError("zeta_c has a pole at s = 1")
    return w(s, cfg) * cf.zeta(s, eval_cfg)


def make_source(cfg: CounterexampleConfig = FIGURE4):
    """A ``(s, EvalConfig) -> (F, F', F'')`` source for bundles, tracking and zero search."""

    def source(s, eval_cfg=DEFAULT_CONFIG):
        return zeta_c_derivs(s, cfg, eval_cfg)

    return source


def residue_at_one(cfg: CounterexampleConfig = FIGURE4, h: float = 1e-5) -> complex:
    """(s - 1) zeta_c(s) at s = 1 + h."""
    return h * zeta_c(1.0 + h, cfg)


# ---------------------------------------------------------------- symmetry checks


@dataclass
class SymmetryReport:
    rows: list[tuple] = field(default_factory=list)  # (sigma, rho, w_sym, w_conj, w_refl_abs, zcrat)
    skipped: int = 0

    @property
    def worst(self) -> dict[str, float]:
        keys = ("w_sym", "w_conj", "w_refl_abs", "zcrat")
        return {k: max((r[i + 2] for r in self.rows), default=0.0) for i, k in enumerate(keys)}

    def ok(self, w_tol: float = 1e-9, ratio_tol: float = 1e-8) -> bool:
        wst = self.worst
        return max(wst["w_sym"], wst["w_conj"], wst["w_refl_abs"]) < w_tol and wst["zcrat"] < ratio_tol


def _rel(a: complex, b: complex) -> float:
    return abs(a - b) / max(abs(a), abs(b), 1e-300)


def verify_w_symmetry(
    cfg: CounterexampleConfig = FIGURE4,
    sigmas=(0.1, 0.25, 0.3, 0.4, 0.6, 0.7, 0.9),
    rhos=(2.0, 5.0, 9.0, 12.5, 20.0),
    eval_cfg: EvalConfig = DEFAULT_CONFIG,
) -> SymmetryReport:
    """w(s) = w(1 - s), w(conj s) = conj w(s), |w| equal at sigma and 1 - sigma, and
    zeta_c(s)/zeta_c(1 - s) = zeta(s)/zeta(1 - s).

    Points within ``PLANTED_SKIP`` of a planted zero (or its image under
    s -> 1 - s) are counted in ``skipped``.
    """
    rep = SymmetryReport()
    planted = []
    for z0 in cfg.planted_zeros():
        planted += [z0, 1 - z0, z0.conjugate(), 1 - z0.conjugate()]
    for sig in sigmas:
        for rho in rhos:
            s = complex(sig, rho)
            ws = w(s, cfg)
            w_sym = _rel(ws, w(1 - s, cfg))
            w_conj = _rel(w(s.conjugate(), cfg), ws.conjugate())
            w_refl = _rel(abs(ws), abs(w(complex(1 - sig, rho), cfg)))
            if min(abs(s - p) for p in planted) < PLANTED_SKIP:
                rep.skipped += 1
                continue
            lhs = zeta_c(s, cfg, eval_cfg) / zeta_c(1 - s, cfg, eval_cfg)
            rhs = cf.zeta(s, eval_cfg) / cf.zeta(1 - s, eval_cfg)
            rep.rows.append((sig, rho, w_sym, w_conj, w_refl, _rel(lhs, rhs)))
    return rep


def zcrat_residual(s, cfg: CounterexampleConfig = FIGURE4, eval_cfg: EvalConfig = DEFAULT_CONFIG) -> float:
    s = complex(s)
    lhs = zeta_c(s, cfg, eval_cfg) / zeta_c(1 - s, cfg, eval_cfg)
    rhs = cf.zeta(s, eval_cfg) / cf.zeta(1 - s, eval_cfg)
    return _rel(lhs, rhs)


def fe_residual(s, cfg: CounterexampleConfig = FIGURE4, eval_cfg: EvalConfig = DEFAULT_CONFIG) -> float:
    """Relative residual of the g1/g2 reflected-component transform with zeta_c substituted."""
    pt = ComplexPoint.from_complex(s)
    sym = build_symbols(pt, eval_cfg)  # g1, g2, pi_sigma do not involve zeta
    z = zeta_c(pt.s, cfg, eval_cfg)
    tz = zeta_c(pt.reflected().s, cfg, eval_cfg)
    rhs = complex(sym.g2 * z.real + sym.g1 * z.imag, sym.g1 * z.real - sym.g2 * z.imag) / (2 * sym.pi_sigma)
    return _rel(tz, rhs)


# ---------------------------------------------------------------- magnitude ratio at the planted zero


@dataclass(frozen=True)
class LimitRatio:
    point: complex
    ratio: float  # lim |zeta_c|^2 / |zeta_c~|^2 via first-order l'Hopital
    phi: float  # closed-form Phi at the same point
    approach_ratio: float  # the plain ratio a short step off the zero along sigma

    @property
    def exceeds_one(self) -> bool:
        return self.ratio > 1.0


def limit_ratio_at_zero(
    cfg: CounterexampleConfig = FIGURE4,
    eval_cfg: EvalConfig = DEFAULT_CONFIG,
    step: float = 1e-6,
) -> LimitRatio:
    """Limit of |zeta_c(s)|^2/|zeta_c(1 - sigma + i rho)|^2 at the planted zero 1 - sigma0 + i rho0.

    Along sigma both moduli vanish linearly, so the limit is the squared
    ratio of the s-derivatives at the zero and at its reflection.
    """
    s1 = complex(1.0 - cfg.sigma0, cfg.rho0)
    d_here = zeta_c_derivs(s1, cfg, eval_cfg)[1]
    d_refl = zeta_c_derivs(complex(cfg.sigma0, cfg.rho0), cfg, eval_cfg)[1]
    ratio = abs(d_here) ** 2 / abs(d_refl) ** 2
    phi = build_symbols(ComplexPoint.from_complex(s1), eval_cfg).Phi
    a = zeta_c(s1 + step, cfg, eval_cfg)
    b = zeta_c(complex(cfg.sigma0 - step, cfg.rho0), cfg, eval_cfg)
    return LimitRatio(s1, ratio, phi, abs(a) ** 2 / abs(b) ** 2)


# ---------------------------------------------------------------- figure 4 series


@dataclass(frozen=True)
class Fig4Row:
    sigma: float
    abs_zc: float
    abs_zc_reflected: float
    ratio: float
    at_planted_zero: bool = False


def figure4_data(
    cfg: CounterexampleConfig = FIGURE4,
    n: int = 201,
    eval_cfg: EvalConfig = DEFAULT_CONFIG,
) -> list[Fig4Row]:
    """|zeta_c(sigma + i rho0)|, |zeta_c(1 - sigma + i rho0)| and their ratio on sigma in [0, 1/2].

    At the planted zero both moduli vanish; the ratio there is the
    square root of the l'Hopital limit.
    """
    if n < 2:
        raise ValueError("need at least two samples")
    lim = limit_ratio_at_zero(cfg, eval_cfg)
    zero_sigma = 1.0 - cfg.sigma0
    rows = []
    for i in range(n):
        sig = 0.5 * i / (n - 1)
        a = abs(zeta_c(complex(sig, cfg.rho0), cfg, eval_cfg))
        b = abs(zeta_c(complex(1.0 - sig, cfg.rho0), cfg, eval_cfg))
        if abs(sig - zero_sigma) < 1e-9:
            rows.append(Fig4Row(sig, a, b, math.sqrt(lim.ratio), True))
        else:
            rows.append(Fig4Row(sig, a, b, a / b))
    return rows


def write_figure4_csv(rows, path_or_file) -> None:
    own = isinstance(path_or_file, (str, os.PathLike))
    fh = open(path_or_file, "w", newline="") if own else path_or_file
    try:
        wr = csv.writer(fh, lineterminator="\n")
        wr.writerow(["sigma", "abs_zc", "abs_zc_reflected", "ratio"])
        for r in rows:
            wr.writerow([f"{r.sigma:.14e}", f"{r.abs_zc:.14e}", f"{r.abs_zc_reflected:.14e}", f"{r.ratio:.14e}"])
    finally:
        if own:
            fh.close()
