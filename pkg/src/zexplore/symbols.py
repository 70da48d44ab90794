"""Scalar symbols and zeta component bundles at a point.

Derivative convention (checked numerically against every cross-line
transform): primed components are ``d/ds`` of zeta at ``s``; tilded primed
components are ``d/dw`` of zeta at the reflected point ``w = 1 - sigma + i rho``.
On the critical line the ``rho``-derivative of a real function built from
these is obtained separately, by finite differences (see ``numderiv``).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable

from . import complexfn as cf
from .complexfn import DEFAULT_CONFIG, ComplexPoint, EvalConfig
from .errors import DomainError, PoleError

PI = math.pi
LN_2PI = cf.LN_2PI

# (s, cfg) -> (value, d/ds, d2/ds2)
ZetaLike = Callable[[complex, EvalConfig], tuple]


def zeta_source(s: complex, cfg: EvalConfig = DEFAULT_CONFIG) -> tuple:
    return cf.zeta_derivs(s, cfg, order=2)


@dataclass(frozen=True)
class ZetaBundle:
    zr: float
    zi: float
    z1r: float
    z1i: float
    tzr: float
    tzi: float
    tz1r: float
    tz1i: float
    z2r: float
    z2i: float
    tz2r: float
    tz2i: float

    @property
    def z(self) -> complex:
        return complex(self.zr, self.zi)

    @property
    def z1(self) -> complex:
        return complex(self.z1r, self.z1i)

    @property
    def z2(self) -> complex:
        return complex(self.z2r, self.z2i)

    @property
    def tz(self) -> complex:
        return complex(self.tzr, self.tzi)

    @property
    def tz1(self) -> complex:
        return complex(self.tz1r, self.tz1i)

    @property
    def tz2(self) -> complex:
        return complex(self.tz2r, self.tz2i)


@dataclass(frozen=True)
class SymbolSet:
    sigma: float
    rho: float
    c0: float
    g1: float
    g2: float
    S1: float
    S2: float
    p1: float
    p2: float
    q1: float
    q2: float
    h1: float
    h2: float
    h3: float
    h4: float
    a: float
    b: float
    f_s: complex
    f_rho: float
    chi: complex
    pi_sigma: float
    Psi1: float
    Psi2: float
    rho_pi: float
    rho_theta: float
    zeta_p: float
    zeta_m: float
    zeta_d: float
    Phi: float
    gamma_abs: float
    theta_cont: float
    gamma_val: complex
    psi: complex


def _point(s) -> ComplexPoint:
    if isinstance(s, ComplexPoint):
        return s
    return ComplexPoint.from_complex(s)


def build_bundle(s, cfg: EvalConfig = DEFAULT_CONFIG, source: ZetaLike = zeta_source) -> ZetaBundle:
    """Components of zeta, zeta', zeta'' at ``s`` and at ``1 - sigma + i rho``."""
    pt = _point(s)
    z, z1, z2 = source(pt.s, cfg)
    tz, tz1, tz2 = source(pt.reflected().s, cfg)
    return ZetaBundle(
        z.real, z.imag, z1.real, z1.imag,
        tz.real, tz.imag, tz1.real, tz1.imag,
        z2.real, z2.imag, tz2.real, tz2.imag,
    )


def f_critical(rho: float) -> float:
    """Critical-line f: 4 cosh(pi rho) / (2 ln(2pi) cosh - 2 Re psi(1/2 + i rho) cosh + pi).

    Evaluated after dividing through by 2 cosh(pi rho), which is exact
    algebra and avoids overflow for large rho.
    """
    psi_re = cf.digamma(complex(0.5, rho)).real
    return 2.0 / (LN_2PI - psi_re + 0.5 * PI / math.cosh(PI * rho))


def f_complex(s) -> complex:
    """f(s) = ln(2 pi) - psi(s) + (pi/2) tan(pi s / 2)."""
    s = complex(s)
    w = 0.5 * PI * s
    # tan(pi s/2) poles sit at odd integers on the real axis.
    if abs(s.imag) < cf.POLE_GUARD and abs((s.real - 1.0) / 2.0 - round((s.real - 1.0) / 2.0)) < cf.POLE_GUARD:
        raise PoleError(f"tan(pi s/2) has a pole at {s!r}")
    return LN_2PI - cf.digamma(s) + 0.5 * PI * cmath.tan(w)


def build_symbols(
    s,
    cfg: EvalConfig = DEFAULT_CONFIG,
    bundle: ZetaBundle | None = None,
    source: ZetaLike = zeta_source,
) -> SymbolSet:
    pt = _point(s)
    sigma, rho = pt.sigma, pt.rho
    if bundle is None:
        bundle = build_bundle(pt, cfg, source)
    sv = pt.s
    gam = cf.gamma(sv)
    theta = cf.log_gamma(sv).imag
    psi = cf.digamma(sv)

    c0 = 0.5 * (math.cos(PI * sigma) + math.cosh(PI * rho))
    rho_pi = rho * LN_2PI
    rho_theta = rho_pi - theta
    hs, hc = math.sin(0.5 * PI * sigma), math.cos(0.5 * PI * sigma)
    sh, ch = math.sinh(0.5 * PI * rho), math.cosh(0.5 * PI * rho)
    S1 = math.sin(rho_pi) * hc * ch + math.cos(rho_pi) * hs * sh
    S2 = math.sin(rho_pi) * hs * sh - math.cos(rho_pi) * hc * ch
    g1 = 4.0 * gam.imag * S2 + 4.0 * gam.real * S1
    g2 = 4.0 * gam.imag * S1 - 4.0 * gam.real * S2

    Psi1 = psi.imag
    Psi2 = -2.0 * LN_2PI + 2.0 * psi.real
    p1 = 8.0 * c0 * Psi1 - 2.0 * PI * math.sinh(PI * rho)
    p2 = 4.0 * c0 * Psi2 - 2.0 * PI * math.sin(PI * sigma)
    q1 = -Psi2 + 0.5 * PI * math.sin(PI * sigma) / c0
    q2 = 2.0 * Psi1 - 0.5 * PI * math.sinh(PI * rho) / c0
    pi_sigma = (2.0 * PI) ** sigma

    bz = bundle
    zeta_p = bz.zi * g1 + bz.zr * g2
    zeta_m = bz.zi * g2 - bz.zr * g1
    zeta_d = (
        (-8.0 * Psi1 * c0 + 2.0 * PI * math.sinh(PI * rho)) * bz.z1i
        + (-4.0 * c0 * Psi2 + 2.0 * PI * math.sin(PI * sigma)) * bz.z1r
    ) * pi_sigma

    gabs = abs(gam)
    phi = (2.0 * PI) ** (2.0 * sigma) / (
        2.0 * (math.cos(PI * sigma) + math.cosh(PI * rho)) * gabs * gabs
    )
    norm = math.sqrt(2.0) / (8.0 * math.sqrt(PI))
    return SymbolSet(
        sigma=sigma, rho=rho, c0=c0, g1=g1, g2=g2, S1=S1, S2=S2,
        p1=p1, p2=p2, q1=q1, q2=q2,
        h1=-g1 * p1 + g2 * p2, h2=g1 * p2 + g2 * p1,
        h3=-g1 * p2 + g2 * p1, h4=g1 * p1 + g2 * p2,
        a=norm * g1, b=norm * g2,
        f_s=f_complex(sv), f_rho=f_critical(rho), chi=cf.chi(sv),
        pi_sigma=pi_sigma, Psi1=Psi1, Psi2=Psi2,
        rho_pi=rho_pi, rho_theta=rho_theta,
        zeta_p=zeta_p, zeta_m=zeta_m, zeta_d=zeta_d,
        Phi=phi, gamma_abs=gabs, theta_cont=theta, gamma_val=gam, psi=psi,
    )


@dataclass(frozen=True)
class AsymptoticSymbols:
    psi_re: float
    psi_im: float
    p1: float
    p2: float


def asymptotic_symbols(s) -> AsymptoticSymbols:
    """Large-rho forms of Re psi, Im psi, p1 and p2 (valid for 0 < sigma < 1)."""
    pt = _point(s)
    sig, rho = pt.sigma, pt.rho
    if rho < 20.0:
        raise DomainError("asymptotic symbols need rho >= 20")
    psi_re = math.log(rho) + (2 * sig**2 - 4 * sig + 1) / (4 * rho**2)
    cubic = sig * (2 * sig**2 - 6 * sig + 3)
    psi_im = 0.5 * PI + (1 - sig) / rho + cubic / (6 * rho**3)
    e = math.exp(PI * rho)
    cs = math.cos(PI * sig)
    p1 = (
        (-2 * (sig - 1) / rho + cubic / (3 * rho**3)) * e
        + 2 * PI * cs
        - 4 * (sig - 1) * cs / rho
        + 2 * sig * cs / 3 * (2 * sig**2 - 6 * sig + 3) / rho**3
    )
    p2 = (
        (math.log(rho**2 / (4 * PI**2)) + (sig**2 - 2 * sig + 0.5) / rho**2) * e
        + cs * math.log(rho**4 / (16 * PI**4))
        - 2 * PI * math.sin(PI * sig)
        + (2 * sig**2 - 4 * sig + 1) * cs / rho**2
    )
    return AsymptoticSymbols(psi_re, psi_im, p1, p2)


def psi_expansion(s) -> complex:
    """Standard large-|s| expansion ln s - 1/(2s) - 1/(12 s^2) + 1/(120 s^4) - 1/(252 s^6).

    Used as a reference against the printed large-rho forms above.
    """
    z = complex(s)
    return cmath.log(z) - 0.5 / z - 1 / (12 * z**2) + 1 / (120 * z**4) - 1 / (252 * z**6)
