"""Registry of functional-equation identities, evaluated as lhs/rhs residuals.

Every entry maps a point to one or more :class:`Part` records.  Three kinds:

``eq``
    plain equality of two (complex or real) values.
``phase``
    a tangent relation ``tan L = N / D``.  Both sides are turned into the
    doubled-angle unit phasor ``exp(2iL)`` and ``((D + iN)/|D + iN|)^2``.
    This is the cross-product test ``sin(L - R) = 0`` in a form that is finite
    at tan poles and blind to common real factors of N and D.
``le``
    the inequality ``lhs <= rhs``; the residual is the violation.

Identities that use the critical-line ``f`` or that only hold at sigma = 1/2
declare ``critical=True`` and are always evaluated there.  Asymptotic ones
declare ``rho_min``; sweeps leave such points out and count them.
"""

from __future__ import annotations

import cmath
import csv
import math
import os
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable

from . import complexfn as cf
from .complexfn import DEFAULT_CONFIG, ComplexPoint, EvalConfig
from .errors import SingularGuard, ZExploreError
from .quad import QuadratureError, adaptive_simpson, angle_diff, central_diff
from .symbols import build_bundle, build_symbols, f_critical

PI = math.pi
LN_2PI = cf.LN_2PI
GUARD = 1e-8
LE_SLACK = 1e-9
DEFAULT_TOL = 1e-7

STANDARD_SIGMAS = (0.1, 0.25, 0.4, 0.5, 0.6, 0.75, 0.9)
STANDARD_RHOS = (2.0, 5.0, 8.0, 14.2, 21.0, 33.0, 47.0)

OK = "OK"
SKIPPED = "SKIPPED_SINGULAR"
FAILED = "FAILED"


def default_tol() -> float:
    env = os.environ.get("ZEXPLORE_TOL")
    return float(env) if env else DEFAULT_TOL


@dataclass(frozen=True)
class Part:
    lhs: complex
    rhs: complex
    kind: str = "eq"
    # size of the terms that cancel to form lhs/rhs; 0 means max(|lhs|, |rhs|)
    scale: float = 0.0


def phasor(angle: float) -> complex:
    return cmath.exp(2j * angle)


def tan_phasor(num: float, den: float) -> complex:
    z = complex(den, num)
    m = abs(z)
    if m == 0.0 or not math.isfinite(m):
        raise SingularGuard("tangent ratio is 0/0")
    u = z / m
    return u * u


def tan_part(angle: float, num: float, den: float) -> Part:
    return Part(phasor(angle), tan_phasor(num, den), "phase")


def guard(x: float, scale: float = 1.0, what: str = "denominator") -> float:
    if abs(x) < GUARD * scale:
        raise SingularGuard(f"{what} = {x:.3e} is numerically zero")
    return x


class Ctx:
    """Lazily evaluated inputs shared by every identity at one point."""

    def __init__(self, point: ComplexPoint, cfg: EvalConfig):
        self.pt = point
        self.cfg = cfg
        self.sigma, self.rho = point.sigma, point.rho

    @cached_property
    def bz(self):
        return build_bundle(self.pt, self.cfg)

    @cached_property
    def sym(self):
        return build_symbols(self.pt, self.cfg, bundle=self.bz)

    @cached_property
    def z2_tilde(self) -> complex:
        return self.bz.tz2

    @property
    def alpha(self) -> float:
        return cmath.phase(self.bz.z)

    @property
    def beta(self) -> float:
        return cmath.phase(self.bz.z1)

    @property
    def gamma(self) -> float:
        return cmath.phase(self.bz.z2)

    @property
    def alpha_t(self) -> float:
        return cmath.phase(self.bz.tz)

    @property
    def beta_t(self) -> float:
        return cmath.phase(self.bz.tz1)

    @cached_property
    def theta(self) -> float:
        return cf.log_gamma(self.pt.s).imag

    @property
    def gap(self) -> float:
        """theta - rho ln 2pi, the sign under which the Gamma-phase trig forms hold."""
        return -self.sym.rho_theta

    @cached_property
    def theta_t(self) -> float:
        return cf.log_gamma(self.pt.reflected().s).imag

    # rho-functions on the current vertical line, for finite differences
    def zeta_at(self, rho: float) -> complex:
        return cf.zeta_derivs(complex(self.sigma, rho), self.cfg, order=0)[0]

    def zeta_d1_at(self, rho: float) -> complex:
        return cf.zeta_derivs(complex(self.sigma, rho), self.cfg, order=1)[1]

    @cached_property
    def d_alpha(self) -> float:
        return angle_diff(lambda r: cmath.phase(self.zeta_at(r)), self.rho)

    @cached_property
    def d_beta(self) -> float:
        return angle_diff(lambda r: cmath.phase(self.zeta_d1_at(r)), self.rho)

    @cached_property
    def d_abs_z(self) -> float:
        return central_diff(lambda r: abs(self.zeta_at(r)), self.rho)

    @cached_property
    def d_abs_z1(self) -> float:
        return central_diff(lambda r: abs(self.zeta_d1_at(r)), self.rho)

    @cached_property
    def d_f(self) -> float:
        return central_diff(f_critical, self.rho, 1e-3)


# ---------------------------------------------------------------- whole plane


def _fe_comp(c: Ctx):
    b, s = c.bz, c.sym
    rhs = complex(s.g2 * b.zr + s.g1 * b.zi, s.g1 * b.zr - s.g2 * b.zi) / (2 * s.pi_sigma)
    # the compact form via zeta_p / zeta_m
    compact = complex(s.zeta_p, -s.zeta_m) / (2 * s.pi_sigma)
    return [Part(b.tz, rhs), Part(b.tz, compact)]


def _fe_inv(c: Ctx):
    b, s = c.bz, c.sym
    k = s.pi_sigma / (8 * s.gamma_abs**2 * s.c0)
    zr = k * (b.tzi * s.g1 + b.tzr * s.g2)
    zi = -k * (b.tzi * s.g2 - b.tzr * s.g1)
    return [Part(b.z, complex(zr, zi))]


def _arg_fe(c: Ctx):
    s = c.sym
    a = c.alpha
    num = -(math.sin(a) * s.g2 - s.g1 * math.cos(a))
    den = math.sin(a) * s.g1 + s.g2 * math.cos(a)
    return [tan_part(c.alpha_t, num, den)]


def _mag_ratio(c: Ctx):
    b = c.bz
    return [Part(abs(b.z) ** 2 / guard(abs(b.tz) ** 2, what="|zeta~|^2"), c.sym.Phi)]


def _variant(c: Ctx):
    b, s = c.bz, c.sym
    z1_refl = b.tz1.conjugate()  # zeta'(1 - s)
    z_refl = b.tz.conjugate()  # zeta(1 - s)
    z1 = b.z1
    guard(abs(z1), what="|zeta'|")
    return [Part(z1_refl / z1 + s.chi, s.f_s * z_refl / z1)]


def _xline(c: Ctx):
    b, s = c.bz, c.sym
    pp = s.p1**2 + s.p2**2
    zar = -4 * s.c0 / pp * ((s.h2 * b.z1i + s.h1 * b.z1r) / s.pi_sigma - 2 * (b.tz1i * s.p1 - b.tz1r * s.p2))
    zai = 4 * s.c0 / pp * ((s.h1 * b.z1i - s.h2 * b.z1r) / s.pi_sigma - 2 * (b.tz1i * s.p2 + b.tz1r * s.p1))
    return [Part(b.tzr, zar)], [Part(b.tzi, zai)]


def _dinv(c: Ctx):
    b, s = c.bz, c.sym
    k = s.pi_sigma / (64 * s.gamma_abs**2 * s.c0**2)
    z1r = -k * (8 * s.c0 * (b.tz1i * s.g1 + b.tz1r * s.g2) + s.h2 * b.tzi + s.h1 * b.tzr)
    z1i = k * (8 * s.c0 * (b.tz1i * s.g2 - b.tz1r * s.g1) - s.h2 * b.tzr + s.h1 * b.tzi)
    return [Part(b.z1r, z1r)], [Part(b.z1i, z1i)]


def _dfwd(c: Ctx):
    b, s = c.bz, c.sym
    ps, c0 = s.pi_sigma, s.c0
    r = -(s.g1 * b.z1i + b.z1r * s.g2) / (2 * ps) + (s.h3 * b.zi - s.h4 * b.zr) / (16 * ps * c0)
    i = (s.g2 * b.z1i - s.g1 * b.z1r) / (2 * ps) + (s.h4 * b.zi + s.h3 * b.zr) / (16 * ps * c0)
    return [Part(b.tz1r, r)], [Part(b.tz1i, i)]


def _dmag(c: Ctx):
    b, s = c.bz, c.sym
    g1 = guard(s.g1, what="g1")
    rhs = s.pi_sigma / g1 * (
        (b.z1i * b.tzr + b.z1r * b.tzi) * s.q1
        + (-b.z1i * b.tzi + b.z1r * b.tzr) * s.q2
        - 2 * b.z1i * b.tz1r
        - 2 * b.z1r * b.tz1i
    )
    return [Part(abs(b.z1) ** 2, rhs)]


def _arg_polar(c: Ctx):
    a, rt, rho, sig = c.alpha, c.sym.rho_theta, c.rho, c.sigma
    ep, em = math.exp(0.5 * PI * rho), math.exp(-0.5 * PI * rho)
    h = 0.5 * PI * sig
    num = em * math.sin(-h - a + rt) + ep * math.sin(h - a + rt)
    den = ep * math.cos(h - a + rt) + em * math.cos(-h - a + rt)
    return [tan_part(c.alpha_t, num, den)]


def _tanb(c: Ctx):
    # both sides multiplied through by zeta~_R cos(beta~) cos(alpha~)
    b, s = c.bz, c.sym
    sa, ca = math.sin(c.alpha_t), math.cos(c.alpha_t)
    sb, cb = math.sin(c.beta_t), math.cos(c.beta_t)
    num = -(8 * b.tz1r * s.c0 * ca * (sb * s.g2 - s.g1 * cb) + b.tzr * cb * (s.h1 * sa - s.h2 * ca))
    den = 8 * b.tz1r * s.c0 * ca * (sb * s.g1 + s.g2 * cb) + b.tzr * cb * (s.h2 * sa + s.h1 * ca)
    return [tan_part(c.beta, num, den)]


def _tanb_inv(c: Ctx):
    b, s = c.bz, c.sym
    sa, ca = math.sin(c.alpha), math.cos(c.alpha)
    sb, cb = math.sin(c.beta), math.cos(c.beta)
    num = -(8 * s.c0 * b.z1r * ca * (sb * s.g2 - s.g1 * cb) + b.zr * cb * (sa * s.h4 + s.h3 * ca))
    den = 8 * s.c0 * b.z1r * ca * (sb * s.g1 + s.g2 * cb) + b.zr * cb * (-sa * s.h3 + s.h4 * ca)
    return [tan_part(c.beta_t, num, den)]


def _rlog_tilde(c: Ctx):
    # log-derivative ratio zeta~'_R / zeta~_R, tangents cleared with the cosines
    b, s = c.bz, c.sym
    at, be, bt = c.alpha_t, c.beta, c.beta_t
    num = (-math.sin(at + be) * s.h1 + math.cos(at + be) * s.h2) * math.cos(bt)
    den = 8 * s.c0 * math.cos(at) * (-math.cos(be + bt) * s.g1 + math.sin(be + bt) * s.g2)
    guard(den, 8 * s.c0 * abs(s.g1 + 1j * s.g2), "tan-cleared denominator")
    return [Part(b.tz1r / guard(b.tzr, abs(b.tz), "zeta~_R"), num / den)]


def _rlog(c: Ctx):
    b, s = c.bz, c.sym
    sa, ca = math.sin(c.alpha), math.cos(c.alpha)
    sb, cb = math.sin(c.beta), math.cos(c.beta)
    st, ct = math.sin(c.beta_t), math.cos(c.beta_t)
    num = ((sa * s.h3 - ca * s.h4) * st - (sa * s.h4 + ca * s.h3) * ct) * cb
    den = 8 * s.c0 * ca * ((st * s.g1 + ct * s.g2) * sb + (s.g2 * st - s.g1 * ct) * cb)
    guard(den, 8 * s.c0 * abs(s.g1 + 1j * s.g2), "tan-cleared denominator")
    return [Part(b.z1r / guard(b.zr, abs(b.z), "zeta_R"), num / den)]


def _argsum_prod(c: Ctx):
    b, s = c.bz, c.sym
    z2, tz2 = abs(b.z) ** 2, abs(b.tz) ** 2
    lhs = b.z1i * b.zi + b.z1r * b.zr
    rhs = -(b.tz1i * b.tzi + b.tz1r * b.tzr) * z2 / guard(tz2, what="|zeta~|^2") - s.p2 * z2 / (8 * s.c0)
    return [Part(lhs, rhs)]


def _argsum_sym(c: Ctx):
    b, s = c.bz, c.sym
    lhs = (b.tz1i * b.tzi + b.tz1r * b.tzr) / guard(abs(b.tz) ** 2, what="|zeta~|^2") + (
        b.z1i * b.zi + b.z1r * b.zr
    ) / guard(abs(b.z) ** 2, what="|zeta|^2")
    rhs = -(2 * s.Psi2 * s.c0 - PI * math.sin(PI * c.sigma)) / (4 * s.c0)
    return [Part(lhs, rhs)]


def _gamma_ident(c: Ctx):
    s, sig, rho = c.sym, c.sigma, c.rho
    lhs = c.theta - math.atan(math.tan(0.5 * PI * sig) * math.tanh(0.5 * PI * rho)) - rho * LN_2PI
    hs, hc = math.sin(0.5 * PI * sig), math.cos(0.5 * PI * sig)
    sh, ch = math.sinh(0.5 * PI * rho), math.cosh(0.5 * PI * rho)
    rt = s.rho_theta
    num = hs * math.cos(rt) * sh + hc * math.sin(rt) * ch
    den = hs * math.sin(rt) * sh - hc * math.cos(rt) * ch
    # lhs = arctan(num/den) = -arctan(g1/g2), all modulo pi
    return [tan_part(lhs, num, den), tan_part(lhs, -s.g1, s.g2)]


def _intpsi(c: Ctx):
    sig = c.sigma
    val = adaptive_simpson(lambda t: cf.digamma(complex(sig, t)).real, 0.0, c.rho, abs_tol=1e-11)
    return [Part(val, c.theta)]


def _lgamma_refl(c: Ctx):
    sig, rho = c.sigma, c.rho
    num = -math.tanh(PI * rho) * math.cos(PI * sig)
    den = math.sin(PI * sig)
    return [tan_part(c.theta - c.theta_t, num, den)]


def _cos_theta(c: Ctx):
    # |cos| sqrt(tan^2 + tanh^2) rewritten as sqrt(sin^2 + cos^2 tanh^2), finite at sigma = 1/2
    sig, rho = c.sigma, c.rho
    sn, cs, th = math.sin(PI * sig), math.cos(PI * sig), math.tanh(PI * rho)
    rhs = sn / math.sqrt(sn * sn + cs * cs * th * th)
    return [Part(math.cos(c.theta - c.theta_t), rhs)]


def _psi_im(c: Ctx):
    sig, rho = c.sigma, c.rho
    lhs = (cf.digamma(c.pt.s) + cf.digamma(c.pt.reflected().s)).imag
    # sinh/(cosh - cos) divided through by cosh(2 pi rho)
    rhs = PI * math.tanh(2 * PI * rho) / (1.0 - math.cos(2 * PI * sig) / math.cosh(2 * PI * rho))
    return [Part(lhs, rhs)]


def _psi_re(c: Ctx):
    sig, rho = c.sigma, c.rho
    p, q = cf.digamma(c.pt.s).real, cf.digamma(c.pt.reflected().s).real
    rhs = -PI * math.sin(2 * PI * sig) / (math.cosh(2 * PI * rho) - math.cos(2 * PI * sig))
    # both sides decay like e^{-2 pi rho}; the difference cannot resolve below |Re psi| eps
    return [Part(p - q, rhs, scale=max(abs(p), abs(q)))]


# ---------------------------------------------------------------- critical line


def _cl_tana(c: Ctx):
    rt, rho = c.sym.rho_theta, c.rho
    e = math.exp(PI * rho)
    sq = math.sqrt(math.exp(2 * PI * rho) + 1.0)
    sn, cs = math.sin(0.25 * PI + rt), math.cos(0.25 * PI + rt)
    p2 = tan_part(c.alpha, e * sn - cs, e * cs + sq + sn)
    p1 = tan_part(c.alpha, -(e * cs - sq + sn), e * sn - cs)
    return [p2, p1]


def _cl_lin(c: Ctx):
    b, s = c.bz, c.sym
    f = guard(s.f_rho, what="f")
    r = Part(b.zr / f, (s.b + 0.5) * b.z1r + s.a * b.z1i)
    i = Part(b.zi / f, s.a * b.z1r - (s.b - 0.5) * b.z1i)
    return [r], [i]


def _det0(c: Ctx):
    s = c.sym
    return [Part(s.a**2 + s.b**2, 0.25)]


def _ab_id(c: Ctx):
    s, a = c.sym, c.alpha
    return [Part(s.b, 0.5 * math.cos(2 * a))], [Part(s.a, 0.5 * math.sin(2 * a))]


def _trig2a(c: Ctx):
    rt, rho, a = c.gap, c.rho, c.alpha
    sh, ch = math.sinh(0.5 * PI * rho), math.cosh(0.5 * PI * rho)
    root = math.sqrt(math.cosh(PI * rho))
    sin2 = (math.cos(rt) * sh - math.sin(rt) * ch) / root
    cos2 = (ch * math.cos(rt) + sh * math.sin(rt)) / root
    return [Part(math.sin(2 * a), sin2)], [Part(math.cos(2 * a), cos2)]


def _tan_id(c: Ctx):
    a = c.alpha
    # tan a = 1/sin 2a - 1/tan 2a = (1 - cos 2a)/sin 2a
    return [tan_part(a, 1.0 - math.cos(2 * a), math.sin(2 * a))]


def _inv_theta(c: Ctx):
    rt, rho, a = c.gap, c.rho, c.alpha
    sh, ch = math.sinh(0.5 * PI * rho), math.cosh(0.5 * PI * rho)
    root = math.sqrt(math.cosh(PI * rho))
    s2, c2 = math.sin(2 * a), math.cos(2 * a)
    cos_rt = (sh * s2 + ch * c2) / root
    sin_rt = (sh * c2 - ch * s2) / root
    e = math.exp(PI * rho)
    num = -((e + 1) * s2 - (e - 1) * c2)
    den = (e - 1) * s2 + (e + 1) * c2
    return [Part(math.cos(rt), cos_rt), Part(math.sin(rt), sin_rt), tan_part(rt, num, den)]


def _theta_asy(c: Ctx):
    a = c.alpha
    s2, c2 = math.sin(2 * a), math.cos(2 * a)
    return [tan_part(c.gap, c2 - s2, c2 + s2)]


def _zmain(c: Ctx):
    b = c.bz
    return [Part(abs(b.z) ** 2, c.sym.f_rho * (b.z1i * b.zi + b.z1r * b.zr))]


def _alpha_prime(c: Ctx):
    return [Part(c.d_alpha, 1.0 / guard(c.sym.f_rho, what="f"))]


def _zmain_int(c: Ctx):
    b, a, f = c.bz, c.alpha, c.sym.f_rho
    rhs = f * (-(b.z1i**2 - b.z1r**2) * math.cos(a) ** 2 + b.z1r * b.z1i * math.sin(2 * a) + b.z1i**2)
    return [Part(b.zi * b.z1i + b.zr * b.z1r, rhs)]


def _comp_sq(c: Ctx):
    b, a, be, f = c.bz, c.alpha, c.beta, c.sym.f_rho
    m = abs(b.z1) ** 2 * math.cos(a - be) ** 2
    return [
        Part(b.zr**2 / f**2, m * math.cos(a) ** 2),
        Part(b.zi**2 / f**2, m * math.sin(a) ** 2),
    ]


def _mag_sq(c: Ctx):
    b, f = c.bz, c.sym.f_rho
    return [Part(abs(b.z) ** 2 / abs(b.z1) ** 2, f**2 * math.cos(c.alpha - c.beta) ** 2)]


def _zzp(c: Ctx):
    b, f = c.bz, c.sym.f_rho
    return [Part(abs(b.z) / abs(b.z1), f * math.cos(c.alpha - c.beta))]


def _cos_neg(c: Ctx):
    return [Part(math.cos(c.alpha - c.beta), 0.0, "le")]


def _eq9(c: Ctx):
    b, f = c.bz, c.sym.f_rho
    az2, a12 = abs(b.z) ** 2, abs(b.z1) ** 2
    cross = -b.z1r * b.zi + b.z1i * b.zr
    return [Part(az2 / (a12 * f**2) + cross**2 / (a12 * guard(az2, what="|zeta|^2")), 1.0)]


def _diff_id(c: Ctx):
    b = c.bz
    cross2 = (-b.z1r * b.zi + b.z1i * b.zr) ** 2
    d_sq = central_diff(lambda r: abs(c.zeta_at(r)) ** 2, c.rho)
    return [Part(cross2, d_sq**2 / 4), Part(cross2, abs(b.z) ** 2 * c.d_abs_z**2)]


def _zprime(c: Ctx):
    b, f = c.bz, c.sym.f_rho
    return [Part(c.d_abs_z**2, abs(b.z1) ** 2 - abs(b.z) ** 2 / f**2)]


def _logz(c: Ctx):
    b, f = c.bz, c.sym.f_rho
    dlog = c.d_abs_z / guard(abs(b.z), what="|zeta|")
    t = math.tan(c.alpha - c.beta)
    return [
        Part(dlog**2, abs(b.z1) ** 2 / abs(b.z) ** 2 - 1.0 / f**2),
        Part(dlog**2, t * t / f**2),
    ]


def _zpzp(c: Ctx):
    return [Part(c.d_abs_z / abs(c.bz.z1), math.sin(c.alpha - c.beta))]


def _logza(c: Ctx):
    b, f = c.bz, c.sym.f_rho
    cos_ab = guard(math.cos(c.alpha - c.beta), what="cos(alpha - beta)")
    return [Part(c.d_abs_z / abs(b.z), math.sin(c.alpha - c.beta) / cos_ab / f)]


EXPREP_WIDTH = 0.5


def exprep_integrand(rho: float, cfg: EvalConfig = DEFAULT_CONFIG) -> float:
    """tan(alpha - beta)/f on the critical line."""
    z, z1 = cf.zeta_derivs(complex(0.5, rho), cfg, order=1)
    q = z / z1  # arg q = alpha - beta
    return (q.imag / q.real) / f_critical(rho)


def exprep_interval(rho1: float, rho2: float, cfg: EvalConfig = DEFAULT_CONFIG, abs_tol: float = 1e-9):
    """(|zeta(rho2)|/|zeta(rho1)|, exp of the integrated log-derivative) on sigma = 1/2."""
    ratio = abs(cf.zeta(complex(0.5, rho2), cfg)) / abs(cf.zeta(complex(0.5, rho1), cfg))
    integral = adaptive_simpson(lambda r: exprep_integrand(r, cfg), rho1, rho2, abs_tol=abs_tol)
    return ratio, math.exp(integral)


def _exprep(c: Ctx):
    from .zeros import find_zeros

    lo, hi = c.rho, c.rho + EXPREP_WIDTH
    if find_zeros(max(lo - 0.01, 1e-3), hi + 0.01, c.cfg):
        raise SingularGuard("integration interval contains a zero")
    try:
        ratio, expint = exprep_interval(lo, hi, c.cfg)
    except QuadratureError as exc:
        raise SingularGuard(str(exc)) from exc
    return [Part(ratio, expint)]


def _dbeta(c: Ctx):
    b, f = c.bz, c.sym.f_rho
    t = guard(math.tan(c.alpha - c.beta), what="tan(alpha - beta)")
    rhs = 2.0 / f - c.d_f / (f * t) - c.d_abs_z1 / (t * abs(b.z1))
    return [Part(c.d_beta, rhs)]


def _dbda(c: Ctx):
    b, f = c.bz, c.sym.f_rho
    dlog_z = guard(c.d_abs_z / abs(b.z), what="(ln|zeta|)'")
    dlog_z1f = c.d_abs_z1 / abs(b.z1) + c.d_f / f
    return [Part(c.d_beta / c.d_alpha, 2.0 - dlog_z1f / dlog_z)]


def _l1neg(c: Ctx):
    b, f, be = c.bz, c.sym.f_rho, c.beta
    l1 = -1.0 / f + (math.sin(be) * b.z2i + math.cos(be) * b.z2r) / abs(b.z1)
    diff = c.d_beta - c.d_alpha
    return [Part(l1, diff), Part(diff, 0.0, "le")]


def _sing_inv(c: Ctx):
    # multiplied through by sin(2 alpha)
    b, a, f = c.bz, c.alpha, c.sym.f_rho
    return [Part(b.z1i * math.sin(2 * a), 2 * b.zr / f - (math.cos(2 * a) + 1) * b.z1r)]


def _pert(c: Ctx):
    b, a, f, fp = c.bz, c.alpha, c.sym.f_rho, c.d_f
    r = fp * b.zi / (2 * f) + b.zr / f + 0.25 * (2 * math.sin(a) ** 2 * b.z2r - math.sin(2 * a) * b.z2i) * f
    i = -fp * b.zr / (2 * f) + b.zi / f + 0.25 * (2 * math.cos(a) ** 2 * b.z2i - math.sin(2 * a) * b.z2r) * f
    return [Part(b.z1r, r)], [Part(b.z1i, i)]


def _z2_ratio(c: Ctx):
    b, a, be, ga, f, fp = c.bz, c.alpha, c.beta, c.gamma, c.sym.f_rho, c.d_f
    sag = guard(math.sin(a - ga), what="sin(alpha - gamma)")
    r1 = (-fp * math.cos(a - be) + 2 * math.sin(a - be)) / (sag * f)
    cab = guard(math.cos(a - be), what="cos(alpha - beta)")
    r2 = (-fp + 2 * math.sin(a - be) / cab) / (sag * f * f)
    return [Part(abs(b.z2) / abs(b.z1), r1)], [Part(abs(b.z2) / abs(b.z), r2)]


def _cforms(c: Ctx):
    b, a, be, f = c.bz, c.alpha, c.beta, c.sym.f_rho
    z, z1 = b.z, b.z1
    z1_conj = z1.conjugate()  # zeta'(1/2 - i rho)
    one = [Part(2 / f * z, cmath.exp(2j * a) * z1_conj + z1)]
    two = [
        Part(abs(z), cmath.exp(-1j * a) * z),
        Part(abs(z), f * (cmath.exp(1j * a) * z1_conj).real),
    ]
    three = [Part(z / abs(z1), f * cmath.exp(1j * a) * math.cos(a - be))]
    four = [Part(z / z1, f * cmath.exp(1j * (a - be)) * math.cos(a - be))]
    return one, two, three, four


def interim_sides(rho: float, alpha: float, beta: float, rho_theta: float) -> tuple[float, float]:
    """(lhs, rhs) of the beta-independent trigonometric relation at given angles.

    ``rho_theta`` enters with the sign convention theta - rho ln 2pi.
    """
    sh, ch = math.sinh(PI * rho), math.cosh(PI * rho)
    s2t, c2t = math.sin(2 * rho_theta), math.cos(2 * rho_theta)
    num = (-sh * s2t - c2t) * math.cos(4 * beta) + (-c2t * sh + s2t) * math.sin(4 * beta) + ch
    ang = 2 * rho_theta + 3 * beta + alpha
    den = ch * math.cos(alpha - beta) - sh * math.sin(ang) - math.cos(ang)
    guard(den, ch, "interim denominator")
    return num / den, 2 * math.cos(alpha - beta)


def interim_beta_probe(rho: float, deltas: Iterable[float] = (0.1, 0.3, 0.7), cfg: EvalConfig = DEFAULT_CONFIG):
    """lhs of the interim relation with beta replaced by beta + delta.

    Returns ``[(delta, lhs, rhs_unperturbed)]``; informative only.
    """
    c = Ctx(ComplexPoint(0.5, rho), cfg)
    rhs = 2 * math.cos(c.alpha - c.beta)
    out = []
    for d in deltas:
        try:
            lhs, _ = interim_sides(rho, c.alpha, c.beta + d, c.gap)
        except SingularGuard:
            lhs = math.nan
        out.append((d, lhs, rhs))
    return out


def _interim(c: Ctx):
    lhs, rhs = interim_sides(c.rho, c.alpha, c.beta, c.gap)
    return [Part(lhs, rhs)]


def _fe_raw(c: Ctx):
    b, s = c.bz, c.sym
    c0, ps = s.c0, s.pi_sigma
    zd = guard(s.zeta_d, abs(b.z1) * ps * abs(s.p1 + 1j * s.p2), "zeta_d")
    a1 = abs(b.z1) ** 2
    shr, sns = math.sinh(PI * c.rho), math.sin(PI * c.sigma)
    zar = (
        ((-4 * s.Psi1 * b.z1r + 2 * b.z1i * s.Psi2) * s.zeta_m + 8 * (-b.z1i * b.tz1i + b.z1r * b.tz1r) * ps + 4 * s.g2 * a1) * c0
        + (shr * b.z1r - sns * b.z1i) * PI * s.zeta_m
    ) / zd
    zai = -(
        ((4 * s.Psi1 * b.z1r - 2 * b.z1i * s.Psi2) * s.zeta_p - 8 * (b.z1i * b.tz1r + b.z1r * b.tz1i) * ps - 4 * s.g1 * a1) * c0
        - (shr * b.z1r - sns * b.z1i) * PI * s.zeta_p
    ) / zd
    return [Part(b.tzr, zar)], [Part(b.tzi, zai)]


def _g_polar(c: Ctx):
    s, sig, rho = c.sym, c.sigma, c.rho
    rt, ga = c.gap, s.gamma_abs
    hs, hc = math.sin(0.5 * PI * sig), math.cos(0.5 * PI * sig)
    sh, ch = math.sinh(0.5 * PI * rho), math.cosh(0.5 * PI * rho)
    ep, em = math.exp(0.5 * PI * rho), math.exp(-0.5 * PI * rho)
    h = 0.5 * PI * sig
    g1a = 4 * ga * (hs * math.cos(rt) * sh - hc * math.sin(rt) * ch)
    g1b = 2 * ga * (math.sin(h - rt) * ep - math.sin(h + rt) * em)
    g2a = 4 * ga * (hs * math.sin(rt) * sh + hc * math.cos(rt) * ch)
    g2b = 2 * ga * (math.cos(h - rt) * ep + math.cos(h + rt) * em)
    return [Part(s.g1, g1a), Part(s.g1, g1b), Part(s.g2, g2a), Part(s.g2, g2b)]


def _h_cl(c: Ctx):
    s, a = c.sym, c.alpha
    k = -16 * math.sqrt(2 * PI) * math.cosh(PI * c.rho) / s.f_rho
    return [Part(s.h1, k * math.cos(2 * a)), Part(s.h2, k * math.sin(2 * a))]


def phi_value(sigma: float, rho: float) -> float:
    g = abs(cf.gamma(complex(sigma, rho)))
    return (2 * PI) ** (2 * sigma) / (2 * (math.cos(PI * sigma) + math.cosh(PI * rho)) * g * g)


def phi_sigma_derivative(sigma: float, rho: float) -> float:
    """Closed-form d Phi / d sigma at fixed rho."""
    s = complex(sigma, rho)
    g = abs(cf.gamma(s))
    psi2 = -2 * LN_2PI + 2 * cf.digamma(s).real
    den = math.cos(PI * sigma) + math.cosh(PI * rho)
    return (2 * PI) ** (2 * sigma) * (PI * math.sin(PI * sigma) - psi2 * den) / (2 * den * den * g * g)


def _phi_diff(c: Ctx):
    fd = central_diff(lambda x: phi_value(x, c.rho), c.sigma, 1e-4)
    return [Part(fd, phi_sigma_derivative(c.sigma, c.rho))]


# ---------------------------------------------------------------- registry


@dataclass(frozen=True)
class Identity:
    id: str
    what: str
    evaluate: Callable[[Ctx], list]
    critical: bool = False
    rho_min: float = 0.0
    sigma_interior: bool = False


def _pick(fn, i):
    return lambda c: fn(c)[i]


_SPECS = [
    ("FE-COMP", "reflected zeta components from the g1/g2 transform", _fe_comp, False),
    ("FE-INV", "zeta components from the reflected ones (inverse transform)", _fe_inv, False),
    ("ARG-FE", "tan of the reflected argument from tan(alpha), g1, g2", _arg_fe, False),
    ("MAG-RATIO", "|zeta|^2/|zeta~|^2 equals Phi", _mag_ratio, False),
    ("VARIANT", "zeta'(1-s)/zeta'(s) + chi(s) = f(s) zeta(1-s)/zeta'(s)", _variant, False),
    ("XLINE-R", "zeta~_R from zeta' and zeta~'", _pick(_xline, 0), False),
    ("XLINE-I", "zeta~_I from zeta' and zeta~'", _pick(_xline, 1), False),
    ("DINV-R", "zeta'_R from zeta~ and zeta~'", _pick(_dinv, 0), False),
    ("DINV-I", "zeta'_I from zeta~ and zeta~'", _pick(_dinv, 1), False),
    ("DFWD-R", "zeta~'_R from zeta and zeta'", _pick(_dfwd, 0), False),
    ("DFWD-I", "zeta~'_I from zeta and zeta'", _pick(_dfwd, 1), False),
    ("DMAG", "|zeta'|^2 from mixed products with q1, q2", _dmag, False),
    ("ARG-POLAR", "tan(alpha~) from alpha and rho_theta", _arg_polar, False),
    ("TANB", "tan(beta) from alpha~, beta~ and zeta~'_R/zeta~_R", _tanb, False),
    ("TANB-INV", "tan(beta~) from alpha, beta and zeta'_R/zeta_R", _tanb_inv, False),
    ("RLOG-TILDE", "zeta~'_R/zeta~_R from the angles", _rlog_tilde, False),
    ("RLOG", "zeta'_R/zeta_R from the angles", _rlog, False),
    ("ARGSUM-PROD", "Re(conj(zeta) zeta') against its reflection", _argsum_prod, False),
    ("ARGSUM-SYM", "sum of Re(zeta'/zeta) on both sides", _argsum_sym, False),
    ("GAMMA-IDENT", "Im LogGamma against arctan forms of g1/g2", _gamma_ident, False),
    ("INTPSI", "integral of Re psi equals Im LogGamma", _intpsi, False),
    ("LGAMMA-REFL", "tan(theta - theta~) = -tanh(pi rho)/tan(pi sigma)", _lgamma_refl, False),
    ("COS-THETA", "cos(theta - theta~) closed form", _cos_theta, False),
    ("PSI-IM", "Im[psi(s) + psi(1 - sigma + i rho)]", _psi_im, False),
    ("PSI-RE", "Re[psi(s) - psi(1 - sigma + i rho)]", _psi_re, False),
    ("CL-TANA", "tan(alpha) from rho_theta, two forms", _cl_tana, True),
    ("CL-LIN-R", "zeta_R/f linear in zeta'", _pick(_cl_lin, 0), True),
    ("CL-LIN-I", "zeta_I/f linear in zeta'", _pick(_cl_lin, 1), True),
    ("DET0", "a^2 + b^2 = 1/4", _det0, True),
    ("B-ID", "b = cos(2 alpha)/2", _pick(_ab_id, 0), True),
    ("A-ID", "a = sin(2 alpha)/2", _pick(_ab_id, 1), True),
    ("SIN2A", "sin(2 alpha) from theta - rho ln 2pi", _pick(_trig2a, 0), True),
    ("COS2A", "cos(2 alpha) from theta - rho ln 2pi", _pick(_trig2a, 1), True),
    ("TAN-ID", "tan(alpha) = 1/sin(2 alpha) - 1/tan(2 alpha)", _tan_id, False),
    ("INV-THETA", "cos, sin, tan of theta - rho ln 2pi from alpha", _inv_theta, True),
    ("ZMAIN", "|zeta|^2 = f Re(conj(zeta) zeta')", _zmain, True),
    ("ALPHA-PRIME", "d alpha/d rho = 1/f", _alpha_prime, True),
    ("ZMAIN-INT", "intermediate form of the magnitude relation", _zmain_int, True),
    ("COMP-SQ", "zeta_R^2, zeta_I^2 from |zeta'| and angles", _comp_sq, True),
    ("MAG-SQ", "|zeta|^2/|zeta'|^2 = f^2 cos^2(alpha - beta)", _mag_sq, True),
    ("ZZP", "|zeta|/|zeta'| = f cos(alpha - beta)", _zzp, True),
    ("EQ9", "normalised magnitude and cross-product terms sum to 1", _eq9, True),
    ("DIFF-ID", "cross product squared against d|zeta|^2/d rho", _diff_id, True),
    ("ZPRIME", "(|zeta|')^2 = |zeta'|^2 - |zeta|^2/f^2", _zprime, True),
    ("LOGZ", "(d log|zeta|/d rho)^2, two forms", _logz, True),
    ("ZPZP", "|zeta|'/|zeta'| = sin(alpha - beta)", _zpzp, False),
    ("LOGZA", "d log|zeta|/d rho = tan(alpha - beta)/f", _logza, True),
    ("EXPREP", "|zeta| ratio over [rho, rho + 0.5] from the integrated log-derivative", _exprep, True),
    ("DBETA", "d beta/d rho from f, f' and |zeta'|'", _dbeta, True),
    ("DBDA", "beta'/alpha' = 2 - (ln|zeta' f|)'/(ln|zeta|)'", _dbda, True),
    ("L1NEG", "L1 = beta' - alpha' and its sign", _l1neg, True),
    ("SING-INV", "zeta'_I from zeta_R, zeta'_R and alpha", _sing_inv, True),
    ("PERT-R", "zeta'_R from zeta, zeta'' and f'", _pick(_pert, 0), True),
    ("PERT-I", "zeta'_I from zeta, zeta'' and f'", _pick(_pert, 1), True),
    ("Z2-RATIO-1", "|zeta''|/|zeta'| from the angles and f'", _pick(_z2_ratio, 0), True),
    ("Z2-RATIO-2", "|zeta''|/|zeta| from the angles and f'", _pick(_z2_ratio, 1), True),
    ("CFORM-1", "(2/f) zeta = e^{2i alpha} zeta'(1/2 - i rho) + zeta'", _pick(_cforms, 0), True),
    ("CFORM-2", "|zeta| = f Re(e^{i alpha} zeta'(1/2 - i rho))", _pick(_cforms, 1), True),
    ("CFORM-3", "zeta/|zeta'| = f e^{i alpha} cos(alpha - beta)", _pick(_cforms, 2), True),
    ("CFORM-4", "zeta/zeta' = f e^{i(alpha - beta)} cos(alpha - beta)", _pick(_cforms, 3), True),
    ("INTERIM", "trigonometric relation in theta - rho ln 2pi, alpha, beta", _interim, True),
    ("FE-RAW-R", "zeta~_R from the real part of the variant form", _pick(_fe_raw, 0), False),
    ("FE-RAW-I", "zeta~_I from the imaginary part of the variant form", _pick(_fe_raw, 1), False),
    ("G-POLAR", "g1, g2 in polar form", _g_polar, False),
    ("H-CL", "h1, h2 in terms of cos/sin(2 alpha)/f", _h_cl, True),
    ("PHI-DIFF", "d Phi/d sigma closed form against a finite difference", _phi_diff, False),
]

# domains beyond the critical-line flag
_RHO_MIN = {"THETA-ASY": 10.0, "COS-NEG": 6.3}

REGISTRY: dict[str, Identity] = {}
for _id, _what, _fn, _crit in _SPECS:
    REGISTRY[_id] = Identity(_id, _what, _fn, _crit, _RHO_MIN.get(_id, 0.0))
REGISTRY["THETA-ASY"] = Identity("THETA-ASY", "large-rho tan(theta - rho ln 2pi) from tan(2 alpha)", _theta_asy, True, 10.0)
REGISTRY["COS-NEG"] = Identity("COS-NEG", "cos(alpha - beta) <= 0 once f < 0", _cos_neg, True, 6.3)

IDS = tuple(REGISTRY)


# ---------------------------------------------------------------- evaluation


@dataclass(frozen=True)
class IdentityResult:
    id: str
    point: ComplexPoint
    lhs: complex
    rhs: complex
    abs_residual: float
    rel_residual: float
    status: str
    note: str = ""


def _residual(p: Part) -> tuple[float, float]:
    if p.kind == "le":
        v = max(0.0, (complex(p.lhs) - complex(p.rhs)).real)
        return v, v
    ab = abs(complex(p.lhs) - complex(p.rhs))
    scale = max(abs(p.lhs), abs(p.rhs), p.scale, 1e-300)
    return ab, ab / scale


def _failed(p: Part, rel: float, tol: float) -> bool:
    if p.kind == "le":
        return rel > LE_SLACK
    return not rel < tol


def in_domain(ident: Identity, point: ComplexPoint) -> bool:
    if ident.critical and point.sigma != 0.5:
        return False
    return point.rho >= ident.rho_min


def evaluate(ident_id: str, s, cfg: EvalConfig = DEFAULT_CONFIG, tol: float | None = None) -> IdentityResult:
    """Evaluate one identity; critical-line identities are moved to sigma = 1/2."""
    ident = REGISTRY[ident_id]
    tol = default_tol() if tol is None else tol
    pt = s if isinstance(s, ComplexPoint) else ComplexPoint.from_complex(s)
    if ident.critical and pt.sigma != 0.5:
        pt = ComplexPoint(0.5, pt.rho)
    try:
        parts = ident.evaluate(Ctx(pt, cfg))
    except SingularGuard as exc:
        return IdentityResult(ident_id, pt, math.nan, math.nan, math.nan, math.nan, SKIPPED, str(exc))
    worst = None
    status = OK
    for p in parts:
        ab, rel = _residual(p)
        bad = _failed(p, rel, tol)
        key = (bad, rel)
        if worst is None or key > worst[0]:
            worst = (key, p, ab, rel)
        if bad:
            status = FAILED
    _, p, ab, rel = worst
    return IdentityResult(ident_id, pt, complex(p.lhs), complex(p.rhs), ab, rel, status)


@dataclass(frozen=True)
class Grid:
    sigmas: tuple[float, ...]
    rhos: tuple[float, ...]

    @classmethod
    def linear(cls, sigma_min, sigma_max, rho_min, rho_max, n_sigma, n_rho) -> "Grid":
        def lin(a, b, n):
            if n == 1:
                return (float(a),)
            return tuple(a + (b - a) * i / (n - 1) for i in range(n))

        return cls(lin(sigma_min, sigma_max, n_sigma), lin(rho_min, rho_max, n_rho))


STANDARD_GRID = Grid(STANDARD_SIGMAS, STANDARD_RHOS)


@dataclass
class SweepReport:
    grid: Grid
    results: list[IdentityResult] = field(default_factory=list)
    out_of_domain: dict[str, int] = field(default_factory=dict)

    def counts(self) -> dict[str, int]:
        out = {OK: 0, SKIPPED: 0, FAILED: 0}
        for r in self.results:
            out[r.status] += 1
        return out

    def worst(self) -> dict[str, float]:
        w: dict[str, float] = {}
        for r in self.results:
            if r.status == SKIPPED:
                w.setdefault(r.id, 0.0)
                continue
            w[r.id] = max(w.get(r.id, 0.0), r.rel_residual)
        return w

    @property
    def failed(self) -> list[IdentityResult]:
        return [r for r in self.results if r.status == FAILED]

    def summary_lines(self) -> list[str]:
        by_id: dict[str, list[IdentityResult]] = {}
        for r in self.results:
            by_id.setdefault(r.id, []).append(r)
        lines = []
        for ident, rs in by_id.items():
            n_ok = sum(r.status == OK for r in rs)
            n_skip = sum(r.status == SKIPPED for r in rs)
            n_fail = sum(r.status == FAILED for r in rs)
            worst = max((r.rel_residual for r in rs if r.status != SKIPPED), default=0.0)
            lines.append(
                f"{ident:<12} ok={n_ok:<3} skipped={n_skip:<3} failed={n_fail:<3} "
                f"out_of_domain={self.out_of_domain.get(ident, 0):<3} worst_rel={worst:.3e}"
            )
        c = self.counts()
        lines.append(f"TOTAL ok={c[OK]} skipped={c[SKIPPED]} failed={c[FAILED]}")
        return lines

    def write_csv(self, path_or_file) -> None:
        own = isinstance(path_or_file, (str, os.PathLike))
        fh = open(path_or_file, "w", newline="") if own else path_or_file
        try:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["id", "sigma", "rho", "lhs_re", "lhs_im", "rhs_re", "rhs_im", "abs_res", "rel_res", "status"])
            for r in self.results:
                w.writerow([
                    r.id, fmt(r.point.sigma), fmt(r.point.rho),
                    fmt(r.lhs.real), fmt(r.lhs.imag), fmt(r.rhs.real), fmt(r.rhs.imag),
                    fmt(r.abs_residual), fmt(r.rel_residual), r.status,
                ])
        finally:
            if own:
                fh.close()


def fmt(x: float) -> str:
    """Fixed 15-significant-digit scientific notation."""
    return f"{x:.14e}"


def sweep(
    ids: Iterable[str],
    grid: Grid = STANDARD_GRID,
    cfg: EvalConfig = DEFAULT_CONFIG,
    tol: float | None = None,
) -> SweepReport:
    """Evaluate ``ids`` on the grid, in grid order.

    Critical-line identities are evaluated once per rho at sigma = 1/2.
    Points outside an identity's declared rho range are counted, not run.
    """
    report = SweepReport(grid)
    for ident_id in ids:
        ident = REGISTRY[ident_id]
        sigmas = (0.5,) if ident.critical else grid.sigmas
        skipped = 0
        for sig in sigmas:
            for rho in grid.rhos:
                pt = ComplexPoint(sig, rho)
                if not in_domain(ident, pt):
                    skipped += 1
                    continue
                report.results.append(evaluate(ident_id, pt, cfg, tol))
        report.out_of_domain[ident_id] = skipped
    return report


def phi_derivative_sign(grid: Grid, fd_step: float = 1e-5):
    """Sign of the closed-form d Phi/d sigma, with a finite-difference cross-check.

    Returns a list of ``(sigma, rho, closed, finite_difference, rel_diff)``.
    """
    rows = []
    for sig in grid.sigmas:
        for rho in grid.rhos:
            closed = phi_sigma_derivative(sig, rho)
            fd = (phi_value(sig + fd_step, rho) - phi_value(sig - fd_step, rho)) / (2 * fd_step)
            rows.append((sig, rho, closed, fd, abs(fd - closed) / abs(closed)))
    return rows
