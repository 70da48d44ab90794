"""Continuous arguments of zeta, zeta', zeta'' and Gamma along vertical lines.

Angles are unwrapped by stepping upward in ``rho`` from a real-axis anchor.
At ``rho = 0`` every tracked function is real, so its angle there is exactly
``0`` or ``pi``; the first sample at ``rho_start`` is the anchor plus the
(small) principal-value offset from it.  Steps are halved until the principal
increment is below ``pi/2``; a step that collapses below ``1e-9`` is taken to
straddle a zero and is recorded as a jump event.
"""

from __future__ import annotations

import bisect
import cmath
import csv
import math
import os
from dataclasses import dataclass, field
from typing import Callable

from . import complexfn as cf
from .complexfn import DEFAULT_CONFIG, ComplexPoint, EvalConfig
from .errors import DomainError, NonIntegerResidual
from .quad import wrap_pi
from .symbols import ZetaLike, zeta_source

PI = math.pi
LN_2PI = cf.LN_2PI

KINDS = ("alpha", "alpha_tilde", "beta", "beta_tilde", "gamma", "theta")

BASE_STEP = 0.05
MIN_STEP = 1e-9
RHO_START = 1e-3


def value_function(
    kind: str,
    sigma: float,
    cfg: EvalConfig = DEFAULT_CONFIG,
    source: ZetaLike = zeta_source,
) -> Callable[[float], complex]:
    """Map ``rho`` to the complex value whose argument ``kind`` names."""
    if kind not in KINDS:
        raise ValueError(f"unknown angle kind {kind!r}")
    if kind == "theta":
        return lambda rho: cf.gamma(complex(sigma, rho))
    x = 1.0 - sigma if kind.endswith("_tilde") else sigma
    order = {"alpha": 0, "alpha_tilde": 0, "beta": 1, "beta_tilde": 1, "gamma": 2}[kind]
    return lambda rho: source(complex(x, rho), cfg)[order]


@dataclass(frozen=True)
class JumpEvent:
    rho: float
    jump_over_pi: int
    size: float

    @property
    def parity(self) -> str:
        return "odd" if self.jump_over_pi % 2 else "even"


@dataclass
class ArgTrace:
    kind: str
    sigma: float
    rho_samples: list[float]
    angle_samples: list[float]
    principal_samples: list[float]
    jump_events: list[JumpEvent]
    _value: Callable[[float], complex] = field(repr=False, compare=False)

    @property
    def rho_end(self) -> float:
        return self.rho_samples[-1]

    def angle_at(self, rho: float) -> float:
        """Continuous angle at ``rho``, unwrapped against the nearest lower sample."""
        if not self.rho_samples[0] <= rho <= self.rho_end:
            raise DomainError(f"rho={rho} outside traced range")
        i = bisect.bisect_right(self.rho_samples, rho) - 1
        base = self.angle_samples[i]
        p = cmath.phase(self._value(rho))
        return base + wrap_pi(p - self.principal_samples[i])

    def k_at(self, rho: float) -> int:
        """Branch counter: (continuous - principal)/pi, an integer."""
        ang = self.angle_at(rho)
        return round((ang - cmath.phase(self._value(rho))) / PI)

    def jumps_between(self, lo: float, hi: float) -> list[JumpEvent]:
        return [j for j in self.jump_events if lo <= j.rho <= hi]

    def rows(self):
        """(rho, angle, principal_arg, k) per sample."""
        for r, a, p in zip(self.rho_samples, self.angle_samples, self.principal_samples):
            yield r, a, p, round((a - p) / PI)


def _anchor_angle(value: Callable[[float], complex]) -> float | None:
    try:
        v0 = value(0.0)
    except cf.PoleError:
        return None
    if v0 == 0:
        return None
    return cmath.phase(v0)


def track(
    sigma: float,
    rho_end: float,
    kind: str = "alpha",
    cfg: EvalConfig = DEFAULT_CONFIG,
    source: ZetaLike = zeta_source,
    base_step: float = BASE_STEP,
    rho_start: float = RHO_START,
) -> ArgTrace:
    """Unwrap the argument named by ``kind`` on ``[rho_start, rho_end]`` at fixed sigma."""
    if rho_end <= rho_start:
        raise ValueError("rho_end must exceed rho_start")
    value = value_function(kind, sigma, cfg, source)
    p = cmath.phase(value(rho_start))
    anchor = _anchor_angle(value)
    angle = p if anchor is None else anchor + wrap_pi(p - anchor)

    rhos, angles, principals = [rho_start], [angle], [p]
    jumps: list[JumpEvent] = []
    rho, h = rho_start, base_step
    while rho < rho_end:
        h = min(h, rho_end - rho)
        r_new = rho + h
        p_new = cmath.phase(value(r_new))
        d = wrap_pi(p_new - p)
        if abs(d) >= 0.5 * PI:
            if h >= MIN_STEP:
                h *= 0.5
                continue
            # step collapse: the interval straddles a zero
            jumps.append(JumpEvent(rho + 0.5 * h, round(d / PI), d))
        angle += d
        rho, p = r_new, p_new
        rhos.append(rho)
        angles.append(angle)
        principals.append(p)
        h = min(2.0 * h, base_step)
    return ArgTrace(kind, sigma, rhos, angles, principals, jumps, value)


# ---------------------------------------------------------------- polar bundle


@dataclass(frozen=True)
class PolarBundle:
    abs_z: float
    abs_z1: float
    abs_z2: float
    abs_tz: float
    abs_tz1: float
    alpha: float
    beta: float
    gamma_arg: float
    theta: float
    alpha_tilde: float
    beta_tilde: float
    k_alpha: int
    k_alpha_tilde: int


def polar_bundle(
    s,
    cfg: EvalConfig = DEFAULT_CONFIG,
    source: ZetaLike = zeta_source,
    traces: dict[str, ArgTrace] | None = None,
) -> PolarBundle:
    """Moduli and angles at ``s``.

    Without ``traces`` the zeta angles are principal values (k = 0), which is
    all any tangent or cosine relation needs.  With traces covering ``rho``,
    the continuous angles and their branch counters are used.
    """
    pt = s if isinstance(s, ComplexPoint) else ComplexPoint.from_complex(s)
    z, z1, z2 = source(pt.s, cfg)
    tz, tz1, _ = source(pt.reflected().s, cfg)
    traces = traces or {}

    def ang(kind, v):
        tr = traces.get(kind)
        return tr.angle_at(pt.rho) if tr is not None else cmath.phase(v)

    alpha = ang("alpha", z)
    alpha_t = ang("alpha_tilde", tz)
    return PolarBundle(
        abs_z=abs(z), abs_z1=abs(z1), abs_z2=abs(z2), abs_tz=abs(tz), abs_tz1=abs(tz1),
        alpha=alpha, beta=ang("beta", z1), gamma_arg=ang("gamma", z2),
        theta=cf.log_gamma(pt.s).imag,
        alpha_tilde=alpha_t, beta_tilde=ang("beta_tilde", tz1),
        k_alpha=round((alpha - cmath.phase(z)) / PI),
        k_alpha_tilde=round((alpha_t - cmath.phase(tz)) / PI),
    )


# ---------------------------------------------------------------- closed forms


def alpha_p_closed(s, k: int = 0) -> float:
    """Closed form of alpha + alpha~ (up to k pi) at ``s``.

    The integral of Re psi is replaced by Im LogGamma; the arctan argument is
    written with tanh(pi rho/2), which is the same ratio without overflow.
    """
    pt = s if isinstance(s, ComplexPoint) else ComplexPoint.from_complex(s)
    sig, rho = pt.sigma, pt.rho
    sn = math.sin(PI * sig)
    if abs(sn) < cf.POLE_GUARD:
        raise DomainError("alpha_p_closed is singular at integer sigma")
    ratio = (math.cos(PI * sig) - 1.0) * math.tanh(0.5 * PI * rho) / sn
    theta = cf.log_gamma(pt.s).imag
    return -theta - math.atan(ratio) + rho * LN_2PI + k * PI


def alpha_p_rate(s) -> float:
    """d(alpha + alpha~)/d rho = ln 2pi - Re psi + (pi/2) sin(pi sigma)/(cos(pi sigma) + cosh(pi rho))."""
    pt = s if isinstance(s, ComplexPoint) else ComplexPoint.from_complex(s)
    sig, rho = pt.sigma, pt.rho
    return (
        LN_2PI
        - cf.digamma(pt.s).real
        + 0.5 * PI * math.sin(PI * sig) / (math.cos(PI * sig) + math.cosh(PI * rho))
    )


def critical_alpha_closed(rho: float, k: int = 0) -> float:
    """Closed form of arg zeta(1/2 + i rho) up to k pi (Re psi integral as Im LogGamma)."""
    theta = cf.log_gamma(complex(0.5, rho)).imag
    # arctan(e^{pi rho}) written as pi/2 - arctan(e^{-pi rho}) to avoid overflow
    return -0.5 * theta + 0.5 * rho * LN_2PI - 9.0 * PI / 8.0 + 0.5 * (0.5 * PI - math.atan(math.exp(-PI * rho))) + k * PI


@dataclass(frozen=True)
class Winding:
    k: int
    residual: float
    parity: str


def winding_k(s, tracked_sum: float, tol: float = 1e-3) -> Winding:
    """Integer k reconciling a tracked alpha + alpha~ with the k-free closed form."""
    x = (tracked_sum - alpha_p_closed(s, 0)) / PI
    k = round(x)
    if abs(x - k) > tol:
        raise NonIntegerResidual(f"(sum - closed)/pi = {x:.6f} is not an integer")
    return Winding(k, x - k, "odd" if k % 2 else "even")


@dataclass(frozen=True)
class BrentComparison:
    rho: float
    alpha: float
    rhs_continuous: float
    rhs_principal: float

    @property
    def diff_continuous_over_pi(self) -> float:
        return (self.alpha - self.rhs_continuous) / PI

    @property
    def diff_principal_over_pi(self) -> float:
        return (self.alpha - self.rhs_principal) / PI


def brent_rhs(rho: float, theta: float) -> float:
    """-theta/2 + (rho/2) ln 2pi + pi/8 - arctan(e^{-pi rho})/2."""
    return -0.5 * theta + 0.5 * rho * LN_2PI + PI / 8.0 - 0.5 * math.atan(math.exp(-PI * rho))


def brent_compare(rho: float, trace: ArgTrace | None = None, cfg: EvalConfig = DEFAULT_CONFIG) -> BrentComparison:
    """Compare tracked arg zeta(1/2 + i rho) with the Brent-type closed form.

    The closed form equals ``+arg zeta`` up to an integer multiple of pi; it
    is evaluated with theta taken both as the continuous Im LogGamma and as
    the principal arg Gamma.
    """
    if trace is None or trace.sigma != 0.5 or trace.kind != "alpha" or trace.rho_end < rho:
        trace = track(0.5, max(rho, 2 * RHO_START), "alpha", cfg)
    s = complex(0.5, rho)
    return BrentComparison(
        rho=rho,
        alpha=trace.angle_at(rho),
        rhs_continuous=brent_rhs(rho, cf.log_gamma(s).imag),
        rhs_principal=brent_rhs(rho, cmath.phase(cf.gamma(s))),
    )


# ---------------------------------------------------------------- export


def _open(path_or_file):
    if isinstance(path_or_file, (str, os.PathLike)):
        return open(path_or_file, "w", newline=""), True
    return path_or_file, False


def write_trace_csv(trace: ArgTrace, path_or_file) -> None:
    """``rho,angle,principal_arg,k`` per sample, 15 significant digits."""
    fh, own = _open(path_or_file)
    try:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["rho", "angle", "principal_arg", "k"])
        for r, a, p, k in trace.rows():
            w.writerow([f"{r:.14e}", f"{a:.14e}", f"{p:.14e}", k])
    finally:
        if own:
            fh.close()


def write_jumps_csv(trace: ArgTrace, path_or_file) -> None:
    """``rho,jump_over_pi,parity`` per jump event."""
    fh, own = _open(path_or_file)
    try:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["rho", "jump_over_pi", "parity"])
        for j in trace.jump_events:
            w.writerow([f"{j.rho:.14e}", j.jump_over_pi, j.parity])
    finally:
        if own:
            fh.close()
