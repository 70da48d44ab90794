"""Complex special functions in binary64: Gamma, LogGamma, digamma and zeta.

Everything here is a pure function of its arguments.  Points may be given as
Python complex numbers or as :class:`ComplexPoint` instances.

Zeta and its first two derivatives come out of a single Euler-Maclaurin
evaluation, differentiated term by term in ``s``.  LogGamma uses the Stirling
series after an upward recurrence shift; its imaginary part is the branch that
is continuous in ``rho`` for ``sigma > 0`` (zero on the positive real axis).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import AccuracyError, DomainError, PoleError

POLE_GUARD = 1e-8
LN_2PI = math.log(2.0 * math.pi)
EULER_GAMMA = 0.57721566490153286061

_STIRLING_SHIFT = 10.0


@dataclass(frozen=True)
class ComplexPoint:
    """A point ``s = sigma + i rho``."""

    sigma: float
    rho: float

    @classmethod
    def from_complex(cls, s: complex) -> "ComplexPoint":
        s = complex(s)
        return cls(s.real, s.imag)

    @property
    def s(self) -> complex:
        return complex(self.sigma, self.rho)

    def reflected(self) -> "ComplexPoint":
        """The point ``1 - sigma + i rho`` (same ordinate)."""
        return ComplexPoint(1.0 - self.sigma, self.rho)

    def __complex__(self) -> complex:
        return self.s


@dataclass(frozen=True)
class EvalConfig:
    """Euler-Maclaurin controls.

    ``euler_maclaurin_terms=None`` selects ``N = max(20, ceil(1.3 |rho|))``
    per point.
    """

    euler_maclaurin_terms: int | None = None
    bernoulli_terms: int = 10
    target_abs_tol: float = 1e-12

    def __post_init__(self):
        n = self.euler_maclaurin_terms
        if n is not None and n < 10:
            raise ValueError("euler_maclaurin_terms must be >= 10")
        if not 1 <= self.bernoulli_terms <= 15:
            raise ValueError("bernoulli_terms must lie in [1, 15]")
        if self.target_abs_tol < 1e-13:
            raise ValueError("target_abs_tol must be >= 1e-13")

    def direct_terms(self, rho: float) -> int:
        if self.euler_maclaurin_terms is not None:
            return self.euler_maclaurin_terms
        return max(20, math.ceil(1.3 * abs(rho)))


DEFAULT_CONFIG = EvalConfig()


@lru_cache(maxsize=None)
def bernoulli_even(count: int) -> tuple[float, ...]:
    """B_2, B_4, ..., B_{2*count} as floats (Akiyama-Tanigawa, exact rationals)."""
    top = 2 * count
    a = [Fraction(0)] * (top + 1)
    b = []
    for m in range(top + 1):
        a[m] = Fraction(1, m + 1)
        for j in range(m, 0, -1):
            a[j - 1] = j * (a[j - 1] - a[j])
        b.append(a[0])
    return tuple(float(b[2 * k]) for k in range(1, count + 1))


def _as_complex(s) -> complex:
    return complex(s)


def principal_arg(z: complex) -> float:
    """Principal argument in (-pi, pi]."""
    a = cmath.phase(z)
    # cmath gives -pi on the negative real axis with a signed-zero imaginary part
    return math.pi if a == -math.pi else a


def _near_nonpositive_integer(s: complex) -> bool:
    if abs(s.imag) >= POLE_GUARD or s.real > POLE_GUARD:
        return False
    return abs(s.real - round(s.real)) < POLE_GUARD


# ---------------------------------------------------------------- gamma family


def _stirling_loggamma(z: complex) -> complex:
    # Re(z) >= 10 here, so 12 correction terms are far below binary64 epsilon.
    out = (z - 0.5) * cmath.log(z) - z + 0.5 * LN_2PI
    zinv = 1.0 / z
    zinv2 = zinv * zinv
    power = zinv
    for k, b in enumerate(bernoulli_even(12), start=1):
        out += b / (2 * k * (2 * k - 1)) * power
        power *= zinv2
    return out


def log_gamma(s) -> complex:
    """LogGamma on the branch continuous in ``rho`` for ``sigma > 0``.

    ``exp(log_gamma(s)) == gamma(s)``; the imaginary part is the continuous
    argument of Gamma, not the principal one.
    """
    s = _as_complex(s)
    if s.real <= 0.0:
        raise DomainError(f"log_gamma needs sigma > 0, got {s!r}")
    shift = max(0, math.ceil(_STIRLING_SHIFT - s.real))
    # Each log(s + j) has Re > 0, so summing principal logs keeps continuity.
    acc = 0j
    for j in range(shift):
        acc += cmath.log(s + j)
    return _stirling_loggamma(s + shift) - acc


def gamma(s) -> complex:
    s = _as_complex(s)
    if _near_nonpositive_integer(s):
        raise PoleError(f"Gamma has a pole at {s!r}")
    if s.real > 0.0:
        return cmath.exp(log_gamma(s))
    return math.pi / (cmath.sin(math.pi * s) * cmath.exp(log_gamma(1.0 - s)))


def digamma(s) -> complex:
    s = _as_complex(s)
    if _near_nonpositive_integer(s):
        raise PoleError(f"digamma has a pole at {s!r}")
    shift = max(0, math.ceil(_STIRLING_SHIFT - s.real))
    acc = 0j
    for j in range(shift):
        acc += 1.0 / (s + j)
    z = s + shift
    zinv2 = 1.0 / (z * z)
    out = cmath.log(z) - 0.5 / z
    power = zinv2
    for k, b in enumerate(bernoulli_even(12), start=1):
        out -= b / (2 * k) * power
        power *= zinv2
    return out - acc


def chi(s) -> complex:
    """2 cos(pi s / 2) Gamma(s) (2 pi)^-s, so that zeta(1 - s) = chi(s) zeta(s)."""
    s = _as_complex(s)
    return 2.0 * cmath.cos(0.5 * math.pi * s) * gamma(s) * cmath.exp(-s * LN_2PI)


# ---------------------------------------------------------------- zeta family


def zeta_derivs(s, cfg: EvalConfig = DEFAULT_CONFIG, order: int = 2) -> tuple[complex, ...]:
    """Return ``(zeta, zeta', zeta'')[:order + 1]`` at ``s`` (derivatives in s).

    Euler-Maclaurin with N direct terms and M Bernoulli corrections.  The
    size of the first omitted correction, inflated by ``(1 + ln N)**order``,
    is the tail estimate compared against ``cfg.target_abs_tol``.
    """
    s = _as_complex(s)
    if abs(s - 1.0) < POLE_GUARD:
        raise PoleError("zeta has a pole at s = 1")
    n_terms = cfg.direct_terms(s.imag)
    m_terms = cfg.bernoulli_terms

    n = np.arange(1, n_terms, dtype=float)
    logn = np.log(n)
    direct = np.exp(-s * logn)
    big_n = float(n_terms)
    ln_n = math.log(big_n)

    out = [complex(direct.sum())]
    if order >= 1:
        out.append(complex(-(direct * logn).sum()))
    if order >= 2:
        out.append(complex((direct * logn * logn).sum()))

    # N^{1-s}/(s-1)
    e0 = cmath.exp((1.0 - s) * ln_n)
    u = 1.0 / (s - 1.0)
    a = e0 * u
    out[0] += a
    if order >= 1:
        out[1] += -ln_n * a - a * u
    if order >= 2:
        out[2] += ln_n * ln_n * a + 2.0 * ln_n * a * u + 2.0 * a * u * u

    # N^{-s}/2
    half = 0.5 * e0 / big_n
    out[0] += half
    if order >= 1:
        out[1] += -ln_n * half
    if order >= 2:
        out[2] += ln_n * ln_n * half

    # Bernoulli corrections: B_2k/(2k)! (s)_{2k-1} N^{1-s-2k}
    bern = bernoulli_even(m_terms + 1)
    p, dp, ddp = s, 1.0 + 0j, 0j
    fact = 2.0
    ek = e0 / (big_n * big_n)  # N^{1-s-2k} at k = 1
    tail = 0.0
    for k in range(1, m_terms + 2):
        c = bern[k - 1] / fact
        t0 = c * p * ek
        if k == m_terms + 1:
            tail = abs(t0) * (1.0 + ln_n) ** order
            break
        out[0] += t0
        if order >= 1:
            out[1] += c * ek * (dp - ln_n * p)
        if order >= 2:
            out[2] += c * ek * (ddp - 2.0 * ln_n * dp + ln_n * ln_n * p)
        # advance to k + 1: multiply by (s + 2k - 1)(s + 2k)
        for shift in (2 * k - 1, 2 * k):
            w = s + shift
            ddp = ddp * w + 2.0 * dp
            dp = dp * w + p
            p = p * w
        fact *= (2 * k + 1) * (2 * k + 2)
        ek /= big_n * big_n
    if tail > cfg.target_abs_tol:
        raise AccuracyError(
            f"Euler-Maclaurin tail {tail:.3e} exceeds {cfg.target_abs_tol:.1e} at s={s!r}"
        )
    return tuple(out[: order + 1])


def zeta(s, cfg: EvalConfig = DEFAULT_CONFIG) -> complex:
    return zeta_derivs(s, cfg, order=0)[0]


def zeta_d1(s, cfg: EvalConfig = DEFAULT_CONFIG) -> complex:
    return zeta_derivs(s, cfg, order=1)[1]


def zeta_d2(s, cfg: EvalConfig = DEFAULT_CONFIG) -> complex:
    return zeta_derivs(s, cfg, order=2)[2]
