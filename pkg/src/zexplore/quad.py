"""Adaptive Simpson quadrature and centred finite differences."""

from __future__ import annotations

import math
from typing import Callable

from .errors import ZExploreError


class QuadratureError(ZExploreError):
    """Adaptive subdivision hit its depth limit without meeting the tolerance."""


def adaptive_simpson(
    fun: Callable[[float], float],
    a: float,
    b: float,
    abs_tol: float = 1e-9,
    max_depth: int = 40,
) -> float:
    """Integrate ``fun`` over ``[a, b]`` with local error control.

    Each panel is accepted when the two-half Simpson estimate differs from the
    whole-panel one by less than ``15 * tol``; the standard Richardson
    correction is then added.
    """
    if a == b:
        return 0.0
    fa, fm, fb = fun(a), fun(0.5 * (a + b)), fun(b)
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    # explicit stack instead of recursion: (a, b, fa, fm, fb, whole, tol, depth)
    stack = [(a, b, fa, fm, fb, whole, abs_tol, 0)]
    total = 0.0
    while stack:
        lo, hi, flo, fmid, fhi, est, tol, depth = stack.pop()
        mid = 0.5 * (lo + hi)
        lm, rm = 0.5 * (lo + mid), 0.5 * (mid + hi)
        flm, frm = fun(lm), fun(rm)
        left = (mid - lo) / 6.0 * (flo + 4.0 * flm + fmid)
        right = (hi - mid) / 6.0 * (fmid + 4.0 * frm + fhi)
        delta = left + right - est
        if abs(delta) <= 15.0 * tol:
            total += left + right + delta / 15.0
            continue
        if depth >= max_depth:
            raise QuadratureError(f"no convergence on [{lo}, {hi}] at depth {depth}")
        stack.append((lo, mid, flo, flm, fmid, left, 0.5 * tol, depth + 1))
        stack.append((mid, hi, fmid, frm, fhi, right, 0.5 * tol, depth + 1))
    return total


def central_diff(fun: Callable[[float], float], x: float, h: float = 1e-4) -> float:
    """Centred difference with one Richardson step (error O(h^4))."""
    d_h = (fun(x + h) - fun(x - h)) / (2.0 * h)
    h2 = 0.5 * h
    d_h2 = (fun(x + h2) - fun(x - h2)) / (2.0 * h2)
    return (4.0 * d_h2 - d_h) / 3.0


def wrap_pi(x: float) -> float:
    """Reduce an angle to (-pi, pi]."""
    y = math.remainder(x, 2.0 * math.pi)
    return math.pi if y == -math.pi else y


def angle_diff(phase: Callable[[float], float], x: float, h: float = 1e-4) -> float:
    """Derivative of a continuous angle given only its principal values.

    Samples are unwrapped against the value at ``x``, which is exact as long
    as the angle moves by less than pi over ``h``.
    """
    a0 = phase(x)
    return central_diff(lambda t: a0 + wrap_pi(phase(t) - a0), x, h)
