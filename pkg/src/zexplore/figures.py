"""Plot-ready series for the four figures, with optional PNG rendering.

Series are lists of dataclass rows; ``write_csv`` emits them with a fixed
header and 15 significant digits.  ``render_png`` needs matplotlib and is
only called when a PNG is explicitly asked for.
"""

from __future__ import annotations

import cmath
import csv
import math
import os
from dataclasses import astuple, dataclass, fields

from . import complexfn as cf
from .argtrack import alpha_p_closed, brent_rhs, track
from .complexfn import DEFAULT_CONFIG, ComplexPoint, EvalConfig
from .counterexample import FIGURE4, CounterexampleConfig, Fig4Row, figure4_data
from .quad import angle_diff

PI = math.pi
FD_STEP = 1e-4


def _grid(lo: float, hi: float, n: int) -> list[float]:
    if n < 2:
        raise ValueError("need at least two samples")
    return [lo + (hi - lo) * i / (n - 1) for i in range(n)]


# ---------------------------------------------------------------- figure 1


@dataclass(frozen=True)
class Fig1Row:
    rho: float
    alpha_sum: float  # tracked alpha + alpha~
    closed_k0: float  # closed form with k = 0
    k: int
    residual: float  # alpha_sum - closed_k0 - k pi


def figure1_data(
    sigma: float = 1.0 / 3.0,
    rho_min: float = 2.0,
    rho_max: float = 14.0,
    n: int = 241,
    cfg: EvalConfig = DEFAULT_CONFIG,
) -> list[Fig1Row]:
    """Tracked alpha + alpha~ against the closed argument-sum form at fixed sigma."""
    ta = track(sigma, rho_max, "alpha", cfg)
    tt = track(sigma, rho_max, "alpha_tilde", cfg)
    rows = []
    for rho in _grid(rho_min, rho_max, n):
        total = ta.angle_at(rho) + tt.angle_at(rho)
        closed = alpha_p_closed(ComplexPoint(sigma, rho), 0)
        k = round((total - closed) / PI)
        rows.append(Fig1Row(rho, total, closed, k, total - closed - k * PI))
    return rows


# ---------------------------------------------------------------- figure 2


@dataclass(frozen=True)
class Fig2Row:
    rho: float
    alpha: float  # tracked arg zeta(1/2 + i rho)
    brent_continuous: float  # Brent form with theta = Im LogGamma
    brent_principal: float  # Brent form with theta = principal arg Gamma

    @property
    def interpretation_gap_over_pi(self) -> float:
        return (self.brent_continuous - self.brent_principal) / PI


def figure2_data(
    rho_min: float = 1.0,
    rho_max: float = 20.0,
    n: int = 381,
    cfg: EvalConfig = DEFAULT_CONFIG,
) -> list[Fig2Row]:
    """Tracked arg zeta on the critical line and both readings of the Brent form."""
    ta = track(0.5, rho_max, "alpha", cfg)
    rows = []
    for rho in _grid(rho_min, rho_max, n):
        s = complex(0.5, rho)
        rows.append(Fig2Row(
            rho, ta.angle_at(rho),
            brent_rhs(rho, cf.log_gamma(s).imag),
            brent_rhs(rho, cmath.phase(cf.gamma(s))),
        ))
    return rows


# ---------------------------------------------------------------- figure 3


@dataclass(frozen=True)
class Fig3Row:
    rho: float
    beta_minus_alpha: float  # reduced into [-3pi/2, pi/2)
    slope: float  # centered difference of tracked beta - alpha; nan next to a zero


def reduce_band(x: float) -> float:
    """Map an angle into [-3pi/2, pi/2)."""
    return (x + 1.5 * PI) % (2 * PI) - 1.5 * PI


def figure3_data(
    rho_min: float = 30.0,
    rho_max: float = 50.0,
    n: int = 401,
    cfg: EvalConfig = DEFAULT_CONFIG,
) -> tuple[list[Fig3Row], list[float]]:
    """beta - alpha on the critical line and its rho-slope.

    Returns the rows and the jump-event ordinates of the alpha trace inside
    the window.  Where cos(alpha - beta) <= 0 the reduced value stays in
    [-3pi/2, -pi/2], so its only discontinuities are the zero crossings.
    """
    ta = track(0.5, rho_max + 1.0, "alpha", cfg)
    tb = track(0.5, rho_max + 1.0, "beta", cfg)
    jumps = [j.rho for j in ta.jumps_between(rho_min, rho_max)]

    def phase_a(r):
        return cmath.phase(cf.zeta(complex(0.5, r), cfg))

    def phase_b(r):
        return cmath.phase(cf.zeta_d1(complex(0.5, r), cfg))

    rows = []
    for rho in _grid(rho_min, rho_max, n):
        diff = tb.angle_at(rho) - ta.angle_at(rho)
        if any(abs(rho - z) < 4 * FD_STEP for z in jumps):
            slope = math.nan
        else:
            slope = angle_diff(phase_b, rho, FD_STEP) - angle_diff(phase_a, rho, FD_STEP)
        rows.append(Fig3Row(rho, reduce_band(diff), slope))
    return rows, jumps


# ---------------------------------------------------------------- output

HEADERS = {
    1: "rho,alpha_sum,closed_k0,k,residual",
    2: "rho,alpha,brent_continuous,brent_principal",
    3: "rho,beta_minus_alpha,slope",
    4: "sigma,abs_zc,abs_zc_reflected,ratio",
}


def figure_rows(n: int, cfg: EvalConfig = DEFAULT_CONFIG, cx: CounterexampleConfig = FIGURE4):
    if n == 1:
        return figure1_data(cfg=cfg)
    if n == 2:
        return figure2_data(cfg=cfg)
    if n == 3:
        return figure3_data(cfg=cfg)[0]
    if n == 4:
        return figure4_data(cx, eval_cfg=cfg)
    raise ValueError(f"no figure {n}")


def _cell(v) -> str:
    if isinstance(v, bool):
        return str(int(v))
    if isinstance(v, int):
        return str(v)
    return f"{v:.14e}"


def write_csv(n: int, rows, path_or_file) -> None:
    header = HEADERS[n].split(",")
    own = isinstance(path_or_file, (str, os.PathLike))
    fh = open(path_or_file, "w", newline="") if own else path_or_file
    try:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for r in rows:
            vals = dict(zip([f.name for f in fields(r)], astuple(r)))
            w.writerow([_cell(vals[h]) for h in header])
    finally:
        if own:
            fh.close()


def render_png(n: int, rows, path) -> None:
    """Draw figure ``n`` from its rows into ``path`` (matplotlib, Agg backend)."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(7, 4.5))
    if n == 1:
        x = [r.rho for r in rows]
        k = rows[len(rows) // 2].k
        ax.plot(x, [r.alpha_sum for r in rows], label="tracked alpha + alpha~")
        ax.plot(x, [r.closed_k0 + k * PI for r in rows], "--", label=f"closed form, k = {k}")
        ax.set_xlabel("rho")
        ax.set_ylabel("angle")
    elif n == 2:
        x = [r.rho for r in rows]
        ax.plot(x, [r.alpha for r in rows], label="tracked arg zeta")
        ax.plot(x, [r.brent_continuous for r in rows], "--", label="theta = Im LogGamma")
        ax.plot(x, [r.brent_principal for r in rows], ":", label="theta = arg Gamma")
        ax.set_xlabel("rho")
        ax.set_ylabel("angle")
    elif n == 3:
        x = [r.rho for r in rows]
        ax.plot(x, [r.beta_minus_alpha for r in rows], ".", ms=2, label="beta - alpha")
        for y in (-0.5 * PI, 0.5 * PI):
            ax.axhline(y, color="grey", lw=0.5)
        ax.set_xlabel("rho")
        ax.set_ylabel("angle")
    elif n == 4:
        x = [r.sigma for r in rows]
        ax.plot(x, [r.abs_zc for r in rows], label="|zeta_c(sigma + i rho0)|")
        ax.plot(x, [r.abs_zc_reflected for r in rows], "--", label="|zeta_c(1 - sigma + i rho0)|")
        ax2 = ax.twinx()
        ax2.plot(x, [r.ratio for r in rows], ":", color="k", label="ratio")
        ax2.set_ylabel("ratio")
        ax.set_xlabel("sigma")
    else:
        raise ValueError(f"no figure {n}")
    ax.legend(loc="best", fontsize="small")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
