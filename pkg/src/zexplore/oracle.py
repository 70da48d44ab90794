"""Compare the binary64 engine with the committed arbitrary-precision golden values."""

from __future__ import annotations

import csv
from dataclasses import dataclass
from importlib import resources

from . import complexfn as cf
from .complexfn import DEFAULT_CONFIG, EvalConfig

# absolute tolerances per quantity
TOLERANCES = {
    "zeta": 1e-9,
    "zeta_d1": 1e-9,
    "zeta_d2": 1e-9,
    "loggamma": 1e-9,
    "gamma": 1e-11,
    "digamma": 1e-11,
}


@dataclass(frozen=True)
class GoldenRow:
    sigma: float
    rho: float
    quantity: str
    value: complex


@dataclass(frozen=True)
class OracleResult:
    row: GoldenRow
    engine: complex
    abs_err: float
    tol: float

    @property
    def ok(self) -> bool:
        return self.abs_err <= self.tol


def load_golden() -> list[GoldenRow]:
    text = resources.files("zexplore").joinpath("data/golden.csv").read_text()
    rows = []
    for rec in csv.DictReader(text.splitlines()):
        rows.append(GoldenRow(float(rec["sigma"]), float(rec["rho"]), rec["quantity"],
                              complex(float(rec["re"]), float(rec["im"]))))
    return rows


def engine_value(quantity: str, s: complex, cfg: EvalConfig = DEFAULT_CONFIG) -> complex:
    if quantity == "zeta":
        return cf.zeta(s, cfg)
    if quantity == "zeta_d1":
        return cf.zeta_d1(s, cfg)
    if quantity == "zeta_d2":
        return cf.zeta_d2(s, cfg)
    if quantity == "gamma":
        return cf.gamma(s)
    if quantity == "loggamma":
        return cf.log_gamma(s)
    if quantity == "digamma":
        return cf.digamma(s)
    raise ValueError(f"unknown quantity {quantity!r}")


def check_golden(cfg: EvalConfig = DEFAULT_CONFIG, scale: float = 1.0) -> list[OracleResult]:
    """Engine against every golden row; ``scale`` multiplies the tolerances."""
    out = []
    for row in load_golden():
        s = complex(row.sigma, row.rho)
        v = engine_value(row.quantity, s, cfg)
        out.append(OracleResult(row, v, abs(v - row.value), TOLERANCES[row.quantity] * scale))
    return out
