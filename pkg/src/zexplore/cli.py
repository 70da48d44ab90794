"""Command-line front end: identity sweeps, zero tables, figure series, traces."""

from __future__ import annotations

import argparse
import os
import sys

from . import figures, identities, oracle, zeros
from .argtrack import KINDS, track, write_jumps_csv, write_trace_csv
from .errors import ZExploreError


def _grid_from_args(args) -> identities.Grid:
    flags = (args.sigma_min, args.sigma_max, args.rho_min, args.rho_max, args.n_sigma, args.n_rho)
    if all(f is None for f in flags):
        return identities.STANDARD_GRID
    std = identities.STANDARD_GRID
    return identities.Grid.linear(
        std.sigmas[0] if args.sigma_min is None else args.sigma_min,
        std.sigmas[-1] if args.sigma_max is None else args.sigma_max,
        std.rhos[0] if args.rho_min is None else args.rho_min,
        std.rhos[-1] if args.rho_max is None else args.rho_max,
        len(std.sigmas) if args.n_sigma is None else args.n_sigma,
        len(std.rhos) if args.n_rho is None else args.n_rho,
    )


def cmd_identities(args) -> int:
    ids = args.ids.split(",") if args.ids else identities.IDS
    unknown = [i for i in ids if i not in identities.REGISTRY]
    if unknown:
        print(f"unknown identity id(s): {', '.join(unknown)}", file=sys.stderr)
        return 2
    tol = args.tol if args.tol is not None else identities.default_tol()
    report = identities.sweep(ids, _grid_from_args(args), tol=tol)
    for line in report.summary_lines():
        print(line)
    for r in report.failed:
        print(f"FAILED {r.id} at sigma={r.point.sigma:g} rho={r.point.rho:g} rel={r.rel_residual:.3e}")
    if args.out:
        report.write_csv(args.out)
    return 1 if report.failed else 0


def cmd_zeros(args) -> int:
    if args.half:
        kind = zeros.REAL_HALF if args.half == "real" else zeros.IMAG_HALF
        records = zeros.find_half_zeros(args.min, args.max, kind)
    else:
        records = zeros.find_zeros(args.min, args.max)
    for r in records:
        flag = " anomalous" if r.anomalous else ""
        print(f"{r.kind:<9} rho0={r.rho0:.12f} n={r.n:<4} |res|={r.residual_abs_zeta:.2e} "
              f"beta0={r.beta0:.10f}{flag}")
    if args.out:
        zeros.write_zero_csv(records, args.out)
    return 0


def cmd_figure(args) -> int:
    rows = figures.figure_rows(args.n)
    figures.write_csv(args.n, rows, args.out)
    print(f"wrote {len(rows)} rows to {args.out}")
    if args.plot:
        png = os.path.splitext(args.out)[0] + ".png"
        figures.render_png(args.n, rows, png)
        print(f"wrote {png}")
    return 0


def cmd_trace(args) -> int:
    tr = track(args.sigma, args.max, args.kind)
    write_trace_csv(tr, args.out)
    jumps = os.path.splitext(args.out)[0] + "_jumps.csv"
    write_jumps_csv(tr, jumps)
    print(f"wrote {len(tr.rho_samples)} samples to {args.out}, {len(tr.jump_events)} jumps to {jumps}")
    return 0


def cmd_oracle_check(args) -> int:
    results = oracle.check_golden()
    bad = [r for r in results if not r.ok]
    worst: dict[str, float] = {}
    for r in results:
        worst[r.row.quantity] = max(worst.get(r.row.quantity, 0.0), r.abs_err)
    for q, e in worst.items():
        print(f"{q:<9} worst_abs={e:.3e} tol={oracle.TOLERANCES[q]:.0e}")
    for r in bad:
        print(f"FAILED {r.row.quantity} at {r.row.sigma:g}+{r.row.rho:g}i err={r.abs_err:.3e}")
    print(f"{len(results) - len(bad)}/{len(results)} golden values within tolerance")
    return 1 if bad else 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="zexplore", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    q = sub.add_parser("identities", help="sweep the identity registry over a grid")
    q.add_argument("--sigma-min", type=float)
    q.add_argument("--sigma-max", type=float)
    q.add_argument("--rho-min", type=float)
    q.add_argument("--rho-max", type=float)
    q.add_argument("--n-sigma", type=int)
    q.add_argument("--n-rho", type=int)
    q.add_argument("--tol", type=float, help="relative residual tolerance (default: ZEXPLORE_TOL or 1e-7)")
    q.add_argument("--ids", help="comma-separated identity ids (default: all)")
    q.add_argument("--out", help="write per-point results as CSV")
    q.set_defaults(func=cmd_identities)

    q = sub.add_parser("zeros", help="locate zeros or half-zeros on the critical line")
    q.add_argument("--min", type=float, required=True)
    q.add_argument("--max", type=float, required=True)
    q.add_argument("--half", choices=("real", "imag"))
    q.add_argument("--out")
    q.set_defaults(func=cmd_zeros)

    q = sub.add_parser("figure", help="write the CSV series for one figure")
    q.add_argument("--n", type=int, choices=(1, 2, 3, 4), required=True)
    q.add_argument("--out", required=True)
    q.add_argument("--plot", action="store_true", help="also render a PNG next to the CSV (needs matplotlib)")
    q.set_defaults(func=cmd_figure)

    q = sub.add_parser("trace", help="export a continuous-argument trace")
    q.add_argument("--sigma", type=float, default=0.5)
    q.add_argument("--kind", choices=KINDS, default="alpha")
    q.add_argument("--max", type=float, required=True)
    q.add_argument("--out", required=True)
    q.set_defaults(func=cmd_trace)

    q = sub.add_parser("oracle-check", help="compare the engine with the golden values")
    q.set_defaults(func=cmd_oracle_check)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code == 0 else 2
    try:
        return args.func(args)
    except (ZExploreError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
