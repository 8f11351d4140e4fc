"""Command-line front end.

Subcommands:

* ``gap``    -- the lambda thresholds for one (n, theta1)
* ``sweep``  -- CSV (and optional SVG band plot) of the thresholds over n
* ``solve``  -- shoot the nonlinear problem at one lambda, write the profile
* ``verify`` -- run the structural-identity suite

Exit codes: 0 success (a mathematically valid "no solution" included),
1 verification failure, 2 usage error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from .bvp import rayleigh_quotient, shoot, sobolev_constant
from .errors import NumericsError, RejectedLambda
from .gap import gap_interval
from .legendre import ProblemParams
from .verify import DEFAULT_TOLERANCES, run_suite

SWEEP_CSV_HEADER = "n,theta1,lambda_trivial,lambda_gap_top,lambda1"


def _fmt(x: float) -> str:
    """12 significant digits, locale-independent (bit-stable golden files)."""
    return format(float(x), ".12g")


def _fmt_full(x: float) -> str:
    """17 significant digits: float round-trip for profile files."""
    return format(float(x), ".17g")


def cmd_gap(args) -> int:
    params = ProblemParams(args.n, args.theta1)
    if args.tol is not None and not 0.0 < args.tol <= 1e-2:
        raise ValueError(f"--tol must lie in (0, 1e-2], got {args.tol}")
    g = gap_interval(params) if args.tol is None else gap_interval(params, args.tol)
    print(f"L_star={_fmt(g.L_star)}")
    print(f"L1={_fmt(g.L_one)}")
    print(f"lambda_trivial={_fmt(g.lambda_trivial)}")
    print(f"lambda_gap_top={_fmt(g.lambda_gap_top)}")
    print(f"lambda1={_fmt(g.lambda_one)}")
    return 0


def _sweep_row(task) -> tuple[float, float, float, float, float]:
    n, theta1 = task
    g = gap_interval(ProblemParams(n, theta1))
    return (n, theta1, g.lambda_trivial, g.lambda_gap_top, g.lambda_one)


def _svg_band_plot(rows) -> str:
    """Minimal static plot: three styled polylines and the shaded gap band.

    Fixed 800x600 viewBox, linear axes, no external assets.  Dotted curve is
    the trivial threshold n(n-2)/4, dashed the gap top, solid the first
    eigenvalue; the shaded band between dotted and dashed is the gap.
    """
    width, height = 800.0, 600.0
    ml, mr, mt, mb = 70.0, 20.0, 20.0, 50.0
    ns = [r[0] for r in rows]
    lam_max = max(r[4] for r in rows)
    x0, x1 = min(ns), max(ns)
    y0, y1 = 0.0, 1.05 * lam_max

    def px(n):
        return ml + (n - x0) / (x1 - x0) * (width - ml - mr)

    def py(lam):
        return height - mb - (lam - y0) / (y1 - y0) * (height - mt - mb)

    def poly(idx):
        return " ".join(f"{px(r[0]):.2f},{py(r[idx]):.2f}" for r in rows)

    band = (
        " ".join(f"{px(r[0]):.2f},{py(r[3]):.2f}" for r in rows)
        + " "
        + " ".join(f"{px(r[0]):.2f},{py(r[2]):.2f}" for r in reversed(rows))
    )

    xticks = []
    for k in range(5):
        n = x0 + k * (x1 - x0) / 4.0
        xticks.append(
            f'<line x1="{px(n):.2f}" y1="{height-mb:.2f}" x2="{px(n):.2f}" y2="{height-mb+5:.2f}" stroke="black"/>'
            f'<text x="{px(n):.2f}" y="{height-mb+20:.2f}" font-size="12" text-anchor="middle">{n:.2f}</text>'
        )
    yticks = []
    for k in range(6):
        lam = y0 + k * (y1 - y0) / 5.0
        yticks.append(
            f'<line x1="{ml-5:.2f}" y1="{py(lam):.2f}" x2="{ml:.2f}" y2="{py(lam):.2f}" stroke="black"/>'
            f'<text x="{ml-9:.2f}" y="{py(lam)+4:.2f}" font-size="12" text-anchor="end">{lam:.3g}</text>'
        )

    return f"""<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 800 600">
<rect width="800" height="600" fill="white"/>
<polygon points="{band}" fill="#bbbbbb" fill-opacity="0.55" stroke="none"/>
<polyline points="{poly(2)}" fill="none" stroke="black" stroke-width="1.5" stroke-dasharray="2,4"/>
<polyline points="{poly(3)}" fill="none" stroke="black" stroke-width="1.5" stroke-dasharray="8,6"/>
<polyline points="{poly(4)}" fill="none" stroke="black" stroke-width="1.8"/>
<line x1="{ml}" y1="{height-mb}" x2="{width-mr}" y2="{height-mb}" stroke="black"/>
<line x1="{ml}" y1="{mt}" x2="{ml}" y2="{height-mb}" stroke="black"/>
{''.join(xticks)}
{''.join(yticks)}
<text x="{(ml+width-mr)/2:.2f}" y="{height-10:.2f}" font-size="14" text-anchor="middle">n</text>
<text x="18" y="{(mt+height-mb)/2:.2f}" font-size="14" text-anchor="middle" transform="rotate(-90 18 {(mt+height-mb)/2:.2f})">lambda</text>
<text x="{width-mr-10:.2f}" y="{mt+18:.2f}" font-size="12" text-anchor="end">solid: lambda_1   dashed: gap top   dotted: n(n-2)/4   shaded: gap</text>
</svg>
"""


def cmd_sweep(args) -> int:
    if not (2.0 < args.n_min <= args.n_max < 4.0):
        raise ValueError(f"need 2 < n_min <= n_max < 4, got [{args.n_min}, {args.n_max}]")
    if args.n_step <= 0:
        raise ValueError("n-step must be positive")
    count = int(round((args.n_max - args.n_min) / args.n_step))
    ns = [args.n_min + k * args.n_step for k in range(count + 1)]
    ns = [n for n in ns if n <= args.n_max + 1e-12]
    tasks = [(n, args.theta1) for n in ns]

    jobs = args.jobs if args.jobs is not None else (os.cpu_count() or 1)
    try:
        if jobs > 1:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                rows = list(pool.map(_sweep_row, tasks))
        else:
            rows = [_sweep_row(t) for t in tasks]
        for r in rows:
            if not r[2] < r[3] < r[4]:
                raise NumericsError(f"threshold ordering failed at n={r[0]}")
    except Exception:
        for path in (args.out_csv, args.out_svg):
            if path and os.path.exists(path):
                os.remove(path)
        raise

    with open(args.out_csv, "w", newline="") as fh:
        fh.write(SWEEP_CSV_HEADER + "\n")
        for r in rows:
            fh.write(",".join(_fmt(x) for x in r) + "\n")
    if args.out_svg:
        with open(args.out_svg, "w") as fh:
            fh.write(_svg_band_plot(rows))
    print(f"wrote {len(rows)} rows to {args.out_csv}")
    return 0


def cmd_solve(args) -> int:
    params = ProblemParams(args.n, args.theta1)
    outcome = shoot(params, args.lam)
    if outcome.kind == "Solution":
        prof = outcome.profile
        with open(args.out_csv, "w", newline="") as fh:
            fh.write("theta,u,du\n")
            for th, u, du in zip(prof.thetas, prof.values, prof.dvalues):
                fh.write(f"{_fmt_full(th)},{_fmt_full(u)},{_fmt_full(du)}\n")
        q = rayleigh_quotient(prof, params, args.lam)
        sn = sobolev_constant(params.n)
        print(f"u0={_fmt(prof.u0)}")
        print(f"residual={_fmt(prof.residual_max)}")
        print(f"Q={_fmt(q)}")
        print(f"S_n={_fmt(sn)}")
        return 0
    print("no-solution")
    print("u0 first_zero")
    for u0, zeta in outcome.evidence:
        print(f"{_fmt(u0)} {'none' if zeta is None else _fmt(zeta)}")
    return 0


def cmd_verify(args) -> int:
    params = ProblemParams(args.n, args.theta1)
    overrides = {}
    for item in args.tol or []:
        name, _, value = item.partition("=")
        if name not in DEFAULT_TOLERANCES or not value:
            raise ValueError(
                f"unknown tolerance {item!r}; names: {', '.join(sorted(DEFAULT_TOLERANCES))}"
            )
        overrides[name] = float(value)
    reports = run_suite(params, tolerances=overrides or None)
    all_pass = True
    for r in reports:
        print(f"{r.name} {_fmt(r.max_residual)} {r.verdict}")
        all_pass &= r.verdict == "pass"
    return 0 if all_pass else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hypgap",
        description="Solution gap of the critical-exponent problem on hyperbolic balls",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gap", help="lambda thresholds for one (n, theta1)")
    p.add_argument("--n", type=float, required=True)
    p.add_argument("--theta1", type=float, required=True)
    p.add_argument("--tol", type=float, default=None,
                   help="boundary-matching tolerance for the L searches (default 1e-10)")
    p.set_defaults(func=cmd_gap)

    p = sub.add_parser("sweep", help="thresholds over an n range, CSV/SVG output")
    p.add_argument("--theta1", type=float, required=True)
    p.add_argument("--n-min", type=float, default=2.1)
    p.add_argument("--n-max", type=float, default=3.9)
    p.add_argument("--n-step", type=float, default=0.1)
    p.add_argument("--out-csv", default="sweep.csv")
    p.add_argument("--out-svg", default=None)
    p.add_argument("--jobs", type=int, default=None, help="parallel workers (default: all cores)")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("solve", help="shoot the nonlinear problem at one lambda")
    p.add_argument("--n", type=float, required=True)
    p.add_argument("--theta1", type=float, required=True)
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--out-csv", default="profile.csv")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="run the structural-identity check suite")
    p.add_argument("--n", type=float, required=True)
    p.add_argument("--theta1", type=float, required=True)
    p.add_argument("--tol", action="append", metavar="NAME=VALUE",
                   help="override one check tolerance (repeatable)")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (RejectedLambda, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NumericsError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3
    except ArithmeticError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
