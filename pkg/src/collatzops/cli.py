"""Command-line front end: sigma tables, verification suites, operator
application on series files, resolvent construction, and the
complex-exponent orbit experiment.

Exit codes: 0 all checks passed, 1 verification failure, 2 usage or file
format error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .coeffs import parse_exact
from .collatz import default_cap, sigma_sweep
from .operators import (
    GenMonomialSum,
    OperatorKind,
    apply_T_genmonomial,
    operator_power,
)
from .report import save_reports, summarize
from .resolvent import PhiSpec, build_resolvent
from .series import load_series, save_biseries, save_series
from .suites import SUITES, SuiteOptions, run_suites

ORBIT_L2_TOL = 1e-9


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="collatzops",
        description="Exact checks for the Collatz coefficient operators.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_sigma = sub.add_parser("sigma", help="tabulate total stopping times")
    p_sigma.add_argument("--max", type=int, required=True, dest="n_max")
    p_sigma.add_argument("--cap", type=int, default=None)
    p_sigma.add_argument("--format", choices=("csv", "structured"), default="csv")
    p_sigma.add_argument("--out", default=None, help="write here instead of stdout")

    p_verify = sub.add_parser("verify", help="run a named verification suite")
    p_verify.add_argument(
        "--suite", required=True,
        help="suite name, 'all', or a comma-separated list",
    )
    p_verify.add_argument("--degree", type=int, default=None)
    p_verify.add_argument(
        "--lambda", dest="lam", default=None,
        help="exact rational-complex value, e.g. 1/2 or 1/2+1/2i",
    )
    p_verify.add_argument("--tol", type=float, default=None)
    p_verify.add_argument("--seed", type=int, default=None)
    p_verify.add_argument("--cap", type=int, default=None)
    p_verify.add_argument("--band-limit", type=int, default=32)
    p_verify.add_argument("--grid-size", type=int, default=256)
    p_verify.add_argument("--jobs", type=int, default=1)
    p_verify.add_argument("--report", default=None, help="write a JSON report here")

    p_apply = sub.add_parser("apply", help="apply an operator to a series file")
    p_apply.add_argument("--op", required=True, choices=("T", "F", "L", "B", "Sinv"))
    p_apply.add_argument("--input", required=True)
    p_apply.add_argument("--out", required=True)
    p_apply.add_argument("--power", type=int, default=1)
    p_apply.add_argument("--quotient", action="store_true",
                         help="project exponents <= 2 out after application")

    p_res = sub.add_parser("resolvent", help="build a resolvent rectangle")
    p_res.add_argument("--phi", required=True, choices=("delta1", "identity"))
    p_res.add_argument("--nz", type=int, required=True)
    p_res.add_argument("--nw", type=int, required=True)
    p_res.add_argument("--out", required=True)

    p_orbit = sub.add_parser("orbit", help="iterate on a complex-exponent monomial")
    p_orbit.add_argument("--alpha", required=True,
                         help="rational exponent, e.g. 1/3")
    p_orbit.add_argument("--steps", type=int, required=True)

    return parser


def cmd_sigma(args) -> int:
    if args.n_max < 1:
        print("sigma: --max must be at least 1", file=sys.stderr)
        return 2
    cap = args.cap if args.cap is not None else default_cap()
    if cap < 1:
        print("sigma: --cap must be positive", file=sys.stderr)
        return 2
    sigma = sigma_sweep(args.n_max, cap)
    rows = [
        (n, sigma[n] if sigma[n] >= 0 else "UNRESOLVED")
        for n in range(1, args.n_max + 1)
    ]
    if args.format == "csv":
        lines = ["n,sigma_inf"]
        lines += [f"{n},{s}" for n, s in rows]
        text = "\n".join(lines) + "\n"
    else:
        payload = {
            "cap": cap,
            "max": args.n_max,
            "rows": [[n, s] for n, s in rows],
        }
        text = json.dumps(payload, sort_keys=True) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_verify(args) -> int:
    if args.suite == "all":
        names = sorted(SUITES)
    else:
        names = [s.strip() for s in args.suite.split(",") if s.strip()]
    unknown = [n for n in names if n not in SUITES]
    if unknown or not names:
        print(
            f"verify: unknown suite(s) {unknown or args.suite!r}; "
            f"choose from {', '.join(sorted(SUITES))} or 'all'",
            file=sys.stderr,
        )
        return 2
    opts = SuiteOptions(
        degree=args.degree,
        tol=args.tol,
        cap=args.cap,
        band_limit=args.band_limit,
        grid_size=args.grid_size,
    )
    if args.seed is not None:
        opts.seed = args.seed
    if args.lam is not None:
        try:
            opts.lam = parse_exact(args.lam)
        except ValueError as exc:
            print(f"verify: {exc}", file=sys.stderr)
            return 2
    results = run_suites(names, opts, jobs=args.jobs)
    reports = [r for _, suite_reports in results for r in suite_reports]
    for r in reports:
        print(r.line())
    summary = summarize(reports)
    print(
        f"summary: {summary['pass']} passed, {summary['fail']} failed, "
        f"{summary['skipped']} skipped"
    )
    if args.report:
        save_reports(reports, args.report)
    return 0 if summary["fail"] == 0 else 1


def cmd_apply(args) -> int:
    try:
        series = load_series(args.input)
    except (OSError, ValueError, KeyError, TypeError, json.JSONDecodeError) as exc:
        print(f"apply: cannot read series file {args.input}: {exc}", file=sys.stderr)
        return 2
    if args.power < 0:
        print("apply: --power must be nonnegative", file=sys.stderr)
        return 2
    try:
        kind = OperatorKind(args.op, quotient=args.quotient)
    except ValueError as exc:
        print(f"apply: {exc}", file=sys.stderr)
        return 2
    result = operator_power(kind, args.power, series)
    try:
        save_series(result, args.out)
    except OSError as exc:
        print(f"apply: cannot write {args.out}: {exc}", file=sys.stderr)
        return 2
    return 0


def cmd_resolvent(args) -> int:
    phi = PhiSpec.delta_at(1) if args.phi == "delta1" else PhiSpec.identity()
    try:
        rectangle = build_resolvent(phi, args.nz, args.nw)
    except ValueError as exc:
        print(f"resolvent: {exc}", file=sys.stderr)
        return 2
    try:
        save_biseries(rectangle, args.out)
    except OSError as exc:
        print(f"resolvent: cannot write {args.out}: {exc}", file=sys.stderr)
        return 2
    return 0


def cmd_orbit(args) -> int:
    try:
        alpha = Fraction(args.alpha)
    except (ValueError, ZeroDivisionError) as exc:
        print(f"orbit: bad --alpha {args.alpha!r}: {exc}", file=sys.stderr)
        return 2
    if args.steps < 0:
        print("orbit: --steps must be nonnegative", file=sys.stderr)
        return 2
    state = GenMonomialSum.monomial(complex(alpha))
    # l2_split is the mass over the raw two-branch splits, which the
    # amplitude identity conserves exactly for real alpha; merging colliding
    # exponents afterwards interferes, so the post-merge state mass
    # (l2_state) is reported separately and not checked.
    print("step terms l2_split l2_state re_min re_max im_max")
    ok = True
    for step in range(1, args.steps + 1):
        raw = split_genmonomial(state)
        l2_split = sum(abs(t.amplitude) ** 2 for t in raw)
        state = GenMonomialSum(raw)
        l2_state = state.l2_amplitude()
        re_min, re_max, im_max = state.exponent_spread()
        print(
            f"{step} {len(state)} {l2_split:.12f} {l2_state:.12f} "
            f"{re_min:.6f} {re_max:.6f} {im_max:.6f}"
        )
        if abs(l2_split - 1.0) > ORBIT_L2_TOL:
            ok = False
    if not ok:
        print("orbit: split amplitude mass drifted beyond tolerance", file=sys.stderr)
    return 0 if ok else 1


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "sigma": cmd_sigma,
        "verify": cmd_verify,
        "apply": cmd_apply,
        "resolvent": cmd_resolvent,
        "orbit": cmd_orbit,
    }
    return handlers[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
