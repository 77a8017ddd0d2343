"""Command line front end.

Subcommands: hilbert, mult-series, eval, solve, verify, asympt, report.
Exit codes: 0 success, 1 failed verification, 2 usage error.  All numeric
output is exact (integers and p/q fraction strings); the only rounded
numbers are ratio columns explicitly marked as display-only.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import trace44, verify
from .exprparse import ParseError, to_mpoly, to_ratfun
from .mpoly import mpoly_to_text, ratfun_to_text
from .multsolver import SolverError, SymmetricQuotient, solve_details
from .symfunc import Partition2


def _parse_lambda(text):
    try:
        l1, l2 = (int(part) for part in text.split(","))
        return Partition2(l1, l2)
    except (ValueError, TypeError) as exc:
        raise argparse.ArgumentTypeError(f"bad partition {text!r}: {exc}") from None


def _parse_scales(text):
    try:
        return tuple(int(s) for s in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad scale list {text!r}: {exc}") from None


def _parse_direction(text):
    try:
        a, b = (int(part) for part in text.split(","))
        return (a, b)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad direction {text!r}: {exc}") from None


def build_parser():
    parser = argparse.ArgumentParser(
        prog="tracemult",
        description=(
            "Exact multiplicity series, Schur multiplicities, and asymptotics "
            "for the trace algebras of two generic 4x4 matrices."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("hilbert", help="print a Hilbert series")
    p.add_argument("--kind", choices=["pure", "mixed"], required=True)
    p.add_argument("--form", choices=["factored", "expanded"], default="factored")
    p.add_argument("--format", choices=["text", "json"], default="text")

    p = sub.add_parser("mult-series", help="print a multiplicity series")
    p.add_argument("--kind", choices=["pure", "mixed"], required=True)
    p.add_argument("--source", choices=["stored", "solved"], default="stored")
    p.add_argument("--format", choices=["text", "json"], default="text")

    p = sub.add_parser("eval", help="evaluate multiplicities")
    p.add_argument("--kind", choices=["pure", "mixed"], required=True)
    p.add_argument("--lambda", dest="lam", type=_parse_lambda)
    p.add_argument("--grid", type=int, metavar="MAXDEG")
    p.add_argument("--format", choices=["text", "json", "csv"], default="text")

    p = sub.add_parser("solve", help="multiplicity series of a user expression")
    p.add_argument("--num-file", required=True, help="file with p(x, v)")
    p.add_argument("--q-file", required=True, help="file with q(x, v)")
    p.add_argument("--zfactor", help="file with the factor in v alone")
    p.add_argument("--format", choices=["text", "json"], default="text")

    p = sub.add_parser("verify", help="run a named verification check")
    p.add_argument("--check", choices=sorted(verify.CHECKS), required=True)
    p.add_argument("--degree", type=int, help="oracle truncation degree")
    p.add_argument("--scales", type=_parse_scales, help="comma-separated scales")

    p = sub.add_parser("asympt", help="asymptotic value at a partition")
    p.add_argument("--kind", choices=["pure", "mixed"], required=True)
    p.add_argument("--lambda", dest="lam", type=_parse_lambda, required=True)

    p = sub.add_parser("report", help="exact vs asymptotic convergence table")
    p.add_argument("--kind", choices=["pure", "mixed"], required=True)
    p.add_argument("--direction", type=_parse_direction, required=True)
    p.add_argument("--scales", type=_parse_scales, default=(64, 128, 256, 512))
    p.add_argument("--digits", type=int, default=6)

    return parser


def _cmd_hilbert(args):
    if args.form == "factored":
        num, den = trace44.hilbert_display(args.kind, "factored")
    else:
        num, den = trace44.hilbert_display(args.kind, "expanded")
    if args.format == "json":
        print(json.dumps({"kind": args.kind, "form": args.form, "num": num, "den": den}))
    else:
        print(f"({num})/({den})")
    return 0


def _cmd_mult_series(args):
    series = trace44.multiplicity_series(args.kind, args.source)
    if args.format == "json":
        print(
            json.dumps(
                {
                    "kind": args.kind,
                    "source": args.source,
                    "num": mpoly_to_text(series.num),
                    "den": mpoly_to_text(series.den),
                }
            )
        )
    else:
        print(ratfun_to_text(series))
    return 0


def _cmd_eval(args):
    if (args.lam is None) == (args.grid is None):
        print("eval: provide exactly one of --lambda or --grid", file=sys.stderr)
        return 2
    if args.lam is not None:
        m = trace44.multiplicity(args.kind, args.lam)
        if args.format == "json":
            print(json.dumps({"kind": args.kind, "lambda": list(args.lam.as_tuple()), "m": str(m)}))
        else:
            print(m)
        return 0
    table = trace44.multiplicity_grid(args.kind, args.grid)
    if args.format == "json":
        print(table.to_json())
    else:
        sys.stdout.write(trace44.grid_csv(table))
    return 0


def _cmd_solve(args):
    try:
        p = to_ratfun(_read(args.num_file)).as_mpoly()
        q = to_ratfun(_read(args.q_file)).as_mpoly()
        z = to_ratfun(_read(args.zfactor)) if args.zfactor else None
        shape = SymmetricQuotient(p, q, z)
        details = solve_details(shape)
    except (ParseError, SolverError, ValueError) as exc:
        print(f"solve: {exc}", file=sys.stderr)
        return 1
    series = details.series
    if args.format == "json":
        print(
            json.dumps(
                {
                    "num": mpoly_to_text(series.num),
                    "den": mpoly_to_text(series.den),
                    "numerator_t_degree": details.numerator_t_degree,
                }
            )
        )
    else:
        print(ratfun_to_text(series))
    return 0


def _read(path):
    with open(path, "r", encoding="utf-8") as handle:
        return handle.read()


def _cmd_verify(args):
    settings = verify.VerifySettings()
    if args.degree is not None:
        settings.oracle_degree = args.degree
    if args.scales is not None:
        settings.scales = args.scales
    result = verify.run_check(args.check, settings)
    print(json.dumps(result.to_dict(), indent=2))
    return 0 if result.ok else 1


def _cmd_asympt(args):
    value = trace44.asymptotic(args.kind, args.lam)
    out = {
        "kind": args.kind,
        "lambda": list(args.lam.as_tuple()),
        "region": value.region,
        "m1": str(value.m1),
        "m2": None if value.m2 is None else str(value.m2),
        "m3": None if value.m3 is None else str(value.m3),
        "total": str(value.total),
    }
    print(json.dumps(out))
    return 0


def _cmd_report(args):
    rows = trace44.asymptotic_convergence_report(args.kind, args.direction, args.scales)
    sys.stdout.write(trace44.report_csv(rows, args.digits))
    return 0


_DISPATCH = {
    "hilbert": _cmd_hilbert,
    "mult-series": _cmd_mult_series,
    "eval": _cmd_eval,
    "solve": _cmd_solve,
    "verify": _cmd_verify,
    "asympt": _cmd_asympt,
    "report": _cmd_report,
}


def run_command(argv):
    """Run one command line; returns the exit code instead of exiting."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return _DISPATCH[args.command](args)
    except (ParseError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main():
    raise SystemExit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
