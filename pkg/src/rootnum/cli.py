"""Command-line front end.

Exit status: 0 on success, 1 on bad input or an exhausted factoring budget,
2 when a verification step fails.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .exactq import DomainError, FactorizationIncomplete, format_rational, parse_rational
from .curve import format_point

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_VERIFY = 2

DEFAULT_VERIFY_SAMPLES = ("2", "6", "7", "9/16", "16/9", "1/7", "-3/5", "25/144")


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse would exit 2, which is reserved
        self.print_usage(sys.stderr)
        self.exit(EXIT_DOMAIN, f"{self.prog}: error: {message}\n")


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except DomainError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="rootnum", description="Root numbers and rational right triangles for y^2 = x(x+1)(x+t^2).")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def bound_args(p: argparse.ArgumentParser, den: int, num: int) -> None:
        p.add_argument("--max-den", type=_positive_int, default=den, help="largest e in x = m/e^2")
        p.add_argument("--max-num", type=_positive_int, default=num, help="bound on |m|/e^2")

    p = sub.add_parser("root-number", help="global and local root numbers of E_t")
    p.add_argument("t", type=_rational)
    p.add_argument("--method", choices=("closed", "local", "both"), default="both")

    p = sub.add_parser("classify", help="classify solutions of 1+a^2=b^2, t^2+a^2=c^2")
    p.add_argument("t", type=_rational)
    bound_args(p, 4, 100)
    p.add_argument("--strict", action="store_true", help="report Unresolved instead of rank-0 verdicts")
    p.add_argument("--json", action="store_true", help="print the report as JSON")

    p = sub.add_parser("triangles", help="list triangle solutions from a point of infinite order")
    p.add_argument("t", type=_rational)
    p.add_argument("--count", type=_positive_int, default=1)
    bound_args(p, 4, 100)

    p = sub.add_parser("search", help="enumerate rational points of E_t within a height bound")
    p.add_argument("t", type=_rational)
    bound_args(p, 4, 100)
    p.add_argument("--jobs", type=_positive_int, default=1)

    p = sub.add_parser("density", help="fraction of t in T up to height X")
    p.add_argument("X", type=_positive_int)
    p.add_argument("--csv", dest="csv_path", help="also write one CSV row per t")
    p.add_argument("--jobs", type=_positive_int, default=1)

    p = sub.add_parser("verify", help="consistency sweep, Gusic-Tadic table, torsion tables")
    p.add_argument("X", type=_positive_int)
    p.add_argument("--jobs", type=_positive_int, default=1)
    return parser


def _bound(args):
    from .search import SearchBound

    return SearchBound(args.max_den, args.max_num)


def _cmd_root_number(args) -> int:
    from .rootnumber import render_report, root_number_report

    print(render_report(root_number_report(args.t), args.method))
    return EXIT_OK


def _cmd_classify(args) -> int:
    from .triangles import classify

    result = classify(args.t, _bound(args), strict=args.strict)
    if args.json:
        print(json.dumps(result.to_dict(), indent=2))
        return EXIT_OK
    print(f"t = {format_rational(result.t)}")
    tag = " (conditional)" if result.conditional else ""
    print(f"verdict: {result.verdict}{tag}")
    if result.witness is not None:
        print(f"witness: {format_point(result.witness)} (infinite order)")
    if result.triple is not None:
        print(f"solution: {result.triple}{tag}")
    if result.bound is not None:
        print(f"search bound: max_den={result.bound.max_den} max_num={result.bound.max_num}")
    if result.root_number is not None:
        print(f"root number W(E_t) = {result.root_number:+d}")
    for flag in result.conditional_flags:
        print(flag)
    return EXIT_OK


def _cmd_triangles(args) -> int:
    from .search import rank_witness, solutions_stream

    witness = rank_witness(args.t, _bound(args))
    if witness is None:
        print(f"no point of infinite order within max_den={args.max_den} max_num={args.max_num}")
        print("this does not prove rank 0")
        return EXIT_OK
    for triple in solutions_stream(args.t, witness, args.count):
        print(triple)
    return EXIT_OK


def _cmd_search(args) -> int:
    from .search import find_points

    for P in find_points(args.t, _bound(args), jobs=args.jobs):
        print(format_point(P))
    return EXIT_OK


def _cmd_density(args) -> int:
    from .experiments import density_scan, write_csv

    report = density_scan(args.X, jobs=args.jobs)
    print(f"X = {report.X}")
    print(f"parameters: {report.total_rationals}")
    print(f"in T: {report.in_T_count}")
    print(f"fraction: {format_rational(report.fraction)} ~ {float(report.fraction):.4f}")
    print(f"average root number: {format_rational(report.avg_root_number)} ~ {float(report.avg_root_number):.4f}")
    if args.csv_path:
        rows = write_csv(args.X, args.csv_path, jobs=args.jobs)
        print(f"wrote {rows} rows to {args.csv_path}")
    return EXIT_OK


def _cmd_verify(args) -> int:
    from .experiments import consistency_sweep, gusic_tadic_check, torsion_table_check

    ok = True
    sweep = consistency_sweep(args.X, jobs=args.jobs)
    if sweep.passed:
        print(f"consistency sweep X={args.X}: PASS ({sweep.checked} parameters)")
    else:
        what, t = sweep.first_mismatch
        print(f"consistency sweep X={args.X}: FAIL at t = {format_rational(t)}: {what}")
        ok = False
    gt = gusic_tadic_check()
    print(gt.render())
    ok &= gt.passed
    for check in torsion_table_check([parse_rational(s) for s in DEFAULT_VERIFY_SAMPLES]):
        ext = ", order-8 extension" if check.order8_extension else ""
        status = "PASS" if check.passed else "FAIL " + "; ".join(check.problems)
        print(f"torsion t={format_rational(check.t)}: {status}{ext}")
        ok &= check.passed
    return EXIT_OK if ok else EXIT_VERIFY


_COMMANDS = {
    "root-number": _cmd_root_number,
    "classify": _cmd_classify,
    "triangles": _cmd_triangles,
    "search": _cmd_search,
    "density": _cmd_density,
    "verify": _cmd_verify,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (DomainError, FactorizationIncomplete) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
