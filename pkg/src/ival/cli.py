"""Command line front end.

eval prints the value of one expression; exit code 0 for a nonempty
result, 2 for Empty, 1 for a syntax error.  exhaust sweeps a miniature
format against the oracle, writes one JSON record per line, and exits 1
if any pair disagrees, so it can gate a build.
"""

import argparse
import json
import sys

from . import __version__
from .expr import ParseError, evaluate, parse
from .fpkernel import FloatFormat
from .oracle import tiny_format
from .ops import format_div_result
from .sweep import OPS, run_sweep


def _eval_cmd(args) -> int:
    text = args.expr
    if text is None or text == "-":
        text = sys.stdin.read()
    try:
        node = parse(text)
    except ParseError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    res = evaluate(node, split_div=args.split_div,
                   warn=lambda m: print(f"warning: {m}", file=sys.stderr))
    union = "U" if args.ascii else "∪"
    print(format_div_result(res, hexmode=args.hex, union=union))
    return 2 if res.is_empty else 0


def _exhaust_cmd(args) -> int:
    try:
        fmt = tiny_format(args.p, args.emin, args.emax)
        fmt.finite_positive()
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    ops = OPS if args.op == "all" else (args.op,)

    def progress(rep):
        state = "ok" if rep.passed else "FAIL"
        print(f"{rep.op}: {rep.pairs} pairs, {rep.mismatches} mismatches, "
              f"{rep.elapsed:.1f}s [{state}]", file=sys.stderr)

    report = run_sweep(fmt, ops=ops, progress=progress)
    out = open(args.report, "w") if args.report else sys.stdout
    try:
        for record in report.records():
            print(json.dumps(record), file=out)
    finally:
        if out is not sys.stdout:
            out.close()
    if args.figures:
        from .report import save_figures

        for path in save_figures(report, args.figures):
            print(f"wrote {path}", file=sys.stderr)
    return 0 if report.passed else 1


def _build_parser():
    ap = argparse.ArgumentParser(
        prog="ival",
        description="closed interval arithmetic that never traps",
    )
    ap.add_argument("--version", action="version", version=f"ival {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    ev = sub.add_parser("eval", help="evaluate an interval expression")
    ev.add_argument("expr", nargs="?",
                    help="expression; '-' or omitted reads stdin")
    ev.add_argument("--split-div", action="store_true",
                    help="keep two-part division results instead of hulling")
    ev.add_argument("--hex", action="store_true",
                    help="print bounds as hexadecimal float literals")
    ev.add_argument("--ascii", action="store_true",
                    help="use 'U' instead of the union sign")
    ev.set_defaults(fn=_eval_cmd)

    ex = sub.add_parser("exhaust",
                        help="sweep every interval pair of a small format")
    ex.add_argument("--p", type=int, default=3,
                    help="significand bits (default 3)")
    ex.add_argument("--emin", type=int, default=-2,
                    help="least normal exponent (default -2)")
    ex.add_argument("--emax", type=int, default=2,
                    help="greatest exponent (default 2)")
    ex.add_argument("--op", choices=OPS + ("all",), default="all")
    ex.add_argument("--report", metavar="FILE",
                    help="write JSON lines here instead of stdout")
    ex.add_argument("--figures", metavar="DIR",
                    help="also render summary figures into DIR")
    ex.set_defaults(fn=_exhaust_cmd)
    return ap


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
