"""Command line entry point: ``cpair check`` and ``cpair fmt``."""

import argparse
import sys

from .dsl import parse, serialize
from .errors import ParseError
from .runner import Report, RunOptions, StrictAbort, run

EXIT_PASS, EXIT_FAIL, EXIT_ERROR = 0, 1, 2


def _read(path):
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _parse_error_report(path, exc):
    return Report(path, error={"type": exc.kind, "message": exc.detail,
                               "line": exc.line, "column": exc.col})


def _emit(report, as_json, out):
    out.write(report.to_json() if as_json else report.to_text())


def cmd_check(args, out):
    try:
        text = _read(args.file)
    except OSError as exc:
        print(f"cpair: cannot read {args.file}: {exc.strerror}", file=sys.stderr)
        return EXIT_ERROR
    try:
        doc = parse(text)
    except ParseError as exc:
        report = _parse_error_report(args.file, exc)
        if args.json:
            _emit(report, True, out)
        else:
            print(f"{args.file}:{exc.line}:{exc.col}: {exc}", file=sys.stderr)
        return EXIT_ERROR
    options = RunOptions(max_tensors=args.max_tensors, seed=args.seed, strict=args.strict)
    try:
        report = run(doc, options, file=args.file)
    except StrictAbort as abort:
        _emit(abort.report, args.json, out)
        return EXIT_ERROR
    _emit(report, args.json, out)
    return report.exit_code


def cmd_fmt(args, out):
    try:
        text = _read(args.file)
    except OSError as exc:
        print(f"cpair: cannot read {args.file}: {exc.strerror}", file=sys.stderr)
        return EXIT_ERROR
    try:
        out.write(serialize(parse(text)))
    except ParseError as exc:
        print(f"{args.file}:{exc.line}:{exc.col}: {exc}", file=sys.stderr)
        return EXIT_ERROR
    return EXIT_PASS


def _positive(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def build_parser():
    parser = argparse.ArgumentParser(prog="cpair", description="Checks for C-pairs, covers and morphisms.")
    sub = parser.add_subparsers(dest="command", required=True)
    check = sub.add_parser("check", help="run the checks of a document")
    check.add_argument("file", help="input document, or - for stdin")
    check.add_argument("--json", action="store_true", help="emit the report as JSON")
    check.add_argument("--strict", action="store_true", help="stop at the first check error")
    check.add_argument("--max-tensors", type=_positive, default=None, metavar="N",
                       help="cap on enumerated basis tensors per sheaf")
    check.add_argument("--seed", type=int, default=0, metavar="S", help="seed for randomized sweeps")
    check.set_defaults(handler=cmd_check)
    fmt = sub.add_parser("fmt", help="print the canonical form of a document")
    fmt.add_argument("file", help="input document, or - for stdin")
    fmt.set_defaults(handler=cmd_fmt)
    return parser


def main(argv=None, out=None):
    args = build_parser().parse_args(argv)
    return args.handler(args, out or sys.stdout)


if __name__ == "__main__":
    sys.exit(main())
