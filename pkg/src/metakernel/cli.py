"""Command-line entry point.

    metakernel run FILE [--samples N] [--seed S] [--trace] [--report PATH]
    metakernel selftest [--seed S] [--scale F] [--suite NAME ...]

Exit status: 0 clean, 1 violations (or a failed suite), 2 usage or parse
error, 3 a prove-bounds goal was not proved (and nothing was violated).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .core import ParseError, TermError
from .eval import KERNEL
from .events import DEFAULT_SAMPLES, EventError, RunOptions, run_text
from .properties import SUITES, run_all

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_UNPROVED = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="metakernel", description="Run event files and self-tests.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    r = sub.add_parser("run", help="process an event file and check every obligation")
    r.add_argument("file")
    r.add_argument("--samples", type=int, default=DEFAULT_SAMPLES,
                   help="environments per obligation (default %(default)s)")
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--trace", action="store_true", help="print every rule application")
    r.add_argument("--report", metavar="PATH", help="write the full report to PATH")

    s = sub.add_parser("selftest", help="run the property suites")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--scale", type=float, default=1.0, help="multiply case counts")
    s.add_argument("--suite", action="append", choices=sorted(SUITES),
                   help="run only this suite (repeatable)")
    return p


def cmd_run(args) -> int:
    if args.samples < 1:
        print("metakernel: --samples must be positive", file=sys.stderr)
        return EXIT_USAGE
    try:
        text = Path(args.file).read_text()
    except OSError as e:
        print(f"metakernel: {e}", file=sys.stderr)
        return EXIT_USAGE
    print(f"seed: {args.seed}")
    opts = RunOptions(samples=args.samples, seed=args.seed, trace=args.trace, out=print)
    try:
        report = run_text(text, opts)
    except ParseError as e:
        print(f"{args.file}: parse error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (EventError, TermError) as e:
        print(f"{args.file}: {e}", file=sys.stderr)
        return EXIT_USAGE
    for line in report.summary():
        print(line)
    if args.report:
        Path(args.report).write_text(report.text())
    return report.exit_code


def cmd_selftest(args) -> int:
    print(f"seed: {args.seed}  kernel: {KERNEL}")
    failed = 0
    for res in run_all(args.seed, args.scale, args.suite):
        print(res.line())
        failed += not res.passed
    print(f"{failed} suite(s) failed")
    return EXIT_VIOLATION if failed else EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "run":
        return cmd_run(args)
    return cmd_selftest(args)


if __name__ == "__main__":
    sys.exit(main())
