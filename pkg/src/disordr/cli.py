"""Command line entry points: ``disord-calc`` and ``disord-fuzz``."""

from __future__ import annotations

import argparse
import sys

from .interpreter import repl, run_script
from .storage import parse_storage_order


def _storage_arg(text):
    try:
        return parse_storage_order(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def calc_main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="disord-calc",
        description="Run disordered-vector and polynomial session scripts.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    run = sub.add_parser("run", help="execute a script file")
    run.add_argument("file", help="script path, or - for standard input")
    interactive = sub.add_parser("repl", help="interactive session")
    for p in (run, interactive):
        p.add_argument(
            "--storage-order",
            type=_storage_arg,
            default="insertion",
            metavar="insertion|shuffle:<seed>",
            help="layout used for every new disord and polynomial (default: insertion)",
        )
    args = parser.parse_args(argv)

    if args.command == "repl":
        return repl(args.storage_order)

    if args.file == "-":
        source = sys.stdin.read()
    else:
        try:
            with open(args.file, encoding="utf-8") as fh:
                source = fh.read()
        except OSError as exc:
            print(f"disord-calc: {exc}", file=sys.stderr)
            return 2
    result = run_script(source, args.storage_order)
    for record in result.records:
        stream = sys.stdout if record.stream == "out" else sys.stderr
        print(record.text, file=stream)
    return result.status


def fuzz_main(argv=None) -> int:
    from .fuzz import run_campaign

    parser = argparse.ArgumentParser(
        prog="disord-fuzz",
        description="Check that generated programs give the same admissible answers "
        "under every storage order.",
    )
    parser.add_argument("--programs", type=int, default=1000, help="number of programs")
    parser.add_argument("--trials", type=int, default=4, help="storage orders per program (>= 2)")
    parser.add_argument("--seed", type=int, default=0, help="seed of the first program")
    parser.add_argument("--jobs", type=int, default=1, help="worker processes")
    args = parser.parse_args(argv)
    if args.trials < 2:
        parser.error("--trials must be at least 2")

    outcome = run_campaign(range(args.seed, args.seed + args.programs), args.trials, jobs=args.jobs)
    if outcome.passed:
        print(f"PASS {outcome.programs}")
        return 0
    failure = outcome.failure
    print(f"FAIL {failure.seed} {failure.line}")
    if failure.detail:
        print(failure.detail, file=sys.stderr)
    return 1


if __name__ == "__main__":
    sys.exit(calc_main())
