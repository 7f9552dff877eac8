"""Command-line front-end.

    gradlogic parse [--ast] FORMULA
    gradlogic reduce [--trace] [--order deterministic|random:SEED] FORMULA
    gradlogic negate FORMULA
    gradlogic eval --frame FILE FORMULA
    gradlogic decide [--engine levelwise|faithful|oracle] [--witness] [--stats] FORMULA
    gradlogic dnf|cnf FORMULA
    gradlogic check-laws [--iters N] [--seed S] [--max-atoms A] [--max-depth D]

FORMULA is the formula text, ``-`` for stdin, or ``@path`` to read a file.
"""
from __future__ import annotations

import argparse
import sys
from typing import TextIO

from gradlogic.core import atoms
from gradlogic.decide import decide_valid
from gradlogic.laws import ATOM_NAMES, LawConfig, run_laws
from gradlogic.parser import ParseError, parse, to_interchange
from gradlogic.reduce import normal_form, recursive_reduce, reduce_to_uce, to_cnf, to_dnf
from gradlogic.semantics import DepthError, FrameFormatError, TooLargeError, classify_oracle, evaluate, frame_from_json

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_PARSE = 2
EXIT_EVAL = 3
EXIT_TOO_LARGE = 4
EXIT_USAGE = 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


def _order(value: str) -> tuple[str, int | None]:
    if value == "deterministic":
        return ("deterministic", None)
    kind, _, seed = value.partition(":")
    if kind == "random" and seed.lstrip("-").isdigit():
        return ("random", int(seed))
    raise argparse.ArgumentTypeError("expected 'deterministic' or 'random:<seed>'")


def _positive(value: str) -> int:
    n = int(value)
    if n < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return n


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="gradlogic", description="Gradual classical logic toolkit.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def with_input(name, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("formula", help="formula text, '-' for stdin, or @path")
        return sp

    sp = with_input("parse", "echo the parsed formula")
    sp.add_argument("--ast", action="store_true", help="print the JSON interchange tree")

    sp = with_input("reduce", "reduce to unit chain expansion")
    sp.add_argument("--trace", action="store_true", help="print one line per rewrite step")
    sp.add_argument("--order", type=_order, default=("deterministic", None), metavar="deterministic|random:SEED")

    with_input("negate", "canonical negation of the reduct")

    sp = with_input("eval", "evaluate under a frame file")
    sp.add_argument("--frame", required=True, help="frame file (JSON), or - for stdin")

    sp = with_input("decide", "decide validity")
    sp.add_argument("--engine", choices=("levelwise", "faithful", "oracle"), default="levelwise")
    sp.add_argument("--witness", action="store_true", help="print witness frames")
    sp.add_argument("--stats", action="store_true", help="print engine counters to stderr")

    with_input("dnf", "disjunctive normal form of the reduct")
    with_input("cnf", "conjunctive normal form of the reduct")

    sp = sub.add_parser("check-laws", help="run the randomised property suites")
    sp.add_argument("--iters", type=_positive, default=100)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--max-atoms", type=_positive, default=3)
    sp.add_argument("--max-depth", type=int, default=2)
    return p


def _read_input(source: str, stdin: TextIO) -> str:
    if source == "-":
        return stdin.read()
    if source.startswith("@"):
        try:
            with open(source[1:], encoding="utf-8") as fh:
                return fh.read()
        except OSError as exc:
            raise UsageError(f"gradlogic: cannot read {source[1:]}: {exc.strerror}") from None
    return source


def run(argv: list[str], stdin: TextIO | None = None, stdout: TextIO | None = None, stderr: TextIO | None = None) -> int:
    stdin = stdin or sys.stdin
    out = stdout or sys.stdout
    err = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if args.command == "check-laws":
            if args.max_depth < 0 or args.max_atoms > len(ATOM_NAMES):
                raise UsageError(
                    f"gradlogic check-laws: error: need --max-depth >= 0 and --max-atoms <= {len(ATOM_NAMES)}"
                )
            return _check_laws(args, out)
        text = _read_input(args.formula, stdin)
        f = parse(text)
    except UsageError as exc:
        print(exc, file=err)
        return EXIT_USAGE
    except ParseError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_PARSE
    return _COMMANDS[args.command](args, f, stdin, out, err)


def _cmd_parse(args, f, stdin, out, err):
    print(to_interchange(f) if args.ast else str(f), file=out)
    return EXIT_OK


def _cmd_reduce(args, f, stdin, out, err):
    strategy, seed = args.order
    trace = reduce_to_uce(f, strategy, seed=seed)
    if args.trace:
        for line in trace.render():
            print(line, file=out)
    print(trace.final, file=out)
    return EXIT_OK


def _cmd_negate(args, f, stdin, out, err):
    print(recursive_reduce(normal_form(f)), file=out)
    return EXIT_OK


def _cmd_eval(args, f, stdin, out, err):
    g = normal_form(f)
    try:
        if args.frame == "-":
            text = stdin.read()
        else:
            with open(args.frame, encoding="utf-8") as fh:
                text = fh.read()
        frame = frame_from_json(text, atoms(g))
        value = evaluate(frame, g)
    except OSError as exc:
        print(f"error: cannot read frame {args.frame}: {exc.strerror}", file=err)
        return EXIT_EVAL
    except (DepthError, FrameFormatError) as exc:
        print(f"error: {exc.code}: {exc}", file=err)
        return EXIT_EVAL
    print(value, file=out)
    return EXIT_OK


def _cmd_decide(args, f, stdin, out, err):
    if args.engine == "oracle":
        try:
            verdict = classify_oracle(f)
        except TooLargeError as exc:
            print(f"error: {exc.code}: {exc}", file=err)
            return EXIT_TOO_LARGE
        print(verdict.kind, file=out)
        if args.witness:
            if verdict.witness_true is not None:
                print(f"true: {verdict.witness_true.to_json()}", file=out)
            if verdict.witness_false is not None:
                print(f"false: {verdict.witness_false.to_json()}", file=out)
        return EXIT_OK if verdict.valid else EXIT_INVALID

    report = decide_valid(f, args.engine)
    print("valid" if report.valid else "invalid", file=out)
    if args.witness:
        if report.witness_false is not None:
            print(f"false: {report.witness_false.to_json()}", file=out)
        elif not report.valid:
            print("note: the faithful engine does not produce witnesses", file=err)
    if args.stats:
        print(
            f"engine={report.engine} frames_examined={report.frames_examined} "
            f"recursion_depth_max={report.recursion_depth_max}",
            file=err,
        )
    return EXIT_OK if report.valid else EXIT_INVALID


def _cmd_dnf(args, f, stdin, out, err):
    print(to_dnf(normal_form(f)), file=out)
    return EXIT_OK


def _cmd_cnf(args, f, stdin, out, err):
    print(to_cnf(normal_form(f)), file=out)
    return EXIT_OK


def _check_laws(args, out) -> int:
    cfg = LawConfig(max_atoms=args.max_atoms, max_depth=args.max_depth)
    results = run_laws(args.iters, args.seed, cfg)
    for res in results:
        status = "PASS" if res.ok else "FAIL"
        print(f"{status} {res.name} {res.passed}/{res.passed + res.failed}", file=out)
        for ex in res.examples:
            print(f"  counterexample: {ex}", file=out)
    failed = sum(1 for r in results if not r.ok)
    print(f"{len(results) - failed} passed, {failed} failed", file=out)
    return EXIT_OK if failed == 0 else EXIT_INVALID


_COMMANDS = {
    "parse": _cmd_parse,
    "reduce": _cmd_reduce,
    "negate": _cmd_negate,
    "eval": _cmd_eval,
    "decide": _cmd_decide,
    "dnf": _cmd_dnf,
    "cnf": _cmd_cnf,
}


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
