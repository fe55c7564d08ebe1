"""Command-line interface: ``heunfact {factorize,tables,verify,adjoint}``.

Exit codes: 0 success, 1 verification or table mismatch, 2 invalid input,
3 when some splitting produced a singular linear system.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from heunfact.errors import HeunFactError
from heunfact.factorization import SINGULAR, factorize_all
from heunfact.report import (
    FORMATS,
    ProblemFile,
    build_adjoint_document,
    build_document,
    compare_table,
    load_problem,
    render,
    verify_path,
)

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_INVALID = 2
EXIT_SINGULAR = 3


def _csv(text: str) -> list[str]:
    return [part.strip() for part in text.split(",") if part.strip()]


def _add_family_flags(p: argparse.ArgumentParser):
    p.add_argument("--problem", metavar="PATH", help="JSON problem file (replaces the family flags)")
    p.add_argument("--k", type=int, help="number of extra finite singularities a_1..a_k")
    p.add_argument("--sing", metavar="CSV", help="a_1..a_k (or all k+2 points) as expressions")
    p.add_argument("--lame", action="store_true", help="all exponent parameters equal to 1/2")
    p.add_argument("--gamma", metavar="EXPR")
    p.add_argument("--delta", metavar="EXPR")
    p.add_argument("--eps", metavar="CSV", help="eps_1..eps_k")
    p.add_argument("--include-trivial", action="store_true",
                   help="also report the two extreme splittings")
    p.add_argument("--allow-coincident", action="store_true",
                   help="accept repeated singularities (degenerate systems then exit 3)")
    p.add_argument("--format", choices=FORMATS, default=None)
    p.add_argument("--out", metavar="PATH", help="write the document here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="heunfact",
        description="Exact factorization of generalized Heun and Lame operators.")
    sub = parser.add_subparsers(dest="command", required=True)

    fac = sub.add_parser("factorize", help="factorize every splitting of a family")
    _add_family_flags(fac)

    tab = sub.add_parser("tables", help="recompute a golden table and compare it")
    tab.add_argument("--id", type=int, required=True, dest="table_id")

    ver = sub.add_parser("verify", help="audit a problem file or a result document")
    ver.add_argument("path")

    adj = sub.add_parser("adjoint", help="factorize the Lagrange adjoint of every splitting")
    _add_family_flags(adj)
    adj.add_argument("--twice", action="store_true",
                     help="apply the adjoint twice (recovers the original factorizations)")
    return parser


class UsageError(Exception):
    pass


def problem_from_args(args) -> ProblemFile:
    if args.problem:
        problem = load_problem(args.problem)
        if args.include_trivial:
            problem.include_trivial = True
        return problem
    if args.k is None or args.sing is None:
        raise UsageError("either --problem or both --k and --sing are required")
    sing = _csv(args.sing)
    if args.lame:
        if args.gamma or args.delta or args.eps:
            raise UsageError("--lame cannot be combined with --gamma/--delta/--eps")
        exps: str | list[str] = "lame"
    elif args.gamma is None and args.delta is None and args.eps is None:
        # no exponent flags at all: the Lame family is the natural default
        exps = "lame"
    else:
        if args.gamma is None or args.delta is None or args.eps is None:
            raise UsageError("--gamma, --delta and --eps must be given together")
        eps = _csv(args.eps)
        if len(eps) != args.k:
            raise UsageError(f"--eps needs {args.k} entries, got {len(eps)}")
        exps = [args.gamma, args.delta, *eps]
    if len(sing) not in (args.k, args.k + 2):
        raise UsageError(f"--sing needs {args.k} entries, got {len(sing)}")
    return ProblemFile(args.k, sing, exps, args.include_trivial)


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _run_family(args, adjoint: bool) -> int:
    problem = problem_from_args(args)
    family = problem.family(allow_coincident=args.allow_coincident)
    results = factorize_all(family, problem.include_trivial)
    if adjoint:
        doc = build_adjoint_document(problem, family, results, twice=args.twice)
    else:
        doc = build_document(problem, family, results)
    fmt = args.format or (problem.format if args.problem else "table")
    _emit(render(doc, fmt), args.out)
    if any(rec["status"] == SINGULAR for rec in doc["factorizations"]):
        for rec in doc["factorizations"]:
            if rec["status"] == SINGULAR:
                print(f"mask {rec['mask']}: singular system ({rec['reason']})", file=sys.stderr)
        return EXIT_SINGULAR
    return EXIT_OK


def cmd_factorize(args) -> int:
    return _run_family(args, adjoint=False)


def cmd_adjoint(args) -> int:
    return _run_family(args, adjoint=True)


def cmd_tables(args) -> int:
    if not 1 <= args.table_id <= 7:
        print(f"error: table id must be in 1..7, got {args.table_id}", file=sys.stderr)
        return EXIT_INVALID
    cmp = compare_table(args.table_id)
    for line in cmp.computed:
        print(line)
    if cmp.matches:
        print(f"table {args.table_id}: {len(cmp.computed)} rows, match")
        return EXIT_OK
    print(f"table {args.table_id}: mismatch")
    sys.stdout.write(cmp.diff())
    return EXIT_MISMATCH


def cmd_verify(args) -> int:
    report = verify_path(args.path)
    sys.stdout.write(report.summary())
    return EXIT_OK if report.ok else EXIT_MISMATCH


COMMANDS = {"factorize": cmd_factorize, "tables": cmd_tables,
            "verify": cmd_verify, "adjoint": cmd_adjoint}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse uses 2 for usage errors already; keep --help at 0
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (HeunFactError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
