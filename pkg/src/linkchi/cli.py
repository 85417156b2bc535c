"""Command-line front end.

Subcommands: validate, chi, torsion, move, selfcheck.  Exit codes are 0 on
success, 1 on a semantic failure (invalid matrix, failed check) and 2 on an
I/O or parse error.  All randomness flows from the explicit --seed option.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import genfun, invariants, seifert, selfcheck


def _load_matrix(path: str) -> seifert.SeifertMatrix:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise _CliError(2, "cannot read %s: %s" % (path, exc)) from None
    try:
        return seifert.parse(text)
    except seifert.MatrixFormatError as exc:
        raise _CliError(2, "%s: %s" % (path, exc)) from None


class _CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code
        self.message = message


def _load_series_file(path: str, degree: int) -> genfun.BiSeries:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            lines = handle.readlines()
    except OSError as exc:
        raise _CliError(2, "cannot read %s: %s" % (path, exc)) from None
    terms = {}
    for lineno, line in enumerate(lines, start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise _CliError(
                2, "%s:%d: expected 'coefficient word'" % (path, lineno)
            )
        try:
            coeff = Fraction(parts[0])
            word = genfun.parse_word(parts[1])
        except (ValueError, ZeroDivisionError) as exc:
            raise _CliError(2, "%s:%d: %s" % (path, lineno, exc)) from None
        terms[word] = terms.get(word, Fraction(0)) + coeff
    return genfun.BiSeries(degree, terms)


def _parse_f_spec(spec: str, degree: int) -> genfun.BiSeries:
    if spec in ("delta", "phi"):
        return genfun.builtin_series(spec, degree)
    if spec.startswith("mono:"):
        try:
            return genfun.monomial(genfun.parse_word(spec[5:]), degree)
        except ValueError as exc:
            raise _CliError(2, "bad monomial spec: %s" % exc) from None
    if spec.startswith("list:"):
        return _load_series_file(spec[5:], degree)
    raise _CliError(2, "unknown f spec %r (want delta|phi|mono:<word>|list:<path>)" % spec)


def _require_valid(A: seifert.SeifertMatrix) -> None:
    problems = seifert.validate(A)
    if problems:
        for problem in problems:
            print(problem)
        raise _CliError(1, "matrix is not a Seifert matrix")


def cmd_validate(args) -> int:
    A = _load_matrix(args.file)
    problems = seifert.validate(A)
    if problems:
        for problem in problems:
            print(problem)
        return 1
    print("ok")
    return 0


def cmd_chi(args) -> int:
    A = _load_matrix(args.file)
    _require_valid(A)
    f = _parse_f_spec(args.f, args.degree)
    series = invariants.chi(f, A, args.degree)
    if args.json:
        print(json.dumps(series.to_triples()))
    else:
        for line in series.to_lines():
            print(line)
    return 0


def cmd_torsion(args) -> int:
    A = _load_matrix(args.file)
    _require_valid(A)
    poly = invariants.torsion_polynomial(A, args.degree)
    if args.json:
        print(json.dumps(poly.to_triples()))
    else:
        for line in poly.to_lines():
            print(line)
    return 0


def cmd_move(args) -> int:
    A = _load_matrix(args.file)
    _require_valid(A)
    B = seifert.apply_random_moves(A, args.seed, args.count)
    sys.stdout.write(seifert.serialize(B))
    return 0


def cmd_selfcheck(args) -> int:
    results = selfcheck.run_selfcheck(args.seed, args.degree)
    all_ok = True
    for res in results:
        status = "ok" if res.passed else "FAIL"
        print("%-20s %3d checks  %s" % (res.name, res.checks, status))
        for failure in res.failures:
            print("  failed: %s" % failure)
        all_ok = all_ok and res.passed
    total = sum(r.checks for r in results)
    print("%d suites, %d checks, %s" % (len(results), total, "all passed" if all_ok else "FAILURES"))
    return 0 if all_ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="linkchi",
        description="Exact trace invariants of boundary-link Seifert matrices.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check the Seifert axioms of a matrix file")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("chi", help="compute the chi invariant of a matrix")
    p.add_argument("file")
    p.add_argument("--f", default="delta", help="delta|phi|mono:<word>|list:<path>")
    p.add_argument("--degree", type=int, default=8)
    p.add_argument("--json", action="store_true", help="emit coefficient triples")
    p.set_defaults(func=cmd_chi)

    p = sub.add_parser("torsion", help="compute the torsion polynomial expansion")
    p.add_argument("file")
    p.add_argument("--degree", type=int, default=8)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_torsion)

    p = sub.add_parser("move", help="apply random S-equivalence moves")
    p.add_argument("file")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=5)
    p.set_defaults(func=cmd_move)

    p = sub.add_parser("selfcheck", help="run the property suites")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--degree", type=int, default=5)
    p.set_defaults(func=cmd_selfcheck)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _CliError as exc:
        print(exc.message, file=sys.stderr)
        return exc.code
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
