"""Command-line front end.

Subcommands: count, scan, witness, lemma-check, contrast.  Exit codes:
0 success / all checks pass, 1 usage or configuration error, 2 capacity
(memory budget) error, 3 check failure (non-solution, failed identity, or
diagonal input where a witness was required).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Optional, Sequence

from .contrast import CONTRAST_CSV_HEADER, contrast_table
from .counting import (
    COUNT_CSV_HEADER,
    DEFAULT_MEMORY_BUDGET_MB,
    CapacityError,
    SolutionPair,
    cancel_common_factors,
    count_mean_value,
    find_nondiagonal_witnesses,
)
from .shifts import Transcendental, format_shift, minimal_polynomial_for, parse_shift
from .verify import (
    NotASolutionError,
    PreconditionViolationError,
    fit_growth_exponent,
    reference_exponent,
    verify_witness,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_CAPACITY = 2
EXIT_CHECK = 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _parse_x_list(text: str) -> list[int]:
    try:
        xs = [int(part.strip()) for part in text.split(",")]
    except ValueError:
        raise _UsageError(f"bad X list: {text!r}") from None
    if any(b <= a for a, b in zip(xs, xs[1:])):
        raise _UsageError("X list must be strictly increasing")
    return xs


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="shiftprod", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, with_x=True):
        p.add_argument("--k", type=int, required=True, help="tuple length k")
        if with_x:
            p.add_argument("--X", type=int, help="range bound X")
        p.add_argument("--workers", type=int, default=1, help="parallel workers")
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--out", help="output path (default: stdout)")
        p.add_argument(
            "--memory-budget-mb",
            type=int,
            default=DEFAULT_MEMORY_BUDGET_MB,
            help="frequency-table memory budget",
        )

    p = sub.add_parser("count", help="one exact count cell")
    add_common(p)
    p.add_argument("--shift", required=True, help="shift descriptor")

    p = sub.add_parser("scan", help="count cells over an X grid plus exponent fit")
    add_common(p, with_x=False)
    p.add_argument("--X-list", required=True, help="comma-separated increasing X values")
    p.add_argument("--shift", required=True)

    p = sub.add_parser("witness", help="non-diagonal witness pairs as JSON")
    add_common(p)
    p.add_argument("--shift", required=True)
    p.add_argument("--limit", type=int, help="max pairs to emit")

    p = sub.add_parser("lemma-check", help="verify identities on witness JSON")
    p.add_argument("--shift", required=True, help="algebraic or rational shift")
    p.add_argument("--X", type=int, help="range bound (default: largest entry)")
    p.add_argument("--in", dest="infile", help="witness JSON path (default: stdin)")
    p.add_argument("--out", help="output path (default: stdout)")

    p = sub.add_parser("contrast", help="rational vs irrational non-diagonal counts")
    add_common(p, with_x=False)
    p.add_argument("--X-list", required=True)
    p.add_argument("--rational-shift", required=True)
    p.add_argument("--algebraic-shift", required=True)
    return parser


def _emit(text: str, out_path: Optional[str]) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _csv_text(header: str, rows: Sequence[Sequence[str]], trailer: Sequence[str] = ()) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header.split(","))
    for row in rows:
        writer.writerow(row)
    text = buf.getvalue()
    for line in trailer:
        text += line + "\n"
    return text


def _cmd_count(args) -> int:
    if args.X is None:
        raise _UsageError("count needs --X")
    shift = parse_shift(args.shift)
    report = count_mean_value(
        args.k,
        args.X,
        shift,
        workers=args.workers,
        memory_budget_mb=args.memory_budget_mb,
    )
    if args.format == "json":
        _emit(json.dumps([report.to_json_dict()], indent=2) + "\n", args.out)
    else:
        _emit(_csv_text(COUNT_CSV_HEADER, [report.csv_fields()]), args.out)
    return EXIT_OK


def _cmd_scan(args) -> int:
    xs = _parse_x_list(args.X_list)
    if len(xs) < 3:
        raise _UsageError("scan needs at least three X values for an exponent fit")
    shift = parse_shift(args.shift)
    reports = [
        count_mean_value(
            args.k, X, shift, workers=args.workers, memory_budget_mb=args.memory_budget_mb
        )
        for X in xs
    ]
    fit = fit_growth_exponent(reports)
    ref = reference_exponent(args.k, shift)
    alpha_text = "zero-count" if fit.zero_count else f"{fit.alpha:.6f}"
    ref_text = "none" if ref is None else str(ref)
    if args.format == "json":
        payload = {
            "rows": [r.to_json_dict() for r in reports],
            "fit": {
                "alpha": fit.alpha,
                "zero_count": fit.zero_count,
                "reference_exponent": ref,
            },
        }
        _emit(json.dumps(payload, indent=2) + "\n", args.out)
    else:
        trailer = [
            f"# fitted_alpha={alpha_text}",
            f"# reference_exponent={ref_text}",
        ]
        _emit(
            _csv_text(COUNT_CSV_HEADER, [r.csv_fields() for r in reports], trailer),
            args.out,
        )
    return EXIT_OK


def _cmd_witness(args) -> int:
    if args.X is None:
        raise _UsageError("witness needs --X")
    shift = parse_shift(args.shift)
    pairs = find_nondiagonal_witnesses(
        args.k,
        args.X,
        shift,
        limit=args.limit,
        workers=args.workers,
        memory_budget_mb=args.memory_budget_mb,
    )
    _emit(json.dumps([p.to_json_dict() for p in pairs], indent=2) + "\n", args.out)
    return EXIT_OK


def _load_witnesses(path: Optional[str]) -> list[SolutionPair]:
    if path and path != "-":
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    else:
        data = json.load(sys.stdin)
    if not isinstance(data, list):
        raise _UsageError("witness input must be a JSON array of {x, y} objects")
    pairs = []
    for entry in data:
        try:
            pairs.append(SolutionPair(tuple(entry["x"]), tuple(entry["y"])))
        except (KeyError, TypeError, ValueError) as exc:
            raise _UsageError(f"bad witness entry {entry!r}: {exc}") from None
    return pairs


def _cmd_lemma_check(args) -> int:
    shift = parse_shift(args.shift)
    if isinstance(shift, Transcendental):
        raise _UsageError("lemma-check needs an algebraic or rational shift")
    m = minimal_polynomial_for(shift)
    pairs = _load_witnesses(args.infile)
    if not pairs:
        _emit("[]\n", args.out)  # nothing to check is a vacuous pass
        return EXIT_OK
    x_cap = args.X
    if x_cap is None:
        x_cap = max(max(p.x + p.y) for p in pairs)
    results = []
    failures = 0
    for pair in pairs:
        reduced = cancel_common_factors(pair)
        if reduced.k == 0:
            failures += 1
            print(
                f"witness x={list(pair.x)} y={list(pair.y)}: "
                "diagonal after cancellation",
                file=sys.stderr,
            )
            results.append(pair.to_json_dict() | {"error": "diagonal after cancellation"})
            continue
        try:
            report = verify_witness(reduced, m, x_cap)
        except (NotASolutionError, PreconditionViolationError) as exc:
            failures += 1
            print(
                f"witness x={list(pair.x)} y={list(pair.y)}: {exc}",
                file=sys.stderr,
            )
            results.append(pair.to_json_dict() | {"error": str(exc)})
            continue
        if not report.all_ok:
            failures += 1
            print(
                f"witness x={list(pair.x)} y={list(pair.y)}: identity check failed",
                file=sys.stderr,
            )
        results.append(report.to_json_dict())
    _emit(json.dumps(results, indent=2) + "\n", args.out)
    return EXIT_CHECK if failures else EXIT_OK


def _cmd_contrast(args) -> int:
    xs = _parse_x_list(args.X_list)
    rows = contrast_table(
        args.k,
        xs,
        parse_shift(args.rational_shift),
        parse_shift(args.algebraic_shift),
        workers=args.workers,
        memory_budget_mb=args.memory_budget_mb,
    )
    if args.format == "json":
        payload = [
            {
                "X": r.X,
                "k": r.k,
                "shift_rational_nondiag": r.rational_nondiag,
                "shift_algebraic_nondiag": r.algebraic_nondiag,
            }
            for r in rows
        ]
        _emit(json.dumps(payload, indent=2) + "\n", args.out)
    else:
        _emit(_csv_text(CONTRAST_CSV_HEADER, [r.csv_fields() for r in rows]), args.out)
    return EXIT_OK


_COMMANDS = {
    "count": _cmd_count,
    "scan": _cmd_scan,
    "witness": _cmd_witness,
    "lemma-check": _cmd_lemma_check,
    "contrast": _cmd_contrast,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CapacityError as exc:
        print(f"capacity error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY


if __name__ == "__main__":
    sys.exit(main())
