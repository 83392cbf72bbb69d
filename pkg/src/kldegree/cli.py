"""Command-line front end.

Exit codes: 0 every check passed, 1 a mathematical check failed, 2 usage or cap error.
"""

from __future__ import annotations

import argparse
import json
import sys
from contextlib import contextmanager
from typing import Sequence

from . import classifier as clf
from . import congruence as cong
from ._arith import divisors
from .cyclotomic import is_rational
from .finite_field import DEFAULT_FIELD_CAP, FieldError, build_field, discrete_log
from .kloosterman import (
    DEFAULT_TERM_CAP,
    check_distinctness,
    distinctness_bounds,
    equivariance_failures,
    frobenius_failures,
    kloosterman_direct,
    kloosterman_sweep,
    read_table_csv,
    table_to_json,
    write_table_csv,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
DEFAULT_SWEEP_LIMIT = 4096
DIRECT_CHECK_LIMIT = 10**6  # total enumerated terms for the sweep-vs-direct check


class UsageError(Exception):
    pass


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="kldegree", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp, fmt=True):
        sp.add_argument("--p", type=int, required=True)
        sp.add_argument("--r", type=int, default=1)
        sp.add_argument("--n", type=int, default=1)
        if fmt:
            sp.add_argument("--format", choices=("csv", "json"), default="csv")
        sp.add_argument("--out", metavar="PATH", help="write output here instead of stdout")
        sp.add_argument("--cap-field", type=int, default=DEFAULT_FIELD_CAP, help="max q-1")
        sp.add_argument("--cap-terms", type=int, default=DEFAULT_TERM_CAP,
                        help="max tuples for direct enumeration")

    sp = sub.add_parser("sweep", help="tabulate Kl_n(q, a) for every a")
    common(sp)
    sp.add_argument("--embed-precision", type=int, default=None,
                    help="append a numerical value column (display only)")

    for name, text in (("classify", "predict the generated subfield of every nonzero point"),
                       ("verify", "check predictions and the supporting identities end to end")):
        sp = sub.add_parser(name, help=text)
        common(sp)
        sp.add_argument("--force-full-distinctness", action="store_true",
                        help="run the exhaustive distinctness check regardless of size")
        sp.add_argument("--list-all-e", action="store_true")
        sp.add_argument("--sweep-limit", type=int, default=DEFAULT_SWEEP_LIMIT,
                        help="largest q swept automatically")
        sp.add_argument("--table", metavar="CSV", help="use a previously exported sweep table")

    sp = sub.add_parser("bounds", help="report known sufficient conditions for distinctness")
    common(sp)

    sp = sub.add_parser("distinctness", help="exhaustively check distinctness up to Frobenius")
    common(sp)

    sp = sub.add_parser("congruence-grid", help="union identity over a parameter grid")
    sp.add_argument("--primes", type=int, nargs="+", default=[5, 7, 11, 13])
    sp.add_argument("--max-r", type=int, default=6)
    sp.add_argument("--max-n", type=int, default=4)
    sp.add_argument("--out", metavar="PATH")
    return ap


@contextmanager
def _output(path: str | None):
    if path is None:
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            yield fh


def _field(args):
    if args.n < 1:
        raise UsageError("n must be >= 1")
    return build_field(args.p, args.r, cap=args.cap_field)


def _dlog(field, v: int) -> int:
    return discrete_log(field.from_index(v))


def _load_table(args, field):
    if getattr(args, "table", None):
        with open(args.table, encoding="utf-8") as fh:
            return read_table_csv(fh, field, args.n)
    return kloosterman_sweep(field, args.n)


def cmd_sweep(args) -> int:
    field = _field(args)
    table = kloosterman_sweep(field, args.n)
    with _output(args.out) as out:
        if args.format == "csv":
            write_table_csv(table, out, embed_precision=args.embed_precision)
        else:
            out.write(table_to_json(table))
    return EXIT_OK


def _summary(params, field, mode, distinctness, rational) -> dict:
    return {
        "p": params.p, "r": params.r, "n": params.n, "q": field.q,
        "d": params.d, "R": params.R,
        "max_degree": params.max_degree,
        "mode": mode,
        "distinctness": (
            "not checked" if distinctness is None
            else "holds" if distinctness.holds
            else f"fails ({len(distinctness.violations)} colliding pairs)"
        ),
        "rational_points": len(rational.points),
        "rational_points_exhaustive": rational.exhaustive,
        "rational_note": (
            f"no rational values possible: {rational.reason}" if rational.reason else None
        ),
    }


def _write_summary(summary: dict, stream) -> None:
    for k, v in summary.items():
        if v is not None:
            print(f"# {k}: {v}", file=stream)


def cmd_classify(args) -> int:
    field = _field(args)
    params = clf.derive_parameters(args.p, args.r, args.n)
    table = distinctness = None
    if args.table or args.force_full_distinctness or field.q <= args.sweep_limit:
        table = _load_table(args, field)
        distinctness = check_distinctness(table)
    mode = clf.resolve_mode(params, distinctness)
    records = clf.classify_field(params, field, mode=mode, table=table)
    rational = clf.rational_points(params, field, distinctness)
    summary = _summary(params, field, mode, distinctness, rational)
    with _output(args.out) as out:
        if args.format == "csv":
            clf.write_report_csv(records, out, list_all_e=args.list_all_e)
        else:
            out.write(clf.report_to_json(records, summary, list_all_e=args.list_all_e))
    if args.format == "csv":
        _write_summary(summary, sys.stderr if args.out is None else sys.stdout)
    return EXIT_OK


def cmd_verify(args) -> int:
    field = _field(args)
    params = clf.derive_parameters(args.p, args.r, args.n)
    if field.q > args.sweep_limit and not (args.force_full_distinctness or args.table):
        raise UsageError(f"q = {field.q} exceeds --sweep-limit {args.sweep_limit}")
    table = _load_table(args, field)
    distinctness = check_distinctness(table)
    report = clf.verify_against_ground_truth(params, table, distinctness)
    lines = [f"field: p={params.p} r={params.r} n={params.n} q={field.q} d={params.d} R={params.R}",
             f"mode: {report.mode}",
             f"distinctness: {'holds' if distinctness.holds else 'fails'} "
             f"({len(distinctness.violations)} colliding pairs)"]
    lines += report.summary_lines()
    failed = not report.ok

    def check(name: str, bad: list, total: int) -> None:
        nonlocal failed
        status = "PASS" if not bad else "FAIL"
        line = f"{name}: {total - len(bad)}/{total} {status}"
        if bad:
            line += " (" + ", ".join(str(b) for b in bad[:10]) + (", ..." if len(bad) > 10 else "") + ")"
            failed = True
        lines.append(line)

    bounds = distinctness_bounds(params.p, params.r, params.n)
    if bounds.guaranteed:
        check("distinctness_guarantee_consistent", [] if distinctness.holds else ["distinctness fails"], 1)

    # rational points versus exact rationality of the tabulated values
    rational = clf.rational_points(params, field, distinctness)
    predicted = {a.value for a in rational.points}
    actual = {a.value for a, v in table.items() if a and is_rational(v)}
    missing = sorted(_dlog(field, v) for v in predicted - actual)
    extra = sorted(_dlog(field, v) for v in actual - predicted)
    check("rational_points", missing, len(predicted))
    lines.append(f"rational values found: {len(actual)}"
                 + (f" (reason none predicted: {rational.reason})" if rational.reason else ""))
    if rational.exhaustive:
        check("rational_points_exhaustive", extra, len(actual))

    eq_bad = clf.equivalence_failures(params, field)
    n_eq = sum(len(divisors(params.r // e)) for e in divisors(params.R) if e > 1)
    check("coset_equals_minimal_exponent", eq_bad, n_eq * (field.q - 1))

    agree_bad, agree_total = [], 0
    for e, t in cong.admissible_pairs(params.p, params.r, params.n):
        closed = cong.closed_form_solution_set(params.p, params.r, params.n, params.d, e, t)
        for x in range(field.q - 1):
            agree_total += 1
            member = clf.coset_membership_dlog(field.from_dlog(x), e, t) is not None
            if member != (x in closed):
                agree_bad.append((x, e, t))
        if not cong.union_identity(params.p, params.r, params.n, e, t).equal:
            agree_bad.append(("union", e, t))
    check("coset_matches_congruence_solutions", agree_bad, agree_total)

    check("galois_equivariance", equivariance_failures(table), (field.p - 1) * field.q)
    check("frobenius_invariance", frobenius_failures(table), (field.r - 1) * field.q)
    zero_ok = table.zero_value == (-1) ** args.n
    check("zero_point", [] if zero_ok else [str(table.zero_value)], 1)
    if field.q * (field.q - 1) ** args.n <= DIRECT_CHECK_LIMIT:
        direct_bad = [a.value for a, v in table.items()
                      if kloosterman_direct(field, args.n, a, cap=args.cap_terms) != v]
        check("sweep_matches_direct", direct_bad, field.q)

    with _output(None) as out:
        for line in lines:
            print(line, file=out)
        print("RESULT: " + ("FAIL" if failed else "PASS"), file=out)
    if args.out:
        with _output(args.out) as out:
            if args.format == "csv":
                clf.write_report_csv(report.records, out, list_all_e=args.list_all_e)
            else:
                out.write(clf.report_to_json(report.records, {"checks": lines},
                                             list_all_e=args.list_all_e))
    return EXIT_FAIL if failed else EXIT_OK


def cmd_bounds(args) -> int:
    b = distinctness_bounds(args.p, args.r, args.n)
    with _output(args.out) as out:
        if args.format == "json":
            out.write(json.dumps(b.__dict__, separators=(",", ":")) + "\n")
        else:
            for line in b.lines():
                print(line, file=out)
    return EXIT_OK


def cmd_distinctness(args) -> int:
    field = _field(args)
    rep = check_distinctness(kloosterman_sweep(field, args.n))
    pairs = [(_dlog(field, a.value), _dlog(field, b.value))
             for a, b in rep.violations]
    with _output(args.out) as out:
        if args.format == "json":
            out.write(json.dumps({"holds": rep.holds, "violations": pairs},
                                 separators=(",", ":")) + "\n")
        else:
            print(f"holds: {str(rep.holds).lower()}", file=out)
            print("a_dlog,b_dlog", file=out)
            for x, y in pairs:
                print(f"{x},{y}", file=out)
    return EXIT_OK if rep.holds else EXIT_FAIL


def cmd_congruence_grid(args) -> int:
    rows = cong.verification_grid(tuple(args.primes), args.max_r, args.max_n)
    with _output(args.out) as out:
        cong.write_grid_csv(rows, out)
    return EXIT_OK if all(c.equal for c in rows) else EXIT_FAIL


COMMANDS = {
    "sweep": cmd_sweep,
    "classify": cmd_classify,
    "verify": cmd_verify,
    "bounds": cmd_bounds,
    "distinctness": cmd_distinctness,
    "congruence-grid": cmd_congruence_grid,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return COMMANDS[args.command](args)
    except (UsageError, FieldError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
