"""Command-line front end: ``chebknots <command> ...``.

Every rational crossing the boundary is an exact "p/q" string.  Exit codes:
0 success, 2 critical phi, 3 invalid input, 4 cache integrity failure.
"""

from __future__ import annotations

import argparse
import csv
import os
import sys
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence

from . import pipeline
from .diagram import ChebParams, CriticalPhiError, classify
from .pipeline import CacheError, Cell, parse_rat, rat_str
from .twobridge import (
    SchubertFraction,
    canonical,
    cf_pm1,
    cf_pm12,
    cf_value,
    count_knots,
    enumerate_knots,
    min_b_a3,
    min_b_a4,
    regular_cf,
)

EXIT_OK = 0
EXIT_CRITICAL = 2
EXIT_INVALID = 3
EXIT_CACHE = 4

RECORD_FIELDS = ("a", "b", "c", "phi", "interval", "conway", "fraction", "canonical", "name", "trivial")


class UsageError(ValueError):
    """Bad command-line input (reported with exit code 3)."""


class _Parser(argparse.ArgumentParser):
    # argparse uses exit code 2 for usage errors, which is taken by critical phi
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def _rational(text: str) -> Fraction:
    try:
        return parse_rat(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"malformed rational {text!r}: expected p/q") from exc


def _schubert(text: str) -> SchubertFraction:
    try:
        return SchubertFraction.of(text if "/" in text else Fraction(int(text)))
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"malformed fraction {text!r}: expected p/q") from exc


def _emit(obj: Any) -> None:
    print(pipeline.dumps(obj))


def _knot_fields(sf: SchubertFraction, merge: bool = False) -> Dict[str, Any]:
    k = canonical(sf, merge)
    return {
        "canonical": str(k.canonical),
        "name": k.name,
        "crossing_number": k.crossing_number,
        "trivial": k.trivial,
    }


# -- commands -------------------------------------------------------------------

def cmd_classify(args) -> int:
    params = ChebParams(args.a, args.b, args.c, _rational(args.phi))
    res = classify(params, up_to_mirror=args.merge_mirrors)
    cell = Cell(params.phi, params.phi, params.phi, res.word, res.schubert, res.knot)
    _emit(pipeline.cell_record(args.a, args.b, args.c, cell))
    return EXIT_OK


def _text_line(rec: Dict[str, Any]) -> str:
    lo, hi = rec["interval"]
    name = rec["name"] or "-"
    word = " ".join(str(x) for x in rec["conway"])
    return f"phi={rec['phi']:>12}  ({lo}, {hi})  [{word}]  {rec['fraction']:>10}  {rec['canonical']:>10}  {name}"


def cmd_enumerate(args) -> int:
    cache_dir = args.cache_dir or os.environ.get("CHEBKNOT_CACHE") or None
    report = pipeline.enumerate_axis(
        args.a,
        args.b,
        args.c,
        half_axis=args.half,
        merge_mirrors=args.merge_mirrors,
        jobs=args.jobs,
        cache_dir=cache_dir,
    )
    data = pipeline.report_to_json(report)
    summary = f"distinct nontrivial: {len(report.distinct_knots)}"
    if args.json:
        _emit(data)
    elif args.csv:
        w = csv.writer(sys.stdout, lineterminator="\n")
        w.writerow(RECORD_FIELDS)
        for rec in data["cells"]:
            row = dict(rec, interval=";".join(rec["interval"]), conway=" ".join(map(str, rec["conway"])))
            w.writerow([row[f] for f in RECORD_FIELDS])
        print(summary, file=sys.stderr)
    else:
        for rec in data["cells"]:
            print(_text_line(rec))
        print(f"critical values: {report.critical_count}")
        print(f"cells: {len(report.cells)}")
        print(f"nontrivial: {report.nontrivial_count}")
        print(summary)
        for k, witness in report.distinct_knots:
            print(f"  {k.name or '-':>6}  S({k.canonical})  first at phi={rat_str(witness)}")
    return EXIT_OK


def cmd_minb(args) -> int:
    sf = _schubert(args.fraction)
    b, word = (min_b_a3 if args.a == 3 else min_b_a4)(sf)
    _emit({"fraction": sf.signed_str(), "a": args.a, "b": b, "word": list(word), **_knot_fields(sf)})
    return EXIT_OK


def _pm12_word(f: Fraction) -> Sequence[int]:
    """Shortest +-1/+-2 word for f, switching to an even-denominator representative if needed."""
    sign = 1 if f > 0 else -1
    a, b = abs(f.numerator), f.denominator
    if b % 2 == 0:
        return tuple(sign * x for x in cf_pm12(Fraction(a, b)))
    if a % 2 == 0:
        raise UsageError(f"{f} has no even-denominator representative")
    b0 = b % a
    cands = []
    for r in {b0, pow(b0, -1, a)} if a > 1 else {1}:
        cands.append(r if r % 2 == 0 else r + a)
    best = min((cf_pm12(Fraction(a, d)) for d in cands), key=len)
    return tuple(sign * x for x in best)


def cmd_cf(args) -> int:
    f = _rational(args.fraction)
    if f == 0:
        raise UsageError("0 has no continued fraction word here")
    if args.form == "pm1":
        sign = 1 if f > 0 else -1
        word = tuple(sign * x for x in cf_pm1(abs(f)))
    elif args.form == "pm12":
        word = _pm12_word(f)
    else:
        # [0, 1/f] handles |f| < 1; a negative f negates every term
        g = abs(f)
        word = regular_cf(g) if g >= 1 else (0,) + regular_cf(1 / g)
        if f < 0:
            word = tuple(-x for x in word)
    num, den = cf_value(word)
    # pm12 may expand an equivalent representative instead of f itself
    _emit({"fraction": rat_str(f), "form": args.form, "word": list(word), "value": rat_str(Fraction(num, den))})
    return EXIT_OK


def cmd_identify(args) -> int:
    sf = _schubert(args.fraction)
    _emit({"fraction": sf.signed_str(), **_knot_fields(sf, args.merge_mirrors)})
    return EXIT_OK


def cmd_count(args) -> int:
    if args.crossings < 3:
        raise UsageError("crossing number must be at least 3")
    out: Dict[str, Any] = {"crossings": args.crossings, "count": count_knots(args.crossings)}
    if args.list:
        out["knots"] = [{"canonical": str(k.canonical), "name": k.name} for k in enumerate_knots(args.crossings)]
    _emit(out)
    return EXIT_OK


# -- parser ---------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(
        prog="chebknots",
        description="Exact classification of Chebyshev knots.",
        epilog="Pass negative fractions as --fraction=-p/q.",
    )
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def abc(sp):
        sp.add_argument("--a", type=int, required=True)
        sp.add_argument("--b", type=int, required=True)
        sp.add_argument("--c", type=int, required=True)
        sp.add_argument("--merge-mirrors", action="store_true", help="identify a knot with its mirror image")

    sp = sub.add_parser("classify", help="classify C(a,b,c,phi) at one rational phi")
    abc(sp)
    sp.add_argument("--phi", required=True, help='rational "p/q"')
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("enumerate", help="classify every cell of the phi-axis")
    abc(sp)
    sp.add_argument("--half", action="store_true", help="only cells with phi >= 0")
    fmt = sp.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="one JSON report (the cached format)")
    fmt.add_argument("--csv", action="store_true", help="one CSV row per cell; summary on stderr")
    sp.add_argument("--cache-dir", help="cache directory (default: $CHEBKNOT_CACHE)")
    sp.add_argument("--jobs", type=int, default=1, help="worker processes for classification")
    sp.set_defaults(func=cmd_enumerate)

    sp = sub.add_parser("minb", help="least b with a Chebyshev diagram of the knot")
    sp.add_argument("--fraction", required=True)
    sp.add_argument("--a", type=int, choices=(3, 4), required=True)
    sp.set_defaults(func=cmd_minb)

    sp = sub.add_parser("cf", help="continued fraction words")
    sp.add_argument("--fraction", required=True)
    sp.add_argument("--form", choices=("pm1", "pm12", "regular"), default="regular")
    sp.set_defaults(func=cmd_cf)

    sp = sub.add_parser("identify", help="canonical form and table name")
    sp.add_argument("--fraction", required=True)
    sp.add_argument("--merge-mirrors", action="store_true")
    sp.set_defaults(func=cmd_identify)

    sp = sub.add_parser("count", help="number of two-bridge knots with N crossings")
    sp.add_argument("--crossings", type=int, required=True)
    sp.add_argument("--list", action="store_true", help="also list canonical fractions")
    sp.set_defaults(func=cmd_count)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CriticalPhiError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CRITICAL
    except CacheError as exc:
        print(f"error: cache integrity: {exc}", file=sys.stderr)
        return EXIT_CACHE
    except (ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
