"""Enumerate every knot C(a, b, c, phi) for fixed (a, b, c).

The phi-axis is cut at the real roots of R_{a,b,c}; each open cell gets one
rational sample and the sample is classified.  Reports serialize to JSON and
can be cached on disk together with R.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, NamedTuple, Optional, Sequence, Tuple

from .diagram import ChebParams, Classification, CriticalPoly, classify, critical_poly, validate_ab
from .exactpoly.poly import Poly
from .realroots import AlgebraicNumber, real_roots_of_product, sample_between, simplest_between
from .twobridge import KnotClass, SchubertFraction, canonical

CACHE_HEADER = "CHEBKNOT-CACHE v1"


class CacheError(Exception):
    """A cache file is malformed, from another version, or fails its checksum."""


def rat_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def parse_rat(s: str) -> Fraction:
    s = s.strip()
    if "/" in s:
        n, d = s.split("/")
        n, d = int(n), int(d)
        if d == 0:
            raise ValueError("zero denominator")
        return Fraction(n, d)
    return Fraction(int(s))


@dataclass(frozen=True)
class Cell:
    """One open cell of the phi-axis with its classified sample.

    ``lo``/``hi`` are rationals inside the cell bracketing the sample
    (None for an unbounded end).
    """

    lo: Optional[Fraction]
    hi: Optional[Fraction]
    sample: Fraction
    word: Tuple[int, ...]
    fraction: SchubertFraction
    knot: KnotClass

    @property
    def trivial(self) -> bool:
        return self.knot.trivial


@dataclass
class EnumerationReport:
    a: int
    b: int
    c: int
    critical_count: int
    cells: List[Cell]
    distinct_knots: List[Tuple[KnotClass, Fraction]]
    half_axis: bool = False
    merge_mirrors: bool = False

    @property
    def params(self) -> Tuple[int, int, int]:
        return self.a, self.b, self.c

    @property
    def nontrivial_count(self) -> int:
        return sum(1 for c in self.cells if not c.trivial)

    def summary(self) -> Dict[str, int]:
        return {
            "critical": self.critical_count,
            "cells": len(self.cells),
            "nontrivial": self.nontrivial_count,
            "distinct nontrivial": len(self.distinct_knots),
        }


# -- the enumeration ------------------------------------------------------------------

def _bracket(roots: Sequence[AlgebraicNumber], samples: Sequence[Fraction]):
    """Rational bounds for each cell that strictly bracket its sample.

    Each bound is the simplest rational between the sample and the adjacent
    root, so it depends only on R and not on how its roots were isolated.
    """
    out = []
    for i, s in zip(range(len(samples)), samples):
        lo = simplest_between(roots[i - 1], s) if i > 0 else None
        hi = simplest_between(s, roots[i]) if i < len(roots) else None
        out.append((lo, hi))
    return out


def _classify_one(args) -> Classification:
    a, b, c, phi, merge = args
    return classify(ChebParams(a, b, c, phi), up_to_mirror=merge)


def enumerate_axis(
    a: int,
    b: int,
    c: int,
    half_axis: bool = False,
    merge_mirrors: bool = False,
    jobs: int = 1,
    cache_dir: Optional[os.PathLike] = None,
    critical: Optional[CriticalPoly] = None,
) -> EnumerationReport:
    """Classify one sample in each cell of R minus Z_{a,b,c}.

    With ``half_axis`` only cells whose sample is >= 0 are classified and
    ``critical_count`` counts the positive critical values.  The negative half
    adds nothing new: C(a,b,c,-phi) is C(a,b,c,phi) when a + b + c is even and
    its mirror image when a + b + c is odd.

    Roots are isolated factor by factor when the factorization of R is known
    (freshly computed or cached), which is what makes large c feasible.
    """
    validate_ab(a, b)
    key = (a, b, c)
    cached: Optional[CacheEntry] = None
    if cache_dir is not None:
        cached = cache_read(key, cache_dir)
        if cached is not None and cached.report is not None:
            rep = report_from_json(cached.report)
            if rep.half_axis == half_axis and rep.merge_mirrors == merge_mirrors:
                return rep
    if critical is None and cached is None:
        critical = critical_poly(a, b, c)
    if critical is not None:
        R, factors = critical.R, _factor_polys(critical)
    else:
        R, factors = cached.R, list(cached.factors)
    roots = real_roots_of_product(factors or [R])
    samples = sample_between(roots)
    bounds = _bracket(roots, samples)
    chosen = [i for i in range(len(samples)) if not half_axis or samples[i] >= 0]
    tasks = [(a, b, c, samples[i], merge_mirrors) for i in chosen]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(_classify_one, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))
    else:
        results = [_classify_one(t) for t in tasks]
    cells = []
    distinct: Dict[Tuple[int, int], Tuple[KnotClass, Fraction]] = {}
    for i, res in zip(chosen, results):
        lo, hi = bounds[i]
        cells.append(Cell(lo, hi, samples[i], res.word, res.schubert, res.knot))
        if not res.knot.trivial:
            distinct.setdefault(res.knot.key(), (res.knot, samples[i]))
    if half_axis:
        # the nonnegative cells are cut by the positive roots only
        n_crit = sum(1 for r in roots if r.cmp_rational(Fraction(0)) < 0)
    else:
        n_crit = len(roots)
    report = EnumerationReport(
        a, b, c, n_crit, cells, list(distinct.values()), half_axis, merge_mirrors
    )
    if cache_dir is not None:
        cache_store(key, R, report, cache_dir, factors)
    return report


# Short public name; shadows the builtin only inside this module's namespace.
enumerate = enumerate_axis  # noqa: A001


# -- JSON ------------------------------------------------------------------------------

def cell_record(a: int, b: int, c: int, cell: Cell) -> Dict[str, Any]:
    """The flat per-cell record used by the CLI and the cache."""
    return {
        "a": a,
        "b": b,
        "c": c,
        "phi": rat_str(cell.sample),
        "interval": [
            "-inf" if cell.lo is None else rat_str(cell.lo),
            "inf" if cell.hi is None else rat_str(cell.hi),
        ],
        "conway": list(cell.word),
        "fraction": cell.fraction.signed_str(),
        "canonical": str(cell.knot.canonical),
        "name": cell.knot.name,
        "trivial": cell.trivial,
    }


def _knot_json(k: KnotClass) -> Dict[str, Any]:
    return {
        "canonical": str(k.canonical),
        "name": k.name,
        "crossing_number": k.crossing_number,
        "up_to_mirror": k.up_to_mirror,
    }


def report_to_json(report: EnumerationReport) -> Dict[str, Any]:
    a, b, c = report.params
    return {
        "params": {"a": a, "b": b, "c": c},
        "half_axis": report.half_axis,
        "merge_mirrors": report.merge_mirrors,
        "critical_count": report.critical_count,
        "cells": [cell_record(a, b, c, cell) for cell in report.cells],
        "distinct_knots": [dict(_knot_json(k), witness=rat_str(w)) for k, w in report.distinct_knots],
        "summary": report.summary(),
    }


def _knot_from_json(d: Dict[str, Any]) -> KnotClass:
    alpha, beta = (int(x) for x in d["canonical"].split("/"))
    return KnotClass(SchubertFraction(alpha, beta), d["name"], d["crossing_number"], d["up_to_mirror"])


def report_from_json(d: Dict[str, Any]) -> EnumerationReport:
    p = d["params"]
    merge = d["merge_mirrors"]
    cells = []
    for r in d["cells"]:
        lo, hi = r["interval"]
        knot = canonical(r["canonical"], merge)
        if knot.name != r["name"] or knot.trivial != r["trivial"]:
            raise CacheError("cell record is inconsistent with its canonical fraction")
        cells.append(
            Cell(
                None if lo == "-inf" else parse_rat(lo),
                None if hi == "inf" else parse_rat(hi),
                parse_rat(r["phi"]),
                tuple(r["conway"]),
                SchubertFraction.of(r["fraction"]),
                knot,
            )
        )
    distinct = [(_knot_from_json(k), parse_rat(k["witness"])) for k in d["distinct_knots"]]
    return EnumerationReport(
        p["a"], p["b"], p["c"], d["critical_count"], cells, distinct, d["half_axis"], merge
    )


def dumps(obj: Any) -> str:
    """Canonical single-line JSON."""
    return json.dumps(obj, separators=(",", ":"), sort_keys=True)


# -- cache ------------------------------------------------------------------------------

def cache_path(key: Tuple[int, int, int], cache_dir: os.PathLike) -> Path:
    a, b, c = key
    return Path(cache_dir) / f"C_{a}_{b}_{c}.txt"


class CacheEntry(NamedTuple):
    R: Poly
    factors: Tuple[List[int], ...]  # empty unless R was stored with its factorization
    report: Optional[Dict[str, Any]]


def _factor_polys(crit: CriticalPoly) -> List[List[int]]:
    return [f.poly.primitive().integer_coeffs() for f in crit.factors]


def _body(R: Poly, factors: Sequence[Sequence[int]], report_json: Optional[Dict[str, Any]]) -> str:
    lines = [CACHE_HEADER, f"R {R.degree}"]
    lines += [str(x) for x in R.num]
    if len(factors) > 1:
        for f in factors:
            lines.append(f"F {len(f) - 1}")
            lines += [str(x) for x in f]
    lines.append(dumps(report_json) if report_json is not None else "null")
    return "\n".join(lines) + "\n"


def cache_store(
    key: Tuple[int, int, int],
    R: Poly | CriticalPoly,
    report: Optional[EnumerationReport],
    cache_dir: os.PathLike,
    factors: Optional[Sequence[Sequence[int]]] = None,
) -> Path:
    """Write R, its factors when known, and the report atomically."""
    if isinstance(R, CriticalPoly):
        if factors is None:
            factors = _factor_polys(R)
        R = R.R
    factors = factors or []
    if R.den != 1:
        R = R.primitive()
    path = cache_path(key, cache_dir)
    path.parent.mkdir(parents=True, exist_ok=True)
    body = _body(R, factors, report_to_json(report) if report is not None else None)
    digest = hashlib.sha256(body.encode()).hexdigest()
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(body)
            fh.write(f"SHA256 {digest}\n")
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return path


def _read_block(lines: List[str], pos: int, tag: str) -> Tuple[List[int], int]:
    head = lines[pos].split()
    if len(head) != 2 or head[0] != tag:
        raise ValueError(f"expected {tag} block")
    deg = int(head[1])
    coeffs = [int(x) for x in lines[pos + 1:pos + 2 + deg]]
    if len(coeffs) != deg + 1:
        raise ValueError("truncated block")
    return coeffs, pos + 2 + deg


def cache_read(key: Tuple[int, int, int], cache_dir: os.PathLike) -> Optional[CacheEntry]:
    """The full cache entry, or None when nothing is cached."""
    path = cache_path(key, cache_dir)
    if not path.exists():
        return None
    text = path.read_text()
    lines = text.split("\n")
    if not lines or lines[0] != CACHE_HEADER:
        raise CacheError(f"{path}: unsupported cache version or header")
    if len(lines) < 2 or not lines[-1] == "" or not lines[-2].startswith("SHA256 "):
        raise CacheError(f"{path}: missing checksum")
    body = "\n".join(lines[:-2]) + "\n"
    if hashlib.sha256(body.encode()).hexdigest() != lines[-2][len("SHA256 "):]:
        raise CacheError(f"{path}: checksum mismatch")
    lines = lines[:-2]
    try:
        coeffs, pos = _read_block(lines, 1, "R")
        factors = []
        while pos < len(lines) and lines[pos].startswith("F "):
            f, pos = _read_block(lines, pos, "F")
            factors.append(f)
        if pos != len(lines) - 1:
            raise ValueError("trailing lines")
        report = json.loads(lines[pos])
    except (ValueError, IndexError) as exc:
        raise CacheError(f"{path}: malformed body") from exc
    if factors and sum(len(f) - 1 for f in factors) != len(coeffs) - 1:
        raise CacheError(f"{path}: factor degrees do not add up to deg R")
    return CacheEntry(Poly.from_ints(coeffs, 1, "phi"), tuple(factors), report)


def cache_load(
    key: Tuple[int, int, int], cache_dir: os.PathLike
) -> Optional[Tuple[Poly, Optional[Dict[str, Any]]]]:
    """Return (R, report JSON or None), or None when nothing is cached."""
    entry = cache_read(key, cache_dir)
    return None if entry is None else (entry.R, entry.report)
