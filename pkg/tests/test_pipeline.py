import json
from fractions import Fraction

import pytest

from chebknots.diagram import critical_poly
from chebknots.exactpoly import Poly
from chebknots.pipeline import (
    CACHE_HEADER,
    CacheError,
    cache_load,
    cache_path,
    cache_read,
    cache_store,
    dumps,
    enumerate_axis,
    report_from_json,
    report_to_json,
)

F = Fraction


@pytest.fixture(scope="module")
def r357():
    return enumerate_axis(3, 5, 7)


class TestEnumerate:
    def test_figure_eight_instance(self, r357):
        assert len(r357.cells) == 13 and r357.critical_count == 12
        half = [c for c in r357.cells if c.sample >= 0]
        assert [c.fraction.signed_str() for c in half] == ["5/3", "-1/3", "-1/1", "-1/1", "1/1", "1/1", "1/1"]
        assert [(k.name, w) for k, w in r357.distinct_knots] == [("4_1", F(0))]

    def test_half_axis(self, r357):
        h = enumerate_axis(3, 5, 7, half_axis=True)
        assert len(h.cells) == 7 and h.critical_count == 6
        assert [c.word for c in h.cells] == [c.word for c in r357.cells if c.sample >= 0]

    @pytest.mark.parametrize("abc", [(3, 5, 7), (3, 4, 5), (4, 5, 7), (4, 7, 9), (3, 7, 8), (3, 4, 6), (3, 7, 11)])
    def test_invariants(self, abc):
        rep = enumerate_axis(*abc)
        R = critical_poly(*abc).R
        assert len(rep.cells) == rep.critical_count + 1
        a, b, c = abc
        assert len(rep.distinct_knots) <= (a - 1) * (b - 1) * (c - 1) // 2 + 1
        keys = {cell.knot.key() for cell in rep.cells}
        assert all(k.key() in keys for k, _ in rep.distinct_knots)
        for cell in rep.cells:
            assert R(cell.sample) != 0
            if cell.lo is not None:
                assert cell.lo < cell.sample
            if cell.hi is not None:
                assert cell.sample < cell.hi
        samples = [cell.sample for cell in rep.cells]
        assert samples == sorted(samples)

    @pytest.mark.parametrize("abc", [(3, 5, 7), (4, 7, 9), (3, 4, 6), (4, 9, 11)])
    def test_negative_cells_mirror_positive(self, abc):
        rep = enumerate_axis(*abc)
        pos = sorted(c.knot.key() for c in rep.cells if c.sample > 0)
        neg = sorted(c.knot.key() for c in rep.cells if c.sample < 0)
        assert pos == neg

    def test_parallel_matches_serial(self):
        a = enumerate_axis(4, 7, 9)
        b = enumerate_axis(4, 7, 9, jobs=2)
        assert dumps(report_to_json(a)) == dumps(report_to_json(b))

    def test_merge_mirrors(self):
        rep = enumerate_axis(4, 7, 9, merge_mirrors=True)
        names = [k.name for k, _ in rep.distinct_knots]
        assert len(names) == len(set(names))
        chiral = enumerate_axis(4, 7, 9)
        assert len(rep.distinct_knots) <= len(chiral.distinct_knots)

    def test_examples_from_cli_section(self):
        fr = {c.knot.name: c.fraction.signed_str() for c in enumerate_axis(3, 4, 5).cells}
        assert fr.get("3_1") == "3/2"
        cell = next(c for c in enumerate_axis(3, 7, 8).cells if c.sample == 0)
        assert cell.fraction.signed_str() == "-5/4" and cell.knot.name == "5_1"


class TestJson:
    def test_roundtrip(self, r357):
        data = report_to_json(r357)
        back = report_from_json(json.loads(dumps(data)))
        assert dumps(report_to_json(back)) == dumps(data)

    def test_record_schema(self, r357):
        rec = report_to_json(r357)["cells"][6]
        assert set(rec) == {"a", "b", "c", "phi", "interval", "conway", "fraction", "canonical", "name", "trivial"}
        assert rec["phi"] == "0/1" and rec["fraction"] == "5/3" and rec["canonical"] == "5/2"
        assert rec["interval"] == ["-1/29", "1/29"]

    def test_inconsistent_record_rejected(self, r357):
        data = json.loads(dumps(report_to_json(r357)))
        data["cells"][6]["name"] = "3_1"
        with pytest.raises(CacheError):
            report_from_json(data)


class TestCache:
    def test_missing(self, tmp_path):
        assert cache_load((3, 5, 7), tmp_path) is None

    def test_roundtrip(self, tmp_path, r357):
        R = critical_poly(3, 5, 7)
        cache_store((3, 5, 7), R, r357, tmp_path)
        got_R, got_report = cache_load((3, 5, 7), tmp_path)
        assert got_R.integer_coeffs() == R.R.integer_coeffs()
        assert got_report == json.loads(dumps(report_to_json(r357)))

    def test_polynomial_only(self, tmp_path):
        R = critical_poly(3, 4, 5).R
        cache_store((3, 4, 5), R, None, tmp_path)
        got_R, rep = cache_load((3, 4, 5), tmp_path)
        assert got_R == R and rep is None

    def test_file_layout(self, tmp_path, r357):
        cache_store((3, 5, 7), critical_poly(3, 5, 7), r357, tmp_path)
        lines = cache_path((3, 5, 7), tmp_path).read_text().splitlines()
        assert lines[0] == CACHE_HEADER and lines[1] == "R 24"
        assert json.loads(lines[27]) == json.loads(dumps(report_to_json(r357)))
        assert lines[28].startswith("SHA256 ")

    @pytest.mark.parametrize("damage", ["flip_digit", "drop_line", "bad_header", "truncate"])
    def test_corruption_detected(self, tmp_path, r357, damage):
        cache_store((3, 5, 7), critical_poly(3, 5, 7), r357, tmp_path)
        path = cache_path((3, 5, 7), tmp_path)
        lines = path.read_text().split("\n")
        if damage == "flip_digit":
            lines[5] = str(int(lines[5]) + 1)
        elif damage == "drop_line":
            del lines[4]
        elif damage == "bad_header":
            lines[0] = "CHEBKNOT-CACHE v2"
        else:
            lines = lines[:10]
        path.write_text("\n".join(lines))
        with pytest.raises(CacheError):
            cache_load((3, 5, 7), tmp_path)

    def test_enumerate_reuses_cache(self, tmp_path, r357):
        first = enumerate_axis(3, 5, 7, cache_dir=tmp_path)
        before = cache_path((3, 5, 7), tmp_path).read_text()
        second = enumerate_axis(3, 5, 7, cache_dir=tmp_path)
        assert dumps(report_to_json(first)) == dumps(report_to_json(second)) == dumps(report_to_json(r357))
        assert cache_path((3, 5, 7), tmp_path).read_text() == before

    def test_half_axis_after_full_recomputes_report(self, tmp_path):
        enumerate_axis(3, 5, 7, cache_dir=tmp_path)
        h = enumerate_axis(3, 5, 7, half_axis=True, cache_dir=tmp_path)
        assert h.half_axis and len(h.cells) == 7

    def test_no_temp_files_left(self, tmp_path, r357):
        cache_store((3, 5, 7), critical_poly(3, 5, 7), r357, tmp_path)
        assert [p.name for p in tmp_path.iterdir()] == ["C_3_5_7.txt"]


class TestFactorizedCache:
    ABC = (4, 7, 9)  # R splits into several factor resultants

    def test_factor_blocks_roundtrip(self, tmp_path):
        crit = critical_poly(*self.ABC)
        assert len(crit.factors) > 1
        cache_store(self.ABC, crit, None, tmp_path)
        entry = cache_read(self.ABC, tmp_path)
        assert entry.R == crit.R and entry.report is None
        assert [list(f) for f in entry.factors] == [f.poly.primitive().integer_coeffs() for f in crit.factors]

    def test_factor_degrees_must_add_up(self, tmp_path):
        import hashlib

        cache_store(self.ABC, critical_poly(*self.ABC), None, tmp_path)
        path = cache_path(self.ABC, tmp_path)
        lines = path.read_text().split("\n")[:-2]
        first_f = next(i for i, x in enumerate(lines) if x.startswith("F "))
        deg = int(lines[first_f].split()[1])
        del lines[first_f:first_f + deg + 2]
        body = "\n".join(lines) + "\n"
        path.write_text(body + f"SHA256 {hashlib.sha256(body.encode()).hexdigest()}\n")
        with pytest.raises(CacheError):
            cache_read(self.ABC, tmp_path)

    def test_enumeration_from_cached_factors(self, tmp_path):
        fresh = enumerate_axis(*self.ABC)
        cache_store(self.ABC, critical_poly(*self.ABC), None, tmp_path)
        again = enumerate_axis(*self.ABC, cache_dir=tmp_path)
        assert dumps(report_to_json(again)) == dumps(report_to_json(fresh))
        assert cache_read(self.ABC, tmp_path).factors  # factors survive the rewrite

    def test_unfactored_cache_gives_same_report(self, tmp_path):
        fresh = enumerate_axis(*self.ABC)
        cache_store(self.ABC, critical_poly(*self.ABC).R, None, tmp_path)
        again = enumerate_axis(*self.ABC, cache_dir=tmp_path)
        assert dumps(report_to_json(again)) == dumps(report_to_json(fresh))


@pytest.mark.parametrize("abc", [(3, 5, 7), (4, 7, 9), (3, 7, 11)])
def test_cell_bounds_separate_roots(abc):
    from chebknots.realroots import count_real_roots

    R = critical_poly(*abc).R.integer_coeffs()
    cells = enumerate_axis(*abc).cells
    for cell in cells:
        lo = cell.lo if cell.lo is not None else -(1 << 64)
        hi = cell.hi if cell.hi is not None else 1 << 64
        assert lo < cell.sample < hi
        assert count_real_roots(R, lo, hi) == 0 and Poly(R, "phi")(hi) != 0
    for left, right in zip(cells, cells[1:]):
        assert count_real_roots(R, left.hi, right.lo) == 1
