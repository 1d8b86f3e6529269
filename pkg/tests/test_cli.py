import csv
import io
import json
import subprocess
import sys

import pytest

from chebknots.cli import main
from chebknots.pipeline import cache_load, cache_path, dumps


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    return json.loads(out)


class TestClassify:
    def test_figure_eight(self, capsys):
        rec = run_json(capsys, "classify", "--a", "3", "--b", "5", "--c", "7", "--phi", "0")
        assert rec["name"] == "4_1" and rec["fraction"] == "5/3"
        assert set(rec) == {"a", "b", "c", "phi", "interval", "conway", "fraction", "canonical", "name", "trivial"}

    def test_seven_five(self, capsys):
        rec = run_json(capsys, "classify", "--a", "4", "--b", "7", "--c", "9", "--phi", "0")
        assert rec["fraction"] == "17/10" and rec["name"] == "7_5"

    def test_unknot(self, capsys):
        rec = run_json(capsys, "classify", "--a", "3", "--b", "5", "--c", "7", "--phi", "1")
        assert rec["trivial"] is True

    def test_rational_phi(self, capsys):
        rec = run_json(capsys, "classify", "--a", "3", "--b", "5", "--c", "7", "--phi", "1/15")
        assert rec["phi"] == "1/15" and rec["fraction"] == "-1/3"

    def test_critical_phi_exit_code(self, capsys):
        code, out, err = run(capsys, "classify", "--a", "3", "--b", "4", "--c", "6", "--phi", "0")
        assert code == 2 and out == "" and "critical" in err

    @pytest.mark.parametrize("argv", [
        ["classify", "--a", "3", "--b", "6", "--c", "7", "--phi", "0"],
        ["classify", "--a", "3", "--b", "5", "--c", "7", "--phi", "1/x"],
        ["classify", "--a", "3", "--b", "5", "--c", "7", "--phi", "1/0"],
        ["classify", "--a", "3", "--b", "5"],
        ["identify", "--fraction", "4/1"],
        ["minb", "--fraction", "abc", "--a", "3"],
        ["count", "--crossings", "2"],
        ["nonsense"],
    ])
    def test_invalid_input_exit_code(self, capsys, argv):
        # argparse-level errors exit directly, semantic ones are returned
        try:
            code = main(argv)
        except SystemExit as exc:
            code = exc.code
        assert code == 3


class TestEnumerate:
    def test_text_summary(self, capsys):
        code, out, _ = run(capsys, "enumerate", "--a", "3", "--b", "5", "--c", "7")
        assert code == 0
        lines = out.splitlines()
        assert sum(1 for line in lines if line.startswith("phi=")) == 13
        assert "distinct nontrivial: 1" in lines

    def test_json(self, capsys):
        data = run_json(capsys, "enumerate", "--a", "3", "--b", "5", "--c", "7", "--json")
        assert len(data["cells"]) == 13
        assert data["summary"]["distinct nontrivial"] == 1

    def test_csv(self, capsys):
        code, out, err = run(capsys, "enumerate", "--a", "3", "--b", "7", "--c", "8", "--csv")
        rows = list(csv.DictReader(io.StringIO(out)))
        report = run_json(capsys, "enumerate", "--a", "3", "--b", "7", "--c", "8", "--json")
        assert code == 0 and len(rows) == report["critical_count"] + 1
        zero = next(r for r in rows if r["phi"] == "0/1")
        assert zero["fraction"] == "-5/4" and zero["name"] == "5_1"
        assert err.strip().startswith("distinct nontrivial:")

    def test_trefoil_listed(self, capsys):
        data = run_json(capsys, "enumerate", "--a", "3", "--b", "4", "--c", "5", "--json")
        assert "3/2" in [r["fraction"] for r in data["cells"]]

    def test_half(self, capsys):
        data = run_json(capsys, "enumerate", "--a", "3", "--b", "5", "--c", "7", "--half", "--json")
        assert len(data["cells"]) == 7 and data["half_axis"] is True

    def test_json_matches_cache(self, capsys, tmp_path):
        data = run_json(capsys, "enumerate", "--a", "3", "--b", "5", "--c", "7", "--json", "--cache-dir", str(tmp_path))
        _, cached = cache_load((3, 5, 7), tmp_path)
        assert dumps(cached) == dumps(data)

    def test_env_cache_dir(self, capsys, tmp_path, monkeypatch):
        monkeypatch.setenv("CHEBKNOT_CACHE", str(tmp_path))
        run_json(capsys, "enumerate", "--a", "3", "--b", "4", "--c", "5", "--json")
        assert cache_path((3, 4, 5), tmp_path).exists()

    def test_cache_corruption_exit_code(self, capsys, tmp_path):
        run(capsys, "enumerate", "--a", "3", "--b", "5", "--c", "7", "--cache-dir", str(tmp_path))
        path = cache_path((3, 5, 7), tmp_path)
        text = path.read_text().split("\n")
        text[3] = text[3] + "7"
        path.write_text("\n".join(text))
        code, _, err = run(capsys, "enumerate", "--a", "3", "--b", "5", "--c", "7", "--cache-dir", str(tmp_path))
        assert code == 4 and "checksum" in err


class TestTwoBridgeCommands:
    def test_minb(self, capsys):
        rec = run_json(capsys, "minb", "--fraction", "29/12", "--a", "4")
        assert rec["b"] == 9 and rec["word"] == [1, 0, 1, 2, 1, 0, 1, 2]

    def test_minb_a3(self, capsys):
        rec = run_json(capsys, "minb", "--fraction", "5/2", "--a", "3")
        assert rec["b"] == 5

    def test_count(self, capsys):
        assert run_json(capsys, "count", "--crossings", "8")["count"] == 12

    def test_count_list(self, capsys):
        rec = run_json(capsys, "count", "--crossings", "4", "--list")
        assert rec["knots"] == [{"canonical": "5/2", "name": "4_1"}]

    def test_identify(self, capsys):
        rec = run_json(capsys, "identify", "--fraction=7/-6")
        assert rec["name"] == "7_1" and rec["canonical"] == "7/1"

    @pytest.mark.parametrize("form,frac,word", [
        ("pm1", "5/2", [1, 1, -1, -1, 1, 1]),
        ("pm12", "5/8", [1, -2, -1, -2]),
        ("regular", "5/2", [2, 2]),
        ("regular", "-2/7", [0, -3, -2]),
    ])
    def test_cf(self, capsys, form, frac, word):
        rec = run_json(capsys, "cf", f"--fraction={frac}", "--form", form)
        assert rec["word"] == word and rec["value"] == rec["fraction"]

    def test_cf_pm12_odd_denominator_uses_representative(self, capsys):
        rec = run_json(capsys, "cf", "--fraction", "5/3", "--form", "pm12")
        assert rec["value"] == "5/8"


def test_module_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "chebknots", "identify", "--fraction", "5/3"],
        capture_output=True, text=True, check=True,
    )
    assert json.loads(out.stdout)["name"] == "4_1"
