import csv
import io
import json
import shutil
import subprocess
import sys

import pytest

from thetacorr.cli import main, render
from thetacorr.partitions import Partition
from thetacorr.symbols import Symbol


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err
    return json.loads(out)


class TestSymbols:
    def test_sp6(self, capsys):
        doc = run_json(capsys, "symbols", "--group", "sp", "--n", "3")
        assert doc["count"] == 12 and len(doc["rows"]) == 12
        assert doc["families"] == 6
        assert doc["family_sizes"] == [1, 1, 1, 1, 4, 4]

    @pytest.mark.parametrize("eps", ["+", "-"])
    def test_o2(self, capsys, eps):
        assert run_json(capsys, "symbols", "--group", "o", "--n", "1", "--eps", eps)["count"] == 2

    def test_sp0(self, capsys):
        doc = run_json(capsys, "symbols", "--group", "sp", "--n", "0")
        assert doc["count"] == 1
        assert Symbol.parse(doc["rows"][0]["symbol"]).rank == 0

    def test_defect_filter(self, capsys):
        doc = run_json(capsys, "symbols", "--group", "sp", "--n", "2", "--defect", "-3")
        assert [r["symbol"] for r in doc["rows"]] == ["(- // 0 1 2)"]

    def test_gl(self, capsys):
        doc = run_json(capsys, "symbols", "--group", "gl", "--n", "3")
        assert [r["label"] for r in doc["rows"]] == [str(Partition.parse(x)) for x in ("3", "2,1", "1,1,1")]
        assert doc["rows"][0]["degree"] == 1


class TestTheta:
    def test_sp2_o2p(self, capsys):
        doc = run_json(capsys, "theta", "--pair", "sp-o", "--n", "1", "--nprime", "1", "--eps", "+")
        assert doc["count"] == 3 and len(doc["triples"]) == 3
        assert doc["pair"] == {"left": "Sp", "n": 1, "right": "O", "nprime": 1, "eps": "+"}

    def test_gl_lambda(self, capsys):
        doc = run_json(capsys, "theta", "--pair", "gl-gl", "--lambda", "1", "--nprime", "2")
        assert len(doc["triples"]) == 2
        assert all(t["l"] == [1] for t in doc["triples"])

    def test_sp2_o0(self, capsys):
        doc = run_json(capsys, "theta", "--pair", "sp-o", "--n", "1", "--nprime", "0", "--eps", "+")
        assert len(doc["triples"]) == 1

    def test_swapped_pair_mirrors(self, capsys):
        a = run_json(capsys, "theta", "--pair", "sp-o", "--n", "2", "--nprime", "2", "--eps", "-")
        b = run_json(capsys, "theta", "--pair", "o-sp", "--n", "2", "--nprime", "2", "--eps", "-")
        fwd = sorted((r["left"], r["right"], r["m"]) for r in a["rows"])
        back = sorted((r["right"], r["left"], r["m"]) for r in b["rows"])
        assert fwd == back

    @pytest.mark.parametrize("filt", ["underline", "overline", "omega"])
    def test_filters_are_subsets(self, capsys, filt):
        base = run_json(capsys, "theta", "--pair", "sp-o", "--n", "2", "--nprime", "2", "--eps", "+")
        sub = run_json(capsys, "theta", "--pair", "sp-o", "--n", "2", "--nprime", "2", "--eps", "+", "--filter", filt)
        whole = {(r["left"], r["right"]) for r in base["rows"]}
        if filt == "omega":
            # only the principal series is reached through Ω
            assert {(r["left"], r["right"]) for r in sub["rows"]} <= whole
        else:
            assert {(r["left"], r["right"]) for r in sub["rows"]} <= whole
            assert len({r["left"] for r in sub["rows"]}) == len(sub["rows"])

    def test_first_occurrence_and_conservation_columns(self, capsys):
        doc = run_json(capsys, "theta", "--pair", "sp-o", "--symbol", "/0,1,2", "--nprime", "4", "--eps", "+",
                       "--first-occurrence", "--conservation")
        (row,) = doc["rows"]
        assert row["first_occurrence"] == 4 and row["first_occurrence_dim"] == 8
        assert row["dim_plus"] + row["dim_minus"] + 2 * row["c_inferred"] == 4 * 2 + 2
        assert row["conserved"] is True

    def test_scan_limit_exit(self, capsys):
        code, out, err = run(capsys, "theta", "--pair", "sp-o", "--symbol", "/0,1,2", "--nprime", "4",
                             "--eps", "+", "--first-occurrence", "--scan-limit", "2")
        assert code == 3 and out == "" and "scan limit" in err

    def test_scan_limit_env(self, capsys, monkeypatch):
        monkeypatch.setenv("THETA_SCAN_LIMIT", "2")
        code, _, _ = run(capsys, "theta", "--pair", "sp-o", "--symbol", "/0,1,2", "--nprime", "4",
                         "--eps", "+", "--first-occurrence")
        assert code == 3

    def test_triples_round_trip(self, capsys):
        doc = run_json(capsys, "theta", "--pair", "sp-o", "--n", "2", "--nprime", "3", "--eps", "+")
        for t, r in zip(doc["triples"], doc["rows"]):
            assert str(Symbol.from_json(t["l"])) == r["left"]
            assert str(Symbol.from_json(t["r"])) == r["right"]


class TestWeylAndSeries:
    def test_weyl_dims(self, capsys):
        doc = run_json(capsys, "weyl", "--n", "3")
        assert doc["count"] == 10 and doc["order_check"] == 48

    def test_weyl_omega(self, capsys):
        doc = run_json(capsys, "weyl", "--omega", "SpO-case2", "--nbar", "1", "--nbar-prime", "1", "--reading", "corrected")
        assert doc["count"] >= 1 and all(r["m"] == 1 for r in doc["rows"])

    def test_series_shapes(self, capsys):
        doc = run_json(capsys, "series", "--group", "sp", "--n", "2", "--nu1", "1", "--nu-minus1", "1")
        assert doc["rows"]

    def test_series_support(self, capsys):
        doc = run_json(capsys, "series", "--group", "sp", "--n", "2", "--c", "1")
        assert "support" in doc


class TestOracle:
    def test_sp2_o2p_compare(self, capsys):
        doc = run_json(capsys, "oracle", "--pair", "sp2-o2p", "--q", "3", "--compare")
        assert doc["comparison"]["match"] is True
        assert len(doc["comparison"]["observed"]) == 3

    def test_gl1_gl1_matrix(self, capsys):
        doc = run_json(capsys, "oracle", "--pair", "gl1-gl1", "--q", "3")
        assert len(doc["matrix"]) == 2 and all(len(r) == 2 for r in doc["matrix"])
        assert doc["a"] == "1" and doc["q"] == 3

    def test_sp2_o1_split(self, capsys):
        doc = run_json(capsys, "oracle", "--pair", "sp2-o1", "--q", "3")
        assert doc["col_dims"] == [2, 1]

    def test_mismatch_exit(self, capsys):
        code, out, err = run(capsys, "oracle", "--pair", "gl1-gl2", "--q", "3", "--compare")
        assert code == 4
        doc = json.loads(out)
        assert set(doc["mismatches"]) == {"missing", "unexpected"}
        assert "differs" in err

    @pytest.mark.parametrize("argv", [("--pair", "sp2-o2p", "--q", "7"), ("--pair", "nope")])
    def test_guard_exit(self, capsys, argv):
        code, out, err = run(capsys, "oracle", *argv)
        assert code == 5 and out == "" and err.startswith("guard")


class TestErrors:
    @pytest.mark.parametrize("argv", [
        ("frobnicate",),
        ("symbols", "--group", "sp", "--n", "2", "--bogus"),
        ("symbols", "--group", "xx", "--n", "2"),
        ("symbols", "--group", "o", "--n", "1"),
        ("theta", "--pair", "sp-o", "--n", "1", "--nprime", "1"),
        ("theta", "--pair", "sp-o", "--symbol", "1/0", "--nprime", "1", "--eps", "+"),
        ("theta", "--pair", "gl-gl", "--n", "1"),
        ("series", "--group", "sp", "--n", "1", "--orbit", "bad"),
        ("weyl", "--omega", "SpO-case2"),
        (),
    ])
    def test_flag_errors(self, capsys, argv):
        code, out, err = run(capsys, *argv)
        assert code == 2 and out == "" and err.startswith("error")


class TestAudit:
    def test_audit_small(self, capsys):
        doc = run_json(capsys, "audit", "--max-n", "2")
        assert doc["ok"] is True
        assert all(r["ok"] for r in doc["rows"])


class TestFormats:
    ARGV = ("theta", "--pair", "sp-o", "--n", "2", "--nprime", "2", "--eps", "+")

    def test_determinism(self, capsys):
        for fmt in ("json", "csv", "pretty"):
            _, a, _ = run(capsys, *self.ARGV, "--format", fmt)
            _, b, _ = run(capsys, *self.ARGV, "--format", fmt)
            assert a == b

    def test_json_round_trip(self, capsys):
        _, out, _ = run(capsys, *self.ARGV)
        doc = json.loads(out)
        assert render(doc, "json") == out

    def test_csv(self, capsys):
        _, out, _ = run(capsys, *self.ARGV, "--format", "csv")
        rows = list(csv.DictReader(io.StringIO(out)))
        doc = run_json(capsys, *self.ARGV)
        assert [r["left"] for r in rows] == [r["left"] for r in doc["rows"]]
        assert [int(r["m"]) for r in rows] == [r["m"] for r in doc["rows"]]

    def test_pretty(self, capsys):
        _, out, _ = run(capsys, *self.ARGV, "--format", "pretty")
        lines = out.splitlines()
        assert any(line.startswith("# count:") for line in lines)
        header = next(line for line in lines if not line.startswith("#"))
        assert header.split()[:3] == ["left", "right", "m"]


@pytest.mark.skipif(shutil.which("thetacorr") is None, reason="console script not installed")
def test_console_script():
    res = subprocess.run(["thetacorr", "symbols", "--group", "sp", "--n", "1"], capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(res.stdout)["count"] == 2
    res = subprocess.run([sys.executable, "-m", "thetacorr.cli", "nope"], capture_output=True, text=True)
    assert res.returncode == 2 and res.stdout == ""
