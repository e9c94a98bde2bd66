"""Command-line interface: exit codes, report content, formats."""

import csv
import io
import json

import pytest

from solvsoliton.cli import main


def run(capsys, *args):
    code = main(list(args))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestVerify:
    def test_solvsoliton_case(self, capsys):
        code, out, _ = run(
            capsys, "verify", "--n", "2", "--rho", "1", "--c", "0", "--format", "json"
        )
        assert code == 0
        report = json.loads(out)
        assert report["status"] == "solvsoliton"
        assert report["lambda"] == "-8"
        assert report["delta_multiple"] == "6"
        assert report["ok"] is True

    def test_not_soliton_case(self, capsys):
        code, out, _ = run(
            capsys, "verify", "--n", "2", "--rho", "1", "--c", "1", "--format", "json"
        )
        assert code == 0  # prediction is not_soliton, so the run passes
        report = json.loads(out)
        assert report["status"] == "not_soliton"
        assert report["soliton_checklist"]["checklist"]["ad_normal"] is False
        assert report["soliton_checklist"]["witness"] is not None

    def test_nilsoliton_case(self, capsys):
        code, out, _ = run(
            capsys, "verify", "--n", "1", "--rho", "3", "--c", "2", "--format", "json"
        )
        assert code == 0
        report = json.loads(out)
        assert report["status"] == "nilsoliton"
        assert report["lambda"] == "-270/343"  # -3K with K = 90/343

    def test_text_format_mentions_checks(self, capsys):
        code, out, _ = run(capsys, "verify", "--n", "1", "--rho", "1", "--c", "0")
        assert code == 0
        assert "jacobi" in out and "status: nilsoliton" in out


class TestUsageErrors:
    def test_bad_rational(self, capsys):
        code, _, err = run(capsys, "verify", "--n", "2", "--rho", "abc", "--c", "0")
        assert code == 2
        assert "parameter error" in err

    def test_negative_c(self, capsys):
        code, _, _ = run(capsys, "verify", "--n", "2", "--rho", "1", "--c", "-1")
        assert code == 2

    def test_zero_rho(self, capsys):
        code, _, _ = run(capsys, "spectrum", "--n", "2", "--rho", "0", "--c", "1")
        assert code == 2

    def test_exceeds_max_n(self, capsys, monkeypatch):
        monkeypatch.setenv("SOLV_MAX_N", "3")
        code, _, err = run(capsys, "verify", "--n", "4", "--rho", "1", "--c", "0")
        assert code == 2
        assert "SOLV_MAX_N" in err

    def test_einstein_cost_guard(self, capsys):
        code, _, err = run(capsys, "einstein", "--n", "5", "--rho", "1", "--c", "1")
        assert code == 2
        assert "cost guard" in err

    def test_unknown_command(self, capsys):
        assert main(["frobnicate"]) == 2


class TestSpectrum:
    def test_json_c0(self, capsys):
        code, out, _ = run(
            capsys, "spectrum", "--n", "2", "--rho", "1", "--c", "0", "--format", "json"
        )
        assert code == 0
        report = json.loads(out)
        assert report["sigma"] == ["0", "2", "1", "1"]
        assert report["r"] == ["-8", "4", "-2", "-2"]
        assert report["sigma_multiplicities"] == [2, 1, 2, 2]

    def test_n1_r2(self, capsys):
        _, out, _ = run(
            capsys, "spectrum", "--n", "1", "--rho", "1", "--c", "1", "--format", "json"
        )
        report = json.loads(out)
        assert report["r"][1] == "4/27"
        assert report["r"][0] is None  # no r1 eigenvalue at n = 1

    def test_text_includes_multiplicities(self, capsys):
        _, out, _ = run(capsys, "spectrum", "--n", "3", "--rho", "1", "--c", "1")
        assert "sigma_multiplicities" in out
        assert "- 4" in out  # 2n-2 = 4 at n = 3


class TestJsonRoundTrip:
    @pytest.mark.parametrize("cmd", ["verify", "spectrum", "ricci", "soliton"])
    def test_byte_identical(self, capsys, cmd):
        _, out, _ = run(
            capsys, cmd, "--n", "2", "--rho", "1", "--c", "1", "--format", "json"
        )
        assert json.dumps(json.loads(out), sort_keys=True, indent=2) + "\n" == out


class TestSweep:
    def test_verdict_column(self, capsys):
        code, out, _ = run(
            capsys,
            "sweep",
            "--n",
            "2",
            "--rho",
            "1",
            "--c-grid",
            "0,1/10,1",
            "--format",
            "json",
        )
        assert code == 0
        rows = json.loads(out)
        assert [r["status"] for r in rows] == [
            "solvsoliton",
            "not_soliton",
            "not_soliton",
        ]

    def test_r3_sign_flip(self, capsys):
        # r3 numerator -rho^3 + c rho^2 + 8 c^2 rho + 8 c^3 at n=2, c=1
        # changes sign between rho = 3 and rho = 4
        _, out, _ = run(
            capsys,
            "sweep",
            "--n",
            "2",
            "--c",
            "1",
            "--rho-grid",
            "3,4",
            "--format",
            "json",
        )
        rows = json.loads(out)
        from fractions import Fraction

        r3_at_3 = Fraction(rows[0]["r3"])
        r3_at_4 = Fraction(rows[1]["r3"])
        assert r3_at_3 > 0 > r3_at_4

    def test_c0_rows_have_r3_equal_r4(self, capsys):
        _, out, _ = run(
            capsys,
            "sweep",
            "--n",
            "3",
            "--rho-grid",
            "1,2,5/2",
            "--c",
            "0",
            "--format",
            "json",
        )
        for row in json.loads(out):
            assert row["r3"] == row["r4"] == "-2"

    def test_csv_format(self, capsys):
        code, out, _ = run(
            capsys,
            "sweep",
            "--n",
            "2",
            "--rho-grid",
            "1,2",
            "--c-grid",
            "0,1",
            "--format",
            "csv",
        )
        assert code == 0
        rows = list(csv.DictReader(io.StringIO(out)))
        assert len(rows) == 4
        assert rows[0]["status"] == "solvsoliton"
        assert {"sigma1", "r1", "lambda", "trace_shape"} <= set(rows[0])

    def test_deterministic_row_order(self, capsys):
        args = [
            "sweep", "--n", "2", "--rho-grid", "1,2", "--c-grid", "0,1",
            "--format", "json",
        ]
        _, out1, _ = run(capsys, *args)
        _, out2, _ = run(capsys, *args)
        assert out1 == out2
        rows = json.loads(out1)
        assert [(r["rho"], r["c"]) for r in rows] == [
            ("1", "0"), ("1", "1"), ("2", "0"), ("2", "1"),
        ]


class TestEinstein:
    def test_small_case_passes(self, capsys):
        code, out, _ = run(
            capsys, "einstein", "--n", "1", "--rho", "1", "--c", "0", "--format", "json"
        )
        assert code == 0
        report = json.loads(out)
        assert report["ok"] is True
        assert float(report["max_residual"]) < 1e-8

    def test_deformed_case(self, capsys):
        code, out, _ = run(
            capsys, "einstein", "--n", "2", "--rho", "1", "--c", "1", "--format", "json"
        )
        assert code == 0
        assert float(json.loads(out)["max_residual"]) < 1e-6

    def test_csv_residual_dump(self, capsys, tmp_path):
        target = tmp_path / "residuals.csv"
        code, _, _ = run(
            capsys,
            "einstein",
            "--n",
            "1",
            "--rho",
            "1",
            "--c",
            "1",
            "--format",
            "csv",
            "--output",
            str(target),
        )
        assert code == 0
        rows = list(csv.DictReader(target.open()))
        assert {row["point"] for row in rows} == {"p_rho", "offcenter0", "offcenter1"}


class TestOutputFile:
    def test_report_written_to_file(self, capsys, tmp_path):
        target = tmp_path / "report.json"
        code, out, _ = run(
            capsys,
            "verify",
            "--n",
            "1",
            "--rho",
            "1",
            "--c",
            "0",
            "--format",
            "json",
            "--output",
            str(target),
        )
        assert code == 0 and out == ""
        assert json.loads(target.read_text())["status"] == "nilsoliton"
