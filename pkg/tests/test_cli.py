"""CLI flags, output blocks, exit codes, and file emission."""

import json

import pytest

from quanticipate.cli import main, parse_quantity


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestQuantityParsing:
    def test_plain_and_rational(self):
        assert parse_quantity("0.5") == 0.5
        assert parse_quantity("9/16") == 9 / 16
        assert parse_quantity("-3/4") == -0.75

    def test_pi_terms(self):
        import math
        assert parse_quantity("pi") == math.pi
        assert parse_quantity("2pi") == 2 * math.pi
        assert parse_quantity("pi/4") == math.pi / 4
        assert parse_quantity("-1.5pi") == -1.5 * math.pi

    def test_rejects_garbage(self):
        for bad in ("abc", "1/0", "", "pi/pizza"):
            with pytest.raises(ValueError):
                parse_quantity(bad)


class TestSweepCommand:
    def test_stats_block_fields(self, capsys):
        code, out, _ = run_cli(
            capsys, "sweep", "--dim", "3", "--order", "1",
            "--from", "0", "--to", "3", "--step", "0.01",
        )
        assert code == 0
        assert "Steps               300" in out
        for label in ("Non-narrow", "Degenerate", "Singular", "Positive",
                      "Zero", "Non-zero dimension", "Max. measure",
                      "Ave. variance", "Ave. probability", "Max. probability",
                      "Ave. anticipation", "Max. anticipation",
                      "Time of maximum"):
            assert label in out

    def test_show_max_prints_measure_table(self, capsys):
        code, out, _ = run_cli(
            capsys, "sweep", "--dim", "3", "--order", "1",
            "--from", "0", "--to", "1", "--step", "0.01", "--show-max",
        )
        assert code == 0
        assert "Maximum at T" in out
        assert "Index" in out and "Measure" in out

    def test_json_deterministic_with_seed(self, capsys):
        argv = ("random", "--spectrum", "random", "--dim", "5", "--order", "1",
                "--from", "0", "--to", "1", "--step", "0.01",
                "--measure", "random", "--seed", "11", "--json")
        code1, out1, _ = run_cli(capsys, *argv)
        code2, out2, _ = run_cli(capsys, *argv)
        assert code1 == code2 == 0
        assert out1 == out2
        payload = json.loads(out1)
        assert payload["seed"] == 11
        assert payload["stats"]["steps"] == 100

    def test_invalid_dimension_exits_one(self, capsys):
        code, _, err = run_cli(capsys, "sweep", "--dim", "2", "--order", "1")
        assert code == 1
        assert "2L + 1" in err


class TestSeekCommand:
    def test_first_positive_output(self, capsys):
        code, out, _ = run_cli(
            capsys, "seek", "--predicate", "positive", "--spectrum", "h-atom",
            "--dim", "3", "--order", "1", "--from", "0", "--step", "0.0001",
        )
        assert code == 0
        assert "T = 0.5625" in out
        assert "0.500000000" in out  # two half weights in the table
        lines = [l for l in out.split("\n") if l and l[0].isdigit()]
        assert len(lines) == 3  # one row per original eigenvalue

    def test_not_found_exits_two(self, capsys):
        code, _, err = run_cli(
            capsys, "seek", "--dim", "3", "--order", "1",
            "--from", "0", "--step", "0.0001", "--max-steps", "50",
        )
        assert code == 2
        assert "no hit" in err

    def test_repeat_chains_hits(self, capsys):
        code, out, _ = run_cli(
            capsys, "seek", "--predicate", "dim-change", "--dim", "3",
            "--order", "1", "--from", "0", "--step", "0.0001",
            "--repeat", "3", "--json",
        )
        assert code == 0
        hits = json.loads(out)["hits"]
        assert [round(h["T"], 4) for h in hits] == [0.5625, 0.5626, 1.6875]


class TestSingleCommand:
    def test_rational_from(self, capsys):
        code, out, _ = run_cli(
            capsys, "single", "--dim", "3", "--order", "1", "--from", "9/16",
        )
        assert code == 0
        assert "Steps               1" in out

    def test_parse_error_exits_one(self, capsys):
        code, _, err = run_cli(capsys, "single", "--from", "abc")
        assert code == 1
        assert "abc" in err

    def test_prescribed_measure_flow(self, capsys):
        third = "0.3333333333333333"
        code, out, _ = run_cli(
            capsys, "single", "--spectrum", "equidistant", "--dim", "3",
            "--order", "1", "--from", "1.0", "--measure", "prescribed",
            "--prescribed-measure", f"{third} {third} {third}", "--json",
        )
        assert code == 0
        record = json.loads(out)["record"]
        assert record["positive"]

    def test_bad_measure_sum_exits_one(self, capsys):
        code, _, err = run_cli(
            capsys, "single", "--dim", "3", "--order", "1", "--from", "1",
            "--measure", "prescribed", "--prescribed-measure", "0.4 0.4 0.4",
        )
        assert code == 1
        assert "sum" in err


class TestFileOutputs:
    def test_outputs_under_env_dir(self, capsys, tmp_path, monkeypatch):
        monkeypatch.setenv("QUANTICIPATE_OUTPUT_DIR", str(tmp_path))
        code, _, _ = run_cli(
            capsys, "sweep", "--dim", "3", "--order", "1",
            "--from", "0", "--to", "1", "--step", "0.01",
            "--stats-csv", "stats.csv", "--series-csv", "series.csv",
            "--plot", "plot.png",
        )
        assert code == 0
        assert (tmp_path / "stats.csv").exists()
        assert (tmp_path / "series.csv").exists()
        plots = list(tmp_path.glob("plot-*.png"))
        assert len(plots) == 1

    def test_absolute_path_wins_over_env(self, capsys, tmp_path, monkeypatch):
        monkeypatch.setenv("QUANTICIPATE_OUTPUT_DIR", str(tmp_path / "unused"))
        target = tmp_path / "direct.csv"
        code, _, _ = run_cli(
            capsys, "single", "--dim", "3", "--order", "1", "--from", "9/16",
            "--stats-csv", str(target),
        )
        assert code == 0
        assert target.exists()

    def test_stats_csv_appends_across_runs(self, capsys, tmp_path):
        target = tmp_path / "stats.csv"
        for _ in range(2):
            code, _, _ = run_cli(
                capsys, "single", "--dim", "3", "--order", "1",
                "--from", "9/16", "--stats-csv", str(target),
            )
            assert code == 0
        lines = target.read_text(encoding="utf-8").strip().split("\n")
        assert len(lines) == 3  # header + two rows
