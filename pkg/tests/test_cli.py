import json

import pytest

from autochaosnet.cli import EXIT_CONFIG, EXIT_INGEST, EXIT_OK, EXIT_RUNTIME, main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestDigits:
    def test_prefix_slice(self, capsys):
        code, out, _ = run(capsys, "digits", "--count", "12")
        assert code == EXIT_OK
        assert "digits: 123456789101" in out
        assert "length: 1389" in out

    def test_final_number(self, capsys):
        code, out, _ = run(capsys, "digits", "--count", "3", "--offset", "1386")
        assert code == EXIT_OK
        assert "digits: 499" in out

    def test_out_of_range_slice(self, capsys):
        code, _, err = run(capsys, "digits", "--count", "20", "--offset", "1380")
        assert code == EXIT_CONFIG
        assert "1389" in err

    def test_missing_count_flag(self, capsys):
        code, _, _ = run(capsys, "digits")
        assert code == EXIT_CONFIG


class TestManifests:
    def test_table_lists_all_ten(self, capsys):
        code, out, _ = run(capsys, "manifests")
        assert code == EXIT_OK
        for dataset_id in ("iris", "sonar", "penguin", "statlog"):
            assert dataset_id in out

    def test_json_lines_parse(self, capsys):
        code, out, _ = run(capsys, "manifests", "--format", "json-lines")
        assert code == EXIT_OK
        rows = [json.loads(line) for line in out.strip().splitlines()]
        assert len(rows) == 10
        by_id = {r["dataset"]: r for r in rows}
        assert by_id["banknote"]["n_samples"] == 1372

    def test_csv_has_header(self, capsys):
        code, out, _ = run(capsys, "manifests", "--format", "csv")
        assert code == EXIT_OK
        assert out.splitlines()[0] == "dataset,n,k,m,class_counts,filename"


class TestExtract:
    def test_iris_tm_shape(self, capsys, cli_data_env, tmp_path):
        out_path = tmp_path / "features.csv"
        code, _, _ = run(capsys, "extract", "--dataset", "iris", "--model", "tm",
                         "--out", str(out_path))
        assert code == EXIT_OK
        lines = out_path.read_text().strip().splitlines()
        assert lines[0] == "label,mean_1,mean_2,mean_3,mean_4"
        assert len(lines) == 151
        assert all(len(line.split(",")) == 5 for line in lines[1:])

    def test_iris_tmfr_shape(self, capsys, cli_data_env, tmp_path):
        out_path = tmp_path / "features.csv"
        code, _, _ = run(capsys, "extract", "--dataset", "iris", "--out", str(out_path))
        assert code == EXIT_OK
        lines = out_path.read_text().strip().splitlines()
        assert len(lines) == 151
        assert all(len(line.split(",")) == 9 for line in lines[1:])

    def test_missing_file_leaves_no_partial_output(self, capsys, cli_data_env, tmp_path):
        out_path = tmp_path / "never.csv"
        code, _, err = run(capsys, "extract", "--dataset", "sonar", "--out", str(out_path))
        assert code == EXIT_INGEST
        assert "sonar" in err
        assert not out_path.exists()

    def test_unknown_dataset_id(self, capsys, cli_data_env, tmp_path):
        code, _, err = run(capsys, "extract", "--dataset", "nope",
                           "--out", str(tmp_path / "x.csv"))
        assert code == EXIT_CONFIG
        assert "known ids" in err

    def test_chaosnet_is_not_extractable(self, capsys, cli_data_env, tmp_path):
        code, _, _ = run(capsys, "extract", "--dataset", "iris", "--model", "chaosnet",
                         "--out", str(tmp_path / "x.csv"))
        assert code == EXIT_CONFIG


class TestEval:
    def test_report_fields_on_stdout(self, capsys, cli_data_env):
        code, out, _ = run(capsys, "eval", "--dataset", "iris", "--model", "tmfr")
        assert code == EXIT_OK
        assert "dataset: iris" in out
        assert "macro_f1:" in out
        assert "Iris Setosa" in out

    def test_byte_identical_reruns(self, capsys, cli_data_env):
        code_a, out_a, _ = run(capsys, "eval", "--dataset", "iris", "--model", "tm")
        code_b, out_b, _ = run(capsys, "eval", "--dataset", "iris", "--model", "tm")
        assert code_a == code_b == EXIT_OK
        assert out_a == out_b

    def test_csv_format(self, capsys, cli_data_env):
        code, out, _ = run(capsys, "eval", "--dataset", "iris", "--format", "csv")
        assert code == EXIT_OK
        header, row = out.strip().splitlines()
        assert header.startswith("dataset,model,macro_f1")
        assert len(row.split(",")) == len(header.split(","))

    def test_json_lines_format_and_out_file(self, capsys, cli_data_env, tmp_path):
        out_path = tmp_path / "report.json"
        code, out, _ = run(capsys, "eval", "--dataset", "iris",
                           "--format", "json-lines", "--out", str(out_path))
        assert code == EXIT_OK
        payload = json.loads(out.strip())
        assert payload["dataset"] == "iris"
        assert json.loads(out_path.read_text()) == payload

    def test_flag_validation_happens_before_compute(self, capsys, cli_data_env):
        code, _, _ = run(capsys, "eval", "--dataset", "iris", "--rule", "median")
        assert code == EXIT_CONFIG

    def test_min_rule_runs(self, capsys, cli_data_env):
        code, out, _ = run(capsys, "eval", "--dataset", "iris", "--rule", "min")
        assert code == EXIT_OK
        assert "rule: min" in out


class TestBench:
    def test_cartesian_product_rows(self, capsys, cli_data_env):
        code, out, _ = run(
            capsys, "bench", "--dataset", "iris", "wine",
            "--model", "tm", "tmfr", "--iterations", "1",
        )
        assert code == EXIT_OK
        lines = out.strip().splitlines()
        assert len(lines) == 1 + 4  # header + 2 datasets x 2 models

    def test_single_iteration_reports_zero_std(self, capsys, cli_data_env, tmp_path):
        out_path = tmp_path / "bench.csv"
        code, _, _ = run(
            capsys, "bench", "--dataset", "iris", "--model", "tm",
            "--iterations", "1", "--out", str(out_path), "--format", "csv",
        )
        assert code == EXIT_OK
        header, row = out_path.read_text().strip().splitlines()
        cells = dict(zip(header.split(","), row.split(",")))
        assert cells["std_s"] == "0.000000"
        assert float(cells["mean_s"]) > 0.0
        assert cells["iterations"] == "1"

    def test_missing_dataset_continues_and_flags_failure(self, capsys, cli_data_env):
        code, out, err = run(
            capsys, "bench", "--dataset", "sonar", "iris",
            "--model", "tm", "--iterations", "1",
        )
        assert code == EXIT_RUNTIME
        assert "sonar" in err
        assert "iris" in out  # the healthy cell still ran

    def test_bad_iterations_rejected(self, capsys, cli_data_env):
        code, _, _ = run(capsys, "bench", "--dataset", "iris", "--model", "tm",
                         "--iterations", "0")
        assert code == EXIT_CONFIG

    def test_json_lines_output(self, capsys, cli_data_env, tmp_path):
        out_path = tmp_path / "bench.jsonl"
        code, _, _ = run(
            capsys, "bench", "--dataset", "iris", "--model", "tm", "tmfr",
            "--iterations", "2", "--out", str(out_path), "--format", "json-lines",
        )
        assert code == EXIT_OK
        rows = [json.loads(line) for line in out_path.read_text().strip().splitlines()]
        assert [r["model"] for r in rows] == ["tm", "tmfr"]
        assert all(r["iterations"] == 2 for r in rows)
        assert all(r["std_s"] >= 0.0 for r in rows)
