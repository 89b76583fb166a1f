import csv
import json
import subprocess
import sys

import pytest

from rlbwt_order.cli import main


@pytest.fixture
def tiny(tmp_path):
    path = tmp_path / "tiny.txt"
    path.write_bytes(b"cacatcg")
    return path


class TestFitness:
    def test_prints_size_and_change(self, tiny, capsys):
        assert main(["fitness", "--file", str(tiny), "--ordering", "ascii"]) == 0
        out = capsys.readouterr().out
        assert "f=14" in out
        assert "C=+100.000" in out

    def test_marker_char(self, tiny, capsys):
        assert main(["fitness", "--file", str(tiny), "--marker", "$"]) == 0
        assert "f=14" in capsys.readouterr().out


class TestBwt:
    def test_round_trip_via_files(self, tiny, tmp_path, capsys):
        out = tmp_path / "tiny.bwt"
        back = tmp_path / "tiny.orig"
        assert main(["bwt", "--file", str(tiny), "--marker", "$", "--out", str(out)]) == 0
        assert out.read_bytes() == b"gcc$atca"
        assert main([
            "bwt", "--inverse", "--file", str(out), "--marker", "$", "--out", str(back),
        ]) == 0
        assert back.read_bytes() == b"cacatcg"

    def test_inverse_requires_marker(self, tiny, tmp_path, capsys):
        assert main(["bwt", "--inverse", "--file", str(tiny), "--out", "x"]) == 2
        assert "marker" in capsys.readouterr().err


class TestRle:
    def test_encode_decode_round_trip(self, tmp_path):
        src = tmp_path / "src.bin"
        enc = tmp_path / "enc.rle"
        dec = tmp_path / "dec.bin"
        src.write_bytes(b"aaab" * 200 + b"z" * 300)
        assert main(["rle", "--encode", "--in", str(src), "--out", str(enc)]) == 0
        assert len(enc.read_bytes()) % 2 == 0
        assert main(["rle", "--decode", "--in", str(enc), "--out", str(dec)]) == 0
        assert dec.read_bytes() == src.read_bytes()

    def test_decode_rejects_garbage(self, tmp_path, capsys):
        bad = tmp_path / "bad.rle"
        bad.write_bytes(b"abc")  # odd length
        assert main(["rle", "--decode", "--in", str(bad), "--out", str(tmp_path / "x")]) == 2


class TestSample:
    def test_writes_schema_csv(self, tiny, tmp_path, capsys):
        out = tmp_path / "samples.csv"
        assert main([
            "sample", "--file", str(tiny), "--samples", "24", "--seed", "3", "--out", str(out),
        ]) == 0
        with open(out, newline="") as fh:
            rows = list(csv.reader(fh))
        assert rows[0] == ["file", "sample_index", "fitness", "c"]
        assert len(rows) == 25
        assert rows[1][0] == "tiny.txt"
        assert "improvements=" in capsys.readouterr().out


class TestSearch:
    def test_record_and_trace(self, tiny, tmp_path, capsys):
        record_path = tmp_path / "run.json"
        trace_path = tmp_path / "trace.csv"
        code = main([
            "search", "--file", str(tiny), "--init", "ascii", "--spec", "swap:lex",
            "--budget", "500", "--out-record", str(record_path),
            "--out-trace", str(trace_path),
        ])
        assert code == 0
        record = json.loads(record_path.read_text())
        assert record["file"] == "tiny.txt"
        assert record["init"] == "ascii"
        assert record["spec"] == "swap:lex"
        assert record["terminated"] == "local-minimum"
        assert record["final_c"] < record["initial_c"]
        assert record["trace"][0] == [1, 14]
        assert sorted(record["final_ordering"]) == sorted(b"acgt")
        with open(trace_path, newline="") as fh:
            rows = list(csv.reader(fh))
        assert rows[0] == ["step", "fitness", "c"]
        assert len(rows) == len(record["trace"]) + 1

    def test_budget_cap(self, tiny, capsys):
        assert main([
            "search", "--file", str(tiny), "--init", "ascii", "--spec", "swap:lex",
            "--budget", "1",
        ]) == 0
        out = capsys.readouterr().out
        assert "steps=1" in out
        assert "terminated=budget" in out


class TestExhaustive:
    def test_csv_rows(self, tmp_path, capsys):
        path = tmp_path / "abc.txt"
        path.write_bytes(b"abcabcbbca")
        out = tmp_path / "exhaustive.csv"
        assert main(["exhaustive", "--file", str(path), "--out", str(out)]) == 0
        with open(out, newline="") as fh:
            rows = list(csv.reader(fh))
        assert rows[0] == ["file", "ordering", "fitness", "c"]
        assert len(rows) == 1 + 6  # 3! orderings
        assert "orderings=6" in capsys.readouterr().out

    def test_cap_exit_code(self, tmp_path, capsys):
        path = tmp_path / "wide.txt"
        path.write_bytes(bytes(range(65, 75)))  # sigma = 10
        assert main(["exhaustive", "--file", str(path), "--out", str(tmp_path / "x")]) == 2


class TestExperiment:
    def test_end_to_end(self, tmp_path, capsys):
        (tmp_path / "data.txt").write_bytes(b"abracadabra" * 20)
        cfg = tmp_path / "exp.cfg"
        cfg.write_text(
            "files = data.txt\n"
            "inits = ascii, least-frequent\n"
            "specs = swap:lex\n"
            "budget = 60\n"
            "samples = 5\n"
            "output_dir = results\n"
            "parallelism = 1\n"
        )
        assert main(["experiment", "--config", str(cfg)]) == 0
        out_dir = tmp_path / "results"
        assert (out_dir / "records.csv").exists()
        assert (out_dir / "summary.csv").exists()
        assert (out_dir / "samples.csv").exists()
        with open(out_dir / "summary.csv", newline="") as fh:
            rows = list(csv.reader(fh))
        assert rows[0] == ["file", "method", "min_c", "max_c", "mean_c", "std_c"]
        methods = {row[1] for row in rows[1:]}
        assert methods == {"ascii+swap:lex", "least-frequent+swap:lex", "sampling"}


class TestExitCodes:
    def test_usage_error_is_one(self, capsys):
        assert main(["fitness"]) == 1  # missing --file
        assert main(["no-such-command"]) == 1

    def test_runtime_error_is_two(self, tmp_path, capsys):
        assert main(["fitness", "--file", str(tmp_path / "missing.txt")]) == 2

    def test_console_script_help(self):
        proc = subprocess.run(
            [sys.executable, "-m", "rlbwt_order.cli", "--help"],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0
        assert "experiment" in proc.stdout
