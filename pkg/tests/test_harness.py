import csv
import json
import random

import pytest

from rlbwt_order import EmptyGroupError
from rlbwt_order.harness import (
    ENV_THREADS,
    RECORD_COLUMNS,
    ExperimentConfig,
    load_config,
    method_label,
    read_records_csv,
    run_experiment,
    summarize,
)


def write_corpus(tmp_path, names=("one.txt", "two.txt")):
    rnd = random.Random(40)
    paths = []
    for name in names:
        data = bytes(rnd.choice(b"abcdef") for _ in range(300))
        p = tmp_path / name
        p.write_bytes(data)
        paths.append(p)
    return paths


def rows_without_wall(path):
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    return [row[:-1] for row in rows]


class TestConfig:
    def test_parse(self, tmp_path):
        (tmp_path / "a.txt").write_bytes(b"xy")
        (tmp_path / "b.txt").write_bytes(b"xy")
        cfg_path = tmp_path / "exp.cfg"
        cfg_path.write_text(
            "# demo config\n"
            "files = a.txt, b.txt\n"
            "inits = ascii, random\n"
            "specs = swap:lex, insert:revlex\n"
            "budget = 500\n"
            "samples = 10\n"
            "master_seed = 7\n"
            "random_starts = 4\n"
            "parallelism = 2\n"
            "write_traces = true\n"
            "output_dir = out\n"
        )
        cfg = load_config(cfg_path)
        assert [p.name for p in cfg.files] == ["a.txt", "b.txt"]
        assert cfg.files[0].is_absolute()
        assert cfg.inits == ["ascii", "random"]
        assert cfg.specs == ["swap:lex", "insert:revlex"]
        assert cfg.budget == 500
        assert cfg.samples == 10
        assert cfg.master_seed == 7
        assert cfg.random_starts == 4
        assert cfg.parallelism == 2
        assert cfg.write_traces is True
        assert cfg.output_dir == tmp_path / "out"

    def test_unknown_key_rejected(self, tmp_path):
        cfg_path = tmp_path / "exp.cfg"
        cfg_path.write_text("files = x\nbananas = 3\n")
        with pytest.raises(ValueError):
            load_config(cfg_path)

    def test_files_required(self, tmp_path):
        cfg_path = tmp_path / "exp.cfg"
        cfg_path.write_text("budget = 10\n")
        with pytest.raises(ValueError):
            load_config(cfg_path)


class TestSummarize:
    def test_single_value(self):
        s = summarize([-4.0])
        assert s.min_c == s.max_c == s.mean_c == -4.0
        assert s.std_c == 0.0

    def test_two_values(self):
        s = summarize([-1.0, -3.0])
        assert s.mean_c == -2.0
        assert s.std_c == 1.0  # population std
        assert s.min_c == -3.0 and s.max_c == -1.0

    def test_empty_group(self):
        with pytest.raises(EmptyGroupError):
            summarize([])


class TestMethodLabel:
    def test_random_starts_collapse(self):
        assert method_label("random-07", "swap:lex") == "random+swap:lex"
        assert method_label("random-19", "insert:lex") == "random+insert:lex"

    def test_fixed_methods_keep_names(self):
        assert method_label("first-appearance", "swap:lex") == "first-appearance+swap:lex"
        assert method_label("ascii", "swap:random") == "ascii+swap:random"


class TestRunExperiment:
    def make_cfg(self, tmp_path, out="out", **kwargs):
        files = write_corpus(tmp_path)
        defaults = dict(
            files=files,
            inits=["ascii", "random"],
            specs=["swap:lex", "insert:revlex"],
            budget=40,
            samples=0,
            master_seed=11,
            random_starts=3,
            output_dir=tmp_path / out,
            parallelism=1,
        )
        defaults.update(kwargs)
        return ExperimentConfig(**defaults)

    def test_grid_shape_and_outputs(self, tmp_path):
        cfg = self.make_cfg(tmp_path)
        records, summaries = run_experiment(cfg)
        # (1 fixed + 3 random starts) x 2 specs x 2 files
        assert len(records) == 16
        assert (cfg.output_dir / "records.csv").exists()
        assert (cfg.output_dir / "summary.csv").exists()
        assert (cfg.output_dir / "metadata.json").exists()
        with open(cfg.output_dir / "records.csv", newline="") as fh:
            header = next(csv.reader(fh))
        assert tuple(header) == RECORD_COLUMNS
        # random starts share one summary group per (file, spec)
        methods = {(s.file, s.method) for s in summaries}
        assert ("one.txt", "random+swap:lex") in methods
        assert ("one.txt", "ascii+swap:lex") in methods
        meta = json.loads((cfg.output_dir / "metadata.json").read_text())
        assert meta["std_kind"] == "population"

    def test_deterministic_rerun(self, tmp_path):
        cfg1 = self.make_cfg(tmp_path, out="out1")
        cfg2 = self.make_cfg(tmp_path, out="out2")
        run_experiment(cfg1)
        run_experiment(cfg2)
        assert rows_without_wall(cfg1.output_dir / "records.csv") == rows_without_wall(
            cfg2.output_dir / "records.csv"
        )
        assert (cfg1.output_dir / "summary.csv").read_bytes() == (
            cfg2.output_dir / "summary.csv"
        ).read_bytes()

    def test_parallel_matches_sequential(self, tmp_path):
        cfg1 = self.make_cfg(tmp_path, out="seq", parallelism=1)
        cfg2 = self.make_cfg(tmp_path, out="par", parallelism=2)
        run_experiment(cfg1)
        run_experiment(cfg2)
        assert rows_without_wall(cfg1.output_dir / "records.csv") == rows_without_wall(
            cfg2.output_dir / "records.csv"
        )

    def test_env_var_overrides_parallelism(self, tmp_path, monkeypatch):
        cfg = self.make_cfg(tmp_path, out="env", parallelism=1)
        monkeypatch.setenv(ENV_THREADS, "2")
        records, _ = run_experiment(cfg)
        assert len(records) == 16
        meta = json.loads((cfg.output_dir / "metadata.json").read_text())
        assert meta["parallelism"] == 2

    def test_records_csv_round_trip(self, tmp_path):
        cfg = self.make_cfg(tmp_path)
        records, _ = run_experiment(cfg)
        loaded = read_records_csv(cfg.output_dir / "records.csv")
        assert [r.row() for r in loaded] == [r.row() for r in records]

    def test_full_alphabet_file_skipped(self, tmp_path, capsys):
        full = tmp_path / "full.bin"
        full.write_bytes(bytes(range(256)) * 2)
        files = write_corpus(tmp_path) + [full]
        cfg = self.make_cfg(tmp_path, files=files)
        records, _ = run_experiment(cfg)
        assert len(records) == 16  # the full-alphabet file contributes nothing
        assert "full.bin" in capsys.readouterr().err
        meta = json.loads((cfg.output_dir / "metadata.json").read_text())
        assert meta["skipped_files"] == [str(full)]

    def test_sampling_only_experiment(self, tmp_path):
        cfg = self.make_cfg(tmp_path, inits=[], specs=[], samples=25)
        records, summaries = run_experiment(cfg)
        assert records == []
        assert {s.method for s in summaries} == {"sampling"}
        with open(cfg.output_dir / "samples.csv", newline="") as fh:
            rows = list(csv.reader(fh))
        assert rows[0] == ["file", "sample_index", "fitness", "c"]
        assert len(rows) == 1 + 25 * 2  # header + T rows per file

    def test_traces_written(self, tmp_path):
        cfg = self.make_cfg(tmp_path, inits=["ascii"], specs=["swap:lex"], write_traces=True)
        records, _ = run_experiment(cfg)
        trace_dir = cfg.output_dir / "traces"
        files = sorted(trace_dir.iterdir())
        assert len(files) == len(records) == 2
        with open(files[0], newline="") as fh:
            rows = list(csv.reader(fh))
        assert rows[0] == ["step", "fitness", "c"]
        assert int(rows[1][0]) == 1  # starting point recorded

    def test_failed_run_recorded_and_grid_continues(self, tmp_path, monkeypatch, capsys):
        import rlbwt_order.harness as harness_mod

        real = harness_mod.run_search_task

        def flaky(task):
            if task[4] == "insert:revlex":
                raise RuntimeError("synthetic failure")
            return real(task)

        monkeypatch.setattr(harness_mod, "run_search_task", flaky)
        cfg = self.make_cfg(tmp_path, inits=["ascii"], parallelism=1)
        records, _ = run_experiment(cfg)
        assert {r.spec for r in records} == {"swap:lex"}
        assert len(records) == 2  # one surviving spec per file
        assert (cfg.output_dir / "errors.csv").exists()
        assert "synthetic failure" in capsys.readouterr().err

    def test_final_never_worse_than_initial(self, tmp_path):
        cfg = self.make_cfg(tmp_path)
        records, _ = run_experiment(cfg)
        for rec in records:
            assert rec.final_c <= rec.initial_c
            assert rec.hitting_step <= rec.steps
