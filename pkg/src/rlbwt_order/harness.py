"""Experiment grid execution and CSV/JSON persistence.

A grid is (files x inits x specs); the random initialization expands into a
fixed pool of seeded starts shared by every spec.  Runs are independent and
may be dispatched to a process pool; results are written in grid order so
that reruns of the same config produce byte-identical records (modulo the
wall-clock column).
"""

from __future__ import annotations

import csv
import json
import os
import re
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .errors import AlphabetFullError, EmptyGroupError, RlbwtError
from .inits import InitMethod, fixed_random_starts, init_ordering
from .neighborhoods import parse_spec
from .rle import fitness, percent_change
from .search import first_improvement_search, random_sampling
from .text import Ordering, Text, load_text

ENV_THREADS = "RLBWT_ORDER_THREADS"

RECORD_COLUMNS = (
    "file",
    "bytes",
    "sigma",
    "init",
    "spec",
    "seed",
    "initial_c",
    "final_c",
    "steps",
    "hitting_step",
    "terminated",
    "wall_ms",
)

SAMPLE_COLUMNS = ("file", "sample_index", "fitness", "c")
SUMMARY_COLUMNS = ("file", "method", "min_c", "max_c", "mean_c", "std_c")

_RANDOM_START_RE = re.compile(r"^random-\d+$")


@dataclass
class RunRecord:
    file: str
    file_bytes: int
    sigma: int
    init: str
    spec: str
    seed: int
    initial_c: float
    final_c: float
    steps: int
    hitting_step: int
    terminated: str
    wall_ms: int
    trace: list[tuple[int, int]] | None = None
    final_ordering: tuple[int, ...] | None = None

    def row(self) -> list[str]:
        return [
            self.file,
            str(self.file_bytes),
            str(self.sigma),
            self.init,
            self.spec,
            str(self.seed),
            f"{self.initial_c:.6f}",
            f"{self.final_c:.6f}",
            str(self.steps),
            str(self.hitting_step),
            self.terminated,
            str(self.wall_ms),
        ]


@dataclass(frozen=True)
class SummaryStats:
    min_c: float
    max_c: float
    mean_c: float
    std_c: float


@dataclass(frozen=True)
class SummaryRow:
    file: str
    method: str
    stats: SummaryStats


@dataclass
class ExperimentConfig:
    files: list[Path]
    inits: list[str] = field(default_factory=list)
    specs: list[str] = field(default_factory=list)
    budget: int = 1000
    samples: int = 0
    master_seed: int = 0
    output_dir: Path = Path("results")
    parallelism: int | None = None
    random_starts: int = 20
    ordering_file: Path | None = None
    write_traces: bool = False
    end_marker: int | None = None  # None = auto (smallest absent byte)

    def __post_init__(self):
        if not self.files:
            raise ValueError("config lists no files")
        if self.budget < 1:
            raise ValueError("budget must be >= 1")
        if self.samples < 0:
            raise ValueError("samples must be >= 0")


_BOOL_VALUES = {"true": True, "yes": True, "1": True, "false": False, "no": False, "0": False}


def load_config(path: str | os.PathLike) -> ExperimentConfig:
    """Parse the flat key=value config format ('#' comments, comma lists)."""
    raw: dict[str, str] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key = value")
            key, value = line.split("=", 1)
            raw[key.strip()] = value.strip()

    def split_list(value: str) -> list[str]:
        return [item.strip() for item in value.split(",") if item.strip()]

    base = Path(path).resolve().parent

    def as_path(value: str) -> Path:
        p = Path(value)
        return p if p.is_absolute() else base / p

    kwargs: dict = {}
    if "files" in raw:
        kwargs["files"] = [as_path(f) for f in split_list(raw.pop("files"))]
    if "inits" in raw:
        kwargs["inits"] = split_list(raw.pop("inits"))
    if "specs" in raw:
        kwargs["specs"] = split_list(raw.pop("specs"))
    for key in ("budget", "samples", "master_seed", "random_starts"):
        if key in raw:
            kwargs[key] = int(raw.pop(key))
    if "parallelism" in raw:
        kwargs["parallelism"] = int(raw.pop("parallelism"))
    if "output_dir" in raw:
        kwargs["output_dir"] = as_path(raw.pop("output_dir"))
    if "ordering_file" in raw:
        kwargs["ordering_file"] = as_path(raw.pop("ordering_file"))
    if "write_traces" in raw:
        value = raw.pop("write_traces").lower()
        if value not in _BOOL_VALUES:
            raise ValueError(f"write_traces must be a boolean, got {value!r}")
        kwargs["write_traces"] = _BOOL_VALUES[value]
    if "end_marker" in raw:
        value = raw.pop("end_marker")
        kwargs["end_marker"] = None if value == "auto" else int(value)
    if raw:
        raise ValueError(f"{path}: unknown config keys: {', '.join(sorted(raw))}")
    if "files" not in kwargs:
        raise ValueError(f"{path}: config lists no files")
    return ExperimentConfig(**kwargs)


def summarize(values: list[float]) -> SummaryStats:
    """Min/max/mean and population standard deviation of a non-empty group."""
    if not values:
        raise EmptyGroupError("cannot summarize an empty group")
    arr = np.asarray(values, dtype=np.float64)
    return SummaryStats(
        min_c=float(arr.min()),
        max_c=float(arr.max()),
        mean_c=float(arr.mean()),
        std_c=float(arr.std()),
    )


def method_label(init: str, spec: str) -> str:
    """Summary grouping key: random starts collapse into one 'random' method."""
    base = "random" if _RANDOM_START_RE.match(init) else init
    return f"{base}+{spec}"


def resolve_parallelism(requested: int | None) -> int:
    env = os.environ.get(ENV_THREADS)
    if env:
        return max(1, int(env))
    if requested is not None:
        return max(1, requested)
    return os.cpu_count() or 1


# ---------------------------------------------------------------------------
# worker-side execution; module level so tasks pickle cleanly

_TEXT_CACHE: dict[tuple[str, int | None], Text] = {}


def _load_cached(path: str, end_marker: int | None) -> Text:
    key = (path, end_marker)
    t = _TEXT_CACHE.get(key)
    if t is None:
        t = load_text(path, end_marker)
        _TEXT_CACHE[key] = t
    return t


def run_search_task(task: tuple) -> RunRecord:
    """Execute one search run.  task = (path, marker, perm, init_name,
    spec_name, budget, seed)."""
    path, marker, perm, init_name, spec_name, budget, seed = task
    t = _load_cached(path, marker)
    init = Ordering(perm)
    spec = parse_spec(spec_name, seed=seed)
    t0 = time.perf_counter()
    result = first_improvement_search(t, init, spec, budget=budget, seed=seed)
    wall_ms = int(round((time.perf_counter() - t0) * 1000))
    initial_f = result.trace[0][1]
    return RunRecord(
        file=Path(path).name,
        file_bytes=t.n,
        sigma=t.alphabet.sigma,
        init=init_name,
        spec=spec_name,
        seed=seed,
        initial_c=percent_change(initial_f, t.n),
        final_c=percent_change(result.best_fitness, t.n),
        steps=result.steps,
        hitting_step=result.hitting_step,
        terminated=result.terminated,
        wall_ms=wall_ms,
        trace=result.trace,
        final_ordering=result.best_ordering.perm,
    )


def run_sample_task(task: tuple) -> tuple[str, int, list[int], "SummaryStats", int]:
    """Execute one sampling run.  task = (path, marker, samples, seed)."""
    path, marker, samples, seed = task
    t = _load_cached(path, marker)
    stats = random_sampling(t, samples, seed=seed)
    summary = SummaryStats(stats.min_c, stats.max_c, stats.mean_c, stats.std_c)
    return (Path(path).name, t.n, stats.fitness_values, summary, stats.improvements)


def _dispatch(task: tuple):
    """Run one task, never raising: failures come back tagged so one bad run
    cannot abort a pooled grid."""
    kind = task[0]
    try:
        if kind == "search":
            return ("ok", run_search_task(task[1:]))
        return ("ok", run_sample_task(task[1:]))
    except Exception as exc:  # recorded by the caller, grid continues
        return ("err", (task, f"{type(exc).__name__}: {exc}"))


# ---------------------------------------------------------------------------
# grid construction and execution


def _expand_inits(cfg: ExperimentConfig, t: Text) -> list[tuple[str, Ordering]]:
    out: list[tuple[str, Ordering]] = []
    for name in cfg.inits:
        if name == "random":
            starts = fixed_random_starts(cfg.random_starts, cfg.master_seed, t)
            out.extend((f"random-{i:02d}", o) for i, o in enumerate(starts))
        elif name == "file":
            method = InitMethod("file", path=cfg.ordering_file)
            out.append((name, init_ordering(method, t)))
        else:
            out.append((name, init_ordering(InitMethod(name), t)))
    return out


def run_experiment(cfg: ExperimentConfig) -> tuple[list[RunRecord], list[SummaryRow]]:
    """Execute the full grid and write records/summary/sample CSVs.

    Files whose alphabet leaves no free end marker are skipped with a
    warning; failures of individual runs are logged to errors.csv and do
    not stop the grid.
    """
    out_dir = Path(cfg.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    workers = resolve_parallelism(cfg.parallelism)

    texts: list[tuple[Path, Text]] = []
    skipped: list[str] = []
    for path in cfg.files:
        try:
            texts.append((Path(path), load_text(path, cfg.end_marker)))
        except AlphabetFullError as exc:
            print(f"warning: skipping {path}: {exc}", file=sys.stderr)
            skipped.append(str(path))

    search_tasks: list[tuple] = []
    failures: list[tuple[str, str, str, str]] = []
    run_index = 0
    for path, t in texts:
        try:
            inits = _expand_inits(cfg, t)
        except RlbwtError as exc:
            print(f"warning: skipping inits for {path}: {exc}", file=sys.stderr)
            failures.append((path.name, "*", "*", str(exc)))
            continue
        for init_name, ordering in inits:
            for spec_name in cfg.specs:
                parse_spec(spec_name)  # fail fast on typos
                seed = cfg.master_seed + 10007 * (run_index + 1)
                search_tasks.append(
                    (
                        "search",
                        str(path),
                        t.end_marker,
                        ordering.perm,
                        init_name,
                        spec_name,
                        cfg.budget,
                        seed,
                    )
                )
                run_index += 1

    sample_tasks: list[tuple] = []
    if cfg.samples > 0:
        for path, t in texts:
            sample_tasks.append(("sample", str(path), t.end_marker, cfg.samples, cfg.master_seed))

    all_tasks = search_tasks + sample_tasks
    records: list[RunRecord] = []
    sample_results = []

    def consume(outcome, records_fh, records_writer):
        status, payload = outcome
        if status == "err":
            task, message = payload
            print(f"warning: run failed: {message}", file=sys.stderr)
            name = Path(task[1]).name if len(task) > 1 else "?"
            init = task[4] if task[0] == "search" else "sampling"
            spec = task[5] if task[0] == "search" else "-"
            failures.append((name, init, spec, message))
        elif isinstance(payload, RunRecord):
            records.append(payload)
            records_writer.writerow(payload.row())
            records_fh.flush()  # partial results survive interruption
        else:
            sample_results.append(payload)

    with open(out_dir / "records.csv", "w", newline="") as records_fh:
        records_writer = csv.writer(records_fh)
        records_writer.writerow(RECORD_COLUMNS)
        if workers > 1 and len(all_tasks) > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                for outcome in pool.map(_dispatch, all_tasks, chunksize=1):
                    consume(outcome, records_fh, records_writer)
        else:
            for task in all_tasks:
                consume(_dispatch(task), records_fh, records_writer)
    if cfg.write_traces:
        trace_dir = out_dir / "traces"
        trace_dir.mkdir(exist_ok=True)
        for rec in records:
            name = f"{rec.file}__{rec.init}__{rec.spec.replace(':', '-')}__{rec.seed}.csv"
            write_trace_csv(trace_dir / name, rec.trace, rec.file_bytes)

    summaries: list[SummaryRow] = []
    groups: dict[tuple[str, str], list[float]] = {}
    for rec in records:
        groups.setdefault((rec.file, method_label(rec.init, rec.spec)), []).append(rec.final_c)
    for (fname, method), values in groups.items():
        summaries.append(SummaryRow(fname, method, summarize(values)))

    if sample_results:
        sample_rows: list[tuple[str, int, int, float]] = []
        for fname, n, fitness_values, summary, _improvements in sample_results:
            summaries.append(SummaryRow(fname, "sampling", summary))
            for idx, f in enumerate(fitness_values):
                sample_rows.append((fname, idx, f, percent_change(f, n)))
        write_samples_csv(out_dir / "samples.csv", sample_rows)

    summaries.sort(key=lambda s: (s.file, s.method))
    write_summary_csv(out_dir / "summary.csv", summaries)

    if failures:
        with open(out_dir / "errors.csv", "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(("file", "init", "spec", "error"))
            writer.writerows(failures)

    metadata = {
        "version": __version__,
        "files": [str(p) for p in cfg.files],
        "skipped_files": skipped,
        "inits": cfg.inits,
        "specs": cfg.specs,
        "budget": cfg.budget,
        "samples": cfg.samples,
        "master_seed": cfg.master_seed,
        "random_starts": cfg.random_starts,
        "parallelism": workers,
        "std_kind": "population",
        "random_order_reshuffle": "per-improvement",
        "run_seed_scheme": "master_seed + 10007 * (grid_index + 1)",
    }
    with open(out_dir / "metadata.json", "w", encoding="utf-8") as fh:
        json.dump(metadata, fh, indent=2)
        fh.write("\n")

    return records, summaries


# ---------------------------------------------------------------------------
# CSV persistence


def write_records_csv(path: Path, records: list[RunRecord]) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(RECORD_COLUMNS)
        for rec in records:
            writer.writerow(rec.row())


def read_records_csv(path: Path) -> list[RunRecord]:
    records = []
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if tuple(reader.fieldnames or ()) != RECORD_COLUMNS:
            raise ValueError(f"{path}: unexpected columns {reader.fieldnames}")
        for row in reader:
            records.append(
                RunRecord(
                    file=row["file"],
                    file_bytes=int(row["bytes"]),
                    sigma=int(row["sigma"]),
                    init=row["init"],
                    spec=row["spec"],
                    seed=int(row["seed"]),
                    initial_c=float(row["initial_c"]),
                    final_c=float(row["final_c"]),
                    steps=int(row["steps"]),
                    hitting_step=int(row["hitting_step"]),
                    terminated=row["terminated"],
                    wall_ms=int(row["wall_ms"]),
                )
            )
    return records


def write_samples_csv(path: Path, rows: list[tuple[str, int, int, float]]) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(SAMPLE_COLUMNS)
        for fname, idx, f, c in rows:
            writer.writerow((fname, idx, f, f"{c:.6f}"))


def write_summary_csv(path: Path, summaries: list[SummaryRow]) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(SUMMARY_COLUMNS)
        for row in summaries:
            s = row.stats
            writer.writerow(
                (
                    row.file,
                    row.method,
                    f"{s.min_c:.3f}",
                    f"{s.max_c:.3f}",
                    f"{s.mean_c:.3f}",
                    f"{s.std_c:.3f}",
                )
            )


def write_trace_csv(path: Path, trace: list[tuple[int, int]], file_bytes: int) -> None:
    """Trace rows are (step, fitness, c): the start point plus improvements."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(("step", "fitness", "c"))
        for step, f in trace:
            writer.writerow((step, f, f"{percent_change(f, file_bytes):.6f}"))


def record_to_json(rec: RunRecord) -> dict:
    """A RunRecord as a JSON-ready dict (includes trace and final ordering)."""
    out = {
        "file": rec.file,
        "bytes": rec.file_bytes,
        "sigma": rec.sigma,
        "init": rec.init,
        "spec": rec.spec,
        "seed": rec.seed,
        "initial_c": rec.initial_c,
        "final_c": rec.final_c,
        "steps": rec.steps,
        "hitting_step": rec.hitting_step,
        "terminated": rec.terminated,
        "wall_ms": rec.wall_ms,
    }
    if rec.trace is not None:
        out["trace"] = [[step, f] for step, f in rec.trace]
    if rec.final_ordering is not None:
        out["final_ordering"] = list(rec.final_ordering)
    return out
