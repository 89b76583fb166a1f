"""Command-line entry point.

Subcommands: bwt, rle, fitness, sample, search, exhaustive, experiment.
Exit codes: 0 on success, 1 on usage errors, 2 on runtime errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from .errors import RlbwtError
from .harness import (
    load_config,
    record_to_json,
    run_experiment,
    run_search_task,
    write_trace_csv,
)
from .inits import METHOD_NAMES, InitMethod, init_ordering
from .neighborhoods import SPEC_NAMES
from .rle import bytes_to_pairs, fitness, pairs_to_bytes, percent_change, rle_decode, rle_encode
from .search import exhaustive_search, random_sampling
from .text import Text, load_text
from .transform import bwt, inverse_bwt


class _Parser(argparse.ArgumentParser):
    """argparse defaults to exit code 2 on usage errors; we reserve 2 for
    runtime failures."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _parse_marker(value: str) -> int | None:
    if value == "auto":
        return None
    if len(value) == 1 and not value.isdigit():
        return ord(value)
    marker = int(value)
    if not 0 <= marker <= 255:
        raise ValueError(f"marker {marker} outside byte range")
    return marker


def _add_ordering_args(parser, flag="--ordering"):
    parser.add_argument(
        flag,
        default="ascii",
        choices=METHOD_NAMES,
        help="initial/selected ordering method (default: ascii)",
    )
    parser.add_argument("--seed", type=int, default=0, help="seed for the random method")
    parser.add_argument("--ordering-file", help="precedence file for the file method")


def _make_init(name: str, seed: int, path: str | None) -> InitMethod:
    if name == "random":
        return InitMethod("random", seed=seed)
    if name == "file":
        if path is None:
            raise ValueError("--ordering-file is required with the file method")
        return InitMethod("file", path=path)
    return InitMethod(name)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="rlbwt-order", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("bwt", help="transform a file (or invert a transform)")
    p.add_argument("--file", required=True)
    p.add_argument("--marker", type=_parse_marker, default="auto",
                   help="end marker: 'auto', a byte value, or a single character")
    p.add_argument("--out", required=True)
    p.add_argument("--inverse", action="store_true",
                   help="treat --file as a transform and recover the original bytes")
    _add_ordering_args(p)

    p = sub.add_parser("rle", help="run-length encode or decode a byte stream")
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--encode", action="store_true")
    mode.add_argument("--decode", action="store_true")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--out", required=True)

    p = sub.add_parser("fitness", help="print encoded size and percent change")
    p.add_argument("--file", required=True)
    p.add_argument("--marker", type=_parse_marker, default="auto")
    _add_ordering_args(p)

    p = sub.add_parser("sample", help="evaluate uniformly random orderings")
    p.add_argument("--file", required=True)
    p.add_argument("--marker", type=_parse_marker, default="auto")
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, help="per-sample CSV output path")

    p = sub.add_parser("search", help="one first-improvement local search run")
    p.add_argument("--file", required=True)
    p.add_argument("--marker", type=_parse_marker, default="auto")
    p.add_argument("--spec", required=True, choices=SPEC_NAMES, metavar="OPERATOR:ORDER",
                   help="one of " + ", ".join(SPEC_NAMES))
    p.add_argument("--budget", type=int, default=10_000_000)
    p.add_argument("--out-record", help="write the run record as JSON")
    p.add_argument("--out-trace", help="write the improvement trace as CSV")
    _add_ordering_args(p, flag="--init")

    p = sub.add_parser("exhaustive", help="evaluate every ordering of a small alphabet")
    p.add_argument("--file", required=True)
    p.add_argument("--marker", type=_parse_marker, default="auto")
    p.add_argument("--cap", type=int, default=8, help="refuse alphabets larger than this")
    p.add_argument("--out", required=True, help="per-ordering CSV output path")

    p = sub.add_parser("experiment", help="run a full grid from a config file")
    p.add_argument("--config", required=True)
    p.add_argument("--out-dir", help="override the config's output directory")

    return parser


def _cmd_bwt(args) -> int:
    if args.inverse:
        if args.marker is None:
            raise ValueError("--inverse requires an explicit --marker")
        blob = Path(args.file).read_bytes()
        payload = blob.replace(bytes([args.marker]), b"", 1)
        shadow = Text(payload, args.marker)
        ordering = init_ordering(
            _make_init(args.ordering, args.seed, args.ordering_file), shadow
        )
        recovered = inverse_bwt(blob, ordering)
        Path(args.out).write_bytes(recovered.data)
        print(f"recovered {recovered.n} bytes -> {args.out}")
        return 0
    t = load_text(args.file, args.marker)
    ordering = init_ordering(_make_init(args.ordering, args.seed, args.ordering_file), t)
    transformed = bwt(t, ordering)
    Path(args.out).write_bytes(transformed)
    print(f"wrote {len(transformed)} bytes (marker={t.end_marker}) -> {args.out}")
    return 0


def _cmd_rle(args) -> int:
    blob = Path(args.inp).read_bytes()
    if args.encode:
        out = pairs_to_bytes(rle_encode(blob))
    else:
        out = rle_decode(bytes_to_pairs(blob))
    Path(args.out).write_bytes(out)
    print(f"wrote {len(out)} bytes -> {args.out}")
    return 0


def _cmd_fitness(args) -> int:
    t = load_text(args.file, args.marker)
    ordering = init_ordering(_make_init(args.ordering, args.seed, args.ordering_file), t)
    f = fitness(t, ordering)
    print(f"f={f} C={percent_change(f, t.n):+.3f}")
    return 0


def _cmd_sample(args) -> int:
    t = load_text(args.file, args.marker)
    stats = random_sampling(t, args.samples, seed=args.seed)
    name = Path(args.file).name
    with open(args.out, "w", newline="") as fh:
        fh.write("file,sample_index,fitness,c\n")
        for idx, f in enumerate(stats.fitness_values):
            fh.write(f"{name},{idx},{f},{percent_change(f, t.n):.6f}\n")
    print(
        f"samples={stats.samples} min_c={stats.min_c:+.3f} max_c={stats.max_c:+.3f} "
        f"mean_c={stats.mean_c:+.3f} std_c={stats.std_c:.3f} improvements={stats.improvements}"
    )
    return 0


def _cmd_search(args) -> int:
    t = load_text(args.file, args.marker)  # validates early
    ordering = init_ordering(_make_init(args.init, args.seed, args.ordering_file), t)
    record = run_search_task(
        (args.file, t.end_marker, ordering.perm, args.init, args.spec, args.budget, args.seed)
    )
    if args.out_record:
        with open(args.out_record, "w", encoding="utf-8") as fh:
            json.dump(record_to_json(record), fh, indent=2)
            fh.write("\n")
    if args.out_trace:
        write_trace_csv(Path(args.out_trace), record.trace, record.file_bytes)
    print(
        f"init_c={record.initial_c:+.3f} final_c={record.final_c:+.3f} "
        f"steps={record.steps} hitting_step={record.hitting_step} terminated={record.terminated}"
    )
    return 0


def _cmd_exhaustive(args) -> int:
    t = load_text(args.file, args.marker)
    stats = exhaustive_search(t, sigma_cap=args.cap)
    name = Path(args.file).name
    with open(args.out, "w", newline="") as fh:
        fh.write("file,ordering,fitness,c\n")
        for ordering, f in stats.results:
            perm = " ".join(str(b) for b in ordering.perm)
            fh.write(f"{name},{perm},{f},{percent_change(f, t.n):.6f}\n")
    best = " ".join(str(b) for b in stats.best_ordering.perm)
    worst = " ".join(str(b) for b in stats.worst_ordering.perm)
    print(
        f"orderings={stats.evaluations} min_c={stats.min_c:+.3f} max_c={stats.max_c:+.3f} "
        f"mean_c={stats.mean_c:+.3f} std_c={stats.std_c:.3f}"
    )
    print(f"best: {best}")
    print(f"worst: {worst}")
    return 0


def _cmd_experiment(args) -> int:
    cfg = load_config(args.config)
    if args.out_dir:
        cfg.output_dir = Path(args.out_dir)
    t0 = time.perf_counter()
    records, summaries = run_experiment(cfg)
    elapsed = time.perf_counter() - t0
    print(
        f"ran {len(records)} runs, {len(summaries)} summary rows "
        f"in {elapsed:.1f}s -> {cfg.output_dir}"
    )
    return 0


_COMMANDS = {
    "bwt": _cmd_bwt,
    "rle": _cmd_rle,
    "fitness": _cmd_fitness,
    "sample": _cmd_sample,
    "search": _cmd_search,
    "exhaustive": _cmd_exhaustive,
    "experiment": _cmd_experiment,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse: usage error (1) or --help (0)
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except (RlbwtError, OSError, ValueError, ZeroDivisionError) as exc:
        print(f"rlbwt-order: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
