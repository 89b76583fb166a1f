"""Readers for the harness CSV schemas.

Three layouts are understood, identified by their exact header rows:

  samples.csv  file,sample_index,fitness,c
  trace csv    step,fitness,c
  records.csv  file,bytes,sigma,init,spec,seed,initial_c,final_c,steps,
               hitting_step,terminated,wall_ms

Anything else raises SchemaError.
"""

from __future__ import annotations

import csv
import os
from dataclasses import dataclass

import numpy as np

SAMPLES_HEADER = ["file", "sample_index", "fitness", "c"]
TRACE_HEADER = ["step", "fitness", "c"]
RECORDS_HEADER = [
    "file", "bytes", "sigma", "init", "spec", "seed",
    "initial_c", "final_c", "steps", "hitting_step", "terminated", "wall_ms",
]


class SchemaError(Exception):
    """A CSV input does not match the documented harness schemas."""


def _read_rows(path: str | os.PathLike, expected_header: list[str]) -> list[list[str]]:
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows:
        raise SchemaError(f"{path}: empty file")
    if rows[0] != expected_header:
        raise SchemaError(
            f"{path}: expected header {','.join(expected_header)}, got {','.join(rows[0])}"
        )
    body = [row for row in rows[1:] if row]
    if not body:
        raise SchemaError(f"{path}: no data rows")
    if any(len(row) != len(expected_header) for row in body):
        raise SchemaError(f"{path}: ragged rows")
    return body


def load_samples(path: str | os.PathLike) -> dict[str, np.ndarray]:
    """Per-file arrays of sampled C values, in file order of appearance."""
    try:
        groups: dict[str, list[float]] = {}
        for fname, _idx, _fitness, c in _read_rows(path, SAMPLES_HEADER):
            groups.setdefault(fname, []).append(float(c))
    except ValueError as exc:
        raise SchemaError(f"{path}: {exc}") from exc
    return {name: np.asarray(values) for name, values in groups.items()}


def load_trace(path: str | os.PathLike) -> tuple[np.ndarray, np.ndarray]:
    """(steps, c) arrays of one search trace."""
    try:
        rows = _read_rows(path, TRACE_HEADER)
        steps = np.asarray([int(r[0]) for r in rows])
        c = np.asarray([float(r[2]) for r in rows])
    except ValueError as exc:
        raise SchemaError(f"{path}: {exc}") from exc
    return steps, c


@dataclass(frozen=True)
class RecordRow:
    file: str
    init: str
    spec: str
    final_c: float
    steps: int


def load_records(path: str | os.PathLike) -> list[RecordRow]:
    """The columns of records.csv that the figures consume."""
    try:
        rows = _read_rows(path, RECORDS_HEADER)
        return [
            RecordRow(file=r[0], init=r[3], spec=r[4], final_c=float(r[7]), steps=int(r[8]))
            for r in rows
        ]
    except ValueError as exc:
        raise SchemaError(f"{path}: {exc}") from exc
