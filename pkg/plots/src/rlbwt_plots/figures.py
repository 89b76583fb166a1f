"""Figure renderers: raincloud distributions, search traces, method box grids.

All output is deterministic for a fixed jitter seed: figure geometry is
pinned and the only randomness is the seeded point jitter.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .io import load_records, load_samples, load_trace

C_LABEL = "Size change C (%)"

KINDS = ("raincloud", "trace", "boxgrid")


@dataclass(frozen=True)
class PlotRequest:
    """One figure to produce: which renderer, which CSVs, where to write."""

    kind: str
    inputs: tuple[str, ...]
    out: str
    baseline: float | None = None
    seed: int = 0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown plot kind {self.kind!r}")
        if not self.inputs:
            raise ValueError("no input CSVs given")


def render(req: PlotRequest) -> Path:
    """Render one request to its output image; returns the written path."""
    renderer = {
        "raincloud": render_raincloud,
        "trace": render_trace,
        "boxgrid": render_boxgrid,
    }[req.kind]
    return renderer(list(req.inputs), req.out, baseline=req.baseline, seed=req.seed)


def _half_violin(ax, values: np.ndarray, pos: float) -> None:
    # a degenerate sample has no spread to estimate a density from
    if values.size < 2 or np.ptp(values) == 0:
        return
    parts = ax.violinplot([values], positions=[pos], widths=0.9, showextrema=False)
    for body in parts["bodies"]:
        verts = body.get_paths()[0].vertices
        verts[:, 0] = np.clip(verts[:, 0], None, pos)  # keep the left half
        body.set_facecolor("tab:green")
        body.set_alpha(0.35)


def render_raincloud(
    sample_paths: list[str | os.PathLike],
    out: str | os.PathLike,
    baseline: float | None = None,
    seed: int = 0,
) -> Path:
    """Distribution + box + jittered cloud of sampled C values, one group per
    file, with an optional horizontal baseline (e.g. the ASCII ordering)."""
    groups: dict[str, np.ndarray] = {}
    for path in sample_paths:
        for name, values in load_samples(path).items():
            groups[name] = (
                np.concatenate([groups[name], values]) if name in groups else values
            )
    rng = np.random.default_rng(seed)
    fig, ax = plt.subplots(figsize=(8, 5))
    positions = np.arange(1.0, len(groups) + 1.0)
    for pos, (name, values) in zip(positions, groups.items()):
        _half_violin(ax, values, pos)
        ax.boxplot(
            [values],
            positions=[pos],
            widths=0.08,
            showfliers=False,
            medianprops={"color": "black"},
        )
        jitter = 0.10 + rng.uniform(0.0, 0.22, size=values.size)
        ax.plot(pos + jitter, values, linestyle="", marker=".",
                markersize=2.5, alpha=0.35, color="tab:green")
    if baseline is not None:
        ax.axhline(baseline, color="tab:blue", linewidth=1.4, label="baseline ordering")
        ax.legend(loc="upper right")
    ax.set_xticks(positions)
    ax.set_xticklabels(groups.keys())
    ax.set_xlim(0.4, len(groups) + 0.8)
    ax.set_ylabel(C_LABEL)
    ax.set_xlabel("File")
    ax.set_title("Randomly sampled alphabet orderings")
    return _save(fig, out)


def render_trace(
    trace_paths: list[str | os.PathLike],
    out: str | os.PathLike,
    baseline: float | None = None,
    seed: int = 0,
) -> Path:
    """Fitness-over-evaluations lines, one per trace CSV."""
    fig, ax = plt.subplots(figsize=(8, 5))
    for path in trace_paths:
        steps, c = load_trace(path)
        label = Path(path).stem
        ax.plot(steps, c, drawstyle="steps-post", linewidth=1.2, label=label)
    if baseline is not None:
        ax.axhline(baseline, color="tab:blue", linewidth=1.0, linestyle="--",
                   label="baseline ordering")
    ax.set_xlabel("Objective evaluations")
    ax.set_ylabel(C_LABEL)
    ax.set_title("Local search progress")
    ax.legend(fontsize=7, ncols=2)
    return _save(fig, out)


def render_boxgrid(
    record_paths: list[str | os.PathLike],
    out: str | os.PathLike,
    baseline: float | None = None,
    seed: int = 0,
) -> Path:
    """Per-method box plots of final C and of steps used, from records.csv."""
    records = []
    for path in record_paths:
        records.extend(load_records(path))
    by_spec: dict[str, list] = {}
    for rec in records:
        by_spec.setdefault(rec.spec, []).append(rec)
    specs = sorted(by_spec)
    final_c = [[r.final_c for r in by_spec[s]] for s in specs]
    steps = [[r.steps for r in by_spec[s]] for s in specs]

    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(11, 5))
    ax1.boxplot(final_c, tick_labels=specs)
    ax1.set_ylabel(C_LABEL)
    ax1.set_title("Final compression by method")
    if baseline is not None:
        ax1.axhline(baseline, color="tab:blue", linewidth=1.0, linestyle="--")
    ax2.boxplot(steps, tick_labels=specs)
    ax2.set_ylabel("Objective evaluations")
    ax2.set_title("Steps by method")
    for ax in (ax1, ax2):
        ax.tick_params(axis="x", labelrotation=90, labelsize=7)
    return _save(fig, out)


def _save(fig, out: str | os.PathLike) -> Path:
    out = Path(out)
    fig.tight_layout()
    fig.savefig(out, dpi=120)
    plt.close(fig)
    return out
