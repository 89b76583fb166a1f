"""Offline figure generation for rlbwt-order result CSVs."""

__version__ = "0.1.0"

from .io import SchemaError, load_records, load_samples, load_trace
from .figures import PlotRequest, render, render_boxgrid, render_raincloud, render_trace

__all__ = [
    "PlotRequest",
    "SchemaError",
    "load_records",
    "load_samples",
    "load_trace",
    "render",
    "render_boxgrid",
    "render_raincloud",
    "render_trace",
]
