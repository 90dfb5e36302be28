"""Render figures from sphlrd experiment CSV artifacts.

This package is strictly a CSV consumer: every number in a figure is
read from the documented artifact schemas, never recomputed, so the
plots cannot drift from the estimation pipeline that produced them.
"""

from .jobs import KINDS, FigureJob, JobError, SchemaError, load_job
from .readers import (
    read_histogram_csv,
    read_probability_csv,
    read_snapshot_csv,
    read_spectral_csv,
)
from .render import build_figure, render

__version__ = "0.1.0"

__all__ = [
    "KINDS",
    "FigureJob",
    "JobError",
    "SchemaError",
    "build_figure",
    "load_job",
    "read_histogram_csv",
    "read_probability_csv",
    "read_snapshot_csv",
    "read_spectral_csv",
    "render",
]
