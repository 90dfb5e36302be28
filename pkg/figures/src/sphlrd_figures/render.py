"""Figure construction and atomic rendering."""

from __future__ import annotations

import math
import os
import tempfile
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .jobs import FigureJob, JobError
from .readers import (
    read_histogram_csv,
    read_probability_csv,
    read_snapshot_csv,
    read_spectral_csv,
)

MAX_TICKS = 12


def _thin(values: np.ndarray) -> np.ndarray:
    """Every k-th grid value, keeping the exact data coordinates."""
    if values.size <= MAX_TICKS:
        return values
    step = math.ceil(values.size / MAX_TICKS)
    return values[::step]


def _new_figure(style: dict, default_size) -> plt.Figure:
    size = style.get("size", list(default_size))
    return plt.figure(figsize=(float(size[0]), float(size[1])))


def _histogram_grid(job: FigureJob) -> plt.Figure:
    bins = read_histogram_csv(job.inputs[0])
    scales = sorted(bins)
    panels = max(1, len(scales))
    ncols = min(5, panels)
    nrows = math.ceil(panels / ncols)
    fig = _new_figure(job.style, (3.0 * ncols, 2.4 * nrows))
    for idx in range(panels):
        ax = fig.add_subplot(nrows, ncols, idx + 1)
        if not scales:
            ax.set_axis_off()
            ax.text(0.5, 0.5, "no data", ha="center", va="center",
                    transform=ax.transAxes)
            continue
        n = scales[idx]
        edges, counts = bins[n]
        ax.bar(edges[:-1], counts, width=np.diff(edges), align="edge",
               edgecolor="black", linewidth=0.3)
        ax.set_title(f"n = {n}", fontsize=9)
        ax.tick_params(labelsize=7)
    if "title" in job.style:
        fig.suptitle(job.style["title"])
    fig.tight_layout()
    return fig


def _probability_contour(job: FigureJob) -> plt.Figure:
    scales, thresholds, matrix = read_probability_csv(job.inputs[0])
    fig = _new_figure(job.style, (7.0, 4.5))
    ax = fig.add_subplot(1, 1, 1)
    mesh = ax.pcolormesh(
        thresholds, scales, matrix, shading="nearest",
        cmap=job.style.get("cmap", "viridis"), vmin=0.0, vmax=1.0,
    )
    ax.set_xticks(_thin(thresholds))
    ax.set_yticks(_thin(scales))
    ax.tick_params(axis="x", labelrotation=90, labelsize=7)
    ax.tick_params(axis="y", labelsize=7)
    ax.set_xlabel("threshold")
    ax.set_ylabel("scale")
    fig.colorbar(mesh, ax=ax, label="empirical probability")
    if "title" in job.style:
        ax.set_title(job.style["title"])
    fig.tight_layout()
    return fig


def _spectral_curves(job: FigureJob) -> plt.Figure:
    fig = _new_figure(job.style, (7.0, 4.5))
    ax = fig.add_subplot(1, 1, 1)
    entries = 0
    for path in job.inputs:
        kind, series = read_spectral_csv(path)
        for n in sorted(series):
            omega, values = series[n]
            order = np.argsort(omega)
            ax.plot(omega[order], values.real[order],
                    label=f"{kind}, n = {n} ({Path(path).stem})", linewidth=0.9)
            entries += 1
    if job.style.get("log_scale"):
        ax.set_yscale("log")
    ax.set_xlabel("angular frequency")
    ax.set_ylabel("value")
    if entries <= MAX_TICKS:
        ax.legend(fontsize=7)
    if "title" in job.style:
        ax.set_title(job.style["title"])
    fig.tight_layout()
    return fig


def _sphere_snapshot(job: FigureJob) -> plt.Figure:
    snapshots = read_snapshot_csv(job.inputs[0])
    times = sorted(snapshots)
    if job.style.get("bare"):
        if len(times) != 1:
            raise JobError("bare snapshot rendering needs exactly one time")
        colats, lons, matrix = snapshots[times[0]]
        fig = _new_figure(job.style, (4.0, 2.0))
        ax = fig.add_axes([0.0, 0.0, 1.0, 1.0])
        ax.set_axis_off()
        ax.imshow(matrix, interpolation="nearest", aspect="auto",
                  cmap=job.style.get("cmap", "viridis"))
        return fig
    ncols = min(3, len(times))
    nrows = math.ceil(len(times) / ncols)
    fig = _new_figure(job.style, (4.0 * ncols, 2.6 * nrows))
    for idx, t in enumerate(times):
        colats, lons, matrix = snapshots[t]
        ax = fig.add_subplot(nrows, ncols, idx + 1)
        image = ax.imshow(
            matrix, interpolation="nearest", aspect="auto",
            cmap=job.style.get("cmap", "viridis"),
            extent=(lons[0], lons[-1], colats[-1], colats[0]),
        )
        ax.set_title(f"t = {t}", fontsize=9)
        ax.set_xlabel("longitude", fontsize=8)
        ax.set_ylabel("colatitude", fontsize=8)
        ax.tick_params(labelsize=7)
        fig.colorbar(image, ax=ax, shrink=0.85)
    if "title" in job.style:
        fig.suptitle(job.style["title"])
    fig.tight_layout()
    return fig


_BUILDERS = {
    "histogram-grid": _histogram_grid,
    "probability-contour": _probability_contour,
    "spectral-curves": _spectral_curves,
    "sphere-snapshot": _sphere_snapshot,
}


def build_figure(job: FigureJob) -> plt.Figure:
    """The matplotlib figure for a job, not yet written anywhere."""
    return _BUILDERS[job.kind](job)


def render(job: FigureJob) -> Path:
    """Render a job to its output path.

    The image lands under a temporary name in the target directory and
    replaces the output in one step, so a rerun never leaves a torn
    file behind.
    """
    fig = build_figure(job)
    out = Path(job.output)
    out.parent.mkdir(parents=True, exist_ok=True)
    dpi = int(job.style.get("dpi", 110))
    fd, tmp_name = tempfile.mkstemp(
        dir=out.parent, prefix=f".{out.name}.", suffix=out.suffix or ".png"
    )
    try:
        os.close(fd)
        fig.savefig(tmp_name, dpi=dpi)
        os.replace(tmp_name, out)
    except BaseException:
        if os.path.exists(tmp_name):
            os.unlink(tmp_name)
        raise
    finally:
        plt.close(fig)
    return out
