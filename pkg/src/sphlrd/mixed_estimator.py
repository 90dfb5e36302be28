"""Mixed nonparametric/parametric spectral density estimation.

Scales declared short-range get the kernel-smoothed periodogram; the
remaining scales get the model density with the long-memory profile
selected by minimum contrast over those scales only.  Both parts live on
the sample's Fourier grid and together cover every scale exactly once.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .contrast import ContrastConfig, ContrastReport, ContrastTables, select_theta
from .errors import ConfigurationError, InvalidParameterError
from .periodogram import (
    SmoothingWindow,
    SpectralTable,
    fdft,
    model_table,
    periodogram_scale,
    smoothed_estimator,
)
from .simulator import FunctionalSample
from .spectral_model import ModelSpec


@dataclass(frozen=True)
class MixedEstimate:
    """Combined estimate plus the provenance needed to reproduce it.

    Either part may be absent when its scale set is empty; `degenerate`
    flags the pure-smoothing case where no contrast step ran.
    """

    truncation: int
    srd_set: frozenset
    srd_part: SpectralTable
    lrd_part: SpectralTable
    window: SmoothingWindow
    report: ContrastReport
    degenerate: bool = False

    def __post_init__(self):
        covered = []
        if self.srd_part is not None:
            covered.extend(self.srd_part.scales)
        if self.lrd_part is not None:
            covered.extend(self.lrd_part.scales)
        if sorted(covered) != list(range(1, self.truncation + 1)):
            raise InvalidParameterError("parts must partition the scale range")

    @property
    def selected(self):
        return None if self.report is None else self.report.selected


def estimate_mixed(
    sample: FunctionalSample,
    model: ModelSpec,
    config: ContrastConfig,
    srd_set,
    window: SmoothingWindow,
    tables: ContrastTables = None,
) -> MixedEstimate:
    """One periodogram pass feeding both halves of the estimator.

    Candidate profiles must vanish on every short-range scale so the
    contrast, taken over the remaining scales, can never attach memory
    where none is modeled.  With srd_set empty the result is the pure
    parametric plug-in; with srd_set covering all scales no contrast
    step runs and the estimate is flagged degenerate.  Precomputed
    contrast tables for the long-memory scales skip the per-call grid
    work in replication loops.
    """
    m = model.truncation
    srd = frozenset(int(n) for n in srd_set)
    if not srd <= set(range(1, m + 1)):
        raise ConfigurationError("short-range scales must lie in 1..truncation")
    lrd_scales = tuple(n for n in range(1, m + 1) if n not in srd)
    if lrd_scales:
        for c, theta in enumerate(config.candidates):
            if any(theta.alpha(n) != 0.0 for n in srd):
                raise ConfigurationError(
                    f"candidate {c} carries memory on a short-range scale"
                )
    ptable = periodogram_scale(fdft(sample))
    srd_part = None
    if srd:
        srd_part = smoothed_estimator(ptable, window, srd_scales=sorted(srd))
    lrd_part = None
    report = None
    if lrd_scales:
        report = select_theta(ptable, model, config, scales=lrd_scales, tables=tables)
        lrd_part = model_table(model, report.selected, sample.length, scales=lrd_scales)
    return MixedEstimate(
        truncation=m,
        srd_set=srd,
        srd_part=srd_part,
        lrd_part=lrd_part,
        window=window,
        report=report,
        degenerate=not lrd_scales,
    )


def write_mixed_csv(estimate: MixedEstimate, path) -> None:
    """Persist both parts as (part, n, omega, value) rows.

    Provenance rides in '#' comment lines before the header: window
    shape, bandwidth, selected candidate index (or 'none'), degenerate
    flag.  Parts are written srd first, scale-major, frequencies
    ascending.
    """
    import csv
    from pathlib import Path

    selected = "none" if estimate.report is None else str(estimate.report.selected_index)
    with Path(path).open("w", newline="") as fh:
        fh.write(f"# window: {estimate.window.shape}\n")
        fh.write(f"# bandwidth: {estimate.window.bandwidth!r}\n")
        fh.write(f"# selected_candidate: {selected}\n")
        fh.write(f"# degenerate: {int(estimate.degenerate)}\n")
        writer = csv.writer(fh)
        writer.writerow(["part", "n", "omega", "value"])
        for name, part in (("srd", estimate.srd_part), ("lrd", estimate.lrd_part)):
            if part is None:
                continue
            for i, n in enumerate(part.scales):
                for w, v in zip(part.frequencies, part.values[i]):
                    writer.writerow([name, n, repr(float(w)), repr(float(v))])
