"""Exact-law simulation of the per-scale functional time series.

Each scale n is an independent scalar fractionally integrated ARMA
process whose spectral density is the scale-n model density.  One series
is drawn per scale in the zonal representation, or 2n + 1 independent
copies in the full representation.  Innovations are Gaussian with the
per-scale variance from the model's ARMA part; long memory of exponent
alpha enters as fractional integration of order d = alpha / 2 through a
truncated causal filter.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
import scipy.signal

from . import streams
from .errors import InvalidParameterError, MemoryBudgetError
from .harmonics import ZonalField, equiangular_grid, reconstruct_field
from .spectral_model import ModelSpec

MIN_FILTER_LAG = 64
DEFAULT_FILTER_LAG = 4096
DEFAULT_ELEMENT_BUDGET = 2**26


def frac_ma_coeffs(d: float, lag: int) -> np.ndarray:
    """Causal moving-average weights of fractional integration of order d.

    psi_0 = 1 and psi_k = psi_(k-1) * (k - 1 + d) / k, returned up to and
    including lag, so the result has lag + 1 entries.  All weights are
    nonnegative and decreasing from k = 1 on whenever d < 1.
    """
    if not 0.0 <= d < 1.0:
        raise InvalidParameterError("fractional order must lie in [0, 1)")
    if lag < 0:
        raise InvalidParameterError("lag must be nonnegative")
    psi = np.empty(lag + 1)
    psi[0] = 1.0
    for k in range(1, lag + 1):
        psi[k] = psi[k - 1] * (k - 1 + d) / k
    return psi


def simulate_scale(
    model: ModelSpec,
    n: int,
    length: int,
    burn_in: int,
    filter_lag: int,
    rng: np.random.Generator,
) -> np.ndarray:
    """One realization of the scale-n coefficient process.

    The construction filters a Gaussian innovation stretch of length
    burn_in + length + filter_lag through the moving-average part, the
    truncated fractional-integration filter, and the autoregressive
    recursion (zero initial state), then returns the final ``length``
    values.  With a fixed generator stream the output for a shorter
    length matches the start of a longer run up to rounding in the
    FFT-based filter, which couples replications across lengths.
    """
    if length < 1:
        raise InvalidParameterError("series length must be positive")
    if filter_lag < MIN_FILTER_LAG:
        raise InvalidParameterError(f"filter lag must be at least {MIN_FILTER_LAG}")
    if burn_in < filter_lag:
        raise InvalidParameterError("burn-in must be at least the filter lag")
    if not 1 <= n <= model.truncation:
        raise InvalidParameterError(f"scale {n} outside 1..{model.truncation}")

    total = burn_in + length + filter_lag
    sigma = math.sqrt(float(model.arma.sigma2[n - 1]))
    eps = sigma * rng.standard_normal(total)

    psi_row = model.arma.psi[n - 1]
    if psi_row.size:
        u = scipy.signal.lfilter(np.concatenate(([1.0], psi_row)), [1.0], eps)
    else:
        u = eps

    d = model.lrd.alpha(n) / 2.0
    if d > 0.0:
        weights = frac_ma_coeffs(d, filter_lag)
        w = scipy.signal.fftconvolve(u, weights)[:total]
    else:
        w = u

    phi_row = model.arma.phi[n - 1]
    if phi_row.size:
        x = scipy.signal.lfilter([1.0], np.concatenate(([1.0], -phi_row)), w)
    else:
        x = w
    return x[burn_in + filter_lag :]


@dataclass(frozen=True)
class SimConfig:
    """Inputs of one sample draw."""

    model: ModelSpec
    length: int
    seed: int
    representation: str = "zonal"
    burn_in: int = field(default=None)  # type: ignore[assignment]
    filter_lag: int = DEFAULT_FILTER_LAG
    replication: int = 0
    element_budget: int = DEFAULT_ELEMENT_BUDGET

    def __post_init__(self):
        if self.representation not in ("zonal", "full"):
            raise InvalidParameterError("representation must be 'zonal' or 'full'")
        if self.burn_in is None:
            object.__setattr__(self, "burn_in", 2 * self.filter_lag)


@dataclass(frozen=True)
class FunctionalSample:
    """Simulated coefficient series for scales 1..M.

    values is an (M, length) array in the zonal representation, or a list
    of (2n + 1, length) arrays in the full representation.  seed and
    replication record the stream provenance of the draw.
    """

    representation: str
    values: object
    length: int
    seed: int
    replication: int

    @property
    def truncation(self) -> int:
        if self.representation == "zonal":
            return int(self.values.shape[0])
        return len(self.values)

    def order_count(self, n: int) -> int:
        """Number of independent series carried for scale n."""
        return 1 if self.representation == "zonal" else 2 * n + 1

    def scale_series(self, n: int) -> np.ndarray:
        """Series of scale n with shape (order_count, length)."""
        if self.representation == "zonal":
            return self.values[n - 1][None, :]
        return self.values[n - 1]


def simulate_sample(config: SimConfig) -> FunctionalSample:
    """Draw every scale of the model, independently across scales and orders."""
    model = config.model
    m = model.truncation
    t = config.length
    if config.representation == "full":
        total_elements = sum((2 * n + 1) * t for n in range(1, m + 1))
        if total_elements > config.element_budget:
            raise MemoryBudgetError(
                f"full representation needs {total_elements} elements, "
                f"budget is {config.element_budget}"
            )
        values = []
        for n in range(1, m + 1):
            rows = np.empty((2 * n + 1, t))
            for j in range(1, 2 * n + 2):
                rng = streams.substream(
                    config.seed, streams.NOISE, config.replication, n, j
                )
                rows[j - 1] = simulate_scale(
                    model, n, t, config.burn_in, config.filter_lag, rng
                )
            values.append(rows)
    else:
        values = np.empty((m, t))
        for n in range(1, m + 1):
            rng = streams.substream(config.seed, streams.NOISE, config.replication, n, 0)
            values[n - 1] = simulate_scale(
                model, n, t, config.burn_in, config.filter_lag, rng
            )
    return FunctionalSample(
        representation=config.representation,
        values=values,
        length=t,
        seed=config.seed,
        replication=config.replication,
    )


def write_sample_csv(sample: FunctionalSample, path) -> None:
    """Persist a sample as rows (n, j, t, value); j = 0 marks zonal series."""
    path = Path(path)
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["n", "j", "t", "value"])
        for n in range(1, sample.truncation + 1):
            series = sample.scale_series(n)
            for row_idx in range(series.shape[0]):
                j = 0 if sample.representation == "zonal" else row_idx + 1
                for t_idx in range(sample.length):
                    writer.writerow([n, j, t_idx + 1, repr(float(series[row_idx, t_idx]))])


def write_snapshot_csv(
    sample: FunctionalSample,
    pole: np.ndarray,
    times,
    path,
    n_colat: int = 60,
    n_lon: int = 120,
) -> None:
    """Reconstruct the zonal field at chosen times on an equiangular grid.

    Writes rows (colatitude, longitude, value, t), time-major with the
    grid in colatitude-major order.
    """
    if sample.representation != "zonal":
        raise InvalidParameterError("snapshots need the zonal representation")
    times = [int(t) for t in times]
    for t in times:
        if not 1 <= t <= sample.length:
            raise InvalidParameterError(f"snapshot time {t} outside 1..{sample.length}")
    points, colat, lon = equiangular_grid(n_colat, n_lon)
    path = Path(path)
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["colatitude", "longitude", "value", "t"])
        for t in times:
            fld = ZonalField(pole=pole, coefficients=sample.values[:, t - 1])
            vals = reconstruct_field(fld, points)
            idx = 0
            for c in colat:
                for l in lon:
                    writer.writerow([repr(float(c)), repr(float(l)), repr(float(vals[idx])), t])
                    idx += 1
