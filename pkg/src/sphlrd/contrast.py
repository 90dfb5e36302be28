"""Minimum-contrast selection of the long-memory profile.

The weight W(omega, n) = w_tilde(n) |omega|^gamma with gamma > 1 turns
the per-scale densities into unit-mass shapes Upsilon = f / N; the
empirical contrast integrates the periodogram against -ln(Upsilon) W and
the estimate is the candidate whose per-scale contrast vector has the
smallest sup norm.  All operators are diagonal over scales, so the norm
is the largest absolute diagonal entry.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._quad import half_line_nodes
from .errors import ConfigurationError, DataError, InvalidParameterError, TableKindError
from .periodogram import SpectralTable, fourier_grid, model_table
from .spectral_model import LrdProfile, ModelSpec, arma_srd_factor, spectral_density

LOG_FLOOR = 1e-300


@dataclass(frozen=True)
class ContrastConfig:
    """Weighting exponent, per-scale weights, candidates, quadrature size.

    w_tilde lists one strictly positive weight per scale (all ones when
    omitted); gamma must exceed 1 so the weight kills the density
    singularity at the origin with room to spare.
    """

    gamma: float = 1.5
    w_tilde: tuple = None
    candidates: tuple = ()
    quad_panels: int = 80
    quad_order: int = 16

    def __post_init__(self):
        if not self.gamma > 1.0:
            raise InvalidParameterError("gamma must exceed 1")
        if self.w_tilde is not None:
            w = tuple(float(v) for v in self.w_tilde)
            if any(not math.isfinite(v) or v <= 0 for v in w):
                raise InvalidParameterError("scale weights must be positive and finite")
            object.__setattr__(self, "w_tilde", w)
        object.__setattr__(self, "candidates", tuple(self.candidates))

    def weights(self, truncation: int) -> np.ndarray:
        """Per-scale weights w_tilde(1..truncation)."""
        if self.w_tilde is None:
            return np.ones(truncation)
        if len(self.w_tilde) != truncation:
            raise InvalidParameterError(
                f"need {truncation} scale weights, got {len(self.w_tilde)}"
            )
        return np.asarray(self.w_tilde, dtype=float)


def normalizer(model: ModelSpec, theta: LrdProfile, config: ContrastConfig, n: int) -> float:
    """N_theta(n) = w_tilde(n) * integral of f_{n,theta}(w) |w|^gamma dw.

    The integrand extends continuously by 0 at the origin because
    gamma > 1 > alpha, so the composite Gauss panels converge fast.
    """
    nodes, weights = half_line_nodes(
        math.pi, panels=config.quad_panels, order=config.quad_order
    )
    dens = spectral_density(model, theta, n, nodes)
    integral = 2.0 * float(np.sum(weights * dens * nodes**config.gamma))
    return float(config.weights(model.truncation)[n - 1]) * integral


def upsilon(model: ModelSpec, theta: LrdProfile, config: ContrastConfig, n: int, omega):
    """Normalized density shape f_{n,theta}(omega) / N_theta(n).

    Positive and even, with unit integral against w_tilde(n)|omega|^gamma
    over [-pi, pi]; independent of the level B_n(0).
    """
    return spectral_density(model, theta, n, omega) / normalizer(model, theta, config, n)


def identity_residual(
    model: ModelSpec, theta: LrdProfile, config: ContrastConfig, n: int,
    nodes: int = 100_001,
) -> float:
    """How far the shape's weighted mass is from 1, by trapezoid rule.

    The composite trapezoid grid shares nothing with the Gauss panels
    behind the normalizer, so a small residual certifies both
    quadratures at once.  The integrand extends continuously by 0 at the
    origin because gamma exceeds every memory exponent.
    """
    grid = np.linspace(0.0, math.pi, nodes)
    w_n = float(config.weights(model.truncation)[n - 1])
    vals = np.zeros(nodes)
    vals[1:] = (
        upsilon(model, theta, config, n, grid[1:]) * w_n * grid[1:] ** config.gamma
    )
    return 2.0 * float(np.trapezoid(vals, grid)) - 1.0


def _contrast_weight(config: ContrastConfig, model: ModelSpec, scales, freqs):
    w = config.weights(model.truncation)
    scale_w = np.array([w[n - 1] for n in scales])
    return scale_w[:, None] * np.abs(freqs)[None, :] ** config.gamma


def empirical_contrast(
    table: SpectralTable, model: ModelSpec, theta: LrdProfile, config: ContrastConfig
) -> np.ndarray:
    """Per-scale contrast U(n) of a periodogram-like table against theta.

    U(n) = -(2 pi / T) * sum over nonzero bins of
    p_hat_n(w_k) ln Upsilon(w_k, n, theta) w_tilde(n) |w_k|^gamma.
    Upsilon is clamped at 1e-300 before the log as a defensive guard.
    """
    if table.kind == "fdft":
        raise TableKindError("contrast needs real-valued spectral tables")
    if np.isnan(table.values).any():
        raise DataError("spectral table contains NaN values")
    mask = table.frequencies != 0.0
    freqs = table.frequencies[mask]
    wmat = _contrast_weight(config, model, table.scales, freqs)
    out = np.empty(len(table.scales))
    for i, n in enumerate(table.scales):
        ups = np.maximum(upsilon(model, theta, config, n, freqs), LOG_FLOOR)
        out[i] = -np.sum(table.values[i, mask] * np.log(ups) * wmat[i])
    return (2 * math.pi / table.length) * out


def population_loss(
    model: ModelSpec,
    theta0: LrdProfile,
    theta: LrdProfile,
    config: ContrastConfig,
    length: int,
    scales=None,
) -> np.ndarray:
    """Per-scale loss L(n) = U_theta(n) - U_theta0(n) with the true
    density under theta0 standing in for the periodogram.

    Discretizes N_theta0(n) times a Kullback divergence between the unit
    shapes, hence nonnegative up to grid error, zero iff the profiles
    agree on the scale.
    """
    truth = model_table(model, theta0, length, scales=scales)
    return empirical_contrast(truth, model, theta, config) - empirical_contrast(
        truth, model, theta0, config
    )


@dataclass(frozen=True)
class ContrastTables:
    """Grid-ready log-shape tables shared by every replication.

    log_upsilon[c, i, k] holds ln Upsilon for candidate c, scale
    scales[i], nonzero Fourier bin k; weight[i, k] carries
    w_tilde(n)|w_k|^gamma; norms[c, i] the quadrature normalizers.
    """

    scales: tuple
    frequencies: np.ndarray
    log_upsilon: np.ndarray
    weight: np.ndarray
    norms: np.ndarray
    length: int


def precompute_tables(
    model: ModelSpec, config: ContrastConfig, length: int, scales=None
) -> ContrastTables:
    """Evaluate every candidate's log shape on the Fourier grid once.

    The result depends only on (model, config, T), so Monte-Carlo loops
    reuse it across replications.
    """
    if not config.candidates:
        raise ConfigurationError("no candidates configured")
    if scales is None:
        scales = tuple(range(1, model.truncation + 1))
    scales = tuple(int(n) for n in scales)
    freqs = fourier_grid(length)
    freqs = freqs[freqs != 0.0]
    b0 = model.b_eta0
    srd = np.stack([arma_srd_factor(model.arma, n, freqs) for n in scales])
    log_base = np.log(np.array([b0[n - 1] for n in scales])[:, None] * srd)
    log_sin = np.log(4.0 * np.sin(freqs / 2.0) ** 2)[None, :]
    count = len(config.candidates)
    log_ups = np.empty((count, len(scales), freqs.size))
    norms = np.empty((count, len(scales)))
    for c, theta in enumerate(config.candidates):
        if theta.truncation != model.truncation:
            raise ConfigurationError("candidate truncation differs from the model")
        alphas = np.array([theta.alpha(n) for n in scales])
        log_f = log_base - 0.5 * alphas[:, None] * log_sin
        for i, n in enumerate(scales):
            norms[c, i] = normalizer(model, theta, config, n)
        log_ups[c] = np.maximum(log_f - np.log(norms[c])[:, None], math.log(LOG_FLOOR))
    weight = _contrast_weight(config, model, scales, freqs)
    return ContrastTables(
        scales=scales,
        frequencies=freqs,
        log_upsilon=log_ups,
        weight=weight,
        norms=norms,
        length=length,
    )


@dataclass(frozen=True)
class ContrastReport:
    """Per-candidate contrast values, norms, and the selected profile."""

    scales: tuple
    values: np.ndarray
    norms: np.ndarray
    selected_index: int
    selected: LrdProfile

    def __post_init__(self):
        best = float(np.min(self.norms))
        if self.norms[self.selected_index] != best:
            raise InvalidParameterError("selected index must attain the minimal norm")


def select_theta(
    table: SpectralTable,
    model: ModelSpec,
    config: ContrastConfig,
    scales=None,
    tables: ContrastTables = None,
) -> ContrastReport:
    """Pick the candidate minimizing sup over scales of |U(n)|.

    Candidate evaluations are independent; the reduction takes the
    smallest norm and breaks ties by the lowest candidate index.  Pass
    precomputed tables to skip the per-candidate grid work.
    """
    if not config.candidates:
        raise ConfigurationError("no candidates configured")
    if table.kind == "fdft":
        raise TableKindError("selection needs real-valued spectral tables")
    if np.isnan(table.values).any():
        raise DataError("spectral table contains NaN values")
    if tables is None:
        tables = precompute_tables(model, config, table.length, scales=scales)
    elif scales is not None and tuple(int(n) for n in scales) != tables.scales:
        raise InvalidParameterError("precomputed tables cover different scales")
    if tables.length != table.length:
        raise InvalidParameterError("precomputed tables built for a different grid")
    mask = table.frequencies != 0.0
    rows = [table.scale_index(n) for n in tables.scales]
    phat = table.values[rows][:, mask] * tables.weight
    values = -(2 * math.pi / table.length) * np.einsum(
        "nk,cnk->cn", phat, tables.log_upsilon
    )
    norms = np.max(np.abs(values), axis=1)
    selected = int(np.argmin(norms))
    return ContrastReport(
        scales=tables.scales,
        values=values,
        norms=norms,
        selected_index=selected,
        selected=config.candidates[selected],
    )


def write_contrast_csv(report: ContrastReport, path) -> None:
    """Persist per-scale contrast rows, then per-candidate summary rows.

    Section one holds (candidate_index, n, U_value) candidate-major;
    section two starts with its own header and holds
    (candidate_index, norm, selected).
    """
    import csv
    from pathlib import Path

    with Path(path).open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["candidate_index", "n", "U_value"])
        for c in range(report.values.shape[0]):
            for i, n in enumerate(report.scales):
                writer.writerow([c, n, repr(float(report.values[c, i]))])
        writer.writerow(["candidate_index", "norm", "selected"])
        for c in range(report.values.shape[0]):
            writer.writerow(
                [c, repr(float(report.norms[c])), int(c == report.selected_index)]
            )
