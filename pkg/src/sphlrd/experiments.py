"""Monte-Carlo driver and error metrics for scenario evaluation.

A plan walks the scenario's (T, R) grid.  Replications are seeded by
their index alone, so results are identical no matter how work is
spread across processes; each replication's outcome is persisted as a
small JSON file and reruns skip work already on disk.  Summaries land
in one CSV per metric with a JSON metadata sidecar; wall-clock figures
stay out of the CSVs so they compare byte for byte across runs.
"""

from __future__ import annotations

import json
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ._quad import half_line_nodes
from .contrast import precompute_tables, select_theta
from .errors import ConfigurationError, DataError
from .mixed_estimator import estimate_mixed
from .periodogram import SpectralTable, fdft, model_table, periodogram_scale
from .scenarios import Scenario
from .spectral_model import LrdProfile, ModelSpec, spectral_density
from .simulator import simulate_sample

MIN_HIST_BINS = 10
L1_BREAKPOINT = math.pi / 3.0


def l1_error(model: ModelSpec, theta0: LrdProfile, theta_hat: LrdProfile, n: int) -> float:
    """L1 distance between the scale-n densities under two profiles.

    The integrand has a kink where 4 sin^2(omega/2) crosses 1, so the
    graded panels carry a breakpoint there; singularities at the origin
    are integrable because every exponent stays below 1.
    """
    nodes, weights = half_line_nodes(math.pi, breakpoints=(L1_BREAKPOINT,))
    gap = spectral_density(model, theta0, n, nodes) - spectral_density(
        model, theta_hat, n, nodes
    )
    return 2.0 * float(np.sum(weights * np.abs(gap)))


def temporal_mean_abs_error(
    fhat: SpectralTable, model: ModelSpec, theta0: LrdProfile, n: int
) -> float:
    """Mean absolute deviation from the true density over nonzero bins."""
    mask = fhat.frequencies != 0.0
    truth = spectral_density(model, theta0, n, fhat.frequencies[mask])
    row = fhat.values[fhat.scale_index(n)][mask]
    return float(np.mean(np.abs(row - truth)))


def empirical_probabilities(errors, thresholds) -> np.ndarray:
    """Fraction of replications whose error exceeds each threshold.

    Exactly nonincreasing in the threshold by construction.
    """
    errors = np.sort(np.asarray(errors, dtype=float))
    if errors.size == 0:
        raise ConfigurationError("need at least one error value")
    thresholds = np.asarray(thresholds, dtype=float)
    below = np.searchsorted(errors, thresholds, side="right")
    return (errors.size - below) / errors.size


def histogram_edges(values) -> np.ndarray:
    """Freedman-Diaconis bin edges with a floor of MIN_HIST_BINS bins."""
    values = np.asarray(values, dtype=float)
    lo, hi = float(np.min(values)), float(np.max(values))
    if hi == lo:
        return np.linspace(lo - 0.5, hi + 0.5, MIN_HIST_BINS + 1)
    q75, q25 = np.percentile(values, [75, 25])
    width = 2.0 * (q75 - q25) / values.size ** (1.0 / 3.0)
    bins = MIN_HIST_BINS if width <= 0 else max(MIN_HIST_BINS, math.ceil((hi - lo) / width))
    return np.linspace(lo, hi, bins + 1)


@dataclass(frozen=True)
class ExperimentPlan:
    """A scenario bound to an output directory, with optional grid overrides."""

    scenario: Scenario
    out_dir: Path
    t_list: tuple = None
    r_list: tuple = None

    def __post_init__(self):
        object.__setattr__(self, "out_dir", Path(self.out_dir))
        t_list = self.scenario.t_list if self.t_list is None else tuple(self.t_list)
        r_list = self.scenario.r_list if self.r_list is None else tuple(self.r_list)
        if min(t_list) < 2 or min(r_list) < 1:
            raise ConfigurationError("plan needs T >= 2 and R >= 1")
        object.__setattr__(self, "t_list", t_list)
        object.__setattr__(self, "r_list", r_list)


@dataclass(frozen=True)
class ReplicationSummary:
    """Aggregates for one (T, R) cell."""

    scenario: str
    length: int
    replications: int
    scales: tuple
    thresholds: np.ndarray
    probabilities: np.ndarray
    histograms: dict
    mqe: dict
    selection: np.ndarray
    elapsed: tuple


@dataclass
class _Context:
    """Per-run state shared with worker processes via fork."""

    scenario: Scenario
    lrd_scales: tuple
    srd_scales: tuple
    tables: dict
    srd_truth: dict
    rep_dirs: dict
    config_hash: str


_CTX: _Context = None


def _atomic_write(path: Path, text: str) -> None:
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(text)
    os.replace(tmp, path)


def _payload_core(t: int, rep: int) -> dict:
    ctx = _CTX
    scenario = ctx.scenario
    sample = simulate_sample(scenario.sim_config(t, rep))
    out = {
        "scenario": scenario.name,
        "config_hash": ctx.config_hash,
        "seed": scenario.seed,
        "length": t,
        "replication": rep,
    }
    if scenario.kind == "mixed":
        est = estimate_mixed(
            sample,
            scenario.model,
            scenario.contrast_config,
            scenario.srd_set,
            scenario.window,
            tables=ctx.tables.get(t),
        )
        if est.report is not None:
            out["selected_index"] = est.report.selected_index
        truth = ctx.srd_truth[t]
        mask = est.srd_part.frequencies != 0.0
        diff = est.srd_part.values[:, mask] - truth
        out["srd_sq"] = [float(v) for v in np.mean(diff**2, axis=1)]
        out["srd_abs"] = [float(v) for v in np.mean(np.abs(diff), axis=1)]
    else:
        table = periodogram_scale(fdft(sample, method="fft"))
        report = select_theta(
            table,
            scenario.model,
            scenario.contrast_config,
            scales=ctx.lrd_scales,
            tables=ctx.tables[t],
        )
        out["selected_index"] = report.selected_index
    return out


def _run_rep(args) -> dict:
    t, rep = args
    path = _CTX.rep_dirs[t] / f"rep_{rep:05d}.json"
    if path.exists():
        payload = json.loads(path.read_text())
        for key, expect in (
            ("scenario", _CTX.scenario.name),
            ("config_hash", _CTX.config_hash),
            ("seed", _CTX.scenario.seed),
            ("length", t),
            ("replication", rep),
        ):
            if payload.get(key) != expect:
                raise DataError(
                    f"stale replication file {path}: {key} is "
                    f"{payload.get(key)!r}, expected {expect!r}"
                )
        return payload
    start = time.perf_counter()
    payload = _payload_core(t, rep)
    payload["elapsed"] = time.perf_counter() - start
    _atomic_write(path, json.dumps(payload, sort_keys=True))
    return payload


def _candidate_lookups(scenario: Scenario, scales, lengths):
    """Per-candidate error tables shared by all replications.

    Returns (l1, tmae, sq): l1 indexed [candidate][scale position]; the
    grid metrics additionally keyed by sample size.
    """
    model = scenario.model
    theta0 = scenario.model.lrd
    cands = scenario.contrast_config.candidates
    l1 = np.array(
        [[l1_error(model, theta0, theta, n) for n in scales] for theta in cands]
    )
    tmae, sq = {}, {}
    for t in lengths:
        truth = model_table(model, theta0, t, scales=scales)
        gaps = np.stack(
            [
                model_table(model, theta, t, scales=scales).values - truth.values
                for theta in cands
            ]
        )
        tmae[t] = np.mean(np.abs(gaps), axis=2)
        sq[t] = np.mean(gaps**2, axis=2)
    return l1, tmae, sq


def _write_csv(path: Path, header, rows) -> None:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(str(v) for v in row))
    _atomic_write(path, "\n".join(lines) + "\n")


def _summarize_cell(
    plan, t, rcount, payloads, lookups, cell_dir, elapsed_total
) -> ReplicationSummary:
    scenario = plan.scenario
    lrd_scales = tuple(scenario.model.lrd_set)
    srd_scales = tuple(sorted(scenario.srd_set))
    thresholds = scenario.thresholds
    l1_lookup, tmae_lookup, sq_lookup = lookups
    selected = None
    if payloads and "selected_index" in payloads[0]:
        selected = np.array([p["selected_index"] for p in payloads])
    prob_rows, hist_rows, mqe_rows, sel_rows = [], [], [], []
    probabilities = np.zeros((len(lrd_scales), thresholds.size))
    histograms, mqe = {}, {}
    if selected is not None:
        for i, n in enumerate(lrd_scales):
            errs = l1_lookup[selected, i]
            probabilities[i] = empirical_probabilities(errs, thresholds)
            for eps, pr in zip(thresholds, probabilities[i]):
                prob_rows.append([n, repr(float(eps)), repr(float(pr))])
            tmae_vals = tmae_lookup[t][selected, i]
            edges = histogram_edges(tmae_vals)
            counts, _ = np.histogram(tmae_vals, bins=edges)
            histograms[n] = (edges, counts)
            for b in range(counts.size):
                hist_rows.append(
                    [n, repr(float(edges[b])), repr(float(edges[b + 1])), int(counts[b])]
                )
            cell_mqe = float(np.mean(sq_lookup[t][selected, i]))
            mean_abs = float(np.mean(tmae_vals))
            if cell_mqe < mean_abs**2 - 1e-12:
                raise DataError(
                    f"scale {n}: mean quadratic error {cell_mqe} below squared "
                    f"mean absolute error {mean_abs ** 2}"
                )
            mqe[("lrd", n)] = cell_mqe
            mqe_rows.append(["lrd", n, repr(cell_mqe)])
        count = len(scenario.contrast_config.candidates)
        freqs = np.bincount(selected, minlength=count) / selected.size
        for c in range(count):
            sel_rows.append([c, repr(float(freqs[c]))])
    else:
        freqs = np.zeros(0)
    for j, n in enumerate(srd_scales):
        if payloads and "srd_sq" in payloads[0]:
            sq_vals = np.array([p["srd_sq"][j] for p in payloads])
            abs_vals = np.array([p["srd_abs"][j] for p in payloads])
            cell_mqe = float(np.mean(sq_vals))
            if cell_mqe < float(np.mean(abs_vals)) ** 2 - 1e-12:
                raise DataError(f"scale {n}: quadratic/absolute error order violated")
            mqe[("srd", n)] = cell_mqe
            mqe_rows.append(["srd", n, repr(cell_mqe)])
            edges = histogram_edges(abs_vals)
            counts, _ = np.histogram(abs_vals, bins=edges)
            histograms[n] = (edges, counts)
            for b in range(counts.size):
                hist_rows.append(
                    [n, repr(float(edges[b])), repr(float(edges[b + 1])), int(counts[b])]
                )
    if prob_rows:
        _write_csv(cell_dir / "probabilities.csv", ["n", "epsilon", "probability"], prob_rows)
    if hist_rows:
        _write_csv(
            cell_dir / "hist_abs_error.csv",
            ["n", "bin_left", "bin_right", "count"],
            hist_rows,
        )
    if mqe_rows:
        _write_csv(cell_dir / "mqe.csv", ["part", "n", "mean_quadratic_error"], mqe_rows)
    if sel_rows:
        _write_csv(cell_dir / "selection.csv", ["candidate_index", "frequency"], sel_rows)
    import platform

    metadata = {
        "scenario": scenario.name,
        "config_hash": scenario.config_hash(),
        "seed": scenario.seed,
        "length": t,
        "replications": rcount,
        "versions": {
            "python": platform.python_version(),
            "numpy": np.__version__,
        },
        "total_elapsed": elapsed_total,
    }
    _atomic_write(cell_dir / "metadata.json", json.dumps(metadata, sort_keys=True, indent=1))
    return ReplicationSummary(
        scenario=scenario.name,
        length=t,
        replications=rcount,
        scales=lrd_scales + srd_scales,
        thresholds=thresholds,
        probabilities=probabilities,
        histograms=histograms,
        mqe=mqe,
        selection=freqs,
        elapsed=tuple(p.get("elapsed", 0.0) for p in payloads),
    )


def run_plan(plan: ExperimentPlan, workers: int = 1) -> dict:
    """Execute every (T, R) cell of the plan and write its artifacts.

    Replications for a given T are shared across R values (cell R reads
    the first R of them).  Results depend only on the scenario seed and
    replication index, never on the worker count; a second run reuses
    the persisted replication files after validating their provenance.
    """
    global _CTX
    scenario = plan.scenario
    if workers < 1:
        raise ConfigurationError("worker count must be positive")
    lrd_scales = tuple(scenario.model.lrd_set)
    srd_scales = tuple(sorted(scenario.srd_set))
    if scenario.kind == "contrast" and not (
        lrd_scales and scenario.contrast_config.candidates
    ):
        raise ConfigurationError(
            "contrast scenarios need long-memory scales and candidates"
        )
    base = plan.out_dir / scenario.name
    tables, srd_truth, rep_dirs = {}, {}, {}
    for t in plan.t_list:
        rep_dir = base / f"T{t}" / "reps"
        rep_dir.mkdir(parents=True, exist_ok=True)
        rep_dirs[t] = rep_dir
        if lrd_scales and scenario.contrast_config.candidates:
            tables[t] = precompute_tables(
                scenario.model, scenario.contrast_config, t, scales=lrd_scales
            )
        if scenario.kind == "mixed" and srd_scales:
            truth = model_table(scenario.model, scenario.model.lrd, t, scales=srd_scales)
            srd_truth[t] = truth.values
    _CTX = _Context(
        scenario=scenario,
        lrd_scales=lrd_scales,
        srd_scales=srd_scales,
        tables=tables,
        srd_truth=srd_truth,
        rep_dirs=rep_dirs,
        config_hash=scenario.config_hash(),
    )
    lookups = (None, None, None)
    if lrd_scales and scenario.contrast_config.candidates:
        lookups = _candidate_lookups(scenario, lrd_scales, plan.t_list)
    summaries = {}
    for t in plan.t_list:
        total = max(plan.r_list)
        jobs = [(t, rep) for rep in range(total)]
        start = time.perf_counter()
        if workers == 1:
            payloads = [_run_rep(job) for job in jobs]
        else:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                payloads = list(pool.map(_run_rep, jobs, chunksize=8))
        elapsed_total = time.perf_counter() - start
        for rcount in plan.r_list:
            cell_dir = base / f"T{t}_R{rcount}"
            cell_dir.mkdir(parents=True, exist_ok=True)
            summaries[(t, rcount)] = _summarize_cell(
                plan, t, rcount, payloads[:rcount], lookups, cell_dir, elapsed_total
            )
    return summaries
