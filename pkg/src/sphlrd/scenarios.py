"""Scenario configuration: schema validation, presets, model assembly.

A scenario is a plain JSON-compatible dict naming every ingredient of a
Monte-Carlo run: the SPHARMA coefficients per scale, the innovation
variance law, the long-memory profile, the candidate family, contrast
weighting, smoothing window, threshold grid, and the (T, R) cells.  The
same dict reproduces the run bit for bit through the master seed.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .contrast import ContrastConfig
from .errors import ConfigurationError
from .harmonics import random_pole, sphere_point
from .periodogram import SmoothingWindow
from .simulator import SimConfig
from .spectral_model import (
    LrdProfile,
    ModelSpec,
    SphArmaSpec,
    candidate_family,
    compact_profile,
    noncompact_profile,
)
from .streams import POLE, substream

REQUIRED_KEYS = (
    "name", "kind", "truncation", "p", "q", "phi", "psi", "sigma2",
    "lrd_profile", "srd_set", "pole", "seed", "candidates", "contrast",
    "window", "thresholds", "t_list", "r_list",
)
OPTIONAL_KEYS = ("burn_in", "filter_lag", "representation")
KINDS = ("contrast", "mixed")


def _need(spec: dict, key: str, where: str):
    if key not in spec:
        raise ConfigurationError(f"{where} is missing key {key!r}")
    return spec[key]


def _coeff_table(spec: dict, m: int, lags: int, label: str) -> np.ndarray:
    kind = _need(spec, "kind", label)
    if kind == "constant":
        values = [float(v) for v in _need(spec, "values", label)]
        if len(values) != lags:
            raise ConfigurationError(f"{label} expects {lags} lag values")
        return np.tile(np.asarray(values), (m, 1)) if lags else np.zeros((m, 0))
    if kind == "table":
        table = np.asarray(_need(spec, "values", label), dtype=float)
        table = table.reshape(m, lags) if lags else np.zeros((m, 0))
        if table.shape != (m, lags):
            raise ConfigurationError(f"{label} table must be {m} x {lags}")
        return table
    raise ConfigurationError(f"{label} kind must be 'constant' or 'table'")


def _power_law(spec: dict, scales: np.ndarray, label: str) -> np.ndarray:
    coeff = float(spec.get("coefficient", 1.0))
    exponent = float(_need(spec, "exponent", label))
    reference = float(spec.get("reference", 1.0))
    return coeff * (scales / reference) ** exponent


def _sigma_table(spec: dict, m: int) -> np.ndarray:
    kind = _need(spec, "kind", "sigma2")
    scales = np.arange(1, m + 1, dtype=float)
    if kind == "power":
        return _power_law(spec, scales, "sigma2")
    if kind == "table":
        values = np.asarray(_need(spec, "values", "sigma2"), dtype=float)
        if values.shape != (m,):
            raise ConfigurationError(f"sigma2 table must list {m} values")
        return values
    if kind == "piecewise":
        out = np.full(m, np.nan)
        for piece in _need(spec, "pieces", "sigma2"):
            first, last = int(piece["first"]), int(piece["last"])
            if not 1 <= first <= last <= m:
                raise ConfigurationError("sigma2 piece range out of bounds")
            segment = np.arange(first, last + 1, dtype=float)
            if np.any(np.isfinite(out[first - 1 : last])):
                raise ConfigurationError("sigma2 pieces overlap")
            out[first - 1 : last] = _power_law(piece, segment, "sigma2 piece")
        if np.any(np.isnan(out)):
            raise ConfigurationError("sigma2 pieces leave scales uncovered")
        return out
    raise ConfigurationError("sigma2 kind must be 'power', 'table', or 'piecewise'")


def _profile(spec: dict, m: int, srd: frozenset) -> LrdProfile:
    kind = _need(spec, "kind", "lrd_profile")
    if kind == "compact":
        return compact_profile(m, srd_scales=srd)
    if kind == "noncompact":
        return noncompact_profile(m, srd_scales=srd)
    if kind == "table":
        alphas = np.asarray(_need(spec, "alphas", "lrd_profile"), dtype=float)
        return LrdProfile(alphas=alphas, label="table", srd_scales=srd)
    raise ConfigurationError("lrd_profile kind must be 'compact', 'noncompact', or 'table'")


def _pole(spec: dict, seed: int) -> np.ndarray:
    kind = _need(spec, "kind", "pole")
    if kind == "seeded":
        return random_pole(substream(seed, POLE))
    if kind == "angles":
        return sphere_point(
            float(_need(spec, "colatitude", "pole")),
            float(_need(spec, "longitude", "pole")),
        )
    raise ConfigurationError("pole kind must be 'seeded' or 'angles'")


def _candidates(spec: dict, m: int, seed: int, srd: frozenset, truth: LrdProfile):
    kind = _need(spec, "kind", "candidates")
    include_truth = bool(spec.get("include_truth", False))
    if kind == "beta":
        family = tuple(
            candidate_family(
                int(_need(spec, "count", "candidates")), m, seed, srd_scales=srd
            )
        )
    elif kind == "table":
        family = tuple(
            LrdProfile(alphas=np.asarray(row, dtype=float), label=f"table-{i}",
                       srd_scales=srd)
            for i, row in enumerate(_need(spec, "alphas", "candidates"))
        )
    else:
        raise ConfigurationError("candidates kind must be 'beta' or 'table'")
    return ((truth,) + family) if include_truth else family


def _thresholds(spec: dict) -> np.ndarray:
    kind = _need(spec, "kind", "thresholds")
    if kind == "linear":
        step = float(_need(spec, "step", "thresholds"))
        count = int(_need(spec, "count", "thresholds"))
        if step <= 0 or count < 1:
            raise ConfigurationError("thresholds need positive step and count")
        return step * np.arange(1, count + 1)
    if kind == "table":
        values = np.asarray(_need(spec, "values", "thresholds"), dtype=float)
        if values.size < 1 or np.any(values <= 0) or np.any(np.diff(values) <= 0):
            raise ConfigurationError("thresholds must be positive and increasing")
        return values
    raise ConfigurationError("thresholds kind must be 'linear' or 'table'")


@dataclass(frozen=True)
class Scenario:
    """A fully assembled scenario plus the dict it came from."""

    name: str
    kind: str
    seed: int
    model: ModelSpec
    contrast_config: ContrastConfig
    window: SmoothingWindow
    thresholds: np.ndarray
    t_list: tuple
    r_list: tuple
    srd_set: frozenset
    burn_in: int
    filter_lag: int
    raw: dict

    def sim_config(self, length: int, replication: int) -> SimConfig:
        return SimConfig(
            model=self.model,
            length=length,
            seed=self.seed,
            representation=self.raw.get("representation", "zonal"),
            replication=replication,
            burn_in=self.burn_in,
            filter_lag=self.filter_lag,
        )

    def config_hash(self) -> str:
        import hashlib

        payload = json.dumps(self.raw, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(payload.encode()).hexdigest()[:16]


def load_scenario(source) -> Scenario:
    """Build a Scenario from a dict, JSON text path, or file-like object.

    Every schema violation raises a configuration error naming the key.
    """
    if isinstance(source, dict):
        spec = source
    else:
        spec = json.loads(Path(source).read_text())
    if not isinstance(spec, dict):
        raise ConfigurationError("scenario must be a JSON object")
    unknown = set(spec) - set(REQUIRED_KEYS) - set(OPTIONAL_KEYS)
    if unknown:
        raise ConfigurationError(f"scenario has unknown keys {sorted(unknown)}")
    for key in REQUIRED_KEYS:
        _need(spec, key, "scenario")
    kind = spec["kind"]
    if kind not in KINDS:
        raise ConfigurationError(f"scenario kind must be one of {KINDS}")
    m = int(spec["truncation"])
    if m < 1:
        raise ConfigurationError("truncation must be at least 1")
    p, q = int(spec["p"]), int(spec["q"])
    srd = frozenset(int(n) for n in spec["srd_set"])
    if not srd <= set(range(1, m + 1)):
        raise ConfigurationError("srd_set entries must lie in 1..truncation")
    seed = int(spec["seed"])
    arma = SphArmaSpec(
        phi=_coeff_table(spec["phi"], m, p, "phi"),
        psi=_coeff_table(spec["psi"], m, q, "psi"),
        sigma2=_sigma_table(spec["sigma2"], m),
    )
    profile = _profile(spec["lrd_profile"], m, srd)
    model = ModelSpec(
        arma=arma, lrd=profile, pole=_pole(spec["pole"], seed), srd_set=srd
    )
    contrast_spec = spec["contrast"]
    config = ContrastConfig(
        gamma=float(contrast_spec.get("gamma", 1.5)),
        w_tilde=None
        if contrast_spec.get("w_tilde") is None
        else tuple(contrast_spec["w_tilde"]),
        candidates=_candidates(spec["candidates"], m, seed, srd, profile),
    )
    window_spec = spec["window"]
    window = SmoothingWindow(
        shape=window_spec.get("shape", "gaussian"),
        bandwidth=float(window_spec.get("bandwidth", 0.65)),
    )
    t_list = tuple(int(t) for t in spec["t_list"])
    r_list = tuple(int(r) for r in spec["r_list"])
    if not t_list or not r_list or min(t_list) < 2 or min(r_list) < 1:
        raise ConfigurationError("t_list and r_list must hold usable sizes")
    filter_lag = int(spec.get("filter_lag", 1024))
    burn_in = int(spec.get("burn_in", 2 * filter_lag))
    return Scenario(
        name=str(spec["name"]),
        kind=kind,
        seed=seed,
        model=model,
        contrast_config=config,
        window=window,
        thresholds=_thresholds(spec["thresholds"]),
        t_list=t_list,
        r_list=r_list,
        srd_set=srd,
        burn_in=burn_in,
        filter_lag=filter_lag,
        raw=spec,
    )


def _compact_base(name: str, phi, psi, seed: int) -> dict:
    return {
        "name": name,
        "kind": "contrast",
        "truncation": 30,
        "p": len(phi),
        "q": len(psi),
        "phi": {"kind": "constant", "values": list(phi)},
        "psi": {"kind": "constant", "values": list(psi)},
        "sigma2": {"kind": "power", "exponent": -3.0},
        "lrd_profile": {"kind": "compact"},
        "srd_set": [],
        "pole": {"kind": "seeded"},
        "seed": 20260814,
        "candidates": {"kind": "beta", "count": 100, "include_truth": True},
        "contrast": {"gamma": 1.5, "w_tilde": None},
        "window": {"shape": "gaussian", "bandwidth": 0.65},
        "thresholds": {"kind": "linear", "step": 0.001, "count": 100},
        "t_list": [64, 256, 1024],
        "r_list": [100, 200],
        "filter_lag": 1024,
    }


def _mixed_preset() -> dict:
    spec = _compact_base("spharma11-mixed", [0.5], [0.3], 20260814)
    spec.update(
        {
            "kind": "mixed",
            "phi": {
                "kind": "table",
                "values": [[0.5]] * 15 + [[0.0]] * 15,
            },
            "psi": {
                "kind": "table",
                "values": [[0.3]] * 15 + [[0.0]] * 15,
            },
            "sigma2": {
                "kind": "piecewise",
                "pieces": [
                    {"first": 1, "last": 15, "exponent": -3.0},
                    {
                        "first": 16,
                        "last": 30,
                        "coefficient": 6.5,
                        "exponent": -2.5,
                        "reference": 16.0,
                    },
                ],
            },
            "srd_set": list(range(16, 31)),
            "thresholds": {"kind": "linear", "step": 0.016, "count": 50},
            "t_list": [500],
            "r_list": [100],
        }
    )
    return spec


def _single_scale_preset() -> dict:
    spec = _compact_base("m1-single", [], [], 20260814)
    spec.update(
        {
            "truncation": 1,
            "sigma2": {"kind": "table", "values": [2 * math.pi]},
            "lrd_profile": {"kind": "table", "alphas": [0.3]},
            "candidates": {
                "kind": "table",
                "alphas": [[round(0.05 * i, 2)] for i in range(1, 10)],
                "include_truth": False,
            },
            "t_list": [2048],
            "r_list": [200],
        }
    )
    return spec


def _presets() -> dict:
    compact = {
        "sphar1-compact": ([0.5], []),
        "sphar3-compact": ([0.4, 0.15, 0.05], []),
        "spharma11-compact": ([0.5], [0.3]),
        "spharma31-compact": ([0.4, 0.15, 0.05], [0.3]),
    }
    out = {
        name: _compact_base(name, phi, psi, 20260814)
        for name, (phi, psi) in compact.items()
    }
    noncompact = _compact_base("sphar1-noncompact", [0.5], [], 20260814)
    noncompact["lrd_profile"] = {"kind": "noncompact"}
    out["sphar1-noncompact"] = noncompact
    out["spharma11-mixed"] = _mixed_preset()
    out["m1-single"] = _single_scale_preset()
    return out


def preset(name: str) -> dict:
    """A fresh copy of a named built-in scenario dict."""
    table = _presets()
    if name not in table:
        raise ConfigurationError(
            f"unknown scenario {name!r}; available: {sorted(table)}"
        )
    return json.loads(json.dumps(table[name]))


def preset_names() -> tuple:
    return tuple(sorted(_presets()))


def paper_scale(spec: dict) -> dict:
    """The same scenario at the full published grid sizes."""
    out = json.loads(json.dumps(spec))
    out["t_list"] = [50, 500, 1000]
    out["r_list"] = [100, 2000, 5000]
    return out
