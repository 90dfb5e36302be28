import math

import numpy as np
import pytest

from sphlrd.contrast import ContrastConfig, select_theta
from sphlrd.errors import ConfigurationError, InvalidParameterError
from sphlrd.mixed_estimator import MixedEstimate, estimate_mixed, write_mixed_csv
from sphlrd.periodogram import (
    SmoothingWindow,
    fdft,
    model_table,
    periodogram_scale,
    smoothed_estimator,
)
from sphlrd.simulator import SimConfig, simulate_sample
from sphlrd.spectral_model import (
    LrdProfile,
    ModelSpec,
    SphArmaSpec,
    arma_srd_factor,
)

POLE = np.array([0.0, 0.0, 1.0])


def _model(alphas, phi=None, sigma2=None):
    alphas = np.asarray(alphas, dtype=float)
    m = alphas.size
    srd = frozenset(int(n) for n in range(1, m + 1) if alphas[n - 1] == 0.0)
    phi_arr = np.zeros((m, 0)) if phi is None else np.asarray(phi, dtype=float)
    sig = np.full(m, 2 * math.pi) if sigma2 is None else np.asarray(sigma2, dtype=float)
    return ModelSpec(
        arma=SphArmaSpec(phi=phi_arr, psi=np.zeros((m, 0)), sigma2=sig),
        lrd=LrdProfile(alphas=alphas, srd_scales=srd),
        pole=POLE,
        srd_set=srd,
    )


def _candidates(values, m, srd=()):
    out = []
    for v in values:
        alphas = np.full(m, float(v))
        for n in srd:
            alphas[n - 1] = 0.0
        out.append(LrdProfile(alphas=alphas, srd_scales=frozenset(srd)))
    return tuple(out)


def _sample(model, t=128, rep=0, seed=42):
    return simulate_sample(
        SimConfig(model=model, length=t, seed=seed, replication=rep,
                  burn_in=1024, filter_lag=512)
    )


class TestEstimateMixed:
    def test_parts_partition_the_scales(self):
        model = _model([0.3, 0.2, 0.0, 0.0])
        config = ContrastConfig(candidates=_candidates([0.1, 0.3], 4, srd=(3, 4)))
        window = SmoothingWindow("gaussian", 0.65)
        est = estimate_mixed(_sample(model), model, config, {3, 4}, window)
        assert est.srd_part.scales == (3, 4)
        assert est.lrd_part.scales == (1, 2)
        assert not est.degenerate
        assert est.selected is est.report.selected

    def test_empty_srd_set_is_pure_parametric(self):
        model = _model([0.3, 0.2])
        config = ContrastConfig(candidates=_candidates([0.1, 0.25, 0.4], 2))
        window = SmoothingWindow("gaussian", 0.65)
        sample = _sample(model)
        est = estimate_mixed(sample, model, config, frozenset(), window)
        assert est.srd_part is None
        direct = select_theta(
            periodogram_scale(fdft(sample)), model, config, scales=(1, 2)
        )
        assert est.report.selected_index == direct.selected_index
        plug = model_table(model, direct.selected, sample.length, scales=(1, 2))
        np.testing.assert_array_equal(est.lrd_part.values, plug.values)

    def test_all_srd_is_degenerate_smoothing_only(self):
        model = _model([0.0, 0.0])
        config = ContrastConfig(candidates=())
        window = SmoothingWindow("bartlett", 0.5)
        sample = _sample(model)
        est = estimate_mixed(sample, model, config, {1, 2}, window)
        assert est.degenerate
        assert est.report is None and est.lrd_part is None
        expected = smoothed_estimator(
            periodogram_scale(fdft(sample)), window, srd_scales=[1, 2]
        )
        np.testing.assert_array_equal(est.srd_part.values, expected.values)

    def test_candidate_with_memory_on_srd_scale_rejected(self):
        model = _model([0.3, 0.0])
        bad = (LrdProfile(alphas=np.array([0.2, 0.1])),)
        config = ContrastConfig(candidates=bad)
        window = SmoothingWindow()
        with pytest.raises(ConfigurationError, match="short-range"):
            estimate_mixed(_sample(model), model, config, {2}, window)

    def test_srd_scales_outside_range_rejected(self):
        model = _model([0.3])
        config = ContrastConfig(candidates=_candidates([0.2], 1))
        with pytest.raises(ConfigurationError):
            estimate_mixed(_sample(model), model, config, {2}, SmoothingWindow())

    def test_selection_ranges_over_lrd_scales_only(self):
        model = _model([0.3, 0.2, 0.0], phi=[[0.4], [0.4], [0.0]])
        config = ContrastConfig(candidates=_candidates([0.1, 0.3], 3, srd=(3,)))
        est = estimate_mixed(_sample(model), model, config, {3}, SmoothingWindow())
        assert est.report.scales == (1, 2)

    def test_lrd_part_at_minus_pi_has_no_smoothing_leakage(self):
        model = _model([0.3, 0.0], phi=[[0.5], [0.0]])
        config = ContrastConfig(candidates=_candidates([0.1, 0.3, 0.45], 2, srd=(2,)))
        sample = _sample(model, t=64)
        est = estimate_mixed(sample, model, config, {2}, SmoothingWindow())
        k = int(np.flatnonzero(np.isclose(est.lrd_part.frequencies, -math.pi))[0])
        alpha_hat = est.selected.alpha(1)
        expected = (
            model.b_eta0[0]
            * arma_srd_factor(model.arma, 1, math.pi)
            * 4.0 ** (-alpha_hat / 2)
        )
        assert est.lrd_part.values[0, k] == pytest.approx(expected, rel=1e-12)

    def test_values_are_nonnegative(self):
        model = _model([0.25, 0.0])
        config = ContrastConfig(candidates=_candidates([0.1, 0.3], 2, srd=(2,)))
        est = estimate_mixed(_sample(model), model, config, {2}, SmoothingWindow())
        assert np.all(est.srd_part.values >= 0)
        assert np.all(est.lrd_part.values >= 0)

    def test_partition_enforced_on_construction(self):
        model = _model([0.2, 0.0])
        config = ContrastConfig(candidates=_candidates([0.2], 2, srd=(2,)))
        est = estimate_mixed(_sample(model), model, config, {2}, SmoothingWindow())
        with pytest.raises(InvalidParameterError):
            MixedEstimate(
                truncation=3,
                srd_set=est.srd_set,
                srd_part=est.srd_part,
                lrd_part=est.lrd_part,
                window=est.window,
                report=est.report,
            )

    def test_white_srd_scale_quadratic_error_is_small(self):
        model = _model([0.0])
        window = SmoothingWindow("gaussian", 0.65)
        config = ContrastConfig(candidates=())
        errs = []
        for rep in range(20):
            sample = simulate_sample(
                SimConfig(model=model, length=500, seed=7, replication=rep,
                          burn_in=512, filter_lag=256)
            )
            est = estimate_mixed(sample, model, config, {1}, window)
            mask = est.srd_part.frequencies != 0.0
            errs.append(np.mean((est.srd_part.values[0, mask] - 1.0) ** 2))
        mqe = float(np.mean(errs))
        assert 1e-3 < mqe < 2e-2


class TestMixedCsv:
    def test_metadata_and_rows(self, tmp_path):
        import csv as csvmod

        model = _model([0.3, 0.0])
        config = ContrastConfig(candidates=_candidates([0.1, 0.3], 2, srd=(2,)))
        est = estimate_mixed(
            _sample(model, t=32), model, config, {2}, SmoothingWindow("gaussian", 0.65)
        )
        path = tmp_path / "mixed.csv"
        write_mixed_csv(est, path)
        lines = path.read_text().splitlines()
        assert lines[0] == "# window: gaussian"
        assert lines[1] == "# bandwidth: 0.65"
        assert lines[2] == f"# selected_candidate: {est.report.selected_index}"
        assert lines[3] == "# degenerate: 0"
        rows = list(csvmod.reader(lines[4:]))
        assert rows[0] == ["part", "n", "omega", "value"]
        parts = {r[0] for r in rows[1:]}
        assert parts == {"srd", "lrd"}
        srd_rows = [r for r in rows[1:] if r[0] == "srd"]
        assert len(srd_rows) == 32
        lrd_rows = [r for r in rows[1:] if r[0] == "lrd"]
        assert len(lrd_rows) == 31
        omegas = [float(r[2]) for r in lrd_rows]
        assert omegas == sorted(omegas)
        vals = np.array([float(r[3]) for r in lrd_rows])
        np.testing.assert_allclose(vals, est.lrd_part.values[0], rtol=1e-15)

    def test_degenerate_metadata(self, tmp_path):
        model = _model([0.0])
        est = estimate_mixed(
            _sample(model, t=16), model, ContrastConfig(candidates=()),
            {1}, SmoothingWindow("bartlett", 0.4),
        )
        path = tmp_path / "deg.csv"
        write_mixed_csv(est, path)
        lines = path.read_text().splitlines()
        assert lines[2] == "# selected_candidate: none"
        assert lines[3] == "# degenerate: 1"
        assert all(r.split(",")[0] == "srd" for r in lines[5:])
