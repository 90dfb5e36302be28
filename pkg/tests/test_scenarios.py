import json
import math

import numpy as np
import pytest

from sphlrd.errors import ConfigurationError
from sphlrd.scenarios import (
    Scenario,
    load_scenario,
    paper_scale,
    preset,
    preset_names,
)


class TestPresets:
    def test_registry_contents(self):
        names = preset_names()
        for expected in (
            "sphar1-compact",
            "sphar3-compact",
            "spharma11-compact",
            "spharma31-compact",
            "sphar1-noncompact",
            "spharma11-mixed",
            "m1-single",
        ):
            assert expected in names

    def test_preset_returns_fresh_copies(self):
        a = preset("sphar1-compact")
        a["seed"] = 1
        b = preset("sphar1-compact")
        assert b["seed"] != 1

    def test_unknown_preset_rejected(self):
        with pytest.raises(ConfigurationError, match="unknown scenario"):
            preset("sphar9-compact")

    def test_sphar1_compact_structure(self):
        sc = load_scenario(preset("sphar1-compact"))
        assert sc.kind == "contrast"
        assert sc.model.truncation == 30
        assert sc.model.arma.p == 1 and sc.model.arma.q == 0
        np.testing.assert_allclose(sc.model.arma.phi[:, 0], 0.5)
        np.testing.assert_allclose(
            sc.model.arma.sigma2, np.arange(1, 31, dtype=float) ** -3.0
        )
        assert sc.model.lrd.alpha(1) == pytest.approx(0.45 / 1.15)
        assert len(sc.contrast_config.candidates) == 101
        assert sc.contrast_config.candidates[0] is sc.model.lrd
        assert sc.thresholds.size == 100
        assert sc.thresholds[0] == pytest.approx(0.001)
        assert sc.thresholds[-1] == pytest.approx(0.1)

    def test_sphar3_lag_structure(self):
        sc = load_scenario(preset("sphar3-compact"))
        np.testing.assert_allclose(sc.model.arma.phi[7], [0.4, 0.15, 0.05])

    def test_noncompact_profile_choice(self):
        sc = load_scenario(preset("sphar1-noncompact"))
        assert sc.model.lrd.alpha(30) == pytest.approx(0.2 + 0.25 * 30 / 35)

    def test_mixed_preset_split(self):
        sc = load_scenario(preset("spharma11-mixed"))
        assert sc.kind == "mixed"
        assert sc.srd_set == frozenset(range(16, 31))
        for n in range(1, 16):
            assert sc.model.lrd.alpha(n) > 0
            assert sc.model.arma.phi[n - 1, 0] == 0.5
            assert sc.model.arma.psi[n - 1, 0] == 0.3
        for n in range(16, 31):
            assert sc.model.lrd.alpha(n) == 0.0
            assert sc.model.arma.phi[n - 1, 0] == 0.0
        assert sc.model.arma.sigma2[15] == pytest.approx(6.5)
        assert sc.model.arma.sigma2[29] == pytest.approx(6.5 * (30 / 16) ** -2.5)
        assert sc.model.arma.sigma2[0] == pytest.approx(1.0)
        assert sc.thresholds[-1] == pytest.approx(0.8)
        for theta in sc.contrast_config.candidates:
            assert all(theta.alpha(n) == 0.0 for n in range(16, 31))
        assert sc.window.shape == "gaussian"
        assert sc.window.bandwidth == pytest.approx(0.65)

    def test_single_scale_preset(self):
        sc = load_scenario(preset("m1-single"))
        assert sc.model.truncation == 1
        assert sc.model.lrd.alpha(1) == pytest.approx(0.3)
        alphas = [theta.alpha(1) for theta in sc.contrast_config.candidates]
        assert alphas == pytest.approx([0.05 * i for i in range(1, 10)])
        assert sc.model.b_eta0[0] == pytest.approx(1.0)

    def test_paper_scale_grid(self):
        spec = paper_scale(preset("sphar1-compact"))
        sc = load_scenario(spec)
        assert sc.t_list == (50, 500, 1000)
        assert sc.r_list == (100, 2000, 5000)


class TestLoadScenario:
    def test_round_trip_through_json_file(self, tmp_path):
        path = tmp_path / "scenario.json"
        path.write_text(json.dumps(preset("m1-single")))
        sc = load_scenario(path)
        assert sc.name == "m1-single"
        assert sc.config_hash() == load_scenario(preset("m1-single")).config_hash()

    def test_hash_tracks_content(self):
        a = load_scenario(preset("m1-single"))
        spec = preset("m1-single")
        spec["seed"] = 999
        b = load_scenario(spec)
        assert a.config_hash() != b.config_hash()

    def test_missing_key_is_named(self):
        spec = preset("m1-single")
        del spec["window"]
        with pytest.raises(ConfigurationError, match="window"):
            load_scenario(spec)

    def test_unknown_key_rejected(self):
        spec = preset("m1-single")
        spec["wavelets"] = True
        with pytest.raises(ConfigurationError, match="wavelets"):
            load_scenario(spec)

    def test_bad_kind_rejected(self):
        spec = preset("m1-single")
        spec["kind"] = "bootstrap"
        with pytest.raises(ConfigurationError):
            load_scenario(spec)

    def test_srd_outside_range_rejected(self):
        spec = preset("m1-single")
        spec["srd_set"] = [5]
        with pytest.raises(ConfigurationError):
            load_scenario(spec)

    def test_phi_length_mismatch_rejected(self):
        spec = preset("sphar1-compact")
        spec["phi"] = {"kind": "constant", "values": [0.5, 0.1]}
        with pytest.raises(ConfigurationError, match="phi"):
            load_scenario(spec)

    def test_sigma2_piecewise_gaps_rejected(self):
        spec = preset("spharma11-mixed")
        spec["sigma2"]["pieces"][0]["last"] = 14
        with pytest.raises(ConfigurationError, match="uncovered"):
            load_scenario(spec)

    def test_sigma2_piecewise_overlap_rejected(self):
        spec = preset("spharma11-mixed")
        spec["sigma2"]["pieces"][0]["last"] = 16
        with pytest.raises(ConfigurationError, match="overlap"):
            load_scenario(spec)

    def test_pole_kinds(self):
        spec = preset("m1-single")
        spec["pole"] = {"kind": "angles", "colatitude": math.pi / 3, "longitude": 0.5}
        sc = load_scenario(spec)
        assert sc.model.pole[2] == pytest.approx(math.cos(math.pi / 3))
        spec["pole"] = {"kind": "compass"}
        with pytest.raises(ConfigurationError):
            load_scenario(spec)

    def test_seeded_pole_is_reproducible(self):
        a = load_scenario(preset("sphar1-compact")).model.pole
        b = load_scenario(preset("sphar1-compact")).model.pole
        np.testing.assert_array_equal(a, b)

    def test_threshold_validation(self):
        spec = preset("m1-single")
        spec["thresholds"] = {"kind": "table", "values": [0.2, 0.1]}
        with pytest.raises(ConfigurationError):
            load_scenario(spec)
        spec["thresholds"] = {"kind": "linear", "step": -0.1, "count": 5}
        with pytest.raises(ConfigurationError):
            load_scenario(spec)

    def test_sim_config_carries_scenario_settings(self):
        sc = load_scenario(preset("sphar1-compact"))
        cfg = sc.sim_config(length=256, replication=7)
        assert cfg.length == 256
        assert cfg.replication == 7
        assert cfg.seed == sc.seed
        assert cfg.filter_lag == sc.filter_lag
        assert cfg.burn_in == 2 * sc.filter_lag
        assert cfg.representation == "zonal"

    def test_representation_key_flows_through(self):
        spec = preset("m1-single")
        spec["representation"] = "full"
        sc = load_scenario(spec)
        assert sc.sim_config(16, 0).representation == "full"
