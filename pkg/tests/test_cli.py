"""Command-line interface tests."""

import json
import subprocess
import sys

import pytest

from sphlrd.cli import _resolve_scenario, main
from sphlrd.scenarios import preset


def _tiny_single(t=64, r=3):
    spec = preset("m1-single")
    spec["name"] = "m1-tiny"
    spec["t_list"] = [t]
    spec["r_list"] = [r]
    spec["filter_lag"] = 256
    return spec


def _tiny_mixed():
    spec = preset("spharma11-mixed")
    spec["name"] = "mixed-tiny"
    spec["truncation"] = 6
    spec["phi"] = {"kind": "table", "values": [[0.5]] * 3 + [[0.0]] * 3}
    spec["psi"] = {"kind": "table", "values": [[0.3]] * 3 + [[0.0]] * 3}
    spec["sigma2"] = {
        "kind": "piecewise",
        "pieces": [
            {"first": 1, "last": 3, "exponent": -3.0},
            {"first": 4, "last": 6, "coefficient": 6.5, "exponent": -2.5,
             "reference": 4.0},
        ],
    }
    spec["srd_set"] = [4, 5, 6]
    spec["candidates"] = {"kind": "beta", "count": 4, "include_truth": True}
    spec["thresholds"] = {"kind": "linear", "step": 0.016, "count": 10}
    spec["t_list"] = [64]
    spec["r_list"] = [3]
    spec["filter_lag"] = 256
    return spec


def test_validate_preset_ok(capsys):
    assert main(["validate", "--scenario", "m1-single"]) == 0
    out = capsys.readouterr().out
    assert "validate: ok" in out
    assert "identity: max residual" in out


def test_validate_flags_slow_variance_decay(tmp_path, capsys):
    spec = preset("sphar1-compact")
    spec["sigma2"] = {"kind": "power", "exponent": -1.5}
    path = tmp_path / "slow.json"
    path.write_text(json.dumps(spec))
    assert main(["validate", "--scenario", str(path)]) == 2
    captured = capsys.readouterr()
    assert "flagged=True" in captured.out
    assert "configuration error" in captured.err


def test_unknown_scenario_exits_2(tmp_path, capsys):
    rc = main(["simulate", "--scenario", "no-such-thing", "--out", str(tmp_path)])
    assert rc == 2
    assert "neither a file" in capsys.readouterr().err


def test_simulate_writes_sample_and_snapshot(tmp_path, capsys):
    rc = main([
        "simulate", "--scenario", "m1-single", "--t", "32",
        "--snapshot-times", "1,16", "--out", str(tmp_path),
    ])
    assert rc == 0
    sample = tmp_path / "m1-single_T32_rep0_sample.csv"
    snapshot = tmp_path / "m1-single_T32_rep0_snapshot.csv"
    assert sample.exists() and snapshot.exists()
    assert sample.read_text().splitlines()[0] == "n,j,t,value"
    assert snapshot.read_text().splitlines()[0] == "colatitude,longitude,value,t"
    out = capsys.readouterr().out.splitlines()
    assert out == [str(sample), str(snapshot)]


def test_simulate_seed_override(tmp_path):
    for seed, sub in [(7, "a"), (8, "b"), (7, "c")]:
        assert main([
            "simulate", "--scenario", "m1-single", "--t", "32",
            "--seed", str(seed), "--out", str(tmp_path / sub),
        ]) == 0
    name = "m1-single_T32_rep0_sample.csv"
    a = (tmp_path / "a" / name).read_text()
    b = (tmp_path / "b" / name).read_text()
    c = (tmp_path / "c" / name).read_text()
    assert a != b
    assert a == c


def test_estimate_contrast_artifacts(tmp_path):
    rc = main([
        "estimate", "--scenario", "m1-single", "--t", "64",
        "--out", str(tmp_path),
    ])
    assert rc == 0
    stem = "m1-single_T64_rep0"
    periodogram = tmp_path / f"{stem}_periodogram.csv"
    contrast = tmp_path / f"{stem}_contrast.csv"
    density = tmp_path / f"{stem}_model_density.csv"
    assert periodogram.exists() and contrast.exists() and density.exists()
    assert periodogram.read_text().splitlines()[0] == "kind,n,omega,value_re,value_im"
    text = contrast.read_text()
    assert "candidate_index,n,U_value" in text
    assert "candidate_index,norm,selected" in text


def test_estimate_mixed_artifacts(tmp_path):
    path = tmp_path / "mixed.json"
    path.write_text(json.dumps(_tiny_mixed()))
    rc = main([
        "estimate", "--scenario", str(path), "--out", str(tmp_path / "out"),
    ])
    assert rc == 0
    stem = "mixed-tiny_T64_rep0"
    mixed = tmp_path / "out" / f"{stem}_mixed.csv"
    assert (tmp_path / "out" / f"{stem}_periodogram.csv").exists()
    text = mixed.read_text()
    assert "# selected_candidate" in text
    assert "part,n,omega,value" in text


def test_reproduce_small_plan(tmp_path, capsys):
    path = tmp_path / "tiny.json"
    path.write_text(json.dumps(_tiny_single()))
    out = tmp_path / "runs"
    rc = main(["reproduce", str(path), "--out", str(out)])
    assert rc == 0
    cell = out / "m1-tiny" / "T64_R3"
    for name in ("probabilities.csv", "hist_abs_error.csv", "mqe.csv",
                 "selection.csv", "metadata.json"):
        assert (cell / name).exists()
    reps = sorted((out / "m1-tiny" / "T64" / "reps").glob("rep_*.json"))
    assert len(reps) == 3
    assert "m1-tiny T=64 R=3: 3 replications" in capsys.readouterr().out


def test_reproduce_corrupted_rep_exits_3(tmp_path, capsys):
    path = tmp_path / "tiny.json"
    path.write_text(json.dumps(_tiny_single()))
    out = tmp_path / "runs"
    assert main(["reproduce", str(path), "--out", str(out)]) == 0
    capsys.readouterr()
    rep = out / "m1-tiny" / "T64" / "reps" / "rep_00001.json"
    payload = json.loads(rep.read_text())
    payload["seed"] += 1
    rep.write_text(json.dumps(payload))
    rc = main(["reproduce", str(path), "--out", str(out)])
    assert rc == 3
    assert "data error" in capsys.readouterr().err


def test_workers_flag_matches_serial(tmp_path):
    path = tmp_path / "tiny.json"
    path.write_text(json.dumps(_tiny_single()))
    assert main(["reproduce", str(path), "--out", str(tmp_path / "s")]) == 0
    assert main([
        "reproduce", str(path), "--out", str(tmp_path / "p"), "--workers", "2",
    ]) == 0
    rel = "m1-tiny/T64_R3/probabilities.csv"
    assert (tmp_path / "s" / rel).read_bytes() == (tmp_path / "p" / rel).read_bytes()


def test_paper_scale_rewrites_grid():
    scenario = _resolve_scenario("m1-single", None, use_paper_scale=True)
    assert list(scenario.t_list) == [50, 500, 1000]
    assert list(scenario.r_list) == [100, 2000, 5000]
    assert _resolve_scenario("m1-single").t_list != scenario.t_list


def test_missing_scenario_flag_is_usage_error():
    with pytest.raises(SystemExit) as info:
        main(["estimate"])
    assert info.value.code == 2


def test_module_invocation():
    proc = subprocess.run(
        [sys.executable, "-m", "sphlrd.cli", "validate", "--scenario", "m1-single"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert "validate: ok" in proc.stdout
