"""Job loading and validation."""

import json

import pytest

from sphlrd_figures import FigureJob, JobError, load_job


def _touch(path):
    path.write_text("n,epsilon,probability\n")
    return path


def test_load_job_from_file(tmp_path):
    csv = _touch(tmp_path / "p.csv")
    spec = {
        "kind": "probability-contour",
        "inputs": [str(csv)],
        "output": str(tmp_path / "out.png"),
        "style": {"title": "t"},
    }
    path = tmp_path / "job.json"
    path.write_text(json.dumps(spec))
    job = load_job(path)
    assert job.kind == "probability-contour"
    assert job.inputs == (csv,)
    assert job.style == {"title": "t"}


def test_single_input_string_is_wrapped(tmp_path):
    csv = _touch(tmp_path / "p.csv")
    job = load_job({
        "kind": "histogram-grid", "inputs": str(csv), "output": "o.png",
    })
    assert job.inputs == (csv,)


def test_unknown_kind_rejected(tmp_path):
    csv = _touch(tmp_path / "p.csv")
    with pytest.raises(JobError, match="figure kind"):
        FigureJob(kind="pie", inputs=(csv,), output="o.png")


def test_missing_input_named(tmp_path):
    missing = tmp_path / "gone.csv"
    with pytest.raises(JobError, match="gone.csv"):
        FigureJob(kind="histogram-grid", inputs=(missing,), output="o.png")


def test_no_inputs_rejected():
    with pytest.raises(JobError, match="at least one input"):
        FigureJob(kind="histogram-grid", inputs=(), output="o.png")


def test_unknown_job_key_named(tmp_path):
    csv = _touch(tmp_path / "p.csv")
    with pytest.raises(JobError, match="palette"):
        load_job({
            "kind": "histogram-grid", "inputs": [str(csv)],
            "output": "o.png", "palette": "x",
        })


def test_missing_required_key_named():
    with pytest.raises(JobError, match="'output'"):
        load_job({"kind": "histogram-grid", "inputs": ["x.csv"]})


def test_unknown_style_option_named(tmp_path):
    csv = _touch(tmp_path / "p.csv")
    with pytest.raises(JobError, match="glow"):
        FigureJob(
            kind="histogram-grid", inputs=(csv,), output="o.png",
            style={"glow": True},
        )


def test_style_type_checked(tmp_path):
    csv = _touch(tmp_path / "p.csv")
    with pytest.raises(JobError, match="'dpi' must be int"):
        FigureJob(
            kind="histogram-grid", inputs=(csv,), output="o.png",
            style={"dpi": "high"},
        )
