"""Figure job descriptions.

A job is a small JSON document naming the figure kind, the input CSV
files, the output image path, and styling options.  Jobs are the only
interface of this package: all numbers come from the CSVs, nothing is
recomputed here.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

KINDS = (
    "histogram-grid",
    "probability-contour",
    "spectral-curves",
    "sphere-snapshot",
)

STYLE_KEYS = {
    "title": str,
    "dpi": int,
    "size": list,
    "cmap": str,
    "log_scale": bool,
    "bare": bool,
}


class JobError(ValueError):
    """The job document itself is unusable."""


class SchemaError(ValueError):
    """An input CSV does not match its documented schema."""


@dataclass(frozen=True)
class FigureJob:
    """One figure to render: kind, inputs, output, style."""

    kind: str
    inputs: tuple
    output: Path
    style: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise JobError(f"figure kind must be one of {KINDS}, got {self.kind!r}")
        inputs = tuple(Path(p) for p in self.inputs)
        if not inputs:
            raise JobError("a job needs at least one input CSV")
        for path in inputs:
            if not path.is_file():
                raise JobError(f"input CSV does not exist: {path}")
        for key, value in self.style.items():
            if key not in STYLE_KEYS:
                raise JobError(
                    f"unknown style option {key!r}; known: {sorted(STYLE_KEYS)}"
                )
            if not isinstance(value, STYLE_KEYS[key]):
                raise JobError(
                    f"style option {key!r} must be {STYLE_KEYS[key].__name__}"
                )
        object.__setattr__(self, "inputs", inputs)
        object.__setattr__(self, "output", Path(self.output))


def load_job(source) -> FigureJob:
    """Build a FigureJob from a dict or a JSON file path."""
    if isinstance(source, dict):
        spec = source
    else:
        spec = json.loads(Path(source).read_text())
    known = {"kind", "inputs", "output", "style"}
    unknown = sorted(set(spec) - known)
    if unknown:
        raise JobError(f"unknown job keys: {unknown}")
    for key in ("kind", "inputs", "output"):
        if key not in spec:
            raise JobError(f"job is missing required key {key!r}")
    style = spec.get("style", {})
    if not isinstance(style, dict):
        raise JobError("style must be an object")
    inputs = spec["inputs"]
    if isinstance(inputs, (str, Path)):
        inputs = [inputs]
    return FigureJob(
        kind=spec["kind"], inputs=tuple(inputs), output=Path(spec["output"]),
        style=dict(style),
    )
