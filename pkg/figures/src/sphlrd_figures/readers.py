"""CSV readers for the documented artifact schemas.

Every reader validates the header before touching the rows and reports
problems by file, row, and column name.  Readers return plain arrays;
no statistic is recomputed from raw data here.
"""

from __future__ import annotations

import csv
from pathlib import Path

import numpy as np

from .jobs import SchemaError

HISTOGRAM_COLUMNS = ("n", "bin_left", "bin_right", "count")
PROBABILITY_COLUMNS = ("n", "epsilon", "probability")
SPECTRAL_COLUMNS = ("kind", "n", "omega", "value_re", "value_im")
SNAPSHOT_COLUMNS = ("colatitude", "longitude", "value", "t")


def _check_header(path: Path, header, expected) -> None:
    header = tuple(header or ())
    if header == tuple(expected):
        return
    missing = [c for c in expected if c not in header]
    if missing:
        raise SchemaError(f"{path}: missing column {missing[0]!r}")
    extra = [c for c in header if c not in expected]
    if extra:
        raise SchemaError(f"{path}: unexpected column {extra[0]!r}")
    raise SchemaError(
        f"{path}: columns must appear in the order {tuple(expected)}"
    )


def _parse(path: Path, row_num: int, column: str, raw: str, caster):
    try:
        return caster(raw)
    except (TypeError, ValueError):
        kind = "an integer" if caster is int else "a number"
        raise SchemaError(
            f"{path} row {row_num}: column {column!r} is not {kind}: {raw!r}"
        ) from None


def _rows(path: Path, expected):
    path = Path(path)
    with path.open(newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        _check_header(path, header, expected)
        for row_num, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != len(expected):
                raise SchemaError(
                    f"{path} row {row_num}: expected {len(expected)} fields, "
                    f"got {len(row)}"
                )
            yield row_num, row


def read_histogram_csv(path) -> dict:
    """Per-scale histograms: {n: (edges, counts)} with edges of length
    counts + 1 rebuilt from contiguous (bin_left, bin_right) rows."""
    bins = {}
    for row_num, row in _rows(path, HISTOGRAM_COLUMNS):
        n = _parse(path, row_num, "n", row[0], int)
        left = _parse(path, row_num, "bin_left", row[1], float)
        right = _parse(path, row_num, "bin_right", row[2], float)
        count = _parse(path, row_num, "count", row[3], int)
        bins.setdefault(n, []).append((left, right, count))
    out = {}
    for n, rows in bins.items():
        edges = [rows[0][0]]
        counts = []
        for left, right, count in rows:
            if left != edges[-1]:
                raise SchemaError(
                    f"{path}: scale {n} bins are not contiguous at {left!r}"
                )
            edges.append(right)
            counts.append(count)
        out[n] = (np.array(edges), np.array(counts))
    return out


def read_probability_csv(path) -> tuple:
    """Empirical probability surface: (scales, thresholds, matrix).

    The matrix rows follow the sorted scales and columns the sorted
    thresholds; the grid must be complete.
    """
    cells = {}
    for row_num, row in _rows(path, PROBABILITY_COLUMNS):
        n = _parse(path, row_num, "n", row[0], int)
        eps = _parse(path, row_num, "epsilon", row[1], float)
        prob = _parse(path, row_num, "probability", row[2], float)
        if not 0.0 <= prob <= 1.0:
            raise SchemaError(
                f"{path} row {row_num}: column 'probability' outside [0, 1]: {prob}"
            )
        cells[(n, eps)] = prob
    if not cells:
        raise SchemaError(f"{path}: no probability rows")
    scales = np.array(sorted({k[0] for k in cells}))
    thresholds = np.array(sorted({k[1] for k in cells}))
    matrix = np.empty((scales.size, thresholds.size))
    for i, n in enumerate(scales):
        for j, eps in enumerate(thresholds):
            if (n, eps) not in cells:
                raise SchemaError(
                    f"{path}: incomplete grid, no row for n={n}, epsilon={eps!r}"
                )
            matrix[i, j] = cells[(n, eps)]
    return scales, thresholds, matrix


def read_spectral_csv(path) -> tuple:
    """Spectral table: (kind, {n: (omega, complex values)})."""
    kind = None
    series = {}
    for row_num, row in _rows(path, SPECTRAL_COLUMNS):
        if kind is None:
            kind = row[0]
        elif row[0] != kind:
            raise SchemaError(
                f"{path} row {row_num}: column 'kind' changes from "
                f"{kind!r} to {row[0]!r}"
            )
        n = _parse(path, row_num, "n", row[1], int)
        omega = _parse(path, row_num, "omega", row[2], float)
        re = _parse(path, row_num, "value_re", row[3], float)
        im = _parse(path, row_num, "value_im", row[4], float)
        series.setdefault(n, []).append((omega, complex(re, im)))
    if kind is None:
        raise SchemaError(f"{path}: no spectral rows")
    out = {}
    for n, rows in series.items():
        omegas = np.array([r[0] for r in rows])
        values = np.array([r[1] for r in rows])
        out[n] = (omegas, values)
    return kind, out


def read_snapshot_csv(path) -> dict:
    """Field snapshots: {t: (colatitudes, longitudes, value matrix)}.

    The matrix is indexed [colatitude, longitude] and the grid must be
    complete for every time.
    """
    cells = {}
    for row_num, row in _rows(path, SNAPSHOT_COLUMNS):
        colat = _parse(path, row_num, "colatitude", row[0], float)
        lon = _parse(path, row_num, "longitude", row[1], float)
        value = _parse(path, row_num, "value", row[2], float)
        t = _parse(path, row_num, "t", row[3], int)
        cells.setdefault(t, {})[(colat, lon)] = value
    if not cells:
        raise SchemaError(f"{path}: no snapshot rows")
    out = {}
    for t, grid in cells.items():
        colats = np.array(sorted({k[0] for k in grid}))
        lons = np.array(sorted({k[1] for k in grid}))
        matrix = np.empty((colats.size, lons.size))
        for i, c in enumerate(colats):
            for j, l in enumerate(lons):
                if (c, l) not in grid:
                    raise SchemaError(
                        f"{path}: incomplete grid at t={t}, "
                        f"colatitude={c!r}, longitude={l!r}"
                    )
                matrix[i, j] = grid[(c, l)]
        out[t] = (colats, lons, matrix)
    return out
