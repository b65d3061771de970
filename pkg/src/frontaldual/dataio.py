"""JSON persistence for sampled (theta, a, b) data triples.

File schema:

    {
      "n": 1,
      "mode": "sampled_grid",
      "grid": {"box": [[lo, hi], ...], "counts": [...], "fd_step": h},
      "samples": [{"x": [...], "theta": [...], "a": ..., "b": [...]}, ...]
    }

Samples are stored in the grid's flattened order (last axis fastest) and
validated against it on load.  Floats go through the platform's shortest
round-trip repr, so writing and re-reading is lossless and byte-stable.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .frontal import GridSpec, LegendrianData, MODE_SAMPLED


class DataFormatError(ValueError):
    """Malformed data file."""


def data_payload(d: LegendrianData, grid: GridSpec | None = None) -> dict:
    """Evaluate a data triple on a grid and build the file payload."""
    if grid is None:
        grid = d.grid
    if grid is None:
        raise DataFormatError("no grid supplied and the data carries none")
    samples = []
    for x in grid.points():
        samples.append({
            "x": [float(v) for v in x],
            "theta": [float(v) for v in d.theta_at(x)],
            "a": float(d.a_at(x)),
            "b": [float(v) for v in d.b_at(x)],
        })
    return {
        "n": d.dim_n,
        "mode": MODE_SAMPLED,
        "grid": grid.to_dict(),
        "samples": samples,
    }


def save_data(d: LegendrianData, path: str | Path,
              grid: GridSpec | None = None) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    payload = data_payload(d, grid)
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    return path


def load_data(path: str | Path) -> LegendrianData:
    """Read a sampled data file back into interpolating form."""
    path = Path(path)
    try:
        payload = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise DataFormatError(f"{path}: invalid JSON ({exc})") from exc
    return data_from_payload(payload, name=path.stem)


def data_from_payload(payload: dict, name: str = "") -> LegendrianData:
    try:
        n = int(payload["n"])
        grid = GridSpec.from_dict(payload["grid"])
        samples = payload["samples"]
    except (KeyError, TypeError, ValueError) as exc:
        raise DataFormatError(f"missing or malformed field: {exc}") from exc
    if grid.n != n:
        raise DataFormatError(f"grid has {grid.n} axes but n = {n}")
    expected = int(np.prod(grid.counts))
    if len(samples) != expected:
        raise DataFormatError(
            f"expected {expected} samples for counts {grid.counts}, got {len(samples)}"
        )
    points = grid.points()
    theta = np.empty((expected, n))
    a = np.empty(expected)
    b = np.empty((expected, n))
    for row, (sample, x) in enumerate(zip(samples, points)):
        try:
            xs = np.asarray(sample["x"], dtype=float)
            theta[row] = np.asarray(sample["theta"], dtype=float)
            a[row] = float(sample["a"])
            b[row] = np.asarray(sample["b"], dtype=float)
        except (KeyError, TypeError, ValueError) as exc:
            raise DataFormatError(f"sample {row}: {exc}") from exc
        if not np.allclose(xs, x, atol=1e-12, rtol=0.0):
            raise DataFormatError(
                f"sample {row} is at {xs.tolist()}, expected grid point {x.tolist()}"
            )
    return LegendrianData.from_samples(grid, theta, a, b, name=name)
