"""Deterministic SVG figures for plane-curve (n = 1) runs.

Figures are rendered headless and written with a fixed hash salt and no
date metadata, so identical inputs yield byte-identical files.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

plt.rcParams["svg.hashsalt"] = "frontaldual"

_SAVE_KWARGS = {"format": "svg", "metadata": {"Date": None}}


def _new_axes(title: str):
    fig, ax = plt.subplots(figsize=(6.0, 6.0))
    ax.set_title(title)
    ax.set_xlabel("X")
    ax.set_ylabel("Y")
    ax.set_aspect("equal", adjustable="datalim")
    return fig, ax


def save_envelope_figure(path: str | Path, curve: np.ndarray, normals: np.ndarray,
                         supports: np.ndarray, reconstruction: np.ndarray,
                         title: str = "envelope", tangent_count: int = 25) -> Path:
    """Curve, a sample of its tangent lines, and the reconstruction overlay.

    Each tangent line is the set <X, nu> = a drawn as a segment centered on
    the corresponding curve point.
    """
    curve = np.asarray(curve, dtype=float)
    reconstruction = np.asarray(reconstruction, dtype=float)
    normals = np.asarray(normals, dtype=float)
    fig, ax = _new_axes(title)

    span = max(np.ptp(curve[:, 0]), np.ptp(curve[:, 1]), 1e-3)
    half_len = 0.6 * span
    step = max(1, len(curve) // tangent_count)
    for idx in range(0, len(curve), step):
        nu = normals[idx]
        tangent_dir = np.array([-nu[1], nu[0]])
        anchor = curve[idx]
        seg = np.stack([anchor - half_len * tangent_dir, anchor + half_len * tangent_dir])
        ax.plot(seg[:, 0], seg[:, 1], color="0.8", linewidth=0.6, zorder=1)

    ax.plot(curve[:, 0], curve[:, 1], color="C0", linewidth=1.8,
            label="curve", zorder=3)
    ax.plot(reconstruction[:, 0], reconstruction[:, 1], color="C3",
            linestyle="--", linewidth=1.2, label="reconstruction", zorder=4)
    ax.legend(loc="best")

    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, **_SAVE_KWARGS)
    plt.close(fig)
    return path


def save_pair_figure(path: str | Path, first: np.ndarray, second: np.ndarray,
                     labels: tuple[str, str], title: str = "envelopes") -> Path:
    """Two plane curves on one axis, for before/after transform views."""
    first = np.asarray(first, dtype=float)
    second = np.asarray(second, dtype=float)
    fig, ax = _new_axes(title)
    ax.plot(first[:, 0], first[:, 1], color="C0", linewidth=1.6, label=labels[0])
    ax.plot(second[:, 0], second[:, 1], color="C3", linewidth=1.6,
            linestyle="--", label=labels[1])
    ax.legend(loc="best")
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, **_SAVE_KWARGS)
    plt.close(fig)
    return path
