"""Unit-sphere geometry in the normal chart at the base point e1.

Points of S^n live in R^(n+1); tangent vectors at the base point
e1 = (1, 0, ..., 0) are identified with R^n via the trailing coordinates.
The exponential map follows great circles, its inverse is defined away
from the antipode -e1, and parallel transport moves tangent vectors along
the radial geodesic from e1: the component along the geodesic direction
rotates in the geodesic plane, the orthogonal complement is untouched.

All functions are pure and operate on plain numpy arrays.
"""

from __future__ import annotations

import numpy as np

UNIT_TOLERANCE = 1e-12

# Below this angle the sin(r)/r style quotients switch to their quadratic
# Taylor approximation to avoid 0/0.
_SMALL_ANGLE = 1e-8


class AntipodalPointError(ValueError):
    """Logarithm requested at (or within tolerance of) the antipode -e1."""

    def __init__(self, point: np.ndarray, location=None):
        self.point = np.asarray(point, dtype=float)
        self.location = location
        where = "" if location is None else f" (reached from x = {location})"
        super().__init__(
            f"point {self.point.tolist()} is antipodal to the base point{where}"
        )


class GeodesicUndefinedError(ValueError):
    """Radial transport needs |v| < pi for a unique geodesic."""

    def __init__(self, norm: float):
        self.norm = float(norm)
        super().__init__(f"tangent vector norm {self.norm} is >= pi")


def sphere_point(coords) -> np.ndarray:
    """Normalize onto the unit sphere; rejects zero and non-finite input."""
    p = np.asarray(coords, dtype=float)
    if p.ndim != 1 or p.size < 2:
        raise ValueError(f"sphere point needs at least 2 coordinates, got shape {p.shape}")
    if not np.all(np.isfinite(p)):
        raise ValueError(f"non-finite sphere point {p.tolist()}")
    norm = float(np.linalg.norm(p))
    if norm == 0.0:
        raise ValueError("cannot normalize the zero vector onto the sphere")
    return p / norm


def _sinc(r: float) -> float:
    """sin(r)/r, stable at r = 0."""
    if r < _SMALL_ANGLE:
        return 1.0 - r * r / 6.0
    return np.sin(r) / r


def exp_map(v) -> np.ndarray:
    """Great-circle exponential at e1: cos|v| e1 + sin|v| (0, v/|v|)."""
    v = np.asarray(v, dtype=float)
    r = float(np.linalg.norm(v))
    out = np.empty(v.size + 1)
    out[0] = np.cos(r)
    out[1:] = _sinc(r) * v
    return out


def log_map(p) -> np.ndarray:
    """Inverse of exp_map on the sphere minus the antipode of e1.

    Output norm is the geodesic distance from e1 (always < pi).  Raises
    ``AntipodalPointError`` within ``UNIT_TOLERANCE`` of -e1.
    """
    p = sphere_point(p)
    rest = p[1:]
    rest_norm = float(np.linalg.norm(rest))
    if p[0] < 0.0 and rest_norm <= UNIT_TOLERANCE:
        raise AntipodalPointError(p)
    angle = float(np.arctan2(rest_norm, p[0]))
    if rest_norm <= UNIT_TOLERANCE:
        return np.zeros(p.size - 1)
    return (angle / rest_norm) * rest


def parallel_transport(v, w) -> np.ndarray:
    """Levi-Civita transport of w from e1 to exp_map(v) along the radial geodesic.

    Returns an ambient vector tangent to the sphere at exp_map(v).  The
    component of w orthogonal to v is embedded unchanged; the component
    along v tilts by the angle |v| in the plane spanned by e1 and (0, v).
    """
    v = np.asarray(v, dtype=float)
    w = np.asarray(w, dtype=float)
    if v.shape != w.shape:
        raise ValueError(f"shape mismatch: v {v.shape} vs w {w.shape}")
    r = float(np.linalg.norm(v))
    if r >= np.pi:
        raise GeodesicUndefinedError(r)
    out = np.zeros(v.size + 1)
    out[1:] = w
    if r == 0.0:
        return out
    u = v / r
    radial = float(np.dot(w, u))
    if radial != 0.0:
        # rotate the radial component: (0, u) -> (-sin r, cos r * u)
        out[0] -= radial * np.sin(r)
        out[1:] += radial * (np.cos(r) - 1.0) * u
    return out


def transported_frame(v) -> np.ndarray:
    """Transport of the base coordinate frame to exp_map(v).

    Row i is ``parallel_transport(v, e_i)``; the rows form an orthonormal
    basis of the tangent space at exp_map(v).
    """
    v = np.asarray(v, dtype=float)
    n = v.size
    r = float(np.linalg.norm(v))
    if r >= np.pi:
        raise GeodesicUndefinedError(r)
    frame = np.zeros((n, n + 1))
    frame[:, 1:] = np.eye(n)
    if r == 0.0:
        return frame
    u = v / r
    frame[:, 0] = -np.sin(r) * u
    frame[:, 1:] += (np.cos(r) - 1.0) * np.outer(u, u)
    return frame
