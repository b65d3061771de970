"""Correspondence between frontals and (theta, a, b) data, both directions.

A frontal is a map phi: R^n -> R^(n+1) with a unit normal field nu along it.
From (phi, nu) this module extracts the chart angle map theta = log(nu), the
support function a = <phi, nu>, and the coefficient field b solving
(Dtheta)^T b = grad a; in the other direction it rebuilds the map pointwise
as sum_i b_i E_i + a nu with E_i the transported coordinate frame.

Derivatives come from closed-form callables when supplied and central finite
differences otherwise.  Where Dtheta is singular, b is extended by the value
at the nearest regular probe point (or by quadratic extrapolation along a
grid line, behind a flag); regular-set density itself is undecidable from
samples, so the genericity probe returns a three-valued verdict.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from .poly import MultiPoly
from .reporting import FAIL, PASS, Report
from .sphere import (
    AntipodalPointError,
    exp_map,
    log_map,
    sphere_point,
    transported_frame,
)

DEFAULT_FD_STEP = 1e-5
DEFAULT_EPS_REGULAR = 1e-9
# Central differences carry O(h^2) truncation error; 50 h^2 leaves headroom.
CREATIVE_TOL_FACTOR = 50.0
CLOSED_FORM_TOL = 1e-9

MODE_CLOSED_FORM = "closed_form"
MODE_SAMPLED = "sampled_grid"
MODE_SYMBOLIC = "symbolic"

LOOKS_GENERIC = "LooksGeneric"
DEGENERATE = "Degenerate"
INCONCLUSIVE = "Inconclusive"


class AntipodalBaseError(ValueError):
    """nu(0) is antipodal to the chart base for both signs (broken normal field)."""


class NotCreativeError(ValueError):
    """The sampled data admits no coefficient field b with grad a = (Dtheta)^T b."""

    def __init__(self, location, residual: float, tol: float):
        self.location = np.asarray(location, dtype=float)
        self.residual = float(residual)
        self.tol = float(tol)
        super().__init__(
            f"creative residual {self.residual:.3e} exceeds {self.tol:.3e} "
            f"at x = {self.location.tolist()}"
        )


class SparseRegularSetError(ValueError):
    """Too few regular samples for a reliable extension of b."""

    def __init__(self, fraction: float):
        self.fraction = float(fraction)
        super().__init__(
            f"only {100 * self.fraction:.2f}% of samples are regular points of theta"
        )


class GaussExtensionError(ValueError):
    """The normal field does not extend continuously across a singular sample."""


def _as_point(x, n: int) -> np.ndarray:
    p = np.atleast_1d(np.asarray(x, dtype=float))
    if p.shape != (n,):
        raise ValueError(f"expected a point in R^{n}, got shape {p.shape}")
    return p


@dataclass(frozen=True)
class GridSpec:
    """Axis-aligned sample box with per-axis counts and a derivative step."""

    box: tuple[tuple[float, float], ...]
    counts: tuple[int, ...]
    fd_step: float = DEFAULT_FD_STEP

    def __post_init__(self) -> None:
        box = tuple((float(lo), float(hi)) for lo, hi in self.box)
        counts = tuple(int(c) for c in self.counts)
        if len(box) != len(counts):
            raise ValueError("box and counts must have one entry per axis")
        if not box:
            raise ValueError("grid needs at least one axis")
        for lo, hi in box:
            if not lo < hi:
                raise ValueError(f"empty axis range [{lo}, {hi}]")
        for c in counts:
            if c < 3:
                raise ValueError("need at least 3 samples per axis")
        if not self.fd_step > 0:
            raise ValueError("fd_step must be positive")
        object.__setattr__(self, "box", box)
        object.__setattr__(self, "counts", counts)
        object.__setattr__(self, "fd_step", float(self.fd_step))

    @classmethod
    def uniform(cls, n: int, lo: float, hi: float, count: int,
                fd_step: float = DEFAULT_FD_STEP) -> "GridSpec":
        return cls(((lo, hi),) * n, (count,) * n, fd_step)

    @property
    def n(self) -> int:
        return len(self.box)

    def axes(self) -> list[np.ndarray]:
        return [np.linspace(lo, hi, c) for (lo, hi), c in zip(self.box, self.counts)]

    def spacings(self) -> tuple[float, ...]:
        return tuple((hi - lo) / (c - 1) for (lo, hi), c in zip(self.box, self.counts))

    def points(self) -> np.ndarray:
        """All samples, shape (prod(counts), n), axis-0 fastest-varying last."""
        mesh = np.meshgrid(*self.axes(), indexing="ij")
        return np.stack([m.ravel() for m in mesh], axis=-1)

    def to_dict(self) -> dict:
        return {
            "box": [[lo, hi] for lo, hi in self.box],
            "counts": list(self.counts),
            "fd_step": self.fd_step,
        }

    @classmethod
    def from_dict(cls, payload: dict) -> "GridSpec":
        return cls(
            tuple((float(lo), float(hi)) for lo, hi in payload["box"]),
            tuple(int(c) for c in payload["counts"]),
            float(payload.get("fd_step", DEFAULT_FD_STEP)),
        )


def fd_jacobian(func: Callable, x: np.ndarray, h: float) -> np.ndarray:
    """Central-difference Jacobian; rows follow the output components."""
    x = np.asarray(x, dtype=float)
    columns = []
    for j in range(x.size):
        step = np.zeros_like(x)
        step[j] = h
        upper = np.atleast_1d(np.asarray(func(x + step), dtype=float))
        lower = np.atleast_1d(np.asarray(func(x - step), dtype=float))
        columns.append((upper - lower) / (2.0 * h))
    return np.stack(columns, axis=-1)


def fd_gradient(func: Callable, x: np.ndarray, h: float) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    out = np.empty_like(x)
    for j in range(x.size):
        step = np.zeros_like(x)
        step[j] = h
        out[j] = (float(func(x + step)) - float(func(x - step))) / (2.0 * h)
    return out


@dataclass
class FrontalMap:
    """A map into R^(n+1) with a unit normal field along it.

    ``phi`` and ``nu`` must be pure callables on points of R^n.  An optional
    closed-form Jacobian of phi sharpens the probes; otherwise central
    differences with the grid's step are used.  Passing ``spot_check`` runs a
    coarse tangency test <dphi(e_k), nu> = 0 at construction.
    """

    dim_n: int
    phi: Callable
    nu: Callable
    jacobian_phi: Callable | None = None
    name: str = ""
    spot_check: GridSpec | None = None

    def __post_init__(self) -> None:
        if self.spot_check is not None:
            report = check_frontal_identity(self, self.spot_check)
            if not report.passed:
                raise ValueError(
                    f"frontal identity violated: max residual "
                    f"{report.data['max_residual']:.3e} at {report.data['location']}"
                )

    def phi_at(self, x) -> np.ndarray:
        return np.atleast_1d(np.asarray(self.phi(_as_point(x, self.dim_n)), dtype=float))

    def nu_at(self, x) -> np.ndarray:
        return sphere_point(self.nu(_as_point(x, self.dim_n)))

    def jacobian_at(self, x, h: float = DEFAULT_FD_STEP) -> np.ndarray:
        x = _as_point(x, self.dim_n)
        if self.jacobian_phi is not None:
            return np.asarray(self.jacobian_phi(x), dtype=float).reshape(
                self.dim_n + 1, self.dim_n
            )
        return fd_jacobian(self.phi_at, x, h)


def check_frontal_identity(f: FrontalMap, grid: GridSpec,
                           tol: float | None = None) -> Report:
    """Max over the grid of |<dphi(e_k), nu>|, against an O(h^2)-scaled bound."""
    h = grid.fd_step
    if tol is None:
        tol = CLOSED_FORM_TOL if f.jacobian_phi is not None else CREATIVE_TOL_FACTOR * h * h
    worst = 0.0
    worst_x = None
    for x in grid.points():
        jac = f.jacobian_at(x, h)
        residual = float(np.max(np.abs(jac.T @ f.nu_at(x))))
        if residual > worst:
            worst, worst_x = residual, x
    return Report(
        "frontal_identity",
        PASS if worst <= tol else FAIL,
        data={
            "max_residual": worst,
            "location": None if worst_x is None else worst_x.tolist(),
            "tol": tol,
        },
    )


@dataclass
class LegendrianData:
    """The data triple (theta, a, b) of a frontal, in one of three modes.

    ``closed_form`` wraps smooth callables (optionally with exact derivative
    callables), ``sampled_grid`` wraps arrays over a grid with multilinear
    interpolation, and ``symbolic`` wraps exact polynomials in x1..xn whose
    derivative callables are exact by construction.
    """

    dim_n: int
    theta: Callable
    a: Callable
    b: Callable
    mode: str = MODE_CLOSED_FORM
    jac_theta: Callable | None = None
    grad_a: Callable | None = None
    jac_b: Callable | None = None
    theta_polys: tuple[MultiPoly, ...] | None = None
    a_poly: MultiPoly | None = None
    b_polys: tuple[MultiPoly, ...] | None = None
    grid: GridSpec | None = None
    samples: dict | None = None
    name: str = ""

    def theta_at(self, x) -> np.ndarray:
        return np.atleast_1d(np.asarray(self.theta(_as_point(x, self.dim_n)), dtype=float))

    def a_at(self, x) -> float:
        return float(self.a(_as_point(x, self.dim_n)))

    def b_at(self, x) -> np.ndarray:
        return np.atleast_1d(np.asarray(self.b(_as_point(x, self.dim_n)), dtype=float))

    @property
    def has_exact_derivatives(self) -> bool:
        return self.jac_theta is not None and self.grad_a is not None

    def derivatives_at(self, x, h: float = DEFAULT_FD_STEP) -> tuple[np.ndarray, np.ndarray]:
        """(Dtheta, grad a) from closed forms when available, else central FD."""
        x = _as_point(x, self.dim_n)
        if self.jac_theta is not None:
            jac = np.asarray(self.jac_theta(x), dtype=float).reshape(self.dim_n, self.dim_n)
        else:
            jac = fd_jacobian(self.theta_at, x, h)
        if self.grad_a is not None:
            grad = np.atleast_1d(np.asarray(self.grad_a(x), dtype=float))
        else:
            grad = fd_gradient(self.a_at, x, h)
        return jac, grad

    def jac_b_at(self, x, h: float = DEFAULT_FD_STEP) -> np.ndarray:
        x = _as_point(x, self.dim_n)
        if self.jac_b is not None:
            return np.asarray(self.jac_b(x), dtype=float).reshape(self.dim_n, self.dim_n)
        return fd_jacobian(self.b_at, x, h)

    # ------------------------------------------------------------ factories

    @classmethod
    def from_polys(cls, theta: Sequence[MultiPoly], a: MultiPoly,
                   b: Sequence[MultiPoly], name: str = "") -> "LegendrianData":
        """Exact symbolic data over the source variables x1..xn."""
        n = len(theta)
        if len(b) != n:
            raise ValueError("theta and b must have the same length")
        names = tuple(f"x{i}" for i in range(1, n + 1))
        for poly in (*theta, a, *b):
            for var in poly.variables:
                if poly.mentions(var) and var not in names:
                    raise ValueError(
                        f"symbolic data must live in {names}, found {var!r}"
                    )
        theta = tuple(p.in_ring(names) for p in theta)
        a = a.in_ring(names)
        b = tuple(p.in_ring(names) for p in b)

        def values(x: np.ndarray) -> dict[str, float]:
            return {name: float(v) for name, v in zip(names, x)}

        theta_jac = tuple(tuple(p.diff(v) for v in names) for p in theta)
        b_jac = tuple(tuple(p.diff(v) for v in names) for p in b)
        a_grad = tuple(a.diff(v) for v in names)

        return cls(
            dim_n=n,
            theta=lambda x: np.array([p.eval_float(values(x)) for p in theta]),
            a=lambda x: a.eval_float(values(x)),
            b=lambda x: np.array([p.eval_float(values(x)) for p in b]),
            mode=MODE_SYMBOLIC,
            jac_theta=lambda x: np.array(
                [[entry.eval_float(values(x)) for entry in row] for row in theta_jac]
            ),
            grad_a=lambda x: np.array([entry.eval_float(values(x)) for entry in a_grad]),
            jac_b=lambda x: np.array(
                [[entry.eval_float(values(x)) for entry in row] for row in b_jac]
            ),
            theta_polys=theta,
            a_poly=a,
            b_polys=b,
            name=name,
        )

    @classmethod
    def from_samples(cls, grid: GridSpec, theta_values: np.ndarray,
                     a_values: np.ndarray, b_values: np.ndarray,
                     name: str = "") -> "LegendrianData":
        """Grid-sampled data with multilinear interpolating callables."""
        n = grid.n
        total = int(np.prod(grid.counts))
        theta_values = np.asarray(theta_values, dtype=float).reshape(total, n)
        a_values = np.asarray(a_values, dtype=float).reshape(total)
        b_values = np.asarray(b_values, dtype=float).reshape(total, n)
        samples = {"theta": theta_values, "a": a_values, "b": b_values}
        axes = grid.axes()

        def interp(values: np.ndarray):
            shaped = values.reshape(*grid.counts, -1)

            def call(x: np.ndarray) -> np.ndarray:
                return _multilinear(axes, shaped, _as_point(x, n))

            return call

        theta_call = interp(theta_values)
        b_call = interp(b_values)
        a_call = interp(a_values[:, None])
        return cls(
            dim_n=n,
            theta=theta_call,
            a=lambda x: float(a_call(x)[0]),
            b=b_call,
            mode=MODE_SAMPLED,
            grid=grid,
            samples=samples,
            name=name,
        )


def _multilinear(axes: list[np.ndarray], values: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Multilinear interpolation on a rectilinear grid; clamps to the box."""
    idx = []
    weights = []
    for axis, coord in zip(axes, x):
        j = int(np.searchsorted(axis, coord) - 1)
        j = min(max(j, 0), axis.size - 2)
        span = axis[j + 1] - axis[j]
        w = (coord - axis[j]) / span
        idx.append(j)
        weights.append(min(max(w, 0.0), 1.0))
    out = np.zeros(values.shape[-1])
    for corner in itertools.product((0, 1), repeat=len(axes)):
        weight = 1.0
        for c, w in zip(corner, weights):
            weight *= w if c else 1.0 - w
        if weight == 0.0:
            continue
        pos = tuple(j + c for j, c in zip(idx, corner))
        out += weight * values[pos]
    return out


# ---------------------------------------------------------------- operations


def support_function(f: FrontalMap, x) -> float:
    """Signed distance of the tangent hyperplane from the origin: <phi, nu>."""
    x = _as_point(x, f.dim_n)
    return float(np.dot(f.phi_at(x), f.nu_at(x)))


def data_of_frontal(f: FrontalMap, grid: GridSpec, *,
                    eps_regular: float = DEFAULT_EPS_REGULAR,
                    tol: float | None = None,
                    fill: str = "nearest") -> LegendrianData:
    """Extract (theta, a, b) from a frontal with normal field.

    The normal field's sign is flipped globally if nu(0) is antipodal to the
    chart base.  b solves the linear system at theta-regular points and is
    extended across singular points by probing outward in steps of the
    derivative step h (``fill="nearest"``: value at the first regular probe;
    ``fill="richardson"``: quadratic extrapolation through three).

    Raises ``NotCreativeError`` when grad a leaves the row space of Dtheta at
    singular samples (the input was not a frontal/normal pair),
    ``SparseRegularSetError`` when under 1% of samples are regular, and
    ``AntipodalBaseError`` for a normal field antipodal at 0 for both signs.
    """
    if fill not in ("nearest", "richardson"):
        raise ValueError(f"unknown fill strategy {fill!r}")
    n = f.dim_n
    h = grid.fd_step
    if tol is None:
        tol = CREATIVE_TOL_FACTOR * h * h

    origin = np.zeros(n)
    base_normal = f.nu_at(origin)
    sign = 1.0
    if base_normal[0] < 0 and np.linalg.norm(base_normal[1:]) <= 1e-9:
        # flip the normal field globally; both signs are valid normal fields
        sign = -1.0
    flipped = sign * base_normal
    if flipped[0] < 0 and np.linalg.norm(flipped[1:]) <= 1e-9:
        raise AntipodalBaseError(
            "normal field is antipodal at the origin for both signs"
        )

    def nu(x: np.ndarray) -> np.ndarray:
        return sign * f.nu_at(x)

    def theta(x: np.ndarray) -> np.ndarray:
        return log_map(nu(x))

    def a(x: np.ndarray) -> float:
        return float(np.dot(f.phi_at(x), nu(x)))

    def system_at(x: np.ndarray) -> tuple[np.ndarray, np.ndarray, float]:
        jac = fd_jacobian(theta, x, h)
        grad = fd_gradient(a, x, h)
        return jac, grad, abs(float(np.linalg.det(jac)))

    def solve_regular(jac: np.ndarray, grad: np.ndarray) -> np.ndarray:
        return np.linalg.solve(jac.T, grad)

    def b(x: np.ndarray) -> np.ndarray:
        x = _as_point(x, n)
        jac, grad, det = system_at(x)
        if det > eps_regular:
            return solve_regular(jac, grad)
        probes = _regular_probes(system_at, x, h, eps_regular)
        if fill == "nearest":
            jac_p, grad_p, _ = probes[0][1]
            return solve_regular(jac_p, grad_p)
        # Quadratic extrapolation back to x through three aligned probes.
        direction, k = probes[0][0]
        aligned = []
        for m in (1, 2, 3):
            xp = x + direction * (m * k * h)
            jac_p = fd_jacobian(theta, xp, h)
            grad_p = fd_gradient(a, xp, h)
            if abs(float(np.linalg.det(jac_p))) <= eps_regular:
                jac_p, grad_p, _ = probes[0][1]
                return solve_regular(jac_p, grad_p)
            aligned.append(solve_regular(jac_p, grad_p))
        return 3.0 * aligned[0] - 3.0 * aligned[1] + aligned[2]

    data = LegendrianData(
        dim_n=n, theta=theta, a=a, b=b,
        mode=MODE_CLOSED_FORM, name=f.name or "frontal-data",
    )

    # Health pass over the grid: creative consistency at singular samples
    # and overall regular-sample density.
    regular = 0
    total = 0
    for x in grid.points():
        try:
            jac, grad, det = system_at(x)
        except AntipodalPointError as exc:
            raise AntipodalPointError(exc.point, location=x.tolist()) from exc
        total += 1
        if det > eps_regular:
            regular += 1
            continue
        solution, _, *_ = np.linalg.lstsq(jac.T, grad, rcond=None)
        misfit = float(np.linalg.norm(jac.T @ solution - grad, ord=np.inf))
        if misfit > tol:
            raise NotCreativeError(x, misfit, tol)
    if regular < 0.01 * total:
        raise SparseRegularSetError(regular / total)
    return data


def _regular_probes(system_at: Callable, x: np.ndarray, h: float,
                    eps_regular: float, max_doublings: int = 14):
    """Probe outward along coordinate axes until Dtheta is invertible.

    Returns [(direction, k), system] entries sorted by distance; nearest
    first; deterministic tie-break by axis then sign.
    """
    n = x.size
    found = []
    k = 1
    for _ in range(max_doublings):
        for axis in range(n):
            for sgn in (1.0, -1.0):
                direction = np.zeros(n)
                direction[axis] = sgn
                probe = x + direction * (k * h)
                jac, grad, det = system_at(probe)
                if det > eps_regular:
                    found.append(((direction, k), (jac, grad, det)))
        if found:
            return found
        k *= 2
    raise SparseRegularSetError(0.0)


def envelope_reconstruct(d: LegendrianData, x) -> np.ndarray:
    """Rebuild the mapped point: sum_i b_i(x) E_i(x) + a(x) nu(x).

    nu is the exponential of theta(x) and E_i the transported frame there;
    requires |theta(x)| < pi for the frame to exist.
    """
    x = _as_point(x, d.dim_n)
    angle = d.theta_at(x)
    normal = exp_map(angle)
    frame = transported_frame(angle)
    return d.b_at(x) @ frame + d.a_at(x) * normal


def creative_check(d: LegendrianData, grid: GridSpec,
                   tol: float | None = None) -> Report:
    """Max residual of grad a = (Dtheta)^T b over the grid.

    Closed-form derivative callables are used when present (tolerance
    ``CLOSED_FORM_TOL``); otherwise central differences with the grid step
    (tolerance ``50 h^2``).  Sampled data differentiates its own arrays.
    """
    if d.mode == MODE_SAMPLED and d.grid is not None:
        return _creative_check_sampled(d, tol)
    h = grid.fd_step
    if tol is None:
        tol = CLOSED_FORM_TOL if d.has_exact_derivatives else CREATIVE_TOL_FACTOR * h * h
    worst = -1.0
    worst_x = None
    for x in grid.points():
        jac, grad = d.derivatives_at(x, h)
        residual = float(np.linalg.norm(grad - jac.T @ d.b_at(x), ord=np.inf))
        if residual > worst:
            worst, worst_x = residual, x
    return Report(
        "creative_condition",
        PASS if worst <= tol else FAIL,
        data={"max_residual": worst, "location": worst_x.tolist(), "tol": tol},
    )


def _creative_check_sampled(d: LegendrianData, tol: float | None) -> Report:
    grid = d.grid
    spacings = grid.spacings()
    if tol is None:
        tol = CREATIVE_TOL_FACTOR * max(spacings) ** 2
    shape = grid.counts
    n = grid.n
    theta = d.samples["theta"].reshape(*shape, n)
    a = d.samples["a"].reshape(shape)
    b = d.samples["b"].reshape(*shape, n)
    grad_a = np.stack(np.gradient(a, *spacings), axis=-1) if n > 1 else \
        np.gradient(a, spacings[0])[..., None]
    worst = -1.0
    worst_idx = None
    for idx in np.ndindex(*shape):
        jac = np.empty((n, n))
        for i in range(n):
            component = theta[..., i]
            grads = np.gradient(component, *spacings) if n > 1 else \
                [np.gradient(component, spacings[0])]
            for j in range(n):
                jac[i, j] = grads[j][idx]
        residual = float(np.linalg.norm(grad_a[idx] - jac.T @ b[idx], ord=np.inf))
        if residual > worst:
            worst, worst_idx = residual, idx
    location = [float(axis[i]) for axis, i in zip(grid.axes(), worst_idx)]
    return Report(
        "creative_condition",
        PASS if worst <= tol else FAIL,
        data={"max_residual": worst, "location": location, "tol": tol},
    )


@dataclass(frozen=True)
class GenericityReport:
    """Sampled regular-point fractions for the theta and b maps."""

    fraction_regular_theta: float
    fraction_regular_b: float
    min_abs_jacobian: float
    verdict: str

    def to_dict(self) -> dict:
        return {
            "fraction_regular_theta": self.fraction_regular_theta,
            "fraction_regular_b": self.fraction_regular_b,
            "min_abs_jacobian": self.min_abs_jacobian,
            "verdict": self.verdict,
        }


def _det_field(d: LegendrianData, grid: GridSpec, which: str) -> np.ndarray:
    h = grid.fd_step
    dets = np.empty(int(np.prod(grid.counts)))
    for pos, x in enumerate(grid.points()):
        if which == "theta":
            jac = d.derivatives_at(x, h)[0]
        else:
            jac = d.jac_b_at(x, h)
        dets[pos] = np.linalg.det(jac)
    return dets.reshape(grid.counts)


def _zeros_isolated(mask: np.ndarray) -> bool:
    """True when every run of flagged samples along every axis line is short
    (length <= 2) and flanked by unflagged samples on both sides."""
    if not mask.any():
        return True
    for axis in range(mask.ndim):
        moved = np.moveaxis(mask, axis, -1)
        lines = moved.reshape(-1, mask.shape[axis])
        for line in lines:
            run = 0
            for pos, flagged in enumerate(line):
                if flagged:
                    run += 1
                    if run > 2 or pos == len(line) - 1:
                        return False
                    if run == 1 and pos == 0:
                        return False
                else:
                    run = 0
    return True


def genericity_probe(d: LegendrianData, grid: GridSpec,
                     eps: float = DEFAULT_EPS_REGULAR) -> GenericityReport:
    """Three-valued regularity heuristic for the theta and b maps.

    Degenerate when either determinant field stays within eps everywhere on
    the sample; LooksGeneric when both fractions reach 0.99 or the flagged
    samples are isolated; Inconclusive otherwise.  Density of the regular
    sets is not decidable from finitely many samples.
    """
    det_theta = _det_field(d, grid, "theta")
    det_b = _det_field(d, grid, "b")
    regular_theta = np.abs(det_theta) > eps
    regular_b = np.abs(det_b) > eps
    frac_theta = float(np.mean(regular_theta))
    frac_b = float(np.mean(regular_b))
    min_jac = float(min(np.min(np.abs(det_theta)), np.min(np.abs(det_b))))

    if not regular_theta.any() or not regular_b.any():
        verdict = DEGENERATE
    elif (frac_theta >= 0.99 and frac_b >= 0.99) or (
        _zeros_isolated(~regular_theta) and _zeros_isolated(~regular_b)
    ):
        verdict = LOOKS_GENERIC
    else:
        verdict = INCONCLUSIVE
    return GenericityReport(frac_theta, frac_b, min_jac, verdict)


def wavefront_probe(f: FrontalMap, grid: GridSpec,
                    rank_tol: float = 1e-6) -> Report:
    """Rank of the stacked Jacobian of (phi, nu) at every sample.

    Reports the samples where the rank drops below n (the locus separating
    the map from an immersed pair).  Passes when no drop occurs.
    """
    h = grid.fd_step
    drops = []
    min_sigma = np.inf
    for x in grid.points():
        jac_phi = f.jacobian_at(x, h)
        jac_nu = fd_jacobian(f.nu_at, x, h)
        stacked = np.vstack([jac_phi, jac_nu])
        sigma = np.linalg.svd(stacked, compute_uv=False)
        smallest = float(sigma[-1]) if sigma.size else 0.0
        min_sigma = min(min_sigma, smallest)
        if smallest <= rank_tol:
            drops.append(x.tolist())
    return Report(
        "wavefront_rank",
        PASS if not drops else FAIL,
        data={
            "rank_drop_points": drops,
            "min_singular_value": float(min_sigma),
            "rank_tol": rank_tol,
            "is_wavefront_on_sample": not drops,
        },
    )


def gauss_map_for_curve(phi: Callable, grid: GridSpec,
                        singular_tol: float = 1e-8,
                        jump_tol: float = 0.5) -> Callable:
    """Synthesize a continuous unit normal for a plane curve (n = 1 only).

    Normalizes the rotated derivative (-phi2', phi1')/|phi'| at regular
    samples and propagates a sign so consecutive regular samples agree.
    Raises ``GaussExtensionError`` when no sign choice reconnects the field
    across a sampled singular point (inner product jump beyond ``jump_tol``).
    """
    if grid.n != 1:
        raise ValueError("normal synthesis is implemented for n = 1 only")
    h = grid.fd_step

    def raw_normal(x: np.ndarray) -> np.ndarray | None:
        tangent = fd_jacobian(lambda p: np.asarray(phi(p), dtype=float), x, h)[:, 0]
        norm = float(np.linalg.norm(tangent))
        if norm <= singular_tol:
            return None
        return np.array([-tangent[1], tangent[0]]) / norm

    xs = grid.points()
    normals = [raw_normal(x) for x in xs]
    signs = np.ones(len(xs))
    previous = None
    for pos, normal in enumerate(normals):
        if normal is None:
            continue
        if previous is not None:
            prev_pos, prev_sign = previous
            alignment = float(np.dot(normals[prev_pos] * prev_sign, normal))
            if abs(alignment) < jump_tol:
                raise GaussExtensionError(
                    f"normal field jumps near x = {xs[pos].tolist()} "
                    f"(|cos| = {abs(alignment):.3f})"
                )
            signs[pos] = 1.0 if alignment >= 0 else -1.0
        previous = (pos, signs[pos])
    # piecewise-constant sign lookup between samples
    sample_x = xs[:, 0]

    def nu(x) -> np.ndarray:
        x = _as_point(x, 1)
        normal = raw_normal(x)
        if normal is None:
            # limit from the nearest regular probe
            for k in (1, 2, 4, 8, 16, 32):
                for sgn in (1.0, -1.0):
                    candidate = raw_normal(x + np.array([sgn * k * h]))
                    if candidate is not None:
                        normal = candidate
                        x = x + np.array([sgn * k * h])
                        break
                if normal is not None:
                    break
            if normal is None:
                raise GaussExtensionError(f"no regular point near x = {x.tolist()}")
        pos = int(np.clip(np.searchsorted(sample_x, x[0]), 0, len(sample_x) - 1))
        return signs[pos] * normal

    return nu
