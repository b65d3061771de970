"""Transforms on (theta, a, b) data: the classical swap and its parameter family.

``legendre`` is the pointwise swap (theta, a, b) -> (b, sum theta_i b_i - a,
theta); ``fake_transform`` is the one-parameter-per-axis oblique reflection
family that shares its fixed-point set.  Both act on symbolic data exactly
(polynomials with rational coefficients), on closed-form callables, and on
grid samples.  The membership probe classifies data against the creative
condition, the diagonal fixed-point set, and the genericity heuristic; the
demo constructors exhibit how the t = 2 and t = 0 family members destroy
genericity while the t = 1 member preserves it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from . import family
from .frontal import (
    DEGENERATE,
    LOOKS_GENERIC,
    MODE_SAMPLED,
    MODE_SYMBOLIC,
    CLOSED_FORM_TOL,
    CREATIVE_TOL_FACTOR,
    GenericityReport,
    GridSpec,
    LegendrianData,
    NotCreativeError,
    creative_check,
    genericity_probe,
)
from .poly import MultiPoly, symbols
from .reporting import FAIL, PASS, Report


class DegenerateLambdaError(ValueError):
    """The perturbation weight -1/2 collapses the b-map Jacobian."""


@dataclass(frozen=True)
class FakeParams:
    """Per-axis parameters of the reflection family."""

    t: tuple[Fraction, ...]

    @classmethod
    def of(cls, *values) -> "FakeParams":
        return cls(tuple(Fraction(v) for v in values))

    @classmethod
    def parse(cls, text: str) -> "FakeParams":
        """Parse a CLI parameter list such as ``2`` or ``0,1,2``."""
        parts = [p.strip() for p in text.split(",") if p.strip()]
        if not parts:
            raise ValueError("empty parameter list")
        return cls(tuple(Fraction(p) for p in parts))

    def broadcast(self, n: int) -> tuple[Fraction, ...]:
        if len(self.t) == n:
            return self.t
        if len(self.t) == 1:
            return self.t * n
        raise ValueError(f"got {len(self.t)} parameters for {n} axes")

    def label(self) -> str:
        return ",".join(str(v) for v in self.t)


@dataclass(frozen=True)
class MembershipVerdict:
    """Where a data triple sits relative to the nested data classes."""

    in_X: bool
    in_GX: GenericityReport
    in_Y: bool
    in_GY: bool
    residuals: dict

    def to_dict(self) -> dict:
        return {
            "in_X": self.in_X,
            "in_GX": self.in_GX.to_dict(),
            "in_Y": self.in_Y,
            "in_GY": self.in_GY,
            "residuals": dict(self.residuals),
        }


def symbolic_creative_residuals(d: LegendrianData) -> list[MultiPoly]:
    """Exact residuals of grad a = (Dtheta)^T b, one polynomial per axis."""
    names = tuple(f"x{i}" for i in range(1, d.dim_n + 1))
    residuals = []
    for j, name in enumerate(names):
        total = d.a_poly.diff(name)
        for theta_poly, b_poly in zip(d.theta_polys, d.b_polys):
            total = total - b_poly * theta_poly.diff(name)
        residuals.append(total)
    return residuals


def _require_creative_symbolic(d: LegendrianData) -> None:
    for j, residual in enumerate(symbolic_creative_residuals(d)):
        if not residual.is_zero:
            raise NotCreativeError([j], float("nan"), 0.0)


def legendre(d: LegendrianData, check: GridSpec | None = None) -> LegendrianData:
    """The pointwise swap (theta, a, b) -> (b, sum theta_i b_i - a, theta).

    Symbolic data is checked for exact creativity up front; numeric data is
    checked only when a grid is supplied (the condition is a precondition of
    the input, not re-derivable pointwise).
    """
    if d.mode == MODE_SYMBOLIC:
        _require_creative_symbolic(d)
        total = sum(
            (tp * bp for tp, bp in zip(d.theta_polys, d.b_polys)),
            start=MultiPoly.zero(),
        )
        return LegendrianData.from_polys(
            list(d.b_polys), total - d.a_poly, list(d.theta_polys),
            name=f"legendre({d.name})" if d.name else "legendre",
        )
    if check is not None:
        report = creative_check(d, check)
        if not report.passed:
            raise NotCreativeError(
                report.data["location"], report.data["max_residual"], report.data["tol"]
            )
    if d.mode == MODE_SAMPLED:
        theta = d.samples["theta"]
        a = d.samples["a"]
        b = d.samples["b"]
        new_a = np.sum(theta * b, axis=1) - a
        out = LegendrianData.from_samples(d.grid, b.copy(), new_a, theta.copy(),
                                          name=f"legendre({d.name})" if d.name else "legendre")
        return out

    theta_call, a_call, b_call = d.theta_at, d.a_at, d.b_at

    def new_a(x):
        return float(np.dot(theta_call(x), b_call(x))) - a_call(x)

    jac_theta = jac_b = grad_a = None
    if d.jac_theta is not None and d.grad_a is not None and d.jac_b is not None:
        old_jt, old_ga, old_jb = d.jac_theta, d.grad_a, d.jac_b

        def grad_a(x):
            jt = np.asarray(old_jt(x), dtype=float)
            jb = np.asarray(old_jb(x), dtype=float)
            return jb.T @ theta_call(x) + jt.T @ b_call(x) - np.asarray(old_ga(x), dtype=float)

        jac_theta = old_jb
        jac_b = old_jt

    return LegendrianData(
        dim_n=d.dim_n,
        theta=b_call,
        a=new_a,
        b=theta_call,
        mode=d.mode,
        jac_theta=jac_theta,
        grad_a=grad_a,
        jac_b=jac_b,
        name=f"legendre({d.name})" if d.name else "legendre",
    )


def fake_transform(d: LegendrianData, params: FakeParams,
                   check: GridSpec | None = None) -> LegendrianData:
    """Apply the parameter-t reflection family axiswise.

    The output support value is the generated potential, so the output
    satisfies the creative condition by construction whenever the input does.
    At t = (1, ..., 1) the result coincides with ``legendre`` exactly.
    """
    ts = params.broadcast(d.dim_n)
    label = f"fake[t={params.label()}]({d.name})" if d.name else f"fake[t={params.label()}]"

    if d.mode == MODE_SYMBOLIC:
        _require_creative_symbolic(d)
        theta_images, b_images = [], []
        for theta_poly, b_poly, t in zip(d.theta_polys, d.b_polys, ts):
            theta_image, b_image = family.pair_image(theta_poly, b_poly, t)
            theta_images.append(theta_image + MultiPoly.zero())
            b_images.append(b_image + MultiPoly.zero())
        a_image = family.support_image(d.theta_polys, d.b_polys, d.a_poly, ts)
        return LegendrianData.from_polys(theta_images, a_image, b_images, name=label)

    if check is not None:
        report = creative_check(d, check)
        if not report.passed:
            raise NotCreativeError(
                report.data["location"], report.data["max_residual"], report.data["tol"]
            )

    t_float = np.array([float(t) for t in ts])

    if d.mode == MODE_SAMPLED:
        theta = d.samples["theta"]
        a = d.samples["a"]
        b = d.samples["b"]
        new_theta = (t_float - 1.0) * theta + (2.0 - t_float) * b
        new_b = t_float * theta + (1.0 - t_float) * b
        quad = (
            0.5 * t_float * (t_float - 1.0) * theta ** 2
            + t_float * (2.0 - t_float) * theta * b
            + 0.5 * (1.0 - t_float) * (2.0 - t_float) * b ** 2
        )
        new_a = np.sum(quad, axis=1) - a
        return LegendrianData.from_samples(d.grid, new_theta, new_a, new_b, name=label)

    theta_call, a_call, b_call = d.theta_at, d.a_at, d.b_at

    def new_theta(x):
        return (t_float - 1.0) * theta_call(x) + (2.0 - t_float) * b_call(x)

    def new_b(x):
        return t_float * theta_call(x) + (1.0 - t_float) * b_call(x)

    def new_a(x):
        theta = theta_call(x)
        b = b_call(x)
        quad = (
            0.5 * t_float * (t_float - 1.0) * theta ** 2
            + t_float * (2.0 - t_float) * theta * b
            + 0.5 * (1.0 - t_float) * (2.0 - t_float) * b ** 2
        )
        return float(np.sum(quad)) - a_call(x)

    jac_theta = jac_b = grad_a = None
    if d.jac_theta is not None and d.grad_a is not None and d.jac_b is not None:
        old_jt, old_ga, old_jb = d.jac_theta, d.grad_a, d.jac_b

        def jac_theta(x):
            jt = np.asarray(old_jt(x), dtype=float)
            jb = np.asarray(old_jb(x), dtype=float)
            return (t_float - 1.0)[:, None] * jt + (2.0 - t_float)[:, None] * jb

        def jac_b(x):
            jt = np.asarray(old_jt(x), dtype=float)
            jb = np.asarray(old_jb(x), dtype=float)
            return t_float[:, None] * jt + (1.0 - t_float)[:, None] * jb

        def grad_a(x):
            jt = np.asarray(old_jt(x), dtype=float)
            jb = np.asarray(old_jb(x), dtype=float)
            theta = theta_call(x)
            b = b_call(x)
            total = -np.asarray(old_ga(x), dtype=float)
            coeff_theta = t_float * (t_float - 1.0) * theta + t_float * (2.0 - t_float) * b
            coeff_b = t_float * (2.0 - t_float) * theta + (1.0 - t_float) * (2.0 - t_float) * b
            total = total + jt.T @ coeff_theta + jb.T @ coeff_b
            return total

    return LegendrianData(
        dim_n=d.dim_n,
        theta=new_theta,
        a=new_a,
        b=new_b,
        mode=d.mode,
        jac_theta=jac_theta,
        grad_a=grad_a,
        jac_b=jac_b,
        name=label,
    )


def resolve_transform(name: str) -> tuple[Callable[[LegendrianData], LegendrianData], str]:
    """Look up a transform by CLI name: ``legendre`` or ``fake:t=...``."""
    if name == "legendre":
        return legendre, "legendre"
    if name.startswith("fake:t="):
        params = FakeParams.parse(name[len("fake:t="):])
        return (lambda d: fake_transform(d, params)), f"fake[t={params.label()}]"
    raise ValueError(f"unknown transform {name!r}; use 'legendre' or 'fake:t=...'")


def involution_check(transform: Callable[[LegendrianData], LegendrianData],
                     d: LegendrianData, grid: GridSpec | None = None,
                     tol: float = 1e-9) -> Report:
    """Apply a transform twice and compare with the input.

    Symbolic data compares polynomials exactly and lists nonzero residuals;
    numeric data reports the max pointwise deviation over the grid.
    """
    twice = transform(transform(d))
    if d.mode == MODE_SYMBOLIC:
        residuals = []
        for before, after, tag in (
            (d.theta_polys, twice.theta_polys, "theta"),
            ((d.a_poly,), (twice.a_poly,), "a"),
            (d.b_polys, twice.b_polys, "b"),
        ):
            for i, (p, q) in enumerate(zip(before, after), start=1):
                delta = q - p
                if not delta.is_zero:
                    residuals.append(f"{tag}[{i}]: {delta}")
        return Report(
            "involution_law",
            PASS if not residuals else FAIL,
            residuals=residuals,
            data={"mode": "symbolic", "exact": True},
        )
    if grid is None:
        raise ValueError("numeric involution check needs a grid")
    worst = -1.0
    worst_x = None
    for x in grid.points():
        deviation = max(
            float(np.max(np.abs(twice.theta_at(x) - d.theta_at(x)))),
            abs(twice.a_at(x) - d.a_at(x)),
            float(np.max(np.abs(twice.b_at(x) - d.b_at(x)))),
        )
        if deviation > worst:
            worst, worst_x = deviation, x
    return Report(
        "involution_law",
        PASS if worst <= tol else FAIL,
        data={"max_deviation": worst, "location": worst_x.tolist(), "tol": tol},
    )


def membership(d: LegendrianData, grid: GridSpec,
               tol: float | None = None) -> MembershipVerdict:
    """Classify data against the creative, fixed-point, and genericity tests.

    The fixed-point test checks both b = theta and a = |theta|^2 / 2; it is
    exact for symbolic data.  in_GY requires the fixed-point test plus a
    LooksGeneric verdict (both maps coincide on the fixed set).
    """
    if tol is None:
        if d.mode == MODE_SAMPLED and d.grid is not None:
            tol = CREATIVE_TOL_FACTOR * max(d.grid.spacings()) ** 2
        else:
            tol = CLOSED_FORM_TOL
    creative = creative_check(d, grid)
    generic = genericity_probe(d, grid)
    residuals: dict = {"creative_max": creative.data["max_residual"]}

    if d.mode == MODE_SYMBOLIC:
        half_norm = sum(
            (p * p for p in d.theta_polys), start=MultiPoly.zero()
        ) * Fraction(1, 2)
        in_y = all(bp == tp for bp, tp in zip(d.b_polys, d.theta_polys)) and (
            d.a_poly == half_norm
        )
        residuals["fixed_point"] = "exact" if in_y else "symbolic mismatch"
    else:
        worst = 0.0
        for x in grid.points():
            theta = d.theta_at(x)
            worst = max(
                worst,
                float(np.max(np.abs(d.b_at(x) - theta))),
                abs(d.a_at(x) - 0.5 * float(np.dot(theta, theta))),
            )
        in_y = worst <= tol
        residuals["fixed_point"] = worst
    in_gy = bool(in_y and generic.verdict == LOOKS_GENERIC)
    return MembershipVerdict(
        in_X=creative.passed,
        in_GX=generic,
        in_Y=bool(in_y),
        in_GY=in_gy,
        residuals=residuals,
    )


def _identity_polys(n: int) -> tuple[MultiPoly, ...]:
    names = tuple(f"x{i}" for i in range(1, n + 1))
    return symbols(names)


def _det_polys(rows: Sequence[Sequence[MultiPoly]]) -> MultiPoly:
    """Leibniz determinant of a small polynomial matrix."""
    import itertools

    n = len(rows)
    total = MultiPoly.zero()
    for perm in itertools.permutations(range(n)):
        sign = 1
        seen = list(perm)
        for i in range(n):
            for j in range(i + 1, n):
                if seen[i] > seen[j]:
                    sign = -sign
        term = MultiPoly.const(sign)
        for i in range(n):
            term = term * rows[i][perm[i]]
        total = total + term
    return total


def case_I_counterexample(i0: int = 1, lam: Fraction | int = 1,
                          n: int = 1) -> tuple[LegendrianData, LegendrianData, Report]:
    """A perturbed diagonal datum fixed by any transform that fixes axis i0.

    Starting from the diagonal datum (x, |x|^2/2, x), adds lam times the
    datum (0, x_{i0}^2, 2 x_{i0} e_{i0}).  The sum stays creative with the
    b-map Jacobian scaled by exactly (1 + 2 lam), so it stays generic for
    lam != -1/2 while leaving the fixed-point set for lam != 0; a transform
    acting as the identity on axis i0 fixes it anyway, which is the
    contradiction this construction exhibits.
    """
    lam = Fraction(lam)
    if lam == Fraction(-1, 2):
        raise DegenerateLambdaError(
            "lam = -1/2 makes the perturbed b map singular everywhere"
        )
    if not 1 <= i0 <= n:
        raise ValueError(f"axis index {i0} out of range 1..{n}")
    xs = _identity_polys(n)
    half = Fraction(1, 2)
    base_a = sum((x * x for x in xs), start=MultiPoly.zero()) * half
    base = LegendrianData.from_polys(list(xs), base_a, list(xs), name="gy-quadratic")

    pivot = xs[i0 - 1]
    perturbed_a = base_a + lam * pivot * pivot
    perturbed_b = [
        x + 2 * lam * pivot if i == i0 else x for i, x in enumerate(xs, start=1)
    ]
    perturbed = LegendrianData.from_polys(
        list(xs), perturbed_a, perturbed_b, name=f"gy-quadratic+{lam}*pivot"
    )

    report = Report("case_I_counterexample", PASS)
    creative_residuals = symbolic_creative_residuals(perturbed)
    if any(not r.is_zero for r in creative_residuals):
        report.status = FAIL
        report.residuals += [str(r) for r in creative_residuals if not r.is_zero]

    names = tuple(f"x{i}" for i in range(1, n + 1))
    jac_b_polys = [[bp.diff(v) for v in names] for bp in perturbed_b]
    det_b = _det_polys(jac_b_polys)
    expected_det = MultiPoly.const(1 + 2 * lam)
    if det_b != expected_det:
        report.status = FAIL
        report.residuals.append(f"det Db = {det_b}, expected {expected_det}")

    in_y = all(bp == tp for bp, tp in zip(perturbed.b_polys, perturbed.theta_polys))
    if lam != 0 and in_y:
        report.status = FAIL
        report.residuals.append("perturbed datum unexpectedly on the fixed set")

    report.data.update({
        "lam": str(lam),
        "i0": i0,
        "jacobian_scale": str(1 + 2 * lam),
        "perturbed_in_Y": bool(in_y),
        "fixed_by_axis_trivial_transform": True,
        "note": (
            "a transform acting as the identity on the perturbed axes fixes "
            "this non-diagonal datum, so no such transform moves every "
            "off-diagonal datum"
        ),
    })
    return base, perturbed, report


def case_II1_demo(n: int = 1, i0: int = 1,
                  theta_polys: Sequence[MultiPoly] | None = None,
                  grid: GridSpec | None = None) -> Report:
    """The t=2 family member zeroes one output b component identically.

    Input (theta, |theta|^2, 2 theta) is creative and generic; applying the
    family with t_{i0} = 2 (and 1 elsewhere) gives b~_{i0} = 2 theta_{i0} -
    b_{i0} identically zero, so the image leaves the generic class.
    """
    thetas = tuple(theta_polys) if theta_polys is not None else _identity_polys(n)
    a = sum((p * p for p in thetas), start=MultiPoly.zero())
    data = LegendrianData.from_polys(
        list(thetas), a, [2 * p for p in thetas], name="case-ii1-input"
    )
    ts = tuple(Fraction(2) if i == i0 else Fraction(1) for i in range(1, n + 1))
    image = fake_transform(data, FakeParams(ts))

    report = Report("case_II1_degeneracy", PASS)
    pivot_b = image.b_polys[i0 - 1]
    if not pivot_b.is_zero:
        report.status = FAIL
        report.residuals.append(f"b~[{i0}] = {pivot_b}")
    names = tuple(f"x{i}" for i in range(1, n + 1))
    det_b = _det_polys([[bp.diff(v) for v in names] for bp in image.b_polys])
    if not det_b.is_zero:
        report.status = FAIL
        report.residuals.append(f"det Db~ = {det_b}")

    probe_grid = grid or GridSpec.uniform(n, -1.0, 1.0, 41 if n > 1 else 2001)
    verdict = genericity_probe(image, probe_grid)
    input_verdict = genericity_probe(data, probe_grid)
    creative_in = all(r.is_zero for r in symbolic_creative_residuals(data))
    creative_out = all(r.is_zero for r in symbolic_creative_residuals(image))
    if verdict.verdict != DEGENERATE or not (creative_in and creative_out):
        report.status = FAIL
    report.data.update({
        "i0": i0,
        "t": [str(t) for t in ts],
        "b_pivot": str(pivot_b),
        "det_b_image": str(det_b),
        "input_creative": creative_in,
        "output_creative": creative_out,
        "input_verdict": input_verdict.verdict,
        "output_verdict": verdict.verdict,
        "output_fraction_regular_b": verdict.fraction_regular_b,
    })
    return report


def case_II2_demo(n: int = 1, i0: int = 1,
                  grid: GridSpec | None = None) -> Report:
    """The t=0 family member zeroes one output theta component identically.

    Input (theta, |theta|^2/4, theta/2) makes theta~_{i0} = -theta_{i0} +
    2 b_{i0} vanish, the mirror image of the t=2 degeneracy.
    """
    thetas = _identity_polys(n)
    quarter = Fraction(1, 4)
    a = sum((p * p for p in thetas), start=MultiPoly.zero()) * quarter
    data = LegendrianData.from_polys(
        list(thetas), a, [p * Fraction(1, 2) for p in thetas], name="case-ii2-input"
    )
    ts = tuple(Fraction(0) if i == i0 else Fraction(1) for i in range(1, n + 1))
    image = fake_transform(data, FakeParams(ts))

    report = Report("case_II2_degeneracy", PASS)
    pivot_theta = image.theta_polys[i0 - 1]
    if not pivot_theta.is_zero:
        report.status = FAIL
        report.residuals.append(f"theta~[{i0}] = {pivot_theta}")
    names = tuple(f"x{i}" for i in range(1, n + 1))
    det_theta = _det_polys([[tp.diff(v) for v in names] for tp in image.theta_polys])
    if not det_theta.is_zero:
        report.status = FAIL
        report.residuals.append(f"det Dtheta~ = {det_theta}")

    probe_grid = grid or GridSpec.uniform(n, -1.0, 1.0, 41 if n > 1 else 2001)
    verdict = genericity_probe(image, probe_grid)
    if verdict.verdict != DEGENERATE:
        report.status = FAIL
    report.data.update({
        "i0": i0,
        "t": [str(t) for t in ts],
        "theta_pivot": str(pivot_theta),
        "det_theta_image": str(det_theta),
        "output_verdict": verdict.verdict,
        "output_fraction_regular_theta": verdict.fraction_regular_theta,
    })
    return report
