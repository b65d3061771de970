"""Named catalog of worked frontals and data triples.

Each frontal entry carries closed-form phi and nu callables (plus the exact
Jacobian of phi) and a default probe grid on which its chart stays inside
the open hemisphere-with-slit where the logarithm is defined.  The quintic
cusp entry ``example1`` also ships its closed-form data triple with exact
derivatives, for tolerance-1e-9 work.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable

import numpy as np

from .frontal import FrontalMap, GridSpec, LegendrianData
from .poly import MultiPoly, symbols


def _example1_frontal() -> FrontalMap:
    # phi(x) = (x^2, x^5), nu = (-5x^3, 2)/sqrt(25x^6+4)
    def phi(x):
        s = float(x[0])
        return np.array([s * s, s ** 5])

    def nu(x):
        s = float(x[0])
        root = np.sqrt(25.0 * s ** 6 + 4.0)
        return np.array([-5.0 * s ** 3, 2.0]) / root

    def jac(x):
        s = float(x[0])
        return np.array([[2.0 * s], [5.0 * s ** 4]])

    return FrontalMap(1, phi, nu, jacobian_phi=jac, name="example1")


def example1_data() -> LegendrianData:
    """Closed-form data of the quintic-cusp frontal, exact derivatives included."""

    def theta(x):
        s = float(x[0])
        return np.array([np.arctan2(2.0, -5.0 * s ** 3)])

    def a(x):
        s = float(x[0])
        return -3.0 * s ** 5 / np.sqrt(25.0 * s ** 6 + 4.0)

    def b(x):
        s = float(x[0])
        return np.array([-s * s * (5.0 * s ** 6 + 2.0) / np.sqrt(25.0 * s ** 6 + 4.0)])

    def jac_theta(x):
        s = float(x[0])
        return np.array([[30.0 * s * s / (25.0 * s ** 6 + 4.0)]])

    def grad_a(x):
        s = float(x[0])
        d = 25.0 * s ** 6 + 4.0
        return np.array([(-150.0 * s ** 10 - 60.0 * s ** 4) / d ** 1.5])

    def jac_b(x):
        s = float(x[0])
        d = 25.0 * s ** 6 + 4.0
        return np.array([[-(625.0 * s ** 13 + 110.0 * s ** 7 + 16.0 * s) / d ** 1.5]])

    return LegendrianData(
        dim_n=1, theta=theta, a=a, b=b,
        jac_theta=jac_theta, grad_a=grad_a, jac_b=jac_b,
        name="example1",
    )


def _cusp_frontal() -> FrontalMap:
    # phi(x) = (x^2, x^3), nu = (-3x, 2)/sqrt(9x^2+4): a frontal that is
    # also a wavefront (the pair map is immersive).
    def phi(x):
        s = float(x[0])
        return np.array([s * s, s ** 3])

    def nu(x):
        s = float(x[0])
        return np.array([-3.0 * s, 2.0]) / np.sqrt(9.0 * s * s + 4.0)

    def jac(x):
        s = float(x[0])
        return np.array([[2.0 * s], [3.0 * s * s]])

    return FrontalMap(1, phi, nu, jacobian_phi=jac, name="cusp")


def _parabola_front_frontal() -> FrontalMap:
    # Envelope of the line family with angle x and support x^2/2; the data
    # triple of this curve is exactly (x, x^2/2, x).
    def phi(x):
        s = float(x[0])
        return np.array([
            -s * np.sin(s) + 0.5 * s * s * np.cos(s),
            s * np.cos(s) + 0.5 * s * s * np.sin(s),
        ])

    def nu(x):
        s = float(x[0])
        return np.array([np.cos(s), np.sin(s)])

    def jac(x):
        s = float(x[0])
        scale = 1.0 + 0.5 * s * s
        return np.array([[-scale * np.sin(s)], [scale * np.cos(s)]])

    return FrontalMap(1, phi, nu, jacobian_phi=jac, name="parabola-front")


def _ellipse_frontal() -> FrontalMap:
    # phi(x) = (2 cos x, sin x) with outward normal.
    def phi(x):
        s = float(x[0])
        return np.array([2.0 * np.cos(s), np.sin(s)])

    def nu(x):
        s = float(x[0])
        root = np.sqrt(1.0 + 3.0 * np.sin(s) ** 2)
        return np.array([np.cos(s), 2.0 * np.sin(s)]) / root

    def jac(x):
        s = float(x[0])
        return np.array([[-2.0 * np.sin(s)], [np.cos(s)]])

    return FrontalMap(1, phi, nu, jacobian_phi=jac, name="ellipse")


def _paraboloid2d_frontal() -> FrontalMap:
    # Graph surface (|x|^2/2, x1, x2) oriented so nu(0) is the chart base.
    def phi(x):
        x1, x2 = float(x[0]), float(x[1])
        return np.array([0.5 * (x1 * x1 + x2 * x2), x1, x2])

    def nu(x):
        x1, x2 = float(x[0]), float(x[1])
        root = np.sqrt(1.0 + x1 * x1 + x2 * x2)
        return np.array([1.0, -x1, -x2]) / root

    def jac(x):
        x1, x2 = float(x[0]), float(x[1])
        return np.array([[x1, x2], [1.0, 0.0], [0.0, 1.0]])

    return FrontalMap(2, phi, nu, jacobian_phi=jac, name="paraboloid2d")


def gy_quadratic_data(n: int = 1) -> LegendrianData:
    """Diagonal fixed-point data: theta = x, a = |x|^2 / 2, b = x (exact)."""
    names = tuple(f"x{i}" for i in range(1, n + 1))
    xs = symbols(names)
    a = sum((x * x for x in xs), start=MultiPoly.zero(names)) * Fraction(1, 2)
    data = LegendrianData.from_polys(list(xs), a, list(xs), name="gy-quadratic")
    return data


def case_ii1_data(n: int = 1) -> LegendrianData:
    """theta = x, a = |x|^2, b = 2x: creative, generic, off the fixed set."""
    names = tuple(f"x{i}" for i in range(1, n + 1))
    xs = symbols(names)
    a = sum((x * x for x in xs), start=MultiPoly.zero(names))
    return LegendrianData.from_polys(
        list(xs), a, [2 * x for x in xs], name="case-ii1"
    )


def case_ii2_data(n: int = 1) -> LegendrianData:
    """theta = x, a = |x|^2 / 4, b = x / 2: the t=0 degeneracy seed."""
    names = tuple(f"x{i}" for i in range(1, n + 1))
    xs = symbols(names)
    a = sum((x * x for x in xs), start=MultiPoly.zero(names)) * Fraction(1, 4)
    return LegendrianData.from_polys(
        list(xs), a, [x * Fraction(1, 2) for x in xs], name="case-ii2"
    )


def constant_b_data() -> LegendrianData:
    """theta = x, a = x, b = 1: creative but with a fully degenerate b map."""
    (x,) = symbols("x1")
    one = MultiPoly.const(1, ("x1",))
    return LegendrianData.from_polys([x], x, [one], name="constant-b")


_FRONTAL_FACTORIES: dict[str, Callable[[], FrontalMap]] = {
    "example1": _example1_frontal,
    "cusp": _cusp_frontal,
    "parabola-front": _parabola_front_frontal,
    "ellipse": _ellipse_frontal,
    "paraboloid2d": _paraboloid2d_frontal,
}

_DATA_FACTORIES: dict[str, Callable[[], LegendrianData]] = {
    "example1": example1_data,
    "gy-quadratic": gy_quadratic_data,
    "case-ii1": case_ii1_data,
    "case-ii2": case_ii2_data,
    "constant-b": constant_b_data,
}

_DEFAULT_GRIDS: dict[str, GridSpec] = {
    "example1": GridSpec.uniform(1, -1.0, 1.0, 2001),
    "cusp": GridSpec.uniform(1, -1.0, 1.0, 2001),
    "parabola-front": GridSpec.uniform(1, -1.0, 1.0, 2001),
    "ellipse": GridSpec.uniform(1, -1.3, 1.3, 2001),
    "paraboloid2d": GridSpec.uniform(2, -0.8, 0.8, 21),
    "gy-quadratic": GridSpec.uniform(1, -1.0, 1.0, 2001),
    "case-ii1": GridSpec.uniform(1, -1.0, 1.0, 2001),
    "case-ii2": GridSpec.uniform(1, -1.0, 1.0, 2001),
    "constant-b": GridSpec.uniform(1, -1.0, 1.0, 2001),
}


def frontal_names() -> list[str]:
    return sorted(_FRONTAL_FACTORIES)


def data_names() -> list[str]:
    return sorted(_DATA_FACTORIES)


def get_frontal(name: str) -> FrontalMap:
    try:
        return _FRONTAL_FACTORIES[name]()
    except KeyError:
        raise KeyError(
            f"unknown catalog frontal {name!r}; choose from {frontal_names()}"
        ) from None


def get_data(name: str) -> LegendrianData:
    try:
        return _DATA_FACTORIES[name]()
    except KeyError:
        raise KeyError(
            f"unknown catalog data {name!r}; choose from {data_names()}"
        ) from None


def default_grid(name: str) -> GridSpec:
    try:
        return _DEFAULT_GRIDS[name]
    except KeyError:
        raise KeyError(f"no default grid for {name!r}") from None
