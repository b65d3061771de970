"""Symbolic formulas for the parametrized reflection family on (theta, b) data.

For each axis i the pair (theta_i, b_i) is mapped through the oblique
reflection

    theta_i -> (t_i - 1) theta_i + (2 - t_i) b_i
    b_i     -> t_i theta_i + (1 - t_i) b_i

and the support value is replaced by the generated potential

    a -> sum_i ( t_i(t_i-1)/2 theta_i^2 + t_i(2-t_i) theta_i b_i
                 + (1-t_i)(2-t_i)/2 b_i^2 ) - a.

At t_i = 1 this is the classical swap (theta, a, b) -> (b, sum theta_i b_i - a,
theta).  The same formulas act on polynomials, on exact rationals, and on
floats; this module hosts the polynomial (symbolic) versions shared by the
identity verifier and the data transforms.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence, Union

from .poly import MultiPoly

Value = Union[MultiPoly, Fraction, int, float]


def pair_image(theta: Value, b: Value, t: Value) -> tuple[Value, Value]:
    """Image of one (theta_i, b_i) pair under the parameter-t reflection."""
    return (t - 1) * theta + (2 - t) * b, t * theta + (1 - t) * b


def support_quadratic(theta: Value, b: Value, t: Value) -> Value:
    """Per-axis quadratic generating the transformed support value."""
    if isinstance(t, (MultiPoly, Fraction, int)):
        half = Fraction(1, 2)
    else:
        half = 0.5
    return (
        half * (t * (t - 1)) * theta * theta
        + (t * (2 - t)) * theta * b
        + half * ((1 - t) * (2 - t)) * b * b
    )


def support_image(
    thetas: Sequence[Value], bs: Sequence[Value], a: Value, ts: Sequence[Value]
) -> Value:
    """Transformed support value: the summed quadratics minus the input support."""
    if not (len(thetas) == len(bs) == len(ts)):
        raise ValueError("theta, b and t must have matching lengths")
    total: Value = 0
    for theta, b, t in zip(thetas, bs, ts):
        total = total + support_quadratic(theta, b, t)
    return total - a


def ring_names(n: int, with_t: bool = True) -> tuple[str, ...]:
    """Canonical ring variable order: theta_1..n, a, b_1..n, then t_1..n."""
    names = [f"theta{i}" for i in range(1, n + 1)]
    names.append("a")
    names += [f"b{i}" for i in range(1, n + 1)]
    if with_t:
        names += [f"t{i}" for i in range(1, n + 1)]
    return tuple(names)


def ring_symbols(n: int, with_t: bool = True):
    """Variable polynomials (thetas, a, bs, ts) over the canonical ring."""
    names = ring_names(n, with_t)
    make = lambda name: MultiPoly.var(name, names)
    thetas = tuple(make(f"theta{i}") for i in range(1, n + 1))
    bs = tuple(make(f"b{i}") for i in range(1, n + 1))
    ts = tuple(make(f"t{i}") for i in range(1, n + 1)) if with_t else ()
    return thetas, make("a"), bs, ts
