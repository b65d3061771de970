"""Formal 1-forms with polynomial coefficients and exact exterior calculus.

A ``OneForm`` is a finite sum ``sum_k c_k dx_k`` with ``MultiPoly``
coefficients.  ``differential`` produces one from a polynomial under either
of two rules: ``independent`` treats every ring variable as a coordinate,
while ``frontal`` rewrites the differential of the support variable ``a``
through the pairing ``da -> sum_i b_i dtheta_i`` so that no ``da`` key ever
survives.  ``potential`` inverts ``differential`` on exact forms by
integrating along coordinate axes from the origin, in ring order, which
pins the constant term to zero.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Union

from .poly import MultiPoly, PolyError, _merge_variables

PolyLike = Union[MultiPoly, int, Fraction]

_THETA_PATTERN = re.compile(r"^theta(\w*)$")

# Ring naming convention: theta<k>/b<k> are paired coordinates, "a" is the
# support variable, and t<k> are transform parameters (never differentiated).
_PARAM_PATTERN = re.compile(r"^t\d*$")

DIFFERENTIAL_RULES = ("independent", "frontal")


def is_parameter(name: str) -> bool:
    return _PARAM_PATTERN.match(name) is not None


class NotExactError(ValueError):
    """Mixed-partial symmetry failure, with the first witnessing pair."""

    def __init__(self, var_i: str, var_j: str, left: MultiPoly, right: MultiPoly):
        self.var_i = var_i
        self.var_j = var_j
        self.left = left
        self.right = right
        super().__init__(
            f"form is not exact: d/d{var_j}[{var_i}-coefficient] = {left} "
            f"but d/d{var_i}[{var_j}-coefficient] = {right}"
        )


def theta_b_pairs(variables: Iterable[str]) -> list[tuple[str, str]]:
    """Paired coordinate names (theta<k>, b<k>) present in a ring."""
    names = tuple(variables)
    pairs = []
    for name in names:
        match = _THETA_PATTERN.match(name)
        if match and f"b{match.group(1)}" in names:
            pairs.append((name, f"b{match.group(1)}"))
    return pairs


@dataclass(frozen=True, eq=False)
class OneForm:
    """Formal 1-form: map from base variable name to coefficient polynomial."""

    variables: tuple[str, ...]
    coefficients: dict[str, MultiPoly]

    def __post_init__(self) -> None:
        ring = self.variables
        clean: dict[str, MultiPoly] = {}
        for name, coeff in self.coefficients.items():
            if name not in ring:
                raise PolyError(f"differential d{name} outside ring {ring}")
            aligned = coeff.in_ring(ring) if coeff.variables != ring else coeff
            if not aligned.is_zero:
                clean[name] = aligned
        object.__setattr__(self, "coefficients", clean)

    @classmethod
    def zero(cls, variables: Iterable[str] = ()) -> "OneForm":
        return cls(tuple(variables), {})

    def coefficient(self, name: str) -> MultiPoly:
        return self.coefficients.get(name, MultiPoly.zero(self.variables))

    @property
    def is_zero(self) -> bool:
        return not self.coefficients

    def _aligned(self, other: "OneForm") -> tuple["OneForm", "OneForm"]:
        ring = _merge_variables(self.variables, other.variables)
        left = OneForm(ring, {k: v.in_ring(ring) for k, v in self.coefficients.items()})
        right = OneForm(ring, {k: v.in_ring(ring) for k, v in other.coefficients.items()})
        return left, right

    def __add__(self, other: "OneForm") -> "OneForm":
        a, b = self._aligned(other)
        out = dict(a.coefficients)
        for name, coeff in b.coefficients.items():
            out[name] = out.get(name, MultiPoly.zero(a.variables)) + coeff
        return OneForm(a.variables, out)

    def __neg__(self) -> "OneForm":
        return OneForm(self.variables, {k: -v for k, v in self.coefficients.items()})

    def __sub__(self, other: "OneForm") -> "OneForm":
        return self + (-other)

    def __mul__(self, scale: PolyLike) -> "OneForm":
        return OneForm(
            self.variables, {k: v * scale for k, v in self.coefficients.items()}
        )

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, OneForm):
            return NotImplemented
        a, b = self._aligned(other)
        return a.coefficients == b.coefficients

    __hash__ = None

    def __str__(self) -> str:
        if not self.coefficients:
            return "0"
        order = [v for v in self.variables if v in self.coefficients]
        return " + ".join(f"({self.coefficients[name]})*d{name}" for name in order)

    def __repr__(self) -> str:
        return f"OneForm({self})"


def differential(p: MultiPoly, rule: str = "independent") -> OneForm:
    """Exterior derivative of a polynomial.

    Under the ``frontal`` rule every ``da`` contribution is rewritten as
    ``sum_i b_i dtheta_i`` over the theta/b pairs of the ring, so the result
    never carries a ``da`` key.
    """
    if rule not in DIFFERENTIAL_RULES:
        raise PolyError(f"unknown differential rule {rule!r}")
    coeffs: dict[str, MultiPoly] = {}

    def accumulate(name: str, value: MultiPoly) -> None:
        current = coeffs.get(name)
        coeffs[name] = value if current is None else current + value

    for name in p.variables:
        if is_parameter(name):
            continue
        partial = p.diff(name)
        if partial.is_zero:
            continue
        if rule == "frontal" and name == "a":
            pairs = theta_b_pairs(p.variables)
            if not pairs:
                raise PolyError(
                    "frontal rule needs theta/b variable pairs to rewrite da"
                )
            for theta_name, b_name in pairs:
                accumulate(theta_name, partial * MultiPoly.var(b_name, p.variables))
        else:
            accumulate(name, partial)
    return OneForm(p.variables, coeffs)


def _default_coordinates(w: OneForm) -> tuple[str, ...]:
    paired = {name for pair in theta_b_pairs(w.variables) for name in pair}
    coords = [v for v in w.variables if v in paired or v in w.coefficients]
    return tuple(coords)


def potential(w: OneForm, coordinates: Iterable[str] | None = None) -> MultiPoly:
    """Polynomial P with dP = w over the given coordinates, constant term 0.

    Coordinates default to the ring's theta/b pairs plus every differential
    actually present; remaining ring variables are treated as parameters.
    Raises ``NotExactError`` on the first mixed-partial mismatch and
    ``PolyError`` if the form differentiates the support variable ``a``.
    """
    if "a" in w.coefficients:
        raise PolyError("form carries a da term; apply the frontal rewrite first")
    coords = tuple(coordinates) if coordinates is not None else _default_coordinates(w)
    for name in w.coefficients:
        if name not in coords:
            raise PolyError(f"d{name} present but {name!r} is not a coordinate")
    for pos, var_i in enumerate(coords):
        for var_j in coords[pos + 1 :]:
            left = w.coefficient(var_i).diff(var_j)
            right = w.coefficient(var_j).diff(var_i)
            if left != right:
                raise NotExactError(var_i, var_j, left, right)
    # Staircase path from the origin: integrate the k-th coefficient in its
    # own variable with all later coordinates pinned to zero.
    result = MultiPoly.zero(w.variables)
    for pos, name in enumerate(coords):
        coeff = w.coefficient(name)
        if coeff.is_zero:
            continue
        later = {other: 0 for other in coords[pos + 1 :] if coeff.mentions(other)}
        if later:
            coeff = coeff.subs(later)
        result = result + coeff.integrate(name)
    return result


def frontal_potential(w: OneForm, a_var: str = "a") -> MultiPoly:
    """Potential of a form that is exact modulo the pairing form.

    Splits ``w = dP + c * sum_i b_i dtheta_i`` for a constant ``c`` fixed by
    the mixed-partial asymmetry, and returns ``P + c*a``.  Raises
    ``NotExactError`` when no constant ``c`` repairs exactness.
    """
    pairs = set(theta_b_pairs(w.variables))
    coords = _default_coordinates(w)
    scale: Fraction | None = None
    for pos, var_i in enumerate(coords):
        for var_j in coords[pos + 1 :]:
            asym = w.coefficient(var_i).diff(var_j) - w.coefficient(var_j).diff(var_i)
            if (var_j, var_i) in pairs:
                # asym convention is oriented (theta, b); flip if needed
                asym = -asym
            if (var_i, var_j) in pairs or (var_j, var_i) in pairs:
                if not asym.is_constant:
                    raise NotExactError(
                        var_i, var_j,
                        w.coefficient(var_i).diff(var_j),
                        w.coefficient(var_j).diff(var_i),
                    )
                value = asym.constant_value()
                if scale is None:
                    scale = value
                elif scale != value:
                    raise NotExactError(
                        var_i, var_j,
                        w.coefficient(var_i).diff(var_j),
                        w.coefficient(var_j).diff(var_i),
                    )
            elif not asym.is_zero:
                raise NotExactError(
                    var_i, var_j,
                    w.coefficient(var_i).diff(var_j),
                    w.coefficient(var_j).diff(var_i),
                )
    if scale is None or scale == 0:
        return potential(w, coords)
    ring = _merge_variables(w.variables, (a_var,))
    pairing = OneForm(
        ring,
        {theta: MultiPoly.var(b, ring) for theta, b in pairs},
    )
    exact_part = OneForm(ring, {k: v.in_ring(ring) for k, v in w.coefficients.items()})
    exact_part = exact_part - pairing * scale
    return potential(exact_part, coords) + MultiPoly.var(a_var, ring) * scale
