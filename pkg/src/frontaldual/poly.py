"""Exact sparse multivariate polynomials over the rationals.

A polynomial is stored as a map from exponent tuples to ``Fraction``
coefficients, one exponent slot per ring variable.  The representation is
canonical (no zero coefficients, fixed variable order), so structural
equality is reliable polynomial identity and no rounding ever occurs.

Two polynomials over different variable lists are aligned by name before
any arithmetic; the left operand's order wins and unseen variables are
appended.  Display and serialization order terms by graded lexicographic
order on the variable list, largest first, e.g. ``3/2*t1^2*b1 - a``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Union

Exponent = tuple[int, ...]
Scalar = Union[int, Fraction]
PolyLike = Union["MultiPoly", int, Fraction]


class PolyError(ValueError):
    """Raised for malformed polynomial construction or substitution."""


def _as_fraction(value: Scalar) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise PolyError(f"not an exact scalar: {value!r}")


def _merge_variables(left: tuple[str, ...], right: tuple[str, ...]) -> tuple[str, ...]:
    if left == right:
        return left
    merged = list(left)
    seen = set(left)
    for name in right:
        if name not in seen:
            merged.append(name)
            seen.add(name)
    return tuple(merged)


def grlex_key(exponent: Exponent) -> tuple[int, Exponent]:
    """Graded lexicographic sort key (total degree first, then slotwise)."""
    return (sum(exponent), exponent)


@dataclass(frozen=True, eq=False)
class MultiPoly:
    """Immutable polynomial with exact rational coefficients."""

    variables: tuple[str, ...]
    terms: dict[Exponent, Fraction]

    def __post_init__(self) -> None:
        width = len(self.variables)
        if len(set(self.variables)) != width:
            raise PolyError(f"duplicate variable in {self.variables}")
        clean: dict[Exponent, Fraction] = {}
        for exponent, coeff in self.terms.items():
            if len(exponent) != width:
                raise PolyError(
                    f"exponent {exponent} does not match {width} variables"
                )
            if any(e < 0 for e in exponent):
                raise PolyError(f"negative exponent in {exponent}")
            value = _as_fraction(coeff)
            if value != 0:
                clean[tuple(exponent)] = value
        object.__setattr__(self, "terms", clean)

    # ---------------------------------------------------------------- basics

    @classmethod
    def zero(cls, variables: Iterable[str] = ()) -> "MultiPoly":
        return cls(tuple(variables), {})

    @classmethod
    def const(cls, value: Scalar, variables: Iterable[str] = ()) -> "MultiPoly":
        names = tuple(variables)
        return cls(names, {(0,) * len(names): _as_fraction(value)})

    @classmethod
    def var(cls, name: str, variables: Iterable[str] | None = None) -> "MultiPoly":
        names = tuple(variables) if variables is not None else (name,)
        if name not in names:
            raise PolyError(f"variable {name!r} not in ring {names}")
        exponent = tuple(1 if v == name else 0 for v in names)
        return cls(names, {exponent: Fraction(1)})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant:
            raise PolyError(f"not a constant: {self}")
        return next(iter(self.terms.values()), Fraction(0))

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def degree_in(self, name: str) -> int:
        idx = self.variables.index(name)
        return max((e[idx] for e in self.terms), default=0)

    def mentions(self, name: str) -> bool:
        if name not in self.variables:
            return False
        idx = self.variables.index(name)
        return any(e[idx] > 0 for e in self.terms)

    # ------------------------------------------------------------ alignment

    def in_ring(self, variables: tuple[str, ...]) -> "MultiPoly":
        """Re-express over a superset ring (raises if a used variable is dropped)."""
        if variables == self.variables:
            return self
        positions = []
        for name in self.variables:
            if name in variables:
                positions.append(variables.index(name))
            elif self.mentions(name):
                raise PolyError(f"cannot drop used variable {name!r}")
            else:
                positions.append(None)
        width = len(variables)
        out: dict[Exponent, Fraction] = {}
        for exponent, coeff in self.terms.items():
            new_exp = [0] * width
            for pos, e in zip(positions, exponent):
                if e and pos is not None:
                    new_exp[pos] = e
            key = tuple(new_exp)
            out[key] = out.get(key, Fraction(0)) + coeff
        return MultiPoly(variables, out)

    def _aligned(self, other: PolyLike) -> tuple["MultiPoly", "MultiPoly"]:
        if not isinstance(other, MultiPoly):
            other = MultiPoly.const(_as_fraction(other), self.variables)
        ring = _merge_variables(self.variables, other.variables)
        return self.in_ring(ring), other.in_ring(ring)

    # ----------------------------------------------------------- arithmetic

    def __add__(self, other: PolyLike) -> "MultiPoly":
        a, b = self._aligned(other)
        out = dict(a.terms)
        for exponent, coeff in b.terms.items():
            out[exponent] = out.get(exponent, Fraction(0)) + coeff
        return MultiPoly(a.variables, out)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: PolyLike) -> "MultiPoly":
        return self + (-other if isinstance(other, MultiPoly) else -_as_fraction(other))

    def __rsub__(self, other: PolyLike) -> "MultiPoly":
        return (-self) + other

    def __mul__(self, other: PolyLike) -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            scale = _as_fraction(other)
            return MultiPoly(
                self.variables, {e: c * scale for e, c in self.terms.items()}
            )
        a, b = self._aligned(other)
        out: dict[Exponent, Fraction] = {}
        for ea, ca in a.terms.items():
            for eb, cb in b.terms.items():
                key = tuple(x + y for x, y in zip(ea, eb))
                out[key] = out.get(key, Fraction(0)) + ca * cb
        return MultiPoly(a.variables, out)

    __rmul__ = __mul__

    def __pow__(self, power: int) -> "MultiPoly":
        if not isinstance(power, int) or power < 0:
            raise PolyError(f"polynomial power must be a nonnegative int: {power!r}")
        result = MultiPoly.const(1, self.variables)
        base = self
        while power:
            if power & 1:
                result = result * base
            base = base * base
            power >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.const(other, self.variables)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        a, b = self._aligned(other)
        return a.terms == b.terms

    __hash__ = None  # mutable dict payload; identity-free equality above

    # --------------------------------------------------------------- calculus

    def diff(self, name: str) -> "MultiPoly":
        """Exact partial derivative with respect to one ring variable."""
        if name not in self.variables:
            return MultiPoly.zero(self.variables)
        idx = self.variables.index(name)
        out: dict[Exponent, Fraction] = {}
        for exponent, coeff in self.terms.items():
            e = exponent[idx]
            if e == 0:
                continue
            new_exp = list(exponent)
            new_exp[idx] = e - 1
            key = tuple(new_exp)
            out[key] = out.get(key, Fraction(0)) + coeff * e
        return MultiPoly(self.variables, out)

    def integrate(self, name: str) -> "MultiPoly":
        """Antiderivative in one variable with zero constant term."""
        idx = self.variables.index(name)
        out: dict[Exponent, Fraction] = {}
        for exponent, coeff in self.terms.items():
            new_exp = list(exponent)
            new_exp[idx] = exponent[idx] + 1
            out[tuple(new_exp)] = coeff / (exponent[idx] + 1)
        return MultiPoly(self.variables, out)

    # ----------------------------------------------------------- evaluation

    def subs(self, bindings: Mapping[str, PolyLike]) -> "MultiPoly":
        """Simultaneous substitution; unknown target names are rejected."""
        for name in bindings:
            if name not in self.variables:
                raise PolyError(f"unknown variable {name!r} in ring {self.variables}")
        images: dict[str, MultiPoly] = {}
        for name in self.variables:
            value = bindings.get(name, None)
            if value is None:
                images[name] = MultiPoly.var(name, self.variables)
            elif isinstance(value, MultiPoly):
                images[name] = value
            else:
                images[name] = MultiPoly.const(_as_fraction(value))
        result = MultiPoly.zero(self.variables)
        powers: dict[tuple[str, int], MultiPoly] = {}
        for exponent, coeff in self.terms.items():
            term = MultiPoly.const(coeff)
            for name, e in zip(self.variables, exponent):
                if e == 0:
                    continue
                key = (name, e)
                if key not in powers:
                    powers[key] = images[name] ** e
                term = term * powers[key]
            result = result + term
        return result

    def eval(self, values: Mapping[str, Scalar]) -> Fraction:
        """Exact evaluation; every mentioned variable must be bound."""
        total = Fraction(0)
        for exponent, coeff in self.terms.items():
            term = coeff
            for name, e in zip(self.variables, exponent):
                if e == 0:
                    continue
                if name not in values:
                    raise PolyError(f"no value for variable {name!r}")
                term *= _as_fraction(values[name]) ** e
            total += term
        return total

    def eval_float(self, values: Mapping[str, float]) -> float:
        total = 0.0
        for exponent, coeff in self.terms.items():
            term = float(coeff)
            for name, e in zip(self.variables, exponent):
                if e:
                    term *= values[name] ** e
            total += term
        return total

    def coefficients_in(self, names: Iterable[str]) -> dict[Exponent, "MultiPoly"]:
        """Group terms by their exponents on ``names``.

        Returns a map from the exponent pattern on the selected variables to
        the coefficient polynomial in the remaining variables.
        """
        selected = tuple(names)
        idxs = [self.variables.index(n) for n in selected]
        rest = tuple(v for v in self.variables if v not in selected)
        rest_idx = [self.variables.index(v) for v in rest]
        grouped: dict[Exponent, dict[Exponent, Fraction]] = {}
        for exponent, coeff in self.terms.items():
            pattern = tuple(exponent[i] for i in idxs)
            residue = tuple(exponent[i] for i in rest_idx)
            bucket = grouped.setdefault(pattern, {})
            bucket[residue] = bucket.get(residue, Fraction(0)) + coeff
        return {
            pattern: MultiPoly(rest, bucket) for pattern, bucket in grouped.items()
        }

    # -------------------------------------------------------------- display

    def sorted_terms(self) -> list[tuple[Exponent, Fraction]]:
        return sorted(self.terms.items(), key=lambda kv: grlex_key(kv[0]), reverse=True)

    def _monomial_str(self, exponent: Exponent) -> str:
        parts = []
        for name, e in zip(self.variables, exponent):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces: list[str] = []
        for exponent, coeff in self.sorted_terms():
            mono = self._monomial_str(exponent)
            mag = abs(coeff)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if not pieces:
                pieces.append(body if coeff > 0 else f"-{body}")
            else:
                pieces.append(f"+ {body}" if coeff > 0 else f"- {body}")
        return " ".join(pieces)

    def __repr__(self) -> str:
        return f"MultiPoly({self})"


def symbols(names: str | Iterable[str]) -> tuple[MultiPoly, ...]:
    """Build variable polynomials sharing one ring, e.g. ``x, y = symbols("x y")``."""
    if isinstance(names, str):
        names = names.replace(",", " ").split()
    ring = tuple(names)
    return tuple(MultiPoly.var(name, ring) for name in ring)


# ------------------------------------------------------------------- parsing


class _Parser:
    """Recursive-descent parser for the canonical text form."""

    def __init__(self, text: str):
        self.tokens = self._tokenize(text)
        self.pos = 0

    @staticmethod
    def _tokenize(text: str) -> list[str]:
        tokens: list[str] = []
        i = 0
        while i < len(text):
            ch = text[i]
            if ch.isspace():
                i += 1
            elif ch.isdigit():
                j = i
                while j < len(text) and text[j].isdigit():
                    j += 1
                tokens.append(text[i:j])
                i = j
            elif ch.isalpha() or ch == "_":
                j = i
                while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                    j += 1
                tokens.append(text[i:j])
                i = j
            elif ch in "+-*/^()":
                tokens.append(ch)
                i += 1
            else:
                raise PolyError(f"unexpected character {ch!r} in polynomial text")
        return tokens

    def peek(self) -> str | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self) -> str:
        tok = self.peek()
        if tok is None:
            raise PolyError("unexpected end of polynomial text")
        self.pos += 1
        return tok

    def parse(self) -> MultiPoly:
        result = self.expr()
        if self.peek() is not None:
            raise PolyError(f"trailing token {self.peek()!r}")
        return result

    def expr(self) -> MultiPoly:
        sign = 1
        while self.peek() in ("+", "-"):
            if self.take() == "-":
                sign = -sign
        result = self.term() * sign
        while self.peek() in ("+", "-"):
            op = self.take()
            result = result + self.term() * (1 if op == "+" else -1)
        return result

    def term(self) -> MultiPoly:
        result = self.factor()
        while self.peek() == "*":
            self.take()
            result = result * self.factor()
        return result

    def factor(self) -> MultiPoly:
        atom = self.atom()
        if self.peek() == "^":
            self.take()
            power = self.take()
            if not power.isdigit():
                raise PolyError(f"exponent must be a nonnegative integer, got {power!r}")
            return atom ** int(power)
        return atom

    def atom(self) -> MultiPoly:
        tok = self.take()
        if tok == "(":
            inner = self.expr()
            if self.take() != ")":
                raise PolyError("unbalanced parenthesis")
            return inner
        if tok == "-":
            return -self.atom()
        if tok.isdigit():
            value = Fraction(int(tok))
            if self.peek() == "/":
                self.take()
                denom = self.take()
                if not denom.isdigit() or int(denom) == 0:
                    raise PolyError(f"bad denominator {denom!r}")
                value = Fraction(int(tok), int(denom))
            return MultiPoly.const(value)
        if tok[0].isalpha() or tok[0] == "_":
            return MultiPoly.var(tok)
        raise PolyError(f"unexpected token {tok!r}")


def parse_poly(text: str, variables: Iterable[str] | None = None) -> MultiPoly:
    """Parse the canonical text form, e.g. ``3/2*t1^2*b1 - a``.

    With ``variables`` the result is re-expressed over that fixed ring and
    unknown names are rejected; otherwise the ring is collected from the text.
    """
    result = _Parser(text).parse()
    if variables is not None:
        ring = tuple(variables)
        for name in result.variables:
            if name not in ring and result.mentions(name):
                raise PolyError(f"unknown variable {name!r} (ring is {ring})")
        return result.in_ring(ring)
    return result
