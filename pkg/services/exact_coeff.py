"""Exact scalar arithmetic for every coefficient ring used by the algebras.

Three rings are in play:

- ``Fraction`` for the untwisted Hall algebras over Q,
- ``QuadExt`` for Q(v) with v^2 = q, kept structurally as a pair (a, b),
- ``RatFuncL`` for the field Q(L) of rational functions in the Lefschetz
  symbol, built on sympy polynomials over QQ.

All values are immutable. String forms ("a/b", "a+b*v", "num(L)/den(L)") are
the serialization used by the CLI and HTTP reports and parse back exactly.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Sequence, Union

import sympy
from sympy import QQ, Poly, Symbol

from errors import InterpolationFailure

# The Lefschetz symbol and the square root of q
L = Symbol("L")
V = Symbol("v")

Rational = Fraction
Scalar = Union[int, Fraction]


def as_fraction(value: Scalar) -> Fraction:
    """Coerce an integer or Fraction to Fraction, rejecting floats."""
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError(f"exact scalar expected, got {value!r}")
    return Fraction(value)


def qpow(e: int, q: int) -> Fraction:
    """Return q^e exactly; negative exponents give 1/q^{-e}."""
    return Fraction(q) ** e


def _sym(value: Scalar) -> sympy.Rational:
    value = as_fraction(value)
    return sympy.Rational(value.numerator, value.denominator)


def _frac(value) -> Fraction:
    value = sympy.Rational(value)
    return Fraction(int(value.p), int(value.q))


# --- Q(v) with v^2 = q ---


@dataclass(frozen=True)
class QuadExt:
    """An element a + b*v of Q(v), v^2 = q, with q a per-algebra prime."""

    a: Fraction
    b: Fraction
    q: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", as_fraction(self.a))
        object.__setattr__(self, "b", as_fraction(self.b))

    @classmethod
    def of(cls, value: Union[Scalar, "QuadExt"], q: int) -> "QuadExt":
        if isinstance(value, QuadExt):
            if value.q != q:
                raise ValueError(f"cannot mix Q(v) contexts q={value.q} and q={q}")
            return value
        return cls(as_fraction(value), Fraction(0), q)

    @classmethod
    def v_power(cls, e: int, q: int) -> "QuadExt":
        """Return v^e reduced with v^2 = q."""
        if e % 2 == 0:
            return cls(qpow(e // 2, q), Fraction(0), q)
        return cls(Fraction(0), qpow((e - 1) // 2, q), q)

    def _coerce(self, other) -> "QuadExt":
        if isinstance(other, QuadExt):
            if other.q != self.q:
                raise ValueError(f"cannot mix Q(v) contexts q={self.q} and q={other.q}")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return QuadExt(Fraction(other), Fraction(0), self.q)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return QuadExt(self.a + other.a, self.b + other.b, self.q)

    __radd__ = __add__

    def __neg__(self) -> "QuadExt":
        return QuadExt(-self.a, -self.b, self.q)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a = self.a * other.a + self.b * other.b * self.q
        b = self.a * other.b + self.b * other.a
        return QuadExt(a, b, self.q)

    __rmul__ = __mul__

    def inverse(self) -> "QuadExt":
        """Invert through the conjugate: (a - b v) / (a^2 - q b^2)."""
        norm = self.a * self.a - self.q * self.b * self.b
        if norm == 0:
            raise ZeroDivisionError("inverse of zero in Q(v)")
        return QuadExt(self.a / norm, -self.b / norm, self.q)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, e: int) -> "QuadExt":
        if e < 0:
            return self.inverse() ** (-e)
        result = QuadExt(Fraction(1), Fraction(0), self.q)
        for _ in range(e):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, QuadExt):
            return (self.a, self.b, self.q) == (other.a, other.b, other.q)
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self) -> int:
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.q))

    def __bool__(self) -> bool:
        return self.a != 0 or self.b != 0

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        vpart = "v" if abs(self.b) == 1 else f"{abs(self.b)}*v"
        if self.a == 0:
            return vpart if self.b > 0 else f"-{vpart}"
        sign = "+" if self.b > 0 else "-"
        return f"{self.a}{sign}{vpart}"

    @classmethod
    def parse(cls, text: str, q: int) -> "QuadExt":
        """Parse the "a+b*v" form written by ``__str__``."""
        expr = sympy.expand(sympy.sympify(text, locals={"v": V}))
        return cls(_frac(expr.coeff(V, 0)), _frac(expr.coeff(V, 1)), q)


def quadext_arith(x: QuadExt, y: QuadExt | None, op: str) -> QuadExt:
    """Apply ``op`` in {add, mul, inv} to elements of one Q(v) context."""
    if op == "add":
        return x + y
    if op == "mul":
        return x * y
    if op == "inv":
        return x.inverse()
    raise ValueError(f"unknown Q(v) operation {op!r}")


# --- Q(L) ---


def poly_l(coefficients: Sequence[Scalar]) -> Poly:
    """Build a PolyL from ascending coefficients (index = degree in L)."""
    desc = [_sym(c) for c in reversed(list(coefficients))] or [sympy.Integer(0)]
    return Poly(desc, L, domain=QQ)


def poly_coefficients(poly: Poly) -> list[Fraction]:
    """Ascending coefficient list of a PolyL; the zero polynomial gives []."""
    if poly.is_zero:
        return []
    return [_frac(c) for c in reversed(poly.all_coeffs())]


def _format_int_poly(desc: list[int]) -> str:
    degree = len(desc) - 1
    pieces: list[str] = []
    for k, c in enumerate(desc):
        if c == 0:
            continue
        power = degree - k
        mono = "" if power == 0 else ("L" if power == 1 else f"L^{power}")
        if not mono:
            body = str(abs(c))
        elif abs(c) == 1:
            body = mono
        else:
            body = f"{abs(c)}*{mono}"
        if not pieces:
            pieces.append(body if c > 0 else f"-{body}")
        else:
            pieces.append(("+" if c > 0 else "-") + body)
    return "".join(pieces) or "0"


@dataclass(frozen=True, eq=False)
class RatFuncL:
    """A reduced quotient num/den of polynomials in L over QQ.

    The denominator is kept monic, which makes the representation a normal
    form: two elements are equal exactly when their fields are.
    """

    num: Poly
    den: Poly

    def __post_init__(self) -> None:
        num = Poly(self.num, L, domain=QQ)
        den = Poly(self.den, L, domain=QQ)
        if den.is_zero:
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero:
            num, den = Poly(0, L, domain=QQ), Poly(1, L, domain=QQ)
        else:
            g = num.gcd(den)
            num, den = num.exquo(g), den.exquo(g)
            lc = den.LC()
            num, den = num.quo_ground(lc), den.monic()
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    @classmethod
    def of(cls, value: Union[Scalar, Poly, "RatFuncL"]) -> "RatFuncL":
        if isinstance(value, RatFuncL):
            return value
        if isinstance(value, Poly):
            return cls(value, Poly(1, L, domain=QQ))
        return cls(Poly(_sym(value), L, domain=QQ), Poly(1, L, domain=QQ))

    @classmethod
    def lefschetz_power(cls, e: int) -> "RatFuncL":
        """Return L^e; negative exponents give 1/L^{-e}."""
        mono = Poly(L ** abs(e), L, domain=QQ)
        one = Poly(1, L, domain=QQ)
        return cls(mono, one) if e >= 0 else cls(one, mono)

    def _coerce(self, other):
        if isinstance(other, RatFuncL):
            return other
        if isinstance(other, (int, Fraction, Poly)) and not isinstance(other, bool):
            return RatFuncL.of(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return RatFuncL(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "RatFuncL":
        return RatFuncL(-self.num, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return RatFuncL(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFuncL":
        if self.num.is_zero:
            raise ZeroDivisionError("inverse of zero in Q(L)")
        return RatFuncL(self.den, self.num)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, e: int) -> "RatFuncL":
        if e < 0:
            return self.inverse() ** (-e)
        return RatFuncL(self.num ** e, self.den ** e)

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        if self.den.degree() == 0 and self.num.degree() <= 0:
            return hash(_frac(self.num.LC()) if not self.num.is_zero else Fraction(0))
        return hash((tuple(self.num.all_coeffs()), tuple(self.den.all_coeffs())))

    def __bool__(self) -> bool:
        return not self.num.is_zero

    def evaluate(self, q: Scalar) -> Fraction:
        """Specialize L = q exactly."""
        point = _sym(q)
        den = _frac(self.den.eval(point))
        if den == 0:
            raise ZeroDivisionError(f"pole of {self} at L={q}")
        return _frac(self.num.eval(point)) / den

    def __str__(self) -> str:
        num = [_frac(c) for c in self.num.all_coeffs()]
        den = [_frac(c) for c in self.den.all_coeffs()]
        scale = reduce(lcm, (c.denominator for c in num + den), 1)
        num_i = [int(c * scale) for c in num]
        den_i = [int(c * scale) for c in den]
        common = reduce(gcd, (abs(c) for c in num_i + den_i if c), 0) or 1
        num_i = [c // common for c in num_i]
        den_i = [c // common for c in den_i]
        num_s = _format_int_poly(num_i)
        if den_i == [1]:
            return num_s
        den_s = _format_int_poly(den_i)
        if len(num_i) > 1 and sum(1 for c in num_i if c) > 1:
            num_s = f"({num_s})"
        if len(den_i) > 1:
            den_s = f"({den_s})"
        return f"{num_s}/{den_s}"

    @classmethod
    def parse(cls, text: str) -> "RatFuncL":
        """Parse the "num(L)/den(L)" form written by ``__str__``."""
        expr = sympy.together(sympy.sympify(text.replace("^", "**"), locals={"L": L}))
        num, den = sympy.fraction(expr)
        return cls(Poly(num, L, domain=QQ), Poly(den, L, domain=QQ))


def ratfunc_arith(f: RatFuncL, g: RatFuncL | None, op: str) -> RatFuncL:
    """Apply ``op`` in {add, mul, inv} in Q(L)."""
    if op == "add":
        return f + g
    if op == "mul":
        return f * g
    if op == "inv":
        return f.inverse()
    raise ValueError(f"unknown Q(L) operation {op!r}")


def ratfunc_eval(f: RatFuncL, q: Scalar) -> Fraction:
    """Evaluate f at L = q; a pole raises ZeroDivisionError."""
    return f.evaluate(q)


def interpolate_poly(samples: Iterable[tuple[Scalar, Scalar]], degree_bound: int) -> Poly:
    """Fit the polynomial of degree <= degree_bound through the first samples.

    The first ``degree_bound + 1`` samples determine the polynomial; every
    remaining sample is checked against it and a mismatch raises
    InterpolationFailure.
    """
    points = [(as_fraction(x), as_fraction(y)) for x, y in samples]
    if len(points) < degree_bound + 1:
        raise ValueError(f"need {degree_bound + 1} samples, got {len(points)}")
    if len({x for x, _ in points}) != len(points):
        raise ValueError("interpolation abscissae must be distinct")
    fit, held_out = points[: degree_bound + 1], points[degree_bound + 1:]
    if len(fit) == 1:
        poly = Poly(_sym(fit[0][1]), L, domain=QQ)
    else:
        expr = sympy.interpolate([(_sym(x), _sym(y)) for x, y in fit], L)
        poly = Poly(sympy.expand(expr), L, domain=QQ)
    for x, y in held_out:
        got = _frac(poly.eval(_sym(x)))
        if got != y:
            raise InterpolationFailure(
                f"count {y} at {x} does not match fitted value {got}", samples=points
            )
    return poly


def format_coeff(value) -> str:
    """Serialize any coefficient of the three rings."""
    return str(value)
