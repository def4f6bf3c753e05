"""Exact arithmetic in the biquadratic field Q(sqrt2, sqrt3).

Every element is stored as ``(a + b*sqrt2 + c*sqrt3 + d*sqrt6) / den`` with
integer coefficients, ``den > 0`` and ``gcd(a, b, c, d, den) == 1``.  Python
integers are unbounded, so products never overflow.
"""

from __future__ import annotations

import decimal
import math
import re
from fractions import Fraction

from .errors import DivisionByZero, NotRepresentable, ParseError, ZeroDenominator

__all__ = [
    "QuadraticScalar",
    "canonicalize",
    "arithmetic",
    "try_sqrt",
    "to_float",
    "parse_scalar",
    "ZERO",
    "ONE",
    "SQRT2",
    "SQRT3",
    "SQRT6",
    "inv_sqrt",
]

_SQUAREFREE_ROOTS = (1, 2, 3, 6)


class QuadraticScalar:
    """Immutable exact element of Q(sqrt2, sqrt3)."""

    __slots__ = ("a", "b", "c", "d", "den")

    a: int
    b: int
    c: int
    d: int
    den: int

    def __init__(self, a: int = 0, b: int = 0, c: int = 0, d: int = 0, den: int = 1):
        if den == 0:
            raise ZeroDenominator("denominator must be nonzero")
        if den < 0:
            a, b, c, d, den = -a, -b, -c, -d, -den
        if a == b == c == d == 0:
            den = 1
        else:
            g = math.gcd(a, b, c, d, den)
            if g > 1:
                a, b, c, d, den = a // g, b // g, c // g, d // g, den // g
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("QuadraticScalar is immutable")

    # -- construction -----------------------------------------------------

    @classmethod
    def coerce(cls, x: QuadraticScalar | int | Fraction) -> QuadraticScalar:
        if isinstance(x, QuadraticScalar):
            return x
        if isinstance(x, bool):
            raise TypeError("bool is not a field element")
        if isinstance(x, int):
            return cls(x)
        if isinstance(x, Fraction):
            return cls(x.numerator, den=x.denominator)
        raise TypeError(f"cannot convert {type(x).__name__} to QuadraticScalar")

    @property
    def fields(self) -> tuple[int, int, int, int, int]:
        return (self.a, self.b, self.c, self.d, self.den)

    # -- predicates -------------------------------------------------------

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0 and self.c == 0 and self.d == 0

    def __bool__(self) -> bool:
        return not self.is_zero()

    def is_rational(self) -> bool:
        return self.b == 0 and self.c == 0 and self.d == 0

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise NotRepresentable(f"{self} is irrational")
        return Fraction(self.a, self.den)

    # -- arithmetic -------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            other = QuadraticScalar.coerce(other)
        if not isinstance(other, QuadraticScalar):
            return NotImplemented
        return self.fields == other.fields

    def __hash__(self) -> int:
        if self.is_rational():
            return hash(Fraction(self.a, self.den))
        return hash(self.fields)

    def __neg__(self) -> QuadraticScalar:
        return QuadraticScalar(-self.a, -self.b, -self.c, -self.d, self.den)

    def __pos__(self) -> QuadraticScalar:
        return self

    def __add__(self, other) -> QuadraticScalar:
        try:
            y = QuadraticScalar.coerce(other)
        except TypeError:
            return NotImplemented
        if y.is_zero():
            return self
        if self.is_zero():
            return y
        n1, n2 = self.den, y.den
        if n1 == n2:
            return QuadraticScalar(self.a + y.a, self.b + y.b, self.c + y.c, self.d + y.d, n1)
        return QuadraticScalar(
            self.a * n2 + y.a * n1,
            self.b * n2 + y.b * n1,
            self.c * n2 + y.c * n1,
            self.d * n2 + y.d * n1,
            n1 * n2,
        )

    __radd__ = __add__

    def __sub__(self, other) -> QuadraticScalar:
        try:
            y = QuadraticScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-y)

    def __rsub__(self, other) -> QuadraticScalar:
        return (-self) + other

    def __mul__(self, other) -> QuadraticScalar:
        try:
            y = QuadraticScalar.coerce(other)
        except TypeError:
            return NotImplemented
        if self.is_zero() or y.is_zero():
            return ZERO
        a, b, c, d = self.a, self.b, self.c, self.d
        e, f, g, h = y.a, y.b, y.c, y.d
        # sqrt2*sqrt3 = sqrt6, sqrt2*sqrt6 = 2 sqrt3, sqrt3*sqrt6 = 3 sqrt2
        return QuadraticScalar(
            a * e + 2 * b * f + 3 * c * g + 6 * d * h,
            a * f + b * e + 3 * (c * h + d * g),
            a * g + c * e + 2 * (b * h + d * f),
            a * h + d * e + b * g + c * f,
            self.den * y.den,
        )

    __rmul__ = __mul__

    def conjugate_sqrt3(self) -> QuadraticScalar:
        """Image under sqrt3 -> -sqrt3 (so sqrt6 -> -sqrt6)."""
        return QuadraticScalar(self.a, self.b, -self.c, -self.d, self.den)

    def conjugate_sqrt2(self) -> QuadraticScalar:
        """Image under sqrt2 -> -sqrt2 (so sqrt6 -> -sqrt6)."""
        return QuadraticScalar(self.a, -self.b, self.c, -self.d, self.den)

    def inverse(self) -> QuadraticScalar:
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        # x * conj3(x) lies in Q(sqrt2); times its sqrt2-conjugate it is rational.
        c3 = self.conjugate_sqrt3()
        partial = self * c3
        c2 = partial.conjugate_sqrt2()
        norm = partial * c2
        assert norm.is_rational() and not norm.is_zero()
        return c3 * c2 * QuadraticScalar(norm.den, den=norm.a)

    def __truediv__(self, other) -> QuadraticScalar:
        try:
            y = QuadraticScalar.coerce(other)
        except TypeError:
            return NotImplemented
        if y.is_zero():
            raise DivisionByZero(f"division of {self} by zero")
        return self * y.inverse()

    def __rtruediv__(self, other) -> QuadraticScalar:
        return QuadraticScalar.coerce(other) / self

    def __pow__(self, k: int) -> QuadraticScalar:
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def sqrt(self) -> QuadraticScalar:
        return try_sqrt(self)

    def __float__(self) -> float:
        return to_float(self)

    # -- text -------------------------------------------------------------

    def format(self) -> str:
        """Exact textual form ``(a b c d)/den`` used by state files."""
        return f"({self.a} {self.b} {self.c} {self.d})/{self.den}"

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"QuadraticScalar{self.fields}"

    def pretty(self) -> str:
        """Human form such as ``-sqrt6/3`` or ``1/2``."""
        parts = []
        for coef, name in ((self.a, ""), (self.b, "sqrt2"), (self.c, "sqrt3"), (self.d, "sqrt6")):
            if coef == 0:
                continue
            mag = abs(coef)
            body = name if (mag == 1 and name) else (f"{mag}{name}" if name else str(mag))
            parts.append(("-" if coef < 0 else "+", body))
        if not parts:
            return "0"
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        if self.den != 1:
            if len(parts) > 1:
                text = f"({text})"
            text += f"/{self.den}"
        return text


def canonicalize(a: int, b: int, c: int, d: int, den: int) -> QuadraticScalar:
    return QuadraticScalar(a, b, c, d, den)


def arithmetic(kind: str, x: QuadraticScalar, y: QuadraticScalar | None = None) -> QuadraticScalar:
    if kind == "add":
        return x + y
    if kind == "sub":
        return x - y
    if kind == "mul":
        return x * y
    if kind == "div":
        return x / y
    if kind == "neg":
        return -x
    raise ValueError(f"unknown arithmetic kind {kind!r}")


def try_sqrt(x: QuadraticScalar) -> QuadraticScalar:
    """Exact positive square root of a nonnegative rational whose squarefree
    part is 1, 2, 3 or 6; anything else raises NotRepresentable."""
    if not x.is_rational():
        raise NotRepresentable(f"sqrt of irrational value {x} leaves the field")
    if x.a < 0:
        raise NotRepresentable(f"sqrt of negative value {x}")
    # sqrt(a/den) = sqrt(a*den)/den
    n = x.a * x.den
    for f in _SQUAREFREE_ROOTS:
        if n % f:
            continue
        k = math.isqrt(n // f)
        if k * k * f == n:
            coeffs = {1: (k, 0, 0, 0), 2: (0, k, 0, 0), 3: (0, 0, k, 0), 6: (0, 0, 0, k)}[f]
            return QuadraticScalar(*coeffs, x.den)
    raise NotRepresentable(f"sqrt({x.pretty()}) is not in Q(sqrt2, sqrt3)")


def to_float(x: QuadraticScalar) -> float:
    """Nearest-double approximation.

    Summation is done in decimal arithmetic, doubling the working precision
    until two passes round to the same double, so cancellation between the
    radical terms cannot cost accuracy.
    """
    if x.is_rational():
        return x.a / x.den
    prec = 40
    last = None
    while True:
        with decimal.localcontext() as ctx:
            ctx.prec = prec
            D = decimal.Decimal
            value = (
                D(x.a) + D(x.b) * D(2).sqrt() + D(x.c) * D(3).sqrt() + D(x.d) * D(6).sqrt()
            ) / D(x.den)
        result = float(value)
        if result == last:
            return result
        last = result
        prec *= 2


_SCALAR_RE = re.compile(r"\(([^()]*)\)/(\S+)")
_INT_RE = re.compile(r"-?\d+")


def parse_scalar(text: str) -> QuadraticScalar:
    """Inverse of :meth:`QuadraticScalar.format`. Column numbers in errors are 1-based."""
    m = _SCALAR_RE.fullmatch(text)
    if m is None:
        raise ParseError(f"malformed scalar {text!r}, expected '(a b c d)/den'", column=1)
    den_text = m.group(2)
    if not den_text.isdigit():
        raise ParseError(f"malformed denominator {den_text!r}", column=m.start(2) + 1)
    den = int(den_text)
    if den == 0:
        raise ZeroDenominator(f"ZeroDenominator in scalar {text!r}")
    nums = m.group(1).split(" ")
    if len(nums) != 4 or not all(_INT_RE.fullmatch(s) for s in nums):
        raise ParseError(
            f"scalar {text!r} needs exactly four integers separated by single spaces",
            column=m.start(1) + 1,
        )
    return QuadraticScalar(*(int(s) for s in nums), den)


ZERO = QuadraticScalar(0)
ONE = QuadraticScalar(1)
SQRT2 = QuadraticScalar(0, 1)
SQRT3 = QuadraticScalar(0, 0, 1)
SQRT6 = QuadraticScalar(0, 0, 0, 1)


def inv_sqrt(k: int) -> QuadraticScalar:
    """1/sqrt(k) for k in {1, 2, 3, 6}."""
    return ONE / try_sqrt(QuadraticScalar(k))
