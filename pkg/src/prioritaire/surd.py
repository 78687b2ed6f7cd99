"""Exact arithmetic kernel: rationals, quadratic surds, display helpers.

Rationals are plain ``fractions.Fraction`` values; the stdlib already
guarantees lowest terms and a positive denominator, which is exactly the
normal form required here.  This module supplies what sits on top:

* ``QuadSurd`` -- numbers of the form a + b*sqrt(d) with rational a, b
  and integer d >= 0, with sign and comparison decided exactly by case
  analysis on the signs of a and b plus one integer comparison of
  a^2 against b^2*d.  No floating point is consulted anywhere.
* exact string round-tripping ("p/q" and "a/b + c/d*sqrt(D)"), and
* decimal rendering (round-half-even, configurable digit count) used
  only for display, never for decisions.

Arithmetic across two distinct irrational radicands is out of scope and
rejected, except for the one comparison the interval machinery needs:
``compare_sqrt_sum`` decides sqrt(u) + sqrt(v) against a rational w by
squaring twice, staying in exact rational arithmetic throughout.
"""

from __future__ import annotations

import decimal
import math
import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import ParseError

Rational = Fraction

_SURD_RE = re.compile(
    r"^\s*(?P<a>[+-]?\d+(?:/\d+)?)\s*(?P<sign>[+-])\s*"
    r"(?P<b>\d+(?:/\d+)?)\s*\*\s*sqrt\(\s*(?P<d>\d+)\s*\)\s*$"
)


def _sgn(x: Fraction) -> int:
    if x > 0:
        return 1
    if x < 0:
        return -1
    return 0


@dataclass(frozen=True)
class QuadSurd:
    """Exact value a + b*sqrt(d), normalized on construction.

    Normal form: d == 0 whenever the value is rational (b == 0, or d a
    perfect square, which is folded into a).  Equality and hashing use
    the canonical key (a, sign(b), b^2*d) so equal values compare equal
    even when built from different radicand presentations.
    """

    a: Fraction
    b: Fraction
    d: int

    def __post_init__(self) -> None:
        a, b, d = Fraction(self.a), Fraction(self.b), int(self.d)
        if d < 0:
            raise ValueError(f"negative radicand {d}")
        if b == 0:
            d = 0
        elif d == 0:
            b = Fraction(0)
        else:
            root = math.isqrt(d)
            if root * root == d:
                a, b, d = a + b * root, Fraction(0), 0
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "d", d)

    @classmethod
    def from_rational(cls, value: Fraction | int) -> "QuadSurd":
        return cls(Fraction(value), Fraction(0), 0)

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def as_rational(self) -> Fraction:
        if not self.is_rational:
            raise ValueError(f"{self} is irrational")
        return self.a

    # -- arithmetic (same radicand only) --------------------------------

    def _coerce(self, other: "QuadSurd | Fraction | int") -> "QuadSurd":
        if isinstance(other, QuadSurd):
            return other
        if isinstance(other, (Fraction, int)):
            return QuadSurd.from_rational(other)
        return NotImplemented  # type: ignore[return-value]

    def _join_radicand(self, other: "QuadSurd") -> int:
        if self.d and other.d and self.d != other.d:
            raise ValueError(
                f"cross-radicand arithmetic unsupported: sqrt({self.d}) vs sqrt({other.d})"
            )
        return self.d or other.d

    def __add__(self, other: "QuadSurd | Fraction | int") -> "QuadSurd":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        d = self._join_radicand(o)
        return QuadSurd(self.a + o.a, self.b + o.b, d)

    __radd__ = __add__

    def __neg__(self) -> "QuadSurd":
        return QuadSurd(-self.a, -self.b, self.d)

    def __sub__(self, other: "QuadSurd | Fraction | int") -> "QuadSurd":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: "Fraction | int") -> "QuadSurd":
        return (-self) + other

    def __mul__(self, other: "QuadSurd | Fraction | int") -> "QuadSurd":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        d = self._join_radicand(o)
        # (a + b sqrt(d))(a' + b' sqrt(d)) with a shared radicand.
        return QuadSurd(self.a * o.a + self.b * o.b * d, self.a * o.b + self.b * o.a, d)

    __rmul__ = __mul__

    # -- exact sign and order -------------------------------------------

    def sign(self) -> int:
        """Sign of the exact value, in {-1, 0, 1}, without floats."""
        if self.b == 0:
            return _sgn(self.a)
        if self.a == 0:
            return _sgn(self.b)
        if self.a > 0 and self.b > 0:
            return 1
        if self.a < 0 and self.b < 0:
            return -1
        lhs = self.a * self.a
        rhs = self.b * self.b * self.d
        # Mixed signs: |a| against |b|*sqrt(d) decided by squaring.
        return _sgn(lhs - rhs) if self.a > 0 else _sgn(rhs - lhs)

    def compare(self, other: "QuadSurd | Fraction | int") -> int:
        o = self._coerce(other)
        if o is NotImplemented:
            raise TypeError(f"cannot compare QuadSurd with {type(other).__name__}")
        return (self - o).sign()

    def __lt__(self, other: "QuadSurd | Fraction | int") -> bool:
        return self.compare(other) < 0

    def __le__(self, other: "QuadSurd | Fraction | int") -> bool:
        return self.compare(other) <= 0

    def __gt__(self, other: "QuadSurd | Fraction | int") -> bool:
        return self.compare(other) > 0

    def __ge__(self, other: "QuadSurd | Fraction | int") -> bool:
        return self.compare(other) >= 0

    def _key(self) -> tuple:
        return (self.a, _sgn(self.b), self.b * self.b * self.d)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (Fraction, int)):
            other = QuadSurd.from_rational(other)
        if not isinstance(other, QuadSurd):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __str__(self) -> str:
        return format_surd(self)

    def to_decimal(self, digits: int = 12) -> str:
        return decimal_str(self, digits)


def surd_sign(s: QuadSurd) -> int:
    return s.sign()


def surd_cmp(s: QuadSurd, other: QuadSurd | Fraction | int) -> int:
    return s.compare(other)


def compare_sqrt_sum(u2: Fraction, v2: Fraction, w: Fraction) -> int:
    """Sign of (sqrt(u2) + sqrt(v2)) - w, exactly.

    u2 and v2 must be nonnegative rationals.  Used to compare interval
    endpoints whose half-widths live over different radicands: squaring
    twice reduces everything to rational comparisons.
    """
    if u2 < 0 or v2 < 0:
        raise ValueError("negative operand under a square root")
    if w < 0:
        return 1
    m = w * w - u2 - v2
    if m < 0:
        return 1
    # Compare 2*sqrt(u2*v2) against m, both nonnegative.
    return _sgn(4 * u2 * v2 - m * m)


# -- parsing and formatting ---------------------------------------------


def format_rational(value: Fraction) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"not a rational: {text!r}") from exc


def format_surd(s: QuadSurd) -> str:
    if s.is_rational:
        return format_rational(s.a)
    op = "+" if s.b > 0 else "-"
    return f"{format_rational(s.a)} {op} {format_rational(abs(s.b))}*sqrt({s.d})"


def parse_surd(text: str) -> QuadSurd:
    m = _SURD_RE.match(text)
    if m is not None:
        b = Fraction(m.group("b"))
        if m.group("sign") == "-":
            b = -b
        return QuadSurd(Fraction(m.group("a")), b, int(m.group("d")))
    return QuadSurd.from_rational(parse_rational(text))


def _dec_of_fraction(f: Fraction) -> decimal.Decimal:
    return decimal.Decimal(f.numerator) / decimal.Decimal(f.denominator)


def decimal_str(value: Fraction | QuadSurd | int, digits: int = 12) -> str:
    """Decimal rendering at ``digits`` significant digits, half-even.

    Display only; exact computations never call this.
    """
    if digits < 1:
        raise ValueError("digits must be >= 1")
    if isinstance(value, (Fraction, int)):
        value = QuadSurd.from_rational(Fraction(value))
    with decimal.localcontext() as ctx:
        ctx.prec = digits + 15
        approx = _dec_of_fraction(value.a)
        if value.b != 0:
            approx += _dec_of_fraction(value.b) * decimal.Decimal(value.d).sqrt()
    with decimal.localcontext() as ctx:
        ctx.prec = digits
        ctx.rounding = decimal.ROUND_HALF_EVEN
        return str(+approx)
