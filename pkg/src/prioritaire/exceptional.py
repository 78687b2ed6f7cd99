"""Exceptional bundles on the plane and the dyadic slope lattice.

An exceptional bundle is determined by its slope alpha = c1/r in lowest
terms: rank r, first Chern class c1, discriminant (1 - 1/r^2)/2 and
c2 = ((r-1)/(2r)) * (r + 1 + c1^2), which must come out an integer.

New slopes are produced from old by the composition law

    gamma = (alpha + beta)/2 - (Delta_alpha - Delta_beta)/(3 + alpha - beta)

whose defining property is the vanishing chi(E_gamma, E_alpha) =
chi(E_beta, E_gamma) = 0; both vanishings are asserted on every call.
Iterating it from the integer slopes realizes a bijection from dyadic
numbers to exceptional slopes: integers map to line bundles, the map
commutes with integer translation, and the midpoint of two adjacent
dyadics maps to the composition of their images.

Around each exceptional slope sits the open interval of radius

    x_F = (3r - sqrt(9 r^2 - 4)) / (2r),

the smaller root of X^2 - 3X + 1/r^2.  The intervals attached to
distinct exceptional slopes are pairwise disjoint and every rational in
[-1, 0] falls in exactly one of them (or is itself an exceptional
slope); ``locate_exceptional`` finds the owner by bisecting the dyadic
tree with exact surd comparisons.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import chern
from .chern import ChernCharacter, ChernData
from .errors import DepthExhaustedError, InternalInconsistencyError, ParseError
from .surd import QuadSurd

DEFAULT_MAX_DEPTH = 64
_ENV_MAX_DEPTH = "PRIORITAIRE_MAX_DEPTH"


def max_depth_default() -> int:
    """Descent cap: PRIORITAIRE_MAX_DEPTH from the environment, else 64."""
    raw = os.environ.get(_ENV_MAX_DEPTH)
    if raw is None:
        return DEFAULT_MAX_DEPTH
    try:
        value = int(raw)
    except ValueError as exc:
        raise ParseError(f"{_ENV_MAX_DEPTH} must be an integer, got {raw!r}") from exc
    if value < 1:
        raise ParseError(f"{_ENV_MAX_DEPTH} must be >= 1, got {value}")
    return value


@dataclass(frozen=True)
class Dyadic:
    """Rational p / 2^q in normal form (q == 0, or p odd)."""

    p: int
    q: int

    def __post_init__(self) -> None:
        if self.q < 0:
            raise ValueError(f"negative level {self.q}")
        p, q = self.p, self.q
        while q > 0 and p % 2 == 0:
            p //= 2
            q -= 1
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)

    @classmethod
    def from_fraction(cls, value: Fraction | int) -> "Dyadic":
        value = Fraction(value)
        den = value.denominator
        q = den.bit_length() - 1
        if 1 << q != den:
            raise ParseError(f"{value} is not dyadic (denominator {den})")
        return cls(value.numerator, q)

    def value(self) -> Fraction:
        return Fraction(self.p, 1 << self.q)

    def neighbors(self) -> "tuple[Dyadic, Dyadic]":
        """The bracketing pair one level up; defined for q >= 1."""
        if self.q == 0:
            raise ValueError(f"{self} is an integer and has no bracketing pair")
        return (Dyadic((self.p - 1) // 2, self.q - 1), Dyadic((self.p + 1) // 2, self.q - 1))

    def __str__(self) -> str:
        if self.q == 0:
            return str(self.p)
        return f"{self.p}/{1 << self.q}"


def parse_dyadic(text: str) -> Dyadic:
    """Accepts "p/2^q", plain fractions with power-of-two denominator,
    and decimal strings that are exactly dyadic ("-0.25")."""
    s = text.strip()
    if "^" in s:
        try:
            num, den = s.split("/")
            base, exp = den.split("^")
            if int(base) != 2:
                raise ValueError
            return Dyadic(int(num), int(exp))
        except (ValueError, TypeError) as exc:
            raise ParseError(f"malformed dyadic {text!r}") from exc
    try:
        value = Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"malformed dyadic {text!r}") from exc
    return Dyadic.from_fraction(value)


@dataclass(frozen=True)
class ExceptionalBundle:
    """Exceptional bundle, determined by its slope."""

    slope: Fraction
    rank: int
    c1: int
    c2: int
    delta: Fraction

    @property
    def chern(self) -> ChernData:
        return ChernData(self.rank, self.c1, self.c2)

    def character(self) -> ChernCharacter:
        return self.chern.character()

    def twist(self, k: int) -> "ExceptionalBundle":
        return from_slope(self.slope + k)

    def dual(self) -> "ExceptionalBundle":
        return from_slope(-self.slope)

    def half_width(self) -> QuadSurd:
        """x_F = (3r - sqrt(9r^2 - 4))/(2r), radius of the slope interval."""
        r = self.rank
        return QuadSurd(Fraction(3, 2), Fraction(-1, 2 * r), 9 * r * r - 4)

    def contains_slope(self, mu: Fraction) -> bool:
        """Whether mu lies in the open interval around this slope."""
        return self.half_width().compare(abs(mu - self.slope)) > 0

    def label(self) -> str:
        if self.rank == 1:
            return f"O({self.c1})"
        from .surd import format_rational

        return f"E({format_rational(self.slope)})"

    def __str__(self) -> str:
        return self.label()


@lru_cache(maxsize=None)
def from_slope(slope: Fraction) -> ExceptionalBundle:
    """Build the exceptional bundle of the given slope.

    Rejects slopes whose forced c2 is not an integer; that rules out
    many non-exceptional rationals but is not a complete membership
    test, so callers should only pass slopes produced by the lattice
    (or integer translates of them).
    """
    slope = Fraction(slope)
    r, c1 = slope.denominator, slope.numerator
    delta = Fraction(1, 2) * (1 - Fraction(1, r * r))
    c2_num = (r - 1) * (r + 1 + c1 * c1)
    if c2_num % (2 * r) != 0:
        raise ValueError(f"{slope} is not an exceptional slope (c2 not integral)")
    bundle = ExceptionalBundle(slope, r, c1, c2_num // (2 * r), delta)
    if chern.euler_pairing(bundle.chern, bundle.chern) != 1:
        raise InternalInconsistencyError(f"chi(F,F) != 1 for {bundle}")
    return bundle


@lru_cache(maxsize=None)
def _compose_slope(alpha: Fraction, beta: Fraction) -> Fraction:
    a = from_slope(alpha)
    b = from_slope(beta)
    return (alpha + beta) / 2 - (a.delta - b.delta) / (3 + alpha - beta)


def compose(a: ExceptionalBundle, b: ExceptionalBundle) -> ExceptionalBundle:
    """The bundle orthogonally between a and b (slopes a < b, gap < 3).

    Asserts the defining vanishings chi(result, a) = chi(b, result) = 0.
    """
    if not a.slope < b.slope:
        raise ValueError(f"compose needs slope(a) < slope(b), got {a.slope}, {b.slope}")
    if b.slope - a.slope >= 3:
        raise ValueError(f"slope gap {b.slope - a.slope} too wide for composition")
    result = from_slope(_compose_slope(a.slope, b.slope))
    if chern.euler_pairing(result.chern, a.chern) != 0:
        raise InternalInconsistencyError(f"chi({result}, {a}) != 0")
    if chern.euler_pairing(b.chern, result.chern) != 0:
        raise InternalInconsistencyError(f"chi({b}, {result}) != 0")
    return result


@lru_cache(maxsize=None)
def from_dyadic(d: Dyadic) -> ExceptionalBundle:
    """The dyadic-to-exceptional bijection.

    Integers give line bundles; a dyadic of positive level maps to the
    composition of the images of its bracketing pair.
    """
    if d.q == 0:
        return from_slope(Fraction(d.p))
    lo, hi = d.neighbors()
    return compose(from_dyadic(lo), from_dyadic(hi))


def dyadic_of(bundle: ExceptionalBundle, max_depth: int | None = None) -> Dyadic:
    """Invert ``from_dyadic`` by monotone descent.

    The slope is first translated into [-1, 0]; the returned dyadic is
    translated back.  Raises DepthExhaustedError if the slope is not
    reached within the cap (it then is not a lattice slope, or lies too
    deep).
    """
    cap = max_depth if max_depth is not None else max_depth_default()
    shift = 0
    mu = bundle.slope
    while mu > 0:
        mu -= 1
        shift += 1
    while mu < -1:
        mu += 1
        shift -= 1
    lo, hi = Fraction(-1), Fraction(0)
    if mu == lo:
        return Dyadic(-1 + shift, 0)
    if mu == hi:
        return Dyadic(shift, 0)
    lo_d, hi_d = Dyadic(-1, 0), Dyadic(0, 0)
    for _ in range(cap):
        # Midpoint of the dyadic bracket, one level deeper.
        mid_value = (lo_d.value() + hi_d.value()) / 2
        mid_d = Dyadic.from_fraction(mid_value)
        mid_slope = from_dyadic(mid_d).slope
        if mid_slope == mu:
            return Dyadic.from_fraction(mid_value + shift)
        if mu < mid_slope:
            hi_d = mid_d
        else:
            lo_d = mid_d
    raise DepthExhaustedError(
        f"slope {bundle.slope} not reached in {cap} levels", bracket=(lo_d, hi_d)
    )


def locate_exceptional(mu: Fraction, max_depth: int | None = None) -> ExceptionalBundle:
    """Owner of the rational slope mu in [-1, 0].

    Returns the unique exceptional bundle F with mu == mu(F) or
    |mu - mu(F)| < x_F, descending the dyadic tree; every interval
    membership test is an exact surd comparison.
    """
    mu = Fraction(mu)
    if mu < -1 or mu > 0:
        raise ValueError(f"slope {mu} outside [-1, 0]")
    cap = max_depth if max_depth is not None else max_depth_default()
    lo = from_dyadic(Dyadic(-1, 0))
    hi = from_dyadic(Dyadic(0, 0))
    for _ in range(cap):
        for end in (lo, hi):
            if mu == end.slope or end.contains_slope(mu):
                return end
        mid = compose(lo, hi)
        if mu == mid.slope:
            return mid
        if mu < mid.slope:
            hi = mid
        else:
            lo = mid
    raise DepthExhaustedError(
        f"slope {mu} not resolved within depth {cap}", bracket=(lo, hi)
    )


def enumerate_to_level(level_max: int) -> list[ExceptionalBundle]:
    """All bundles at dyadic slopes p/2^q in [-1, 0] with q <= level_max,
    deduplicated and sorted by slope."""
    if level_max < 0:
        raise ValueError("level_max must be >= 0")
    seen: dict[Fraction, ExceptionalBundle] = {}
    for p in range(-(1 << level_max), 1):
        bundle = from_dyadic(Dyadic(p, level_max))
        seen.setdefault(bundle.slope, bundle)
    return [seen[s] for s in sorted(seen)]
