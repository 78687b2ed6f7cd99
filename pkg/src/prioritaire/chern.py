"""Chern data of coherent sheaves on the projective plane.

Conventions, all exact:

* slope           mu(E)    = c1 / r
* discriminant    Delta(E) = (1/r) * (c2 - ((r-1)/(2r)) * c1^2)
* polynomial      P(X)     = X^2/2 + 3X/2 + 1 = (X+1)(X+2)/2
* Riemann-Roch    chi(E)   = r * (P(mu) - Delta)
* Euler pairing   chi(E,F) = r_E * r_F * (P(mu_F - mu_E) - Delta_E - Delta_F)

Serre duality takes the form chi(E, F) = chi(F, E(-3)).  Twisting by
O(k) leaves Delta unchanged; the dual (r, -c1, c2) negates the slope and
leaves Delta unchanged.  Both chi forms are integers on integral data,
which is asserted at runtime rather than trusted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import InternalInconsistencyError


def hirzebruch_p(x: Fraction | int) -> Fraction:
    """P(X) = (X+1)(X+2)/2, the Euler characteristic of O(X) for integer X."""
    x = Fraction(x)
    return (x + 1) * (x + 2) / 2


@dataclass(frozen=True)
class ChernCharacter:
    """Additive character (r, c1, ch2) with ch2 = (c1^2 - 2*c2)/2."""

    rank: int
    c1: int
    ch2: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "ch2", Fraction(self.ch2))
        if (2 * self.ch2).denominator != 1:
            raise ValueError(f"ch2 must be a half-integer, got {self.ch2}")

    def __add__(self, other: "ChernCharacter") -> "ChernCharacter":
        return ChernCharacter(self.rank + other.rank, self.c1 + other.c1, self.ch2 + other.ch2)

    def __sub__(self, other: "ChernCharacter") -> "ChernCharacter":
        return ChernCharacter(self.rank - other.rank, self.c1 - other.c1, self.ch2 - other.ch2)

    def scale(self, m: int) -> "ChernCharacter":
        return ChernCharacter(self.rank * m, self.c1 * m, self.ch2 * m)

    def twist(self, k: int) -> "ChernCharacter":
        """Multiply by the character (1, k, k^2/2) of O(k) in Z[h]/h^3."""
        return ChernCharacter(
            self.rank,
            self.c1 + self.rank * k,
            self.ch2 + self.c1 * k + self.rank * Fraction(k * k, 2),
        )

    def to_data(self) -> "ChernData":
        c2 = (Fraction(self.c1 * self.c1) - 2 * self.ch2) / 2
        if c2.denominator != 1:
            raise InternalInconsistencyError(f"character {self} has non-integral c2 = {c2}")
        return ChernData(self.rank, self.c1, int(c2))


@dataclass(frozen=True)
class ChernData:
    """Integral invariants (rank, c1, c2) of a sheaf of positive rank."""

    rank: int
    c1: int
    c2: int

    def __post_init__(self) -> None:
        if self.rank < 1:
            raise ValueError(f"rank must be >= 1, got {self.rank}")

    def slope(self) -> Fraction:
        return Fraction(self.c1, self.rank)

    def discriminant(self) -> Fraction:
        r = self.rank
        return (Fraction(self.c2) - Fraction(r - 1, 2 * r) * self.c1 * self.c1) / r

    def character(self) -> ChernCharacter:
        return ChernCharacter(self.rank, self.c1, Fraction(self.c1 * self.c1, 2) - self.c2)


def euler_char(cd: ChernData) -> int:
    """chi(E) = r*(P(mu) - Delta); an integer for integral data."""
    value = cd.rank * (hirzebruch_p(cd.slope()) - cd.discriminant())
    if value.denominator != 1:
        raise InternalInconsistencyError(f"non-integral chi({cd}) = {value}")
    return int(value)


def euler_pairing(a: ChernData, b: ChernData) -> int:
    """chi(a, b) = r_a * r_b * (P(mu_b - mu_a) - Delta_a - Delta_b)."""
    value = a.rank * b.rank * (
        hirzebruch_p(b.slope() - a.slope()) - a.discriminant() - b.discriminant()
    )
    if value.denominator != 1:
        raise InternalInconsistencyError(f"non-integral chi({a}, {b}) = {value}")
    return int(value)


def character_pairing(x: ChernCharacter, y: ChernCharacter) -> Fraction:
    """Euler form in character coordinates; agrees with euler_pairing.

    chi(x, y) = r_x*ch2_y + r_y*ch2_x - c1_x*c1_y
                + (3/2)*(r_x*c1_y - c1_x*r_y) + r_x*r_y

    Kept as an independent route for cross-checks; valid for virtual
    classes of any rank.
    """
    return (
        x.rank * y.ch2
        + y.rank * x.ch2
        - x.c1 * y.c1
        + Fraction(3, 2) * (x.rank * y.c1 - x.c1 * y.rank)
        + x.rank * y.rank
    )


def twist(cd: ChernData, k: int) -> ChernData:
    """Invariants of E(k); Delta is unchanged."""
    return cd.character().twist(k).to_data()


def dual(cd: ChernData) -> ChernData:
    """Invariants of the dual sheaf: (r, -c1, c2)."""
    return ChernData(cd.rank, -cd.c1, cd.c2)


def normalize(cd: ChernData) -> tuple[ChernData, int]:
    """Twist into the band -1 < mu <= 0; returns (twisted data, k used)."""
    k = -math.ceil(cd.slope())
    return twist(cd, k), k
