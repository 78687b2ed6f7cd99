"""Existence frontiers in the (slope, discriminant) plane.

For a rational slope mu owned by the exceptional bundle F (meaning mu
lies in F's interval or equals its slope):

* delta(mu) = P(-|mu - mu(F)|) - (1 - 1/r^2)/2.  Semistable sheaves of
  positive-dimensional moduli exist at (mu, Delta) iff Delta >= delta(mu);
  the only other semistable points are the exceptional points
  (mu(F), Delta(F)) themselves, which sit 1/r^2 below: delta(mu(F)) -
  Delta(F) = 1/r^2.

* delta_prime(mu) = delta(mu) - (1/r^2) * (1 - |mu(F) - mu| / x_F), a
  quadratic surd over the radicand 9 r^2 - 4 (computed with
  1/x_F = r*(3r + sqrt(9r^2 - 4))/2).  It is rational exactly at
  mu = mu(F), where it equals Delta(F).  Below it the generic prioritary
  sheaf is a rigid direct sum; above it an exceptional part splits off.

* Prioritary sheaves of normalized slope mu exist iff
  Delta >= -mu(mu+1)/2.

``classify`` reduces arbitrary integral invariants to exactly one region
tag after normalizing the slope into (-1, 0].
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

from . import chern, exceptional
from .chern import ChernData, hirzebruch_p
from .errors import InternalInconsistencyError
from .exceptional import ExceptionalBundle
from .surd import QuadSurd


class RegionTag(enum.Enum):
    NO_PRIORITARY = "no_prioritary"
    SEMISTABLE_POSITIVE_DIM = "semistable_positive_dim"
    SEMISTABLE_EXCEPTIONAL = "semistable_exceptional"
    ABOVE_DELTA_PRIME = "above_delta_prime"
    SPECIAL_C0_C21 = "special_c0_c21"
    BELOW_DELTA_PRIME = "below_delta_prime"


class SemistableKind(enum.Enum):
    POSITIVE_DIM = "positive_dim"
    EXCEPTIONAL_POINT = "exceptional_point"
    NONE = "none"


@dataclass(frozen=True)
class Region:
    """Classification of a point: tag plus the owning bundle when relevant."""

    tag: RegionTag
    witness: ExceptionalBundle | None = None


def _normalize_slope(mu: Fraction) -> Fraction:
    """Translate by an integer into (-1, 0]."""
    return Fraction(mu) - math.ceil(Fraction(mu))


def delta(mu: Fraction, max_depth: int | None = None) -> Fraction:
    """Semistability frontier at the rational slope mu (any rational;
    extended by integer periodicity)."""
    mu0 = _normalize_slope(mu)
    f = exceptional.locate_exceptional(mu0, max_depth)
    return hirzebruch_p(-abs(mu0 - f.slope)) - f.delta


def delta_prime(mu: Fraction, max_depth: int | None = None) -> QuadSurd:
    """Rigidity frontier at the rational slope mu.

    Returned as an exact surd over the radicand 9r^2 - 4 of the owning
    bundle; normalizes to a plain rational exactly when mu = mu(F).
    """
    mu0 = _normalize_slope(mu)
    f = exceptional.locate_exceptional(mu0, max_depth)
    r = f.rank
    dist = abs(f.slope - mu0)
    base = delta(mu0, max_depth) - Fraction(1, r * r)
    # (dist/r^2) / x_F expanded via 1/x_F = r*(3r + sqrt(9r^2-4))/2.
    return QuadSurd(base + Fraction(3, 2) * dist, dist / (2 * r), 9 * r * r - 4)


def prioritary_exists(cd: ChernData) -> bool:
    """Existence test for prioritary sheaves with the given invariants."""
    norm, _ = chern.normalize(cd)
    mu = norm.slope()
    return norm.discriminant() >= -mu * (mu + 1) / 2


def _semistable(norm: ChernData, max_depth: int | None = None) -> tuple[SemistableKind, ExceptionalBundle | None]:
    mu = norm.slope()
    disc = norm.discriminant()
    f = exceptional.locate_exceptional(mu, max_depth)
    if disc >= delta(mu, max_depth):
        return SemistableKind.POSITIVE_DIM, f
    if mu == f.slope and disc == f.delta:
        # Rank is then forced to be a multiple of rank(F).
        if norm.rank % f.rank != 0:
            raise InternalInconsistencyError(
                f"rank {norm.rank} not a multiple of {f.rank} at the point of {f}"
            )
        return SemistableKind.EXCEPTIONAL_POINT, f
    return SemistableKind.NONE, f


def semistable_exists(cd: ChernData, max_depth: int | None = None) -> SemistableKind:
    """Whether semistable sheaves with these invariants exist, and how."""
    norm, _ = chern.normalize(cd)
    kind, _ = _semistable(norm, max_depth)
    return kind


def classify(cd: ChernData, max_depth: int | None = None) -> Region:
    """Exactly one region tag for any integral invariants.

    Precedence: prioritary existence bound, then the semistable cases,
    then the special pair (c1, c2) = (0, 1), then comparison with
    delta_prime.  Equality with an irrational delta_prime is impossible
    for rational input and treated as an internal inconsistency.
    """
    norm, _ = chern.normalize(cd)
    mu = norm.slope()
    disc = norm.discriminant()
    if disc < -mu * (mu + 1) / 2:
        return Region(RegionTag.NO_PRIORITARY)
    kind, f = _semistable(norm, max_depth)
    if kind is SemistableKind.POSITIVE_DIM:
        return Region(RegionTag.SEMISTABLE_POSITIVE_DIM, f)
    if kind is SemistableKind.EXCEPTIONAL_POINT:
        return Region(RegionTag.SEMISTABLE_EXCEPTIONAL, f)
    if norm.c1 == 0 and norm.c2 == 1:
        return Region(RegionTag.SPECIAL_C0_C21, f)
    side = delta_prime(mu, max_depth).compare(disc)
    if side < 0:
        return Region(RegionTag.ABOVE_DELTA_PRIME, f)
    if side > 0:
        return Region(RegionTag.BELOW_DELTA_PRIME, f)
    raise InternalInconsistencyError(
        f"rational discriminant {disc} equals delta_prime({mu}) off an exceptional point"
    )
