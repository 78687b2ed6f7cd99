"""Explicit splitting of the generic prioritary sheaf.

``generic_prioritary`` dispatches on the region of the normalized
invariants (rank, c1, c2):

* no prioritary sheaf: error.
* semistable with positive-dimensional moduli: region-only answer, the
  generic sheaf does not split.
* exceptional point: the generic sheaf is F^(rank/rank(F)).
* normalized (c1, c2) = (0, 1) with rank >= 2: O^(rank-2) plus the
  rank-2 extension of the ideal sheaf of a point by O.
* above the rigidity frontier but below the semistable one: an
  exceptional part F^p splits off, p = chi(F, .) or chi(., F) depending
  on the side of mu(F); the residual is a generic semistable sheaf
  sitting exactly on the semistability frontier and pairing to zero
  with F.  p * rank(F) < rank is asserted.
* below the rigidity frontier: the point lies in a unique triangle tile
  (e, f, g) and the generic sheaf is e^m + f^n + g^p, the multiplicities
  being the unique exact solution of m*ch(e) + n*ch(f) + p*ch(g) =
  ch(input); they are cross-checked against the Euler functionals
  m = chi(input, e), p = chi(g, input), n = -chi(input, h).

All summands are finally twisted back by the normalization twist, and
the characters of the output must add up exactly to the character of
the input.

``stable_presentation`` gives the resolution of a generic semistable
sheaf sitting on the semistability frontier near an exceptional bundle
f: 0 -> E -> f^k + g0(3)^m2 -> g1(3)^m1 -> 0 with multiplicities read
off Euler pairings against the series of f.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import chern, frontier, helix
from .chern import ChernCharacter, ChernData, euler_pairing
from .errors import InternalInconsistencyError, NoPrioritarySheafError
from .exceptional import ExceptionalBundle, from_slope
from .frontier import Region, RegionTag

_POINT_EXT_CHARACTER = ChernCharacter(2, 0, Fraction(-1))  # rank 2, c1 0, c2 1

KIND_EXCEPTIONAL = "exceptional"
KIND_GENERIC = "generic_semistable"
KIND_POINT_EXT = "point_ideal_extension"


@dataclass(frozen=True)
class Summand:
    """One direct summand of the generic sheaf.

    Exactly one payload is set: ``bundle`` for an exceptional summand,
    ``data`` for a generic semistable one; the point-ideal extension
    carries only its twist.
    """

    kind: str
    multiplicity: int
    bundle: ExceptionalBundle | None = None
    data: ChernData | None = None
    twist: int = 0

    def __post_init__(self) -> None:
        if self.multiplicity < 1:
            raise ValueError(f"multiplicity must be >= 1, got {self.multiplicity}")
        if self.kind not in (KIND_EXCEPTIONAL, KIND_GENERIC, KIND_POINT_EXT):
            raise ValueError(f"unknown summand kind {self.kind!r}")

    def character(self) -> ChernCharacter:
        if self.kind == KIND_EXCEPTIONAL:
            assert self.bundle is not None
            return self.bundle.character()
        if self.kind == KIND_GENERIC:
            assert self.data is not None
            return self.data.character()
        return _POINT_EXT_CHARACTER.twist(self.twist)

    def chern_data(self) -> ChernData:
        return self.character().to_data()

    def label(self) -> str:
        if self.kind == KIND_EXCEPTIONAL:
            assert self.bundle is not None
            return self.bundle.label()
        if self.kind == KIND_GENERIC:
            assert self.data is not None
            d = self.data
            return f"generic({d.rank},{d.c1},{d.c2})"
        return f"V({self.twist})" if self.twist else "V"


@dataclass(frozen=True, eq=False)
class Decomposition:
    """Result record: region, summands (None when no splitting applies)
    and the verification trail of the checks performed."""

    input: ChernData
    twist: int
    region: Region
    summands: tuple[Summand, ...] | None
    verification: dict = field(default_factory=dict)

    def total_character(self) -> ChernCharacter | None:
        if self.summands is None:
            return None
        total = ChernCharacter(0, 0, Fraction(0))
        for s in self.summands:
            total = total + s.character().scale(s.multiplicity)
        return total


def _det3(u: tuple, v: tuple, w: tuple) -> Fraction:
    return (
        u[0] * (v[1] * w[2] - v[2] * w[1])
        - v[0] * (u[1] * w[2] - u[2] * w[1])
        + w[0] * (u[1] * v[2] - u[2] * v[1])
    )


def _solve_multiplicities(
    t: helix.Triad, target: ChernCharacter
) -> tuple[int, int, int]:
    """Unique exact solution of m*ch(e) + n*ch(f) + p*ch(g) = target."""

    def vec(ch: ChernCharacter) -> tuple:
        return (Fraction(ch.rank), Fraction(ch.c1), ch.ch2)

    a, b, c = vec(t.e.character()), vec(t.f.character()), vec(t.g.character())
    d = vec(target)
    det = _det3(a, b, c)
    if det == 0:
        raise InternalInconsistencyError(f"degenerate character basis in {t.label()}")
    out = []
    for value in (_det3(d, b, c) / det, _det3(a, d, c) / det, _det3(a, b, d) / det):
        if value.denominator != 1 or value < 0:
            raise InternalInconsistencyError(
                f"multiplicity {value} not a nonnegative integer in {t.label()}"
            )
        out.append(int(value))
    return out[0], out[1], out[2]


def _untwist(summands: list[Summand], k: int) -> tuple[Summand, ...]:
    """Map summands built in the normalized frame back by -k."""
    if k == 0:
        return tuple(summands)
    out = []
    for s in summands:
        if s.kind == KIND_EXCEPTIONAL:
            assert s.bundle is not None
            out.append(Summand(s.kind, s.multiplicity, bundle=s.bundle.twist(-k)))
        elif s.kind == KIND_GENERIC:
            assert s.data is not None
            out.append(Summand(s.kind, s.multiplicity, data=chern.twist(s.data, -k)))
        else:
            out.append(Summand(s.kind, s.multiplicity, twist=s.twist - k))
    return tuple(out)


def generic_prioritary(cd: ChernData, max_depth: int | None = None) -> Decomposition:
    """Region and explicit splitting of the generic prioritary sheaf."""
    norm, k = chern.normalize(cd)
    region = frontier.classify(norm, max_depth)
    mu = norm.slope()
    disc = norm.discriminant()
    verification: dict = {"normalization_twist": k, "region": region.tag.value}

    if region.tag is RegionTag.NO_PRIORITARY:
        exc = NoPrioritarySheafError(
            f"no prioritary sheaf with invariants {cd}: "
            f"discriminant {disc} below the existence bound {-mu * (mu + 1) / 2}"
        )
        exc.region = region  # type: ignore[attr-defined]
        raise exc

    if region.tag is RegionTag.SEMISTABLE_POSITIVE_DIM:
        verification["note"] = "semistable moduli positive-dimensional; generic sheaf does not split"
        return Decomposition(cd, k, region, None, verification)

    summands: list[Summand]
    if region.tag is RegionTag.SEMISTABLE_EXCEPTIONAL:
        f = region.witness
        assert f is not None
        mult = norm.rank // f.rank
        verification["rank_multiple"] = mult
        summands = [Summand(KIND_EXCEPTIONAL, mult, bundle=f)]

    elif region.tag is RegionTag.SPECIAL_C0_C21:
        if norm.rank < 2:
            raise InternalInconsistencyError(f"special case with rank {norm.rank} < 2")
        summands = []
        if norm.rank > 2:
            summands.append(
                Summand(KIND_EXCEPTIONAL, norm.rank - 2, bundle=from_slope(Fraction(0)))
            )
        else:
            verification["dropped_zero_multiplicity"] = "O"
        summands.append(Summand(KIND_POINT_EXT, 1))

    elif region.tag is RegionTag.ABOVE_DELTA_PRIME:
        f = region.witness
        assert f is not None
        left_side = mu <= f.slope
        p = euler_pairing(f.chern, norm) if left_side else euler_pairing(norm, f.chern)
        if p <= 0:
            raise InternalInconsistencyError(f"exceptional multiplicity p = {p} <= 0")
        if p * f.rank >= norm.rank:
            raise InternalInconsistencyError(
                f"exceptional part F^{p} has rank {p * f.rank} >= {norm.rank}"
            )
        residual = (norm.character() - f.character().scale(p)).to_data()
        if residual.discriminant() != frontier.delta(residual.slope(), max_depth):
            raise InternalInconsistencyError(
                f"residual {residual} is not on the semistability frontier"
            )
        orth = (
            euler_pairing(f.chern, residual) if left_side else euler_pairing(residual, f.chern)
        )
        if orth != 0:
            raise InternalInconsistencyError(f"residual not orthogonal to {f}: chi = {orth}")
        verification["p"] = p
        verification["side"] = "left" if left_side else "right"
        verification["residual_on_frontier"] = True
        verification["residual_orthogonal"] = True
        summands = [
            Summand(KIND_EXCEPTIONAL, p, bundle=f),
            Summand(KIND_GENERIC, 1, data=residual),
        ]

    else:  # BELOW_DELTA_PRIME
        t = helix.locate_triangle(mu, disc, max_depth)
        m, n, p = _solve_multiplicities(t, norm.character())
        cross = {
            "m": euler_pairing(norm, t.e.chern),
            "n": -euler_pairing(norm, t.h.chern),
            "p": euler_pairing(t.g.chern, norm),
        }
        if (cross["m"], cross["n"], cross["p"]) != (m, n, p):
            raise InternalInconsistencyError(
                f"Euler functionals {cross} disagree with solved multiplicities {(m, n, p)}"
            )
        zeros = sum(1 for v in (m, n, p) if v == 0)
        if zeros > 1:
            raise InternalInconsistencyError(
                f"more than one vanishing multiplicity in {(m, n, p)} at ({mu}, {disc})"
            )
        verification["triangle"] = {"level": t.level, "index": t.index}
        verification["multiplicities"] = [m, n, p]
        verification["euler_cross_check"] = cross
        if zeros:
            verification["dropped_zero_multiplicities"] = zeros
        summands = [
            Summand(KIND_EXCEPTIONAL, mult, bundle=b)
            for mult, b in ((m, t.e), (n, t.f), (p, t.g))
            if mult > 0
        ]

    final = _untwist(summands, k)
    total = ChernCharacter(0, 0, Fraction(0))
    for s in final:
        total = total + s.character().scale(s.multiplicity)
    if total != cd.character():
        raise InternalInconsistencyError(
            f"summand characters {total} do not add up to ch{cd}"
        )
    verification["character_balance"] = True
    if all(s.kind == KIND_EXCEPTIONAL for s in final):
        verdict = helix.is_prioritary_sum([s.bundle for s in final])  # type: ignore[list-item]
        if verdict is helix.TriState.NO:
            raise InternalInconsistencyError("exceptional direct sum is not prioritary")
        verification["prioritary_sum"] = verdict.value
    return Decomposition(cd, k, region, final, verification)


@dataclass(frozen=True)
class PresentationReport:
    """Resolution data 0 -> E -> f^k + g0(3)^m2 -> g1(3)^m1 -> 0."""

    input: ChernData
    f: ExceptionalBundle
    k: int
    m1: int
    m2: int
    g0_3: ExceptionalBundle
    g1_3: ExceptionalBundle

    def describe(self) -> str:
        return (
            f"0 -> E -> {self.f.label()}^{self.k} + {self.g0_3.label()}^{self.m2} "
            f"-> {self.g1_3.label()}^{self.m1} -> 0"
        )


def stable_presentation(
    cd: ChernData, f: ExceptionalBundle, max_depth: int | None = None
) -> PresentationReport:
    """Presentation of the generic semistable sheaf on the frontier.

    Requires rank >= 2, mu(f) - x_f < mu <= mu(f), and the discriminant
    exactly on the semistability frontier; the degenerate case of the
    invariants of f itself is also accepted.  Multiplicities come from
    Euler pairings against the series of f and must balance the Chern
    character of the input exactly.
    """
    if cd.rank < 2:
        raise ValueError(f"rank {cd.rank} < 2")
    mu = cd.slope()
    if mu > f.slope:
        raise ValueError(f"slope {mu} right of mu(f) = {f.slope}")
    if not f.half_width().compare(f.slope - mu) > 0:
        raise ValueError(f"slope {mu} outside the interval of {f}")
    disc = cd.discriminant()
    on_frontier = disc == frontier.delta(mu, max_depth)
    degenerate = (mu, disc) == (f.slope, f.delta)
    if not (on_frontier or degenerate):
        raise ValueError(
            f"discriminant {disc} not on the semistability frontier at {mu}"
        )
    g0, g1, g2 = helix.left_series(f, 0, 2)
    k = euler_pairing(cd, f.chern)
    m1 = -euler_pairing(g1.twist(3).chern, cd)
    m2 = -euler_pairing(g2.twist(3).chern, cd)
    if k < 0 or m1 < 0 or m2 < 0:
        raise InternalInconsistencyError(f"negative presentation multiplicity ({k}, {m1}, {m2})")
    balance = (
        f.character().scale(k)
        + g0.twist(3).character().scale(m2)
        - g1.twist(3).character().scale(m1)
    )
    if balance != cd.character():
        raise InternalInconsistencyError(
            f"presentation characters {balance} do not balance ch{cd}"
        )
    return PresentationReport(cd, f, k, m1, m2, g0.twist(3), g1.twist(3))
