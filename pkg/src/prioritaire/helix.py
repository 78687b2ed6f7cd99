"""Triads of exceptional bundles, their triangle tiles, and series.

A triad (e, f, g) is a slope-ordered triple of exceptional bundles that
is pairwise orthogonal in one direction: chi(f,e) = chi(g,f) = chi(g,e)
= 0.  The root triad is (O(-1), E(-1/2), O); every other one arises by
repeated mutation.  The left child of (e, f, g) is (e, h', f) with h'
the kernel bundle of the evaluation f x Hom(f,g) -> g, and the right
child is (f, k, g) with k the cokernel of e -> f x Hom(e,f)*.  Ranks and
first Chern classes follow the mutation bookkeeping

    rank(h') = rank(f)*chi(f,g) - rank(g),   c1(h') = chi(f,g)*c1(f) - c1(g)

and every produced middle is cross-checked against the dyadic-lattice
bundle at the midpoint slope; the two computations must agree.

Each triad owns a curvilinear triangle in the (mu, Delta) plane:

    Delta <= P(mu - mu(g)) - Delta(g)     side through vertices e and f
    Delta <= P(mu(e) - mu) - Delta(e)     side through vertices f and g
    Delta >= P(mu(h) - mu) - Delta(h)     side through vertices e and g

where h is the kernel bundle of e x Hom(e,f) -> f.  The bottom side is
taken with argument mu(h) - mu so that it passes exactly through the
vertices e and g; all three sides are vanishing loci of Euler pairings
against a fixed bundle.  Tiles are closed; point location descends from
the root and returns the shallowest containing tile.

Attached to each exceptional bundle f is a two-sided series (g_n): the
left initial pair is (O(c1-2), O(c1-1)) when f is a line bundle and
(g(-3), e) from the unique triad (e, f, g) otherwise, extended both ways
by ch(g_{n+1}) = c * ch(g_n) - ch(g_{n-1}) with constant c =
chi(g_0, g_1) = 3 * rank(f).  Every member satisfies chi(f, g_n) = 0,
and (mu(g_n), Delta(g_n)) converges to (mu(f) - x_f, 1/2).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from . import exceptional
from .chern import euler_pairing, hirzebruch_p
from .errors import (
    DepthExhaustedError,
    InternalInconsistencyError,
    NotCoveredError,
)
from .exceptional import Dyadic, ExceptionalBundle, from_dyadic, from_slope, max_depth_default


def _derived_bundle(rank: int, c1: int, context: str) -> ExceptionalBundle:
    """Bundle with the given mutation-derived rank and c1; the slope must
    be in lowest terms with exactly that rank."""
    if rank < 1:
        raise InternalInconsistencyError(f"{context}: non-positive rank {rank}")
    bundle = from_slope(Fraction(c1, rank))
    if bundle.rank != rank or bundle.c1 != c1:
        raise InternalInconsistencyError(
            f"{context}: ({rank}, {c1}) is not primitive, reduces to {bundle.chern}"
        )
    return bundle


def _kernel_bundle(e: ExceptionalBundle, f: ExceptionalBundle) -> ExceptionalBundle:
    """Kernel bundle of the evaluation e x Hom(e, f) -> f."""
    chi = euler_pairing(e.chern, f.chern)
    return _derived_bundle(e.rank * chi - f.rank, chi * e.c1 - f.c1, "kernel bundle")


@dataclass(frozen=True)
class Triad:
    """Slope-ordered orthogonal triple with its tree position.

    ``h`` is the kernel bundle of e x Hom(e,f) -> f, which carries the
    bottom side of the triangle.  ``level``/``index`` place the triad in
    the binary tree over [-1, 0]: its slope bracket is the image of the
    dyadic interval [(index)/2^level - 1, (index+1)/2^level - 1].
    """

    e: ExceptionalBundle
    f: ExceptionalBundle
    g: ExceptionalBundle
    h: ExceptionalBundle
    level: int
    index: int

    def __post_init__(self) -> None:
        e, f, g = self.e, self.f, self.g
        if not e.slope < f.slope < g.slope:
            raise InternalInconsistencyError(f"triad slopes out of order: {e}, {f}, {g}")
        for left, right in ((f, e), (g, f), (g, e)):
            if euler_pairing(left.chern, right.chern) != 0:
                raise InternalInconsistencyError(f"chi({left}, {right}) != 0 in triad")
        re_, rf, rg = e.rank, f.rank, g.rank
        if re_ * re_ + rf * rf + rg * rg != 3 * re_ * rf * rg:
            raise InternalInconsistencyError(f"Markov identity fails for ranks {re_},{rf},{rg}")
        if euler_pairing(e.chern, f.chern) != 3 * rg:
            raise InternalInconsistencyError(f"chi(e,f) != 3*rank(g) in {self.label()}")
        if euler_pairing(f.chern, g.chern) != 3 * re_:
            raise InternalInconsistencyError(f"chi(f,g) != 3*rank(e) in {self.label()}")

    def label(self) -> str:
        return f"({self.e}, {self.f}, {self.g})"

    def mid_dyadic(self) -> Dyadic:
        return Dyadic(2 * self.index + 1 - (1 << (self.level + 1)), self.level + 1)

    def triangle(self) -> "Triangle":
        return Triangle(self)


@dataclass(frozen=True)
class Triangle:
    """The closed curvilinear tile attached to a triad."""

    triad: Triad

    def side_ef(self, mu: Fraction) -> Fraction:
        t = self.triad
        return hirzebruch_p(mu - t.g.slope) - t.g.delta

    def side_fg(self, mu: Fraction) -> Fraction:
        t = self.triad
        return hirzebruch_p(t.e.slope - mu) - t.e.delta

    def side_eg(self, mu: Fraction) -> Fraction:
        t = self.triad
        return hirzebruch_p(t.h.slope - mu) - t.h.delta

    def contains(self, mu: Fraction, disc: Fraction, strict: bool = False) -> bool:
        mu, disc = Fraction(mu), Fraction(disc)
        if strict:
            return (
                disc < self.side_ef(mu)
                and disc < self.side_fg(mu)
                and disc > self.side_eg(mu)
            )
        return (
            disc <= self.side_ef(mu)
            and disc <= self.side_fg(mu)
            and disc >= self.side_eg(mu)
        )


def triangle_contains(t: Triad, mu: Fraction, disc: Fraction, strict: bool = False) -> bool:
    return t.triangle().contains(mu, disc, strict)


def _make_triad(
    e: ExceptionalBundle, f: ExceptionalBundle, g: ExceptionalBundle, level: int, index: int
) -> Triad:
    t = Triad(e, f, g, _kernel_bundle(e, f), level, index)
    # The middle must match the dyadic lattice at the midpoint slope.
    lattice_mid = from_dyadic(t.mid_dyadic())
    if lattice_mid.slope != f.slope:
        raise InternalInconsistencyError(
            f"middle mismatch at level {level}, index {index}: {f} vs {lattice_mid}"
        )
    return t


def root() -> Triad:
    return _make_triad(
        from_dyadic(Dyadic(-1, 0)),
        from_dyadic(Dyadic(-1, 1)),
        from_dyadic(Dyadic(0, 0)),
        0,
        0,
    )


def children(t: Triad) -> tuple[Triad, Triad]:
    """Left and right mutation children, middles double-checked."""
    chi_fg = euler_pairing(t.f.chern, t.g.chern)
    left_mid = _derived_bundle(
        t.f.rank * chi_fg - t.g.rank, chi_fg * t.f.c1 - t.g.c1, "left middle"
    )
    chi_ef = euler_pairing(t.e.chern, t.f.chern)
    right_mid = _derived_bundle(
        t.f.rank * chi_ef - t.e.rank, chi_ef * t.f.c1 - t.e.c1, "right middle"
    )
    left = _make_triad(t.e, left_mid, t.f, t.level + 1, 2 * t.index)
    right = _make_triad(t.f, right_mid, t.g, t.level + 1, 2 * t.index + 1)
    return left, right


def iterate_triads(max_level: int) -> Iterator[Triad]:
    """All triads with level <= max_level, in breadth-first order."""
    frontier = [root()]
    for level in range(max_level + 1):
        next_frontier: list[Triad] = []
        for t in frontier:
            yield t
            if level < max_level:
                next_frontier.extend(children(t))
        frontier = next_frontier


def locate_triangle(mu: Fraction, disc: Fraction, max_depth: int | None = None) -> Triad:
    """Shallowest tile containing (mu, disc), by root-first descent.

    Descends toward the child whose slope bracket contains mu; a point
    straight above a tile's top vertex is in no tile at all and raises
    NotCoveredError.
    """
    mu, disc = Fraction(mu), Fraction(disc)
    if mu < -1 or mu > 0:
        raise ValueError(f"slope {mu} outside [-1, 0]")
    cap = max_depth if max_depth is not None else max_depth_default()
    t = root()
    for _ in range(cap + 1):
        if t.triangle().contains(mu, disc):
            return t
        if mu == t.f.slope:
            raise NotCoveredError(
                f"({mu}, {disc}) sits above the vertex of {t.label()} and is not covered"
            )
        left, right = children(t)
        t = left if mu < t.f.slope else right
    raise DepthExhaustedError(f"no tile found for ({mu}, {disc}) within depth {cap}")


# -- series attached to an exceptional bundle ---------------------------


def _initial_pair(f: ExceptionalBundle) -> tuple[ExceptionalBundle, ExceptionalBundle]:
    if f.rank == 1:
        return from_slope(Fraction(f.c1 - 2)), from_slope(Fraction(f.c1 - 1))
    d = exceptional.dyadic_of(f)
    lo, hi = d.neighbors()
    e = from_dyadic(lo)
    g = from_dyadic(hi)
    return g.twist(-3), e


def left_series(
    f: ExceptionalBundle, n_min: int = 0, n_max: int = 2
) -> list[ExceptionalBundle]:
    """Members g_{n_min} .. g_{n_max} of the series attached to f.

    Recurrence on Chern characters with constant c = chi(g_0, g_1);
    every member is rebuilt from its slope and must reproduce the
    recurrence character exactly, and must pair to zero against f.
    """
    if n_min > n_max:
        raise ValueError("n_min must be <= n_max")
    g0, g1 = _initial_pair(f)
    c = euler_pairing(g0.chern, g1.chern)
    if c != 3 * f.rank:
        raise InternalInconsistencyError(
            f"chi(g0, g1) = {c} != 3*rank({f}) for the series of {f}"
        )
    chars = {0: g0.character(), 1: g1.character()}
    n = 1
    while n < n_max:
        chars[n + 1] = chars[n].scale(c) - chars[n - 1]
        n += 1
    n = 0
    while n > n_min:
        chars[n - 1] = chars[n].scale(c) - chars[n + 1]
        n -= 1
    out: list[ExceptionalBundle] = []
    for n in range(n_min, n_max + 1):
        ch = chars[n]
        bundle = _derived_bundle(ch.rank, ch.c1, f"series member {n}")
        if bundle.character() != ch:
            raise InternalInconsistencyError(
                f"series member {n} of {f}: character {ch} is not exceptional"
            )
        if euler_pairing(f.chern, bundle.chern) != 0:
            raise InternalInconsistencyError(f"chi({f}, g_{n}) != 0")
        out.append(bundle)
    return out


def right_series(
    f: ExceptionalBundle, n_min: int = 0, n_max: int = 2
) -> list[ExceptionalBundle]:
    """Twist of the left series by O(3); limits at mu(f) + x_f."""
    return [b.twist(3) for b in left_series(f, n_min, n_max)]


# -- Ext dimensions between (twists of) exceptional bundles -------------


@dataclass(frozen=True)
class ExtDims:
    """dim Hom, Ext^1, Ext^2; None marks a dimension the rules leave open."""

    hom: int | None
    ext1: int | None
    ext2: int | None


def _h0_line(k: int) -> int:
    return (k + 1) * (k + 2) // 2 if k >= 0 else 0


def ext_dims(a: ExceptionalBundle, b: ExceptionalBundle) -> ExtDims:
    """Ext dimensions from slope-based vanishing plus chi completion.

    Rules (exceptional bundles only; a twist of an exceptional bundle is
    again one): a bundle is simple and rigid against itself; Hom
    vanishes when mu(a) > mu(b); Ext^1 vanishes when mu(a) <= mu(b);
    Ext^2(a, b) is Hom(b, a(-3)) by duality; line-bundle pairs get exact
    cohomology.  A single missing dimension is recovered from
    chi = hom - ext1 + ext2 when the result is nonnegative; anything
    else stays None.
    """
    if a.slope == b.slope:
        return ExtDims(1, 0, 0)
    if a.rank == 1 and b.rank == 1:
        k = b.c1 - a.c1
        return ExtDims(_h0_line(k), 0, _h0_line(-3 - k))
    hom: int | None = None
    ext1: int | None = None
    ext2: int | None = None
    if a.slope > b.slope:
        hom = 0
    if a.slope <= b.slope:
        ext1 = 0
    # Serre duality: Ext^2(a, b) = Hom(b, a(-3))*.
    if b.slope > a.slope - 3:
        ext2 = 0
    elif b.slope == a.slope - 3:
        ext2 = 1 if b == a.twist(-3) else 0
    chi = euler_pairing(a.chern, b.chern)
    dims = [hom, ext1, ext2]
    missing = [i for i, v in enumerate(dims) if v is None]
    if len(missing) == 1:
        signs = (1, -1, 1)
        i = missing[0]
        residue = chi - sum(s * v for s, v in zip(signs, dims) if v is not None)
        candidate = residue * signs[i]
        if candidate >= 0:
            dims[i] = candidate
    elif not missing and dims[0] - dims[1] + dims[2] != chi:  # type: ignore[operator]
        raise InternalInconsistencyError(
            f"ext dims {dims} inconsistent with chi({a}, {b}) = {chi}"
        )
    return ExtDims(dims[0], dims[1], dims[2])


class TriState(enum.Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


def is_prioritary_sum(
    summands: Sequence[ExceptionalBundle | tuple[ExceptionalBundle, int]]
) -> TriState:
    """Whether a direct sum of exceptional bundles is prioritary.

    The sum is prioritary iff Ext^2(A, B(-1)) = 0 for every ordered pair
    of summands, multiplicities being irrelevant.  Verdicts: NO if some
    pair has a known positive Ext^2, UNKNOWN if some pair is undecided,
    YES otherwise.
    """
    bundles = [s[0] if isinstance(s, tuple) else s for s in summands]
    if not bundles:
        raise ValueError("empty summand list")
    verdict = TriState.YES
    for a in bundles:
        for b in bundles:
            d2 = ext_dims(a, b.twist(-1)).ext2
            if d2 is None:
                if verdict is TriState.YES:
                    verdict = TriState.UNKNOWN
            elif d2 > 0:
                return TriState.NO
    return verdict
