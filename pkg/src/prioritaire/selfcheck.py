"""Built-in consistency checks.

Each check exercises one family of invariants and reports a
(name, ok, detail) record; ``run_selfcheck`` runs them all.  The
``depth`` knob bounds the enumeration depth of the lattice and tiling
checks so the suite stays fast at the default.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction

from . import decompose, exceptional, frontier, helix
from .chern import ChernData, character_pairing, euler_pairing, hirzebruch_p, twist
from .errors import NoPrioritarySheafError
from .surd import (
    QuadSurd,
    compare_sqrt_sum,
    format_rational,
    format_surd,
    parse_rational,
    parse_surd,
)


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str


def _decimal_sign(s: QuadSurd) -> int:
    with localcontext() as ctx:
        ctx.prec = 60
        value = Decimal(s.a.numerator) / Decimal(s.a.denominator)
        if s.b:
            value += (
                Decimal(s.b.numerator)
                / Decimal(s.b.denominator)
                * Decimal(s.d).sqrt()
            )
        if abs(value) < Decimal("1e-40"):
            return 0
        return 1 if value > 0 else -1


def _check_surds() -> str:
    rng = random.Random(20260823)
    samples = []
    for _ in range(200):
        a = Fraction(rng.randint(-30, 30), rng.randint(1, 12))
        b = Fraction(rng.randint(-30, 30), rng.randint(1, 12))
        d = rng.choice([0, 2, 3, 5, 77, 9 * 25 - 4, 9 * 169 - 4])
        samples.append(QuadSurd(a, b, d))
    for s in samples:
        assert s.sign() == _decimal_sign(s), f"sign mismatch for {s}"
    for x in samples[:60]:
        for y in samples[:60]:
            if x.d and y.d and x.d != y.d:
                continue
            assert (x + y) - y == x
            assert x * y == y * x
    assert compare_sqrt_sum(Fraction(2), Fraction(8), Fraction(5)) < 0
    assert compare_sqrt_sum(Fraction(4), Fraction(9), Fraction(5)) == 0
    assert compare_sqrt_sum(Fraction(4), Fraction(9), Fraction(4)) > 0
    return f"{len(samples)} surds against 60-digit decimal evaluation"


def _check_pairings() -> str:
    rng = random.Random(97)
    count = 0
    for _ in range(300):
        a = ChernData(rng.randint(1, 9), rng.randint(-9, 9), rng.randint(-9, 9))
        b = ChernData(rng.randint(1, 9), rng.randint(-9, 9), rng.randint(-9, 9))
        assert euler_pairing(a, b) == character_pairing(a.character(), b.character())
        assert euler_pairing(a, b) == euler_pairing(b, twist(a, -3))
        count += 1
    return f"{count} pairs: closed form vs slope form, and the duality relation"


def _check_lattice(depth: int) -> str:
    bundles = exceptional.enumerate_to_level(depth)
    for f in bundles:
        assert euler_pairing(f.chern, f.chern) == 1, f.label()
        c2 = Fraction((f.rank - 1) * (f.rank + 1 + f.c1 * f.c1), 2 * f.rank)
        assert c2.denominator == 1 and c2 == f.c2, f.label()
    for left, right in zip(bundles, bundles[1:]):
        # Intervals (slope - x, slope + x) of consecutive bundles must not
        # overlap: distance of slopes >= sum of half-widths.
        gap = right.slope - left.slope
        u2 = left.half_width().b ** 2 * left.half_width().d
        v2 = right.half_width().b ** 2 * right.half_width().d
        # half_width = 3/2 - sqrt(u2) with u2 = (9r^2-4)/(4r^2); the sum of
        # widths is 3 - sqrt(u2) - sqrt(v2), so disjointness reads
        # sqrt(u2) + sqrt(v2) >= 3 - gap.
        assert compare_sqrt_sum(u2, v2, Fraction(3) - gap) >= 0, (
            left.label(),
            right.label(),
        )
    return f"{len(bundles)} bundles to level {depth}: integrality, rigidity, disjoint intervals"


def _check_frontier(depth: int) -> str:
    for f in exceptional.enumerate_to_level(depth):
        assert frontier.delta(f.slope) - f.delta == Fraction(1, f.rank**2), f.label()
    for mu in (Fraction(-1, 3), Fraction(-2, 5), Fraction(0), Fraction(-17, 24)):
        assert frontier.delta(mu) == frontier.delta(mu + 1)
        assert frontier.delta(mu) == frontier.delta(mu - 3)
        dp = frontier.delta_prime(mu)
        assert (dp - QuadSurd.from_rational(frontier.delta(mu))).sign() <= 0
    return "peak heights 1/r^2, period one, delta' <= delta"


def _check_triads(depth: int) -> str:
    count = 0
    for t in helix.iterate_triads(depth):
        tri = t.triangle()
        assert tri.side_ef(t.e.slope) == t.e.delta
        assert tri.side_ef(t.f.slope) == t.f.delta
        assert tri.side_fg(t.f.slope) == t.f.delta
        assert tri.side_fg(t.g.slope) == t.g.delta
        assert tri.side_eg(t.e.slope) == t.e.delta
        assert tri.side_eg(t.g.slope) == t.g.delta
        if t.level < depth:
            left, right = helix.children(t)
            lt, rt = left.triangle(), right.triangle()
            for i in range(1, 4):
                mu = t.e.slope + (t.f.slope - t.e.slope) * Fraction(i, 4)
                assert lt.side_eg(mu) == tri.side_ef(mu)
                mu = t.f.slope + (t.g.slope - t.f.slope) * Fraction(i, 4)
                assert rt.side_eg(mu) == tri.side_fg(mu)
        count += 1
    expected = (1 << (depth + 1)) - 1
    assert count == expected, (count, expected)
    return f"{count} tiles to level {depth}: vertices on sides, children share sides"


def _check_series(depth: int) -> str:
    checked = 0
    for f in (
        exceptional.from_slope(Fraction(0)),
        exceptional.from_slope(Fraction(-1, 2)),
        exceptional.from_slope(Fraction(-2, 5)),
    ):
        members = helix.left_series(f, -3, depth + 4)
        for g in members:
            assert euler_pairing(f.chern, g.chern) == 0, (f.label(), g.label())
            checked += 1
        mirrored = helix.right_series(f, -3, depth + 4)
        for g, h in zip(members, mirrored):
            assert h.slope == g.slope + 3
    return f"{checked} series members orthogonal to their source"


def _check_decompose(depth: int) -> str:
    fixed = [
        ChernData(8, -4, 11),
        ChernData(9, -3, 8),
        ChernData(9, 3, 8),
        ChernData(5, -2, 3),
        ChernData(4, -2, 2),
        ChernData(10, -4, 8),
        ChernData(4, 0, 2),
        ChernData(6, -3, 5),
        ChernData(1, 0, 0),
        ChernData(2, -1, 1),
    ]
    split = 0
    refused = 0
    for r in range(1, depth + 3):
        for c1 in range(-r, 1):
            for c2 in range(-2, 7):
                fixed.append(ChernData(r, c1, c2))
    for cd in fixed:
        try:
            result = decompose.generic_prioritary(cd)
        except NoPrioritarySheafError:
            refused += 1
            continue
        if result.summands is not None:
            split += 1
    return f"{split} splittings verified, {refused} below the existence bound"


def _check_roundtrip() -> str:
    values = [Fraction(0), Fraction(-3, 8), Fraction(22, 7), Fraction(5)]
    for v in values:
        assert parse_rational(format_rational(v)) == v
    surds = [
        QuadSurd(Fraction(1, 2), Fraction(-1, 10), 221),
        QuadSurd(Fraction(-3), Fraction(0), 0),
        QuadSurd(Fraction(0), Fraction(7, 3), 5),
    ]
    for s in surds:
        assert parse_surd(format_surd(s)) == s
    return "rational and surd strings round-trip"


_CHECKS = (
    ("surd arithmetic and signs", lambda depth: _check_surds()),
    ("euler pairing forms", lambda depth: _check_pairings()),
    ("exceptional lattice", _check_lattice),
    ("frontier profile", _check_frontier),
    ("triangle tiling", _check_triads),
    ("orthogonal series", _check_series),
    ("generic splittings", _check_decompose),
    ("string round-trips", lambda depth: _check_roundtrip()),
)


def run_selfcheck(depth: int = 4) -> list[CheckResult]:
    if depth < 1:
        raise ValueError(f"depth must be >= 1, got {depth}")
    results = []
    for name, fn in _CHECKS:
        try:
            detail = fn(depth)
            results.append(CheckResult(name, True, detail))
        except Exception as exc:  # noqa: BLE001 - report, do not mask, failures
            results.append(CheckResult(name, False, f"{type(exc).__name__}: {exc}"))
    return results
