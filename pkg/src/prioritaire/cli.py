"""Command line interface.

Each subcommand answers one question.  The default output is a short
human-readable report; ``--json`` switches to a JSON document with
sorted keys, so machine output is deterministic.  Exact values are
printed as rational or surd strings; decimal approximations are
display-only and sized by ``--digits``.

Exit codes: 0 when the question was answered (including "no prioritary
sheaf exists"), 1 for usage errors, 2 when an internal consistency
check failed or a depth cap was exhausted.

Negative arguments start with a dash, so insert ``--`` before the
positionals: ``prioritaire frontier -- -1/2``.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction

from . import chern
from . import decompose as decompose_mod
from . import exceptional, frontier, helix, render, selfcheck
from .chern import ChernData, euler_pairing
from .errors import (
    DepthExhaustedError,
    InternalInconsistencyError,
    NoPrioritarySheafError,
    NotCoveredError,
    ParseError,
)
from .surd import QuadSurd, decimal_str, format_rational, format_surd, parse_rational

MAX_TILE_DEPTH = 10

_EPILOG = (
    "negative values start with a dash; insert -- before the positional "
    "arguments, e.g. %(prog)s -- -1/2"
)


class _Parser(argparse.ArgumentParser):
    """argparse with usage failures mapped to exit code 1."""

    def error(self, message: str):  # noqa: D102 - argparse hook
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _exact(value, digits: int) -> dict:
    if isinstance(value, QuadSurd):
        return {"exact": format_surd(value), "approx": decimal_str(value, digits)}
    return {"exact": format_rational(value), "approx": decimal_str(value, digits)}


def _exact_text(value, digits: int) -> str:
    e = _exact(value, digits)
    return f"{e['exact']} (~ {e['approx']})" if "sqrt" in e["exact"] or "/" in e["exact"] else e["exact"]


def _bundle_record(f: exceptional.ExceptionalBundle) -> dict:
    return {
        "label": f.label(),
        "rank": f.rank,
        "c1": f.c1,
        "c2": f.c2,
        "slope": format_rational(f.slope),
        "delta": format_rational(f.delta),
    }


def _emit_json(payload: dict) -> None:
    print(json.dumps(payload, sort_keys=True, indent=2))


def _output_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--json", action="store_true", help="emit a JSON document")
    p.add_argument(
        "--digits",
        type=int,
        default=12,
        metavar="N",
        help="significant digits of decimal approximations (default 12)",
    )


def _depth_arg(p: argparse.ArgumentParser, what: str) -> None:
    p.add_argument(
        "--depth",
        type=int,
        default=None,
        metavar="N",
        help=f"{what} (default: PRIORITAIRE_MAX_DEPTH or 64)",
    )


def _invariant_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("rank", type=int, help="rank, a positive integer")
    p.add_argument("c1", type=int, help="first Chern class")
    p.add_argument("c2", type=int, help="second Chern class")


def build_parser() -> _Parser:
    parser = _Parser(
        prog="prioritaire",
        description="existence frontiers and generic splittings on the projective plane",
        epilog=_EPILOG,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser(
        "slope",
        help="dyadic to exceptional bundle, or back with --invert",
        epilog=_EPILOG,
    )
    p.add_argument("value", help='dyadic like "-1/4" or "-3/2^2"; with --invert a rational slope')
    p.add_argument("--invert", action="store_true", help="treat VALUE as an exceptional slope")
    _depth_arg(p, "descent cap for --invert")
    _output_args(p)
    p.set_defaults(handler=_cmd_slope)

    p = sub.add_parser("frontier", help="frontier values at a rational slope", epilog=_EPILOG)
    p.add_argument("mu", help='rational slope like "-1/3"')
    _depth_arg(p, "descent cap")
    _output_args(p)
    p.set_defaults(handler=_cmd_frontier)

    p = sub.add_parser("classify", help="region of integral invariants", epilog=_EPILOG)
    _invariant_args(p)
    _depth_arg(p, "descent cap")
    _output_args(p)
    p.set_defaults(handler=_cmd_classify)

    p = sub.add_parser(
        "decompose",
        help="splitting of the generic prioritary sheaf",
        epilog=_EPILOG,
    )
    _invariant_args(p)
    _depth_arg(p, "descent cap")
    _output_args(p)
    p.set_defaults(handler=_cmd_decompose)

    p = sub.add_parser(
        "series",
        help="orthogonal series attached to an exceptional bundle",
        epilog=_EPILOG,
    )
    p.add_argument("dyadic", help='dyadic locating the bundle, like "0" or "-1/2"')
    p.add_argument("n_max", type=int, help="largest index n; members run from --from to n")
    p.add_argument("--from", dest="n_min", type=int, default=0, metavar="N")
    p.add_argument("--right", action="store_true", help="the twisted-by-3 mirror series")
    _output_args(p)
    p.set_defaults(handler=_cmd_series)

    p = sub.add_parser("tile", help="render the triangle tiling", epilog=_EPILOG)
    p.add_argument(
        "--depth",
        type=int,
        required=True,
        metavar="N",
        help=f"deepest tile level, at most {MAX_TILE_DEPTH}",
    )
    p.add_argument("--format", choices=("svg", "csv"), default="svg")
    p.add_argument("--samples", type=int, default=64, metavar="K", help="points per curved side (svg)")
    p.add_argument("--out", default="-", metavar="PATH", help="output file, - for stdout")
    p.set_defaults(handler=_cmd_tile)

    p = sub.add_parser("selfcheck", help="run the built-in consistency checks")
    p.add_argument("--depth", type=int, default=4, metavar="N")
    p.set_defaults(handler=_cmd_selfcheck)

    return parser


def _cmd_slope(args: argparse.Namespace) -> int:
    if args.invert:
        mu = Fraction(parse_rational(args.value))
        f = exceptional.from_slope(mu)
        d = exceptional.dyadic_of(f, args.depth)
    else:
        d = exceptional.parse_dyadic(args.value)
        f = exceptional.from_dyadic(d)
    hw = f.half_width()
    left = QuadSurd.from_rational(f.slope) - hw
    right = QuadSurd.from_rational(f.slope) + hw
    payload = _bundle_record(f)
    payload["dyadic"] = str(d)
    payload["x_f"] = _exact(hw, args.digits)
    payload["interval"] = {
        "left": _exact(left, args.digits),
        "right": _exact(right, args.digits),
    }
    if args.json:
        _emit_json(payload)
    else:
        print(f"bundle   {f.label()}")
        print(f"dyadic   {d}")
        print(f"slope    {format_rational(f.slope)}")
        print(f"rank     {f.rank}  c1 {f.c1}  c2 {f.c2}  delta {format_rational(f.delta)}")
        print(f"x_f      {_exact_text(hw, args.digits)}")
        print(f"interval ({_exact_text(left, args.digits)}, {_exact_text(right, args.digits)})")
    return 0


def _cmd_frontier(args: argparse.Namespace) -> int:
    mu = parse_rational(args.mu)
    d = frontier.delta(mu, args.depth)
    dp = frontier.delta_prime(mu, args.depth)
    owner = exceptional.locate_exceptional(mu - math.ceil(mu), args.depth)
    bound = -mu * (mu + 1) / 2
    if args.json:
        _emit_json(
            {
                "mu": format_rational(mu),
                "delta": _exact(d, args.digits),
                "delta_prime": _exact(dp, args.digits),
                "owner": _bundle_record(owner),
                "prioritary_bound": _exact(bound, args.digits),
            }
        )
    else:
        print(f"mu               {format_rational(mu)}")
        print(f"delta            {_exact_text(d, args.digits)}")
        print(f"delta_prime      {_exact_text(dp, args.digits)}")
        print(f"owner            {owner.label()}")
        print(f"prioritary_bound {_exact_text(bound, args.digits)}")
    return 0


def _classify_payload(cd: ChernData, region: frontier.Region, digits: int) -> dict:
    norm, k = chern.normalize(cd)
    payload = {
        "input": {"rank": cd.rank, "c1": cd.c1, "c2": cd.c2},
        "normalized": {"rank": norm.rank, "c1": norm.c1, "c2": norm.c2, "twist": k},
        "mu": _exact(norm.slope(), digits),
        "delta": _exact(norm.discriminant(), digits),
        "region": region.tag.value,
    }
    if region.witness is not None:
        payload["witness"] = _bundle_record(region.witness)
    return payload


def _cmd_classify(args: argparse.Namespace) -> int:
    cd = _chern_data(args)
    region = frontier.classify(cd, args.depth)
    if args.json:
        _emit_json(_classify_payload(cd, region, args.digits))
    else:
        norm, k = chern.normalize(cd)
        print(f"region     {region.tag.value}")
        if region.witness is not None:
            print(f"witness    {region.witness.label()}")
        print(f"normalized ({norm.rank},{norm.c1},{norm.c2}) twist {k}")
        print(f"mu         {_exact_text(norm.slope(), args.digits)}")
        print(f"delta      {_exact_text(norm.discriminant(), args.digits)}")
    return 0


def _summand_record(s: decompose_mod.Summand) -> dict:
    d = s.chern_data()
    return {
        "kind": s.kind,
        "label": s.label(),
        "multiplicity": s.multiplicity,
        "rank": d.rank,
        "c1": d.c1,
        "c2": d.c2,
        "slope": format_rational(d.slope()),
        "delta": format_rational(d.discriminant()),
    }


def _cmd_decompose(args: argparse.Namespace) -> int:
    cd = _chern_data(args)
    try:
        result = decompose_mod.generic_prioritary(cd, args.depth)
    except NoPrioritarySheafError as exc:
        if args.json:
            _emit_json(
                {
                    "input": {"rank": cd.rank, "c1": cd.c1, "c2": cd.c2},
                    "region": frontier.RegionTag.NO_PRIORITARY.value,
                    "summands": None,
                    "message": str(exc),
                }
            )
        else:
            print(f"region   {frontier.RegionTag.NO_PRIORITARY.value}")
            print(f"answer   {exc}")
        return 0
    payload = {
        "input": {"rank": cd.rank, "c1": cd.c1, "c2": cd.c2},
        "region": result.region.tag.value,
        "twist": result.twist,
        "verification": result.verification,
        "summands": None
        if result.summands is None
        else [_summand_record(s) for s in result.summands],
    }
    if args.json:
        _emit_json(payload)
    else:
        print(f"region   {result.region.tag.value}")
        if result.summands is None:
            print("summands none (generic sheaf does not split)")
        else:
            for s in result.summands:
                d = s.chern_data()
                print(
                    f"summand  {s.multiplicity} x {s.label()}"
                    f"  [rank {d.rank} c1 {d.c1} c2 {d.c2}]"
                )
            print("verified character balance exact")
    return 0


def _cmd_series(args: argparse.Namespace) -> int:
    d = exceptional.parse_dyadic(args.dyadic)
    f = exceptional.from_dyadic(d)
    if args.n_min > args.n_max:
        raise ParseError(f"--from {args.n_min} exceeds n_max {args.n_max}")
    fn = helix.right_series if args.right else helix.left_series
    members = fn(f, args.n_min, args.n_max)
    records = []
    for n, g in zip(range(args.n_min, args.n_max + 1), members):
        # The defining vanishing: left members are right-orthogonal to f,
        # right members left-orthogonal.
        chi = (
            euler_pairing(g.chern, f.chern)
            if args.right
            else euler_pairing(f.chern, g.chern)
        )
        records.append(dict(_bundle_record(g), n=n, chi=chi))
    if args.json:
        _emit_json(
            {
                "source": _bundle_record(f),
                "side": "right" if args.right else "left",
                "members": records,
            }
        )
    else:
        print(f"source {f.label()}  side {'right' if args.right else 'left'}")
        for r in records:
            print(
                f"n {r['n']:>3}  rank {r['rank']}  c1 {r['c1']}  c2 {r['c2']}"
                f"  slope {r['slope']}  delta {r['delta']}  chi {r['chi']}"
            )
    return 0


def _cmd_tile(args: argparse.Namespace) -> int:
    if args.depth > MAX_TILE_DEPTH:
        raise ParseError(f"tile depth {args.depth} exceeds the maximum {MAX_TILE_DEPTH}")
    if args.format == "svg":
        text = render.tile_svg(args.depth, args.samples)
    else:
        text = render.tile_csv(args.depth)
    if args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    return 0


def _cmd_selfcheck(args: argparse.Namespace) -> int:
    results = selfcheck.run_selfcheck(args.depth)
    ok = True
    for r in results:
        status = "ok" if r.ok else "FAIL"
        print(f"{status:4s} {r.name}: {r.detail}")
        ok = ok and r.ok
    return 0 if ok else 2


def _chern_data(args: argparse.Namespace) -> ChernData:
    if args.rank < 1:
        raise ParseError(f"rank must be >= 1, got {args.rank}")
    return ChernData(args.rank, args.c1, args.c2)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except (ParseError, ValueError) as exc:
        print(f"prioritaire: error: {exc}", file=sys.stderr)
        return 1
    except (InternalInconsistencyError, NotCoveredError, DepthExhaustedError) as exc:
        print(f"prioritaire: inconsistency: {exc}", file=sys.stderr)
        return 2


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
