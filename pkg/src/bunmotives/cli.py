"""Batch command-line interface.

Commands:
    realize       evaluate an expression in one realization
    verify-bun    approximation route vs closed product form (series)
    verify-count  compactly-supported count vs the independent mass formula,
                  plus the brute-force splitting oracle on genus-0 curves
    census        closed-point census and divisor counts of a curve

Exit codes: 0 success, 2 unreadable input, 3 mathematically invalid
request, 4 verification mismatch.
"""

from __future__ import annotations

import argparse
import math
import sys
from fractions import Fraction
from typing import Callable, Sequence

from .bundles import bun_closed, bun_colimit, bun_compact, harder_count
from .census import ClosedPointCensus, divisor_count, split_bundle_count_p1
from .curves import CurveSpec, load_curve
from .errors import DomainError, ParseError
from .expr import (
    CountApprox,
    CountContext,
    PoincareContext,
    parse,
    realize,
    to_adams,
)
from .series import TruncSeries


def fmt_rat(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def fmt_series(s: TruncSeries) -> str:
    terms = []
    for k, c in enumerate(s.coeffs):
        if c == 0:
            continue
        c = Fraction(c)
        mag = fmt_rat(abs(c))
        if k == 0:
            body = mag
        else:
            z = "z" if k == 1 else f"z^{k}"
            body = z if mag == "1" else f"{mag}*{z}"
        terms.append(("- " if c < 0 else "+ " if terms else "") + body)
    joined = " ".join(terms) if terms else "0"
    return f"{joined} + O(z^{s.order + 1})"


def _emit(rows: list[tuple[str, ...]], fmt: str) -> None:
    if fmt == "tsv":
        for row in rows:
            print("\t".join(row))
    else:
        ncols = max(len(r) for r in rows)
        widths = [
            max((len(r[i]) for r in rows if i < len(r)), default=0)
            for i in range(ncols)
        ]
        for row in rows:
            cells = [cell.ljust(widths[i]) for i, cell in enumerate(row)]
            print("  ".join(cells).rstrip())


def _int_at_least(floor: int) -> Callable[[str], int]:
    def convert(text: str) -> int:
        try:
            value = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
        if value < floor:
            raise argparse.ArgumentTypeError(f"must be at least {floor}, got {value}")
        return value

    return convert


def _positive_eps(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}") from None
    if not (value > 0 and math.isfinite(value)):
        raise argparse.ArgumentTypeError(f"must be a positive finite number, got {text}")
    return value


def _read_curve(path: str) -> CurveSpec:
    try:
        return load_curve(path)
    except OSError as ex:
        raise ParseError(f"cannot read curve file {path}: {ex.strerror or ex}") from ex


def _load_count_context(args: argparse.Namespace) -> CountContext:
    if args.curve is not None:
        if args.q is not None:
            raise ParseError("give --curve or --q, not both")
        curve = _read_curve(args.curve)
        return CountContext(q=curve.q, curve=curve, truncation=args.truncate)
    if args.q is None:
        raise ParseError("count mode needs --curve FILE or --q Q")
    return CountContext(q=args.q, truncation=args.truncate)


def _cmd_realize(args: argparse.Namespace) -> int:
    e = parse(args.expr)
    if args.poincare:
        if args.genus is None or args.order is None:
            raise ParseError("series mode needs --genus and -N")
        ctx: PoincareContext | CountContext = PoincareContext(
            genus=args.genus, order=args.order
        )
    else:
        ctx = _load_count_context(args)
    rows: list[tuple[str, ...]] = []
    if args.depth is not None:
        cls = to_adams(e, ctx, args.depth)
        for r in range(1, args.depth + 1):
            v = cls.character(r)
            text = fmt_series(v) if isinstance(v, TruncSeries) else fmt_rat(v)
            rows.append((f"psi^{r}", text))
    else:
        v = realize(e, ctx)
        if isinstance(v, TruncSeries):
            rows.append(("value", fmt_series(v)))
        elif isinstance(v, CountApprox):
            rows.append(("value", fmt_rat(v.value)))
            rows.append(("tail", fmt_rat(v.err)))
        else:
            rows.append(("value", fmt_rat(v)))
    _emit(rows, args.format)
    return 0


def _cmd_verify_bun(args: argparse.Namespace) -> int:
    colimit = bun_colimit(args.n, args.d, args.genus, args.order)
    closed = realize(
        bun_closed(args.n), PoincareContext(genus=args.genus, order=args.order)
    )
    assert isinstance(closed, TruncSeries)
    if args.mutate:
        closed = closed + TruncSeries.monomial(1, min(2, args.order), args.order)
    ok = colimit == closed
    rows = [
        ("check", f"n={args.n}", f"d={args.d}", f"genus={args.genus}", f"N={args.order}"),
        ("colimit", fmt_series(colimit)),
        ("closed", fmt_series(closed)),
        ("status", "ok" if ok else "MISMATCH"),
    ]
    _emit(rows, args.format)
    return 0 if ok else 4


def _cmd_verify_count(args: argparse.Namespace) -> int:
    curve = _read_curve(args.curve)
    value = realize(bun_compact(args.n, curve.genus), CountContext.for_curve(curve))
    assert isinstance(value, Fraction)
    if args.mutate:
        value += 1
    reference = harder_count(args.n, curve)
    ok = value == reference
    rows = [
        ("check", f"n={args.n}", f"q={curve.q}", f"genus={curve.genus}"),
        ("engine", fmt_rat(value)),
        ("mass", fmt_rat(reference)),
    ]
    if curve.genus == 0 and args.n <= 3:
        eps = Fraction(args.tail_eps)
        lo, hi = split_bundle_count_p1(args.n, args.d, curve.q, eps)
        in_interval = lo <= value <= hi
        ok = ok and in_interval
        rows.append(("oracle", fmt_rat(lo), fmt_rat(hi)))
    rows.append(("status", "ok" if ok else "MISMATCH"))
    _emit(rows, args.format)
    return 0 if ok else 4


def _cmd_census(args: argparse.Namespace) -> int:
    curve = _read_curve(args.curve)
    counts = [curve.point_count(r) for r in range(1, args.depth + 1)]
    census = ClosedPointCensus.from_point_counts(counts)
    rows = [("degree", "points", "closed_points", "divisors")]
    for r in range(1, args.depth + 1):
        rows.append(
            (str(r), str(counts[r - 1]), str(census[r]), str(divisor_count(census, r)))
        )
    _emit(rows, args.format)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="bunmotives",
        description="exact motive arithmetic for bundle moduli on curves",
    )
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("realize", help="evaluate an expression")
    r.add_argument("expr", help="expression text, e.g. 'Jac * BGm * Z(C,L^1)'")
    mode = r.add_mutually_exclusive_group(required=True)
    mode.add_argument("--poincare", action="store_true", help="series realization")
    mode.add_argument("--count", action="store_true", help="point-count realization")
    r.add_argument("--genus", type=_int_at_least(0), help="curve genus (series mode)")
    r.add_argument("-N", "--order", type=_int_at_least(0), help="series truncation order")
    r.add_argument("--curve", help="curve file (count mode)")
    r.add_argument("--q", type=_int_at_least(2), help="field size for curve-free counts")
    r.add_argument(
        "--truncate", type=_int_at_least(1), help="partial sums with tail bounds"
    )
    r.add_argument(
        "--depth", type=_int_at_least(1), help="emit Adams characters to this depth"
    )
    r.add_argument("--format", choices=("tsv", "pretty"), default="pretty")
    r.set_defaults(func=_cmd_realize)

    vb = sub.add_parser("verify-bun", help="approximation route vs closed form")
    vb.add_argument("--n", type=int, required=True, help="rank")
    vb.add_argument("--d", type=int, default=0, help="degree")
    vb.add_argument("--genus", type=_int_at_least(0), required=True)
    vb.add_argument("-N", "--order", type=_int_at_least(0), default=12)
    vb.add_argument("--mutate", action="store_true", help="corrupt one coefficient")
    vb.add_argument("--format", choices=("tsv", "pretty"), default="pretty")
    vb.set_defaults(func=_cmd_verify_bun)

    vc = sub.add_parser("verify-count", help="count form vs independent mass")
    vc.add_argument("--n", type=int, required=True, help="rank")
    vc.add_argument("--d", type=int, default=0, help="degree (oracle input)")
    vc.add_argument("--curve", required=True, help="curve file")
    vc.add_argument("--tail-eps", type=_positive_eps, default=1e-9, dest="tail_eps")
    vc.add_argument("--mutate", action="store_true", help="shift the value by one")
    vc.add_argument("--format", choices=("tsv", "pretty"), default="pretty")
    vc.set_defaults(func=_cmd_verify_count)

    c = sub.add_parser("census", help="closed points and divisor counts")
    c.add_argument("--curve", required=True, help="curve file")
    c.add_argument("--depth", type=_int_at_least(0), default=6)
    c.add_argument("--format", choices=("tsv", "pretty"), default="pretty")
    c.set_defaults(func=_cmd_census)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as ex:
        return int(ex.code or 0)
    try:
        return args.func(args)
    except ParseError as ex:
        print(f"input error: {ex}", file=sys.stderr)
        return 2
    except DomainError as ex:
        print(f"domain error: {ex}", file=sys.stderr)
        return 3


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
