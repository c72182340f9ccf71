"""Command-line surface tying the modules together.

Exit codes: 0 success; 2 unparseable input (files, expressions, flags);
3 domain/precondition violation; 4 indeterminate comparison at the requested
precision; 5 resource-guard refusal.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from fractions import Fraction
from pathlib import Path

from .bounds import (
    BoundInputs,
    bound_transverse_E2,
    bound_weaktransverse_EN,
    constants_CN,
    constants_D,
    constants_D_printed,
    exponents,
    family_final_bound,
    family_invariants,
    THEOREM_IDS,
)
from .elliptic import curve_from_json, weierstrass_height_expr
from .presets import PRESET_NAMES, preset_curve_json
from .reporting import (
    SCHEMA_VERSION,
    bound_report_payload,
    bounded_real_payload,
    canonical_dumps,
    census_payload,
    exponents_payload,
    family_audit_payload,
    search_report_payload,
)
from .rounding import (
    ConstExpr,
    Direction,
    DomainError,
    LogRat,
    Prod,
    Rat,
    Sum,
    eval_const,
    rat,
)
from .search import GammaSpec, search_rational_points
from .subgroups import ResourceGuardError, census
from .rings import ring_by_name

__all__ = ["main", "parse_height_expr"]

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_DOMAIN = 3
EXIT_INDETERMINATE = 4
EXIT_RESOURCE = 5


class InputParseError(ValueError):
    pass


class IndeterminateError(RuntimeError):
    pass


_TERM_RE = re.compile(
    r"^(?:(?P<coeff>-?\d+(?:/\d+)?)\s*\*?\s*)?"
    r"log\s*(?:\(\s*(?P<parg>\d+(?:/\d+)?)\s*\)|(?P<iarg>\d+))"
    r"(?:\s*/\s*(?P<div>\d+))?$"
)
_RAT_RE = re.compile(r"^-?\d+(?:/\d+)?$")


def parse_height_expr(text: str) -> ConstExpr:
    """Decimal-free height expressions: sums of rationals and rational
    multiples of logarithms, e.g. '0', '1/3log2', 'log(2)/3 + 1/2'."""
    terms = []
    for piece in text.split("+"):
        piece = piece.strip()
        if not piece:
            raise InputParseError(f"empty term in height expression {text!r}")
        if _RAT_RE.match(piece):
            terms.append(Rat(Fraction(piece)))
            continue
        m = _TERM_RE.match(piece)
        if not m:
            raise InputParseError(
                f"cannot parse height term {piece!r}; use forms like '1/3log2', "
                f"'log(2)/3', or a plain rational 'p/q'")
        coeff = Fraction(m.group("coeff")) if m.group("coeff") else Fraction(1)
        if m.group("div"):
            coeff /= int(m.group("div"))
        arg = Fraction(m.group("parg") or m.group("iarg"))
        terms.append(Prod((Rat(coeff), LogRat(arg))))
    return terms[0] if len(terms) == 1 else Sum(tuple(terms))


def _parse_fraction(text: str, what: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputParseError(f"cannot parse {what} {text!r}: {exc}") from exc


def _load_curve(spec: str):
    """A path to a curve JSON file, or a preset name (f1/f2, preset:f1, ...)."""
    name = spec.removeprefix("preset:")
    if name in PRESET_NAMES:
        return curve_from_json(preset_curve_json(name))
    path = Path(spec)
    if not path.exists():
        raise InputParseError(f"curve file {spec!r} does not exist and is not a preset "
                              f"({', '.join(PRESET_NAMES)})")
    try:
        text = path.read_text()
    except OSError as exc:
        raise InputParseError(f"cannot read curve file {spec!r}: {exc}") from exc
    try:
        return curve_from_json(text)
    except DomainError as exc:
        raise InputParseError(str(exc)) from exc


def _resolve_hw(args) -> ConstExpr:
    if getattr(args, "hw", None):
        return parse_height_expr(args.hw)
    if getattr(args, "curve", None):
        curve, _gen, _rank, _tor = _load_curve(args.curve)
        return weierstrass_height_expr(curve)
    return rat(0)


def _emit(payload: dict, out: str | None) -> None:
    blob = canonical_dumps(payload)
    if out:
        Path(out).write_bytes(blob)
    else:
        sys.stdout.buffer.write(blob)


def _default_precision() -> int:
    env = os.environ.get("NTBOUNDS_PRECISION", "")
    if env:
        try:
            value = int(env)
        except ValueError:
            raise InputParseError(f"NTBOUNDS_PRECISION must be an integer, got {env!r}")
        if value < 53:
            raise InputParseError("NTBOUNDS_PRECISION must be >= 53")
        return value
    return 256


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def _cmd_constants(args) -> int:
    hw = _resolve_hw(args)
    digits = args.digits
    payload = {"schema_version": SCHEMA_VERSION, "kind": "constants",
               "precision_bits": args.precision}
    if args.d:
        d1, d2, d3 = constants_D(hw, Direction.UPPER, args.precision)
        payload["set"] = "transverse-square"
        payload["values"] = {
            "d1": bounded_real_payload(d1, digits),
            "d2": bounded_real_payload(d2, digits),
            "d3": bounded_real_payload(d3, digits),
        }
        payload["printed_approximations"] = constants_D_printed(args.precision)
    else:
        c1, c2, c3 = constants_CN(args.cn, hw, Direction.UPPER, args.precision)
        payload["set"] = "weak-transverse-power"
        payload["N"] = args.cn
        payload["values"] = {
            "c1": bounded_real_payload(c1, digits),
            "c2": bounded_real_payload(c2, digits),
            "c3": bounded_real_payload(c3, digits),
        }
    _emit(payload, args.out)
    return EXIT_OK


def _cmd_bound(args) -> int:
    hw = _resolve_hw(args)
    h_c = parse_height_expr(args.h_c)
    if args.branch == "square":
        report = bound_transverse_E2(h_c, args.deg_c, hw, args.precision)
    else:
        if args.N is None:
            raise InputParseError("--branch power requires --N")
        report = bound_weaktransverse_EN(
            BoundInputs(N=args.N, h_v=h_c, deg_v=args.deg_c, h_w=hw), args.precision)
    _emit(bound_report_payload(report, args.digits), args.out)
    return EXIT_OK


def _cmd_family_audit(args) -> int:
    if args.n is not None:
        ns = [args.n]
    else:
        try:
            lo, hi = args.n_range.split(":")
            ns = list(range(int(lo), int(hi) + 1))
        except ValueError as exc:
            raise InputParseError(f"bad --n-range {args.n_range!r}; use A:B") from exc
        if not ns:
            raise InputParseError("empty --n-range")
    reports, extras = [], []
    for n in ns:
        rep = family_final_bound(n, args.family, args.precision)
        if rep.verdict == "indeterminate":
            raise IndeterminateError(
                f"composed-versus-closed-form comparison indeterminate at n={n}; "
                f"raise --precision")
        extra = {}
        if args.family == "f2":
            inv = family_invariants("f2", n)
            extra["mu_upper"] = bounded_real_payload(
                eval_const(inv.mu_upper, Direction.UPPER, args.precision), args.digits)
            extra["h_upper"] = bounded_real_payload(
                eval_const(inv.h_upper, Direction.UPPER, args.precision), args.digits)
            extra["height_chain"] = {
                label: bounded_real_payload(
                    eval_const(expr, Direction.UPPER, args.precision), args.digits)
                for label, expr in inv.chain
            }
        reports.append(rep)
        extras.append(extra)
    _emit(family_audit_payload(reports, extras, args.digits), args.out)
    return EXIT_OK


def _cmd_search(args) -> int:
    curve, gen, _rank, _tor = _load_curve(args.curve)
    gamma = GammaSpec(curve, gen)
    tol = _parse_fraction(args.tol, "--tol")
    bound = _parse_fraction(args.height_bound, "--height-bound")
    report = search_rational_points(args.family, args.n, gamma, bound, tol,
                                    shards=args.shards, precision=args.precision)
    _emit(search_report_payload(report, args.digits), args.out)
    print(f"search metrics: wall={report.wall_clock_seconds:.3f}s "
          f"pairs/s={report.pairs_per_second:.0f} shards={report.shards}",
          file=sys.stderr)
    if args.metrics_out:
        Path(args.metrics_out).write_text(json.dumps({
            "wall_clock_seconds": report.wall_clock_seconds,
            "pairs_per_second": report.pairs_per_second,
            "shards": report.shards,
        }, sort_keys=True) + "\n")
    return EXIT_OK


def _cmd_census(args) -> int:
    ring = ring_by_name(args.ring)
    report = census(ring, args.N, args.r, args.max_degree, args.torsion,
                    ceiling=args.ceiling)
    _emit(census_payload(report), args.out)
    return EXIT_OK


def _cmd_exponents(args) -> int:
    report = exponents(args.theorem, case=args.case or "", N=args.N, r=args.r,
                       t=args.t, dim_v=args.dim_v)
    _emit(exponents_payload(report), args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ntbounds",
        description="Explicit Neron-Tate height bounds for curves in powers of "
                    "elliptic curves: constants, bound audits, searches, censuses.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, digits_default=40):
        p.add_argument("--precision", type=int, default=None,
                       help="evaluation precision in bits (default: "
                            "NTBOUNDS_PRECISION or 256)")
        p.add_argument("--digits", type=int, default=digits_default,
                       help="significant digits in decimal output")
        p.add_argument("--out", help="write the canonical JSON report here "
                                     "(default: stdout)")

    p = sub.add_parser("constants", help="evaluate the explicit bound constants")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--d", action="store_true",
                       help="the transverse-in-E^2 constant set")
    group.add_argument("--cn", type=int, metavar="N",
                       help="the weak-transverse power constant set for E^N")
    p.add_argument("--hw", help="h_W(E) as a decimal-free expression, e.g. '1/3log2'")
    p.add_argument("--curve", help="curve file or preset (f1/f2) to compute h_W from")
    common(p)
    p.set_defaults(func=_cmd_constants)

    p = sub.add_parser("bound", help="evaluate a height bound for given curve data")
    p.add_argument("--branch", choices=("square", "power"), required=True)
    p.add_argument("--N", type=int, help="ambient power for --branch power (N >= 3)")
    p.add_argument("--deg-c", type=int, required=True, help="degree of the curve")
    p.add_argument("--h-c", required=True,
                   help="normalized height of the curve (decimal-free expression)")
    p.add_argument("--hw", help="h_W(E) expression")
    p.add_argument("--curve", help="curve file or preset to compute h_W from")
    common(p)
    p.set_defaults(func=_cmd_bound)

    p = sub.add_parser("family-audit",
                       help="degree/genus/height pipeline audit for the curve families")
    p.add_argument("--family", choices=("f1", "f2"), required=True)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--n", type=int)
    group.add_argument("--n-range", metavar="A:B")
    common(p)
    p.set_defaults(func=_cmd_family_audit)

    p = sub.add_parser("search", help="bounded-height rational point search")
    p.add_argument("--family", choices=("f1", "f2"), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--curve", required=True,
                   help="curve JSON file or preset name (f1/f2)")
    p.add_argument("--height-bound", required=True)
    p.add_argument("--tol", default="1e-10")
    p.add_argument("--shards", type=int, default=1)
    p.add_argument("--metrics-out", help="write volatile timing metrics here")
    common(p, digits_default=30)
    p.set_defaults(func=_cmd_search)

    p = sub.add_parser("census", help="bounded-degree algebraic subgroup census")
    p.add_argument("--ring", default="z", help="z, zi, or zw")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--max-degree", type=int, required=True)
    p.add_argument("--torsion", type=int, required=True,
                   help="torsion order bound T for the count sum")
    p.add_argument("--ceiling", type=int, default=5_000_000,
                   help="resource guard on the enumeration size")
    common(p)
    p.set_defaults(func=_cmd_census)

    p = sub.add_parser("exponents", help="exact exponents of the quantitative theorems")
    p.add_argument("--theorem", required=True,
                   help=f"one of: {', '.join(sorted(THEOREM_IDS))}")
    p.add_argument("--case", default="")
    p.add_argument("--N", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--t", type=int)
    p.add_argument("--dim-v", type=int)
    common(p)
    p.set_defaults(func=_cmd_exponents)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if getattr(args, "precision", None) is None:
            args.precision = _default_precision()
        elif args.precision < 53:
            raise InputParseError("--precision must be >= 53")
        return args.func(args)
    except InputParseError as exc:
        print(f"ntbounds: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ResourceGuardError as exc:
        print(f"ntbounds: resource guard: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except IndeterminateError as exc:
        print(f"ntbounds: indeterminate: {exc}", file=sys.stderr)
        return EXIT_INDETERMINATE
    except DomainError as exc:
        print(f"ntbounds: domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except ValueError as exc:
        print(f"ntbounds: domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
