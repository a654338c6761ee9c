"""Command-line front end: ``slopestab {analyze,certify,scan,jflow,slope,verify}``."""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import family as fm
from . import jflow as jf
from . import scan as sc
from .certificate import build_certificate, dumps, main_certificate, verify_certificate
from .errors import SlopeStabError
from .exactnum import format_rational, parse_rational
from .slope import SurfaceSlopeData, destabilizes, mu_c, mu_variety

EXIT_OK, EXIT_MISMATCH, EXIT_INPUT = 0, 1, 2


def _rational_arg(text: str):
    try:
        return parse_rational(text, strict=False)
    except SlopeStabError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1: {text!r}")
    return value


def _fail(exc: Exception) -> int:
    payload = {"error": type(exc).__name__, "message": str(exc)}
    print(json.dumps(payload), file=sys.stderr)
    return EXIT_INPUT


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    sys.stdout.write(text)


def _approx_block(cert: dict) -> dict:
    keys = ("s_C", "mu", "mu_1", "epsilon_lo")
    out = {}
    for k in keys:
        v = cert["quantities"][k]
        if isinstance(v, str):
            out[k] = f"{float(parse_rational(v)):.15g}"
    return out


def cmd_analyze(args) -> int:
    cert = build_certificate(args.genus, args.degree, args.t)
    text = dumps(cert)
    _emit(text, args.out)
    if args.approx:
        print(json.dumps({"approx_NONAUTHORITATIVE": _approx_block(cert)}, indent=2))
    return EXIT_OK


def cmd_certify(args) -> int:
    fam = fm.new_family(args.genus, args.degree)
    cert = main_certificate(fam)
    _emit(dumps(cert), args.out)
    if args.resolution is not None:
        lo, hi = fm.destabilizing_t_sup(fam, args.resolution)
        bracket = {"t_lo": format_rational(lo), "t_hi": format_rational(hi)}
        print(json.dumps({"c1_instability_switches_off_in": bracket}), file=sys.stderr)
    return EXIT_OK


def _genus_range(text: str) -> tuple[int, int]:
    try:
        lo, _, hi = text.partition(":")
        lo_i, hi_i = int(lo), int(hi or lo)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected G or GMIN:GMAX, got {text!r}") from None
    if lo_i > hi_i:
        raise argparse.ArgumentTypeError(f"empty genus range {text!r}")
    return lo_i, hi_i


def cmd_scan(args) -> int:
    g_min, g_max = args.genus_range
    offsets = sc.DEFAULT_OFFSETS if args.offsets is None else tuple(
        _rational_arg(x) for x in args.offsets.split(",") if x.strip()
    )
    degrees = None if args.degrees is None else [int(x) for x in args.degrees.split(",")]
    rows = sc.scan(
        g_min,
        g_max,
        offsets=offsets,
        include_t0=not args.no_t0,
        include_limit=not args.no_limit,
        degrees=degrees,
        workers=args.workers,
    )
    try:
        sc.write_rows(args.out, rows, args.format, args.approx)
    except OSError as exc:
        print(json.dumps({"error": "IOError", "message": str(exc)}), file=sys.stderr)
        return EXIT_INPUT
    print(f"{len(rows)} rows written to {args.out}", file=sys.stderr)
    return EXIT_OK


def cmd_jflow(args) -> int:
    fam = fm.new_family(args.genus, args.degree)
    if args.curve:
        report = jf.single_curve_search(fam, args.t, args.curve, integer_only=not args.rational)
    else:
        report = jf.correction_search(fam, args.t, integer_only=not args.rational, cap=args.cap)
    out = {
        "alpha": report.alpha.to_dict(),
        "t_star": report.t_star.to_dict(),
        "ample": report.ample,
        "corrections": [
            {"curve": c.curve, "coefficient": format_rational(c.coefficient)} for c in report.corrections
        ],
        "corrected_class": report.corrected_class(fam).to_dict() if report.corrections else None,
        "threshold": None if report.threshold is None else format_rational(report.threshold),
        "notes": list(report.notes),
    }
    print(json.dumps(out, indent=2))
    return EXIT_OK


def cmd_slope(args) -> int:
    data = SurfaceSlopeData(args.l2, args.kl, args.lz, args.kz, args.z2)
    if args.eps <= 0:
        return _fail(ValueError(f"eps must be positive, got {args.eps}"))
    out = {"mu": format_rational(mu_variety(data))}
    if args.c is not None:
        out["mu_c"] = format_rational(mu_c(data, args.c))
    decision = destabilizes(data, args.eps)
    out["decision"] = {
        "verdict": decision.verdict.value,
        "witness_c": None if decision.witness_c is None else format_rational(decision.witness_c),
        "mu_at_witness": None if decision.mu_at_witness is None else format_rational(decision.mu_at_witness),
        "interval": f"(0, {format_rational(args.eps)}]",
    }
    print(json.dumps(out, indent=2))
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        with open(args.certificate, encoding="utf-8") as fh:
            cert = json.load(fh)
    except OSError as exc:
        print(json.dumps({"error": "IOError", "message": str(exc)}), file=sys.stderr)
        return EXIT_INPUT
    except json.JSONDecodeError as exc:
        print(json.dumps({"error": "SchemaViolation", "message": f"invalid JSON: {exc}"}), file=sys.stderr)
        return EXIT_INPUT
    result = verify_certificate(cert)
    if result.ok:
        print("OK: certificate verified")
    elif result.status == EXIT_MISMATCH:
        print(f"MISMATCH: field {result.field}: {result.message}", file=sys.stderr)
    else:
        print(f"SCHEMA: {result.message}", file=sys.stderr)
    return result.status


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="slopestab",
        description="Exact slope (in)stability and J-flow certificates for C x C.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def family_args(p, with_t=True):
        p.add_argument("--genus", "-g", type=int, required=True)
        p.add_argument("--degree", "-d", type=int, required=True)
        if with_t:
            p.add_argument("--t", type=_rational_arg, required=True, help="p/q or integer")

    p = sub.add_parser("analyze", help="certificate for L_t on C x C")
    family_args(p)
    p.add_argument("--out", "-o")
    p.add_argument("--approx", action="store_true", help="also print 15-digit decimals (non-authoritative)")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("certify", help="main instability certificate at the searched t0")
    family_args(p, with_t=False)
    p.add_argument("--out", "-o")
    p.add_argument("--resolution", type=_rational_arg, help="also bracket where c = 1 instability ends")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("scan", help="CSV/JSON scan over the eligible (g, d) region")
    p.add_argument("--genus-range", type=_genus_range, required=True, metavar="GMIN:GMAX")
    p.add_argument("--offsets", help="comma-separated t - s_C samples (default 1/2,1/4,1/8,1/16)")
    p.add_argument("--degrees", help="comma-separated degrees to keep")
    p.add_argument("--no-t0", action="store_true", help="skip the certificate's t0 sample")
    p.add_argument("--no-limit", action="store_true", help="skip the t = s_C limit rows")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--approx", action="store_true", help="append a non-authoritative decimal column")
    p.add_argument("--workers", type=_positive_int, help=f"overrides {sc.THREADS_ENV}")
    p.add_argument("--out", "-o", required=True)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("jflow", help="alpha ampleness and correction divisors")
    family_args(p)
    p.add_argument("--rational", action="store_true", help="report the exact threshold, not the least integer")
    p.add_argument("--curve", choices=("Z", "Delta"), help="restrict to one negative curve")
    p.add_argument("--cap", type=_positive_int, default=jf.DEFAULT_GRID_CAP)
    p.set_defaults(func=cmd_jflow)

    p = sub.add_parser("slope", help="slopes of a generic polarised surface")
    for flag in ("l2", "kl", "lz", "kz", "z2"):
        p.add_argument(f"--{flag}", type=_rational_arg, required=True)
    p.add_argument("--eps", type=_rational_arg, required=True, help="certified Seshadri lower bound")
    p.add_argument("--c", type=_rational_arg)
    p.set_defaults(func=cmd_slope)

    p = sub.add_parser("verify", help="recompute a certificate and compare bit-exactly")
    p.add_argument("certificate")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SlopeStabError as exc:
        return _fail(exc)


if __name__ == "__main__":
    sys.exit(main())
