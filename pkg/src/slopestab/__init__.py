"""Exact slope-stability and J-flow certificates for products of curves."""

from .exactnum import Ordering, Rational, Surd, format_rational, parse_rational, rat, surd_cmp
from .family import CurveFamily, new_family
from .slope import Decision, HilbertCoeffs, SurfaceSlopeData, Verdict, destabilizes, mu_c, mu_variety

__version__ = "0.1.0"

__all__ = [
    "CurveFamily",
    "Decision",
    "HilbertCoeffs",
    "Ordering",
    "Rational",
    "Surd",
    "SurfaceSlopeData",
    "Verdict",
    "destabilizes",
    "format_rational",
    "mu_c",
    "mu_variety",
    "new_family",
    "parse_rational",
    "rat",
    "surd_cmp",
]
