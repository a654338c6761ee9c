"""Ampleness of the J-flow class ``alpha = 2(K.L)L - (L^2)K`` on C x C and
the search for negative curves ``E`` with ``alpha - a*E`` ample.

Whether the Mabuchi functional on ``c1(L_t)`` is bounded exactly when
``t > t_star`` is an open question; reports only carry it as a note.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional

from . import nslattice as ns
from .errors import NoCorrectionFound
from .exactnum import Ordering, Rational, simplest_in_interval, Surd, surd_cmp
from .family import (
    AmpleVerdict,
    CurveFamily,
    diagonal_class,
    is_ample,
    polarization,
    require_ample_t,
    residual_class,
)
from .nslattice import NSClass

DEFAULT_GRID_CAP = 10**6

MABUCHI_NOTE = (
    "conjecture (not asserted): the Mabuchi functional is bounded on c1(L_t) "
    "if and only if t > t_star"
)


@dataclass(frozen=True)
class Correction:
    curve: str
    coefficient: Rational


@dataclass(frozen=True)
class JFlowReport:
    alpha: NSClass
    t_star: Surd
    ample: bool
    corrections: tuple[Correction, ...] = ()
    # rational search only: open lower bound on the single-curve coefficient
    threshold: Optional[Rational] = None
    notes: tuple[str, ...] = field(default=(MABUCHI_NOTE,))

    def corrected_class(self, fam: CurveFamily) -> NSClass:
        out = self.alpha
        for corr in self.corrections:
            out = out - corr.coefficient * negative_curves(fam)[corr.curve]
        return out


def negative_curves(fam: CurveFamily) -> dict[str, NSClass]:
    return {"Z": residual_class(fam), "Delta": diagonal_class(fam)}


def alpha_class(fam: CurveFamily, t) -> NSClass:
    t = require_ample_t(fam, t)
    L = polarization(fam, t)
    K = ns.canonical_class(fam.g)
    alpha = 2 * K.dot(L) * L - L.dot(L) * K
    plane = ns.plane_class(fam.g, 2 * (2 * fam.g - 2) * (t * t + fam.g), -2 * (2 * fam.g - 2) * 2 * t)
    if alpha != plane:
        raise AssertionError(f"alpha formulas disagree: {alpha} vs {plane}")
    return alpha


def t_star(fam: CurveFamily) -> Surd:
    """Larger root of ``t^2 - 2 t s_C + g``."""
    return Surd(fam.s_C, 1, fam.s_C * fam.s_C - fam.g)


def alpha_ample(fam: CurveFamily, t, alpha: Optional[NSClass] = None) -> bool:
    """Three routes: the quadratic in t, the surd threshold, and the cone test on alpha."""
    t = require_ample_t(fam, t)
    if alpha is None:
        alpha = alpha_class(fam, t)
    by_quadratic = t * t + fam.g > 2 * t * fam.s_C
    by_surd = surd_cmp(t, t_star(fam)) is Ordering.GREATER
    by_cone = is_ample(fam, alpha) is AmpleVerdict.AMPLE
    if not by_quadratic == by_surd == by_cone:
        raise AssertionError(f"ampleness routes disagree at t = {t}")
    return by_quadratic


def _single_curve_range(fam: CurveFamily, alpha: NSClass, E: NSClass):
    """Coefficients ``a > 0`` with ``alpha - a*E`` certified ample, as
    ``(lo, hi, hi_closed)`` with ``lo`` open and ``hi`` possibly ``None``.

    In plane coordinates the class is ``(A - a*ea, B - a*eb)``; below the
    f-axis ampleness is two strict linear inequalities in ``a``, and the point
    on the axis (``a = B/eb``) closes the interval when it is ample itself.
    """
    p, e = ns.to_plane(alpha), ns.to_plane(E)
    s = fam.s_C
    lo, hi = Rational(0), None
    # each pair (k, m) imposes k + m*a > 0
    for k, m in ((-p.b, e.b), (p.a + s * p.b, -(e.a + s * e.b))):
        if m == 0:
            if k <= 0:
                return None
        elif m > 0:
            lo = max(lo, -k / m)
        else:
            hi = -k / m if hi is None else min(hi, -k / m)
    hi_closed = False
    if e.b != 0 and hi is not None:
        a_axis = p.b / e.b
        if a_axis == hi and p.a - a_axis * e.a > 0:
            hi_closed = True
    return lo, hi, hi_closed


def correction_search(
    fam: CurveFamily,
    t,
    integer_only: bool = True,
    cap: int = DEFAULT_GRID_CAP,
    alpha: Optional[NSClass] = None,
) -> JFlowReport:
    """Find ``a > 0`` with ``alpha - a*E`` certified ample, ``E`` in {Z, Delta}.

    Single curves come first: there the admissible coefficients form an
    interval, so the minimal integer (or the open threshold plus its simplest
    admissible rational) is read off directly.  Failing that, integer pairs
    ``(a, b)`` for ``alpha - a*Z - b*Delta`` are scanned by increasing
    ``a + b`` until ``cap`` points have been tried.  A precomputed ``alpha``
    for this ``t`` may be passed in.
    """
    t = require_ample_t(fam, t)
    if alpha is None:
        alpha = alpha_class(fam, t)
    ts = t_star(fam)
    if alpha_ample(fam, t, alpha):
        return JFlowReport(alpha, ts, True)
    curves = negative_curves(fam)
    for E in curves.values():
        if E.dot(E) >= 0:
            raise AssertionError("candidate correction curve is not negative")

    for name in curves:
        report = _single_curve_report(fam, alpha, ts, False, name, integer_only)
        if report is not None:
            return report

    z, delta = curves["Z"], curves["Delta"]
    tried = 0
    for total in itertools.count(2):
        for a in range(1, total):
            b = total - a
            cls = alpha - a * z - b * delta
            if is_ample(fam, cls) is AmpleVerdict.AMPLE:
                report = JFlowReport(
                    alpha, ts, False, (Correction("Z", Rational(a)), Correction("Delta", Rational(b)))
                )
                _recheck(fam, report)
                return report
            tried += 1
            if tried >= cap:
                raise NoCorrectionFound(f"no correction among {cap} grid points at t = {t}")


def _recheck(fam: CurveFamily, report: JFlowReport) -> None:
    curves = negative_curves(fam)
    for corr in report.corrections:
        E = curves[corr.curve]
        if corr.coefficient <= 0 or E.dot(E) >= 0:
            raise AssertionError(f"invalid correction {corr}")
    if is_ample(fam, report.corrected_class(fam)) is not AmpleVerdict.AMPLE:
        raise AssertionError("corrected class is not ample")


def _single_curve_report(fam, alpha, ts, ample, curve, integer_only):
    rng = _single_curve_range(fam, alpha, negative_curves(fam)[curve])
    if rng is None:
        return None
    lo, hi, hi_closed = rng
    # for a positive interval the simplest rational is its least integer, if any
    a = simplest_in_interval(lo, hi, False, hi_closed)
    if a is None or (integer_only and a.denominator != 1):
        return None
    report = JFlowReport(
        alpha, ts, ample, (Correction(curve, a),), threshold=None if integer_only else lo
    )
    _recheck(fam, report)
    return report


def single_curve_search(fam: CurveFamily, t, curve: str, integer_only: bool = True) -> JFlowReport:
    """Correction using only the named curve; NoCorrectionFound if impossible."""
    t = require_ample_t(fam, t)
    alpha = alpha_class(fam, t)
    report = _single_curve_report(
        fam, alpha, t_star(fam), alpha_ample(fam, t, alpha), curve, integer_only
    )
    if report is None:
        raise NoCorrectionFound(f"alpha - a*{curve} is never certified ample for a > 0")
    return report
