"""Products C x C where C is a simple branched cover of P^1 of degree d.

For these curves the ample threshold of ``L_t = t*f - delta'`` is known
exactly, ``s_C = g/(d-1)``, provided ``(d-1)^2 <= g``.  The residual curve
``Z = (d-1)*f - delta'`` of the fibre product is the destabilising candidate.

Existence of such curves (any g, any d with 2 <= d-1 < sqrt(g), e.g. d = 3)
comes from the Riemann existence theorem; nothing here constructs them.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional, Union

from . import nslattice as ns
from .errors import (
    HypothesisNotSatisfied,
    KouvidakisHypothesisFailed,
    NotAmplePolarization,
    SearchExhausted,
    UnboundedAbove,
)
from .exactnum import compare, quadratic_roots, rat, Rational, sort_exact, Surd
from .nslattice import NSClass, PlaneCoords
from .slope import Decision, SurfaceSlopeData, destabilizes, mu_c, mu_variety

T0_MAX_HALVINGS = 64
T_SUP_MAX_DOUBLINGS = 64


@dataclass(frozen=True)
class CurveFamily:
    g: int
    d: int
    s_C: Rational

    @property
    def main_eligible(self) -> bool:
        """Strict hypothesis ``2 <= d-1 < sqrt(g)`` of the instability theorem."""
        return self.d - 1 >= 2 and (self.d - 1) ** 2 < self.g

    @property
    def Q(self) -> int:
        """``2(g-(d-1)^2) * (mu_1 - mu)`` at ``t = s_C``; negative for eligible families."""
        e = self.d - 1
        return 3 * self.g - (2 * self.g - 2) * e - 3 * e * e


class AmpleVerdict(str, enum.Enum):
    AMPLE = "Ample"
    NOT_AMPLE = "NotAmple"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class SeshadriInterval:
    lo: Rational
    hi: Union[Rational, Surd]
    binding: str  # which necessary condition gives ``hi``

    @property
    def hi_surd(self) -> Surd:
        return self.hi if isinstance(self.hi, Surd) else Surd(self.hi)


def new_family(g: int, d: int) -> CurveFamily:
    g = ns.check_genus(g)
    if isinstance(d, bool) or not isinstance(d, int) or d < 2:
        raise KouvidakisHypothesisFailed(f"degree must be an integer >= 2, got {d!r}")
    if (d - 1) ** 2 > g:
        raise KouvidakisHypothesisFailed(
            f"(d-1)^2 = {(d - 1) ** 2} > g = {g}: s_C is not determined (only s_C >= sqrt(g))"
        )
    return CurveFamily(g, d, Rational(g, d - 1))


def eligible_degrees(g: int) -> list[int]:
    """All d with 2 <= d-1 < sqrt(g)."""
    out = []
    d = 3
    while (d - 1) ** 2 < g:
        out.append(d)
        d += 1
    return out


def residual_class(fam: CurveFamily) -> NSClass:
    return ns.plane_class(fam.g, fam.d - 1, -1)


def diagonal_class(fam: CurveFamily) -> NSClass:
    return ns.diagonal(fam.g)


def polarization(fam: CurveFamily, t) -> NSClass:
    return ns.plane_class(fam.g, rat(t), -1)


def surface_data(fam: CurveFamily, t, curve: Optional[NSClass] = None) -> SurfaceSlopeData:
    """Intersection numbers of ``(L_t, curve)``; the curve defaults to ``Z``."""
    g = fam.g
    L = PlaneCoords(rat(t), -1)
    K = PlaneCoords(2 * g - 2, 0)
    E = PlaneCoords(fam.d - 1, -1) if curve is None else ns.to_plane(curve)
    return SurfaceSlopeData(L.pair(L, g), K.pair(L, g), L.pair(E, g), K.pair(E, g), E.pair(E, g))


def is_ample(fam: CurveFamily, x: NSClass) -> AmpleVerdict:
    """Ampleness of a class in the symmetric plane.

    Below the f-axis the ample cone is cut out by ``a/(-b) > s_C``; on the
    axis every positive multiple of f is ample.  Above it only necessary
    conditions are available, so the answer is NotAmple or Unknown.
    """
    if x.g != fam.g:
        raise ns.LatticeMismatch(f"class of genus {x.g} tested on family of genus {fam.g}")
    p = ns.to_plane(x)
    a, b = p.a, p.b
    if b < 0:
        return AmpleVerdict.AMPLE if a > 0 and a / -b > fam.s_C else AmpleVerdict.NOT_AMPLE
    if b == 0:
        return AmpleVerdict.AMPLE if a > 0 else AmpleVerdict.NOT_AMPLE
    f = ns.fibre_sum(fam.g)
    if (
        x.dot(residual_class(fam)) < 0
        or x.dot(diagonal_class(fam)) < 0
        or x.dot(f) <= 0
        or x.dot(x) <= 0
    ):
        return AmpleVerdict.NOT_AMPLE
    return AmpleVerdict.UNKNOWN


def require_ample_t(fam: CurveFamily, t) -> Rational:
    t = rat(t)
    if t <= fam.s_C:
        raise NotAmplePolarization(f"t = {t} <= s_C = {fam.s_C}: L_t is not ample")
    return t


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def _linear_threshold(const: Rational, slope: Rational) -> Optional[Rational]:
    """Where ``const + slope*c`` stops being positive (``None`` if never, for c > 0)."""
    if slope >= 0:
        return None
    return const / -slope


def seshadri_interval(fam: CurveFamily, t) -> SeshadriInterval:
    """Certified bounds ``lo <= eps(Z, L_t) <= hi``.

    ``L_t - cZ = (t - c(d-1)) f - (1-c) delta'``.  For ``c <= 1`` the class
    sits in the decidable half-plane, so ``lo`` is the supremum of the
    certified-ample ``c`` there.  ``hi`` is the first ``c`` at which one of the
    nef conditions against Z, the diagonal, f, or itself fails.
    """
    t = require_ample_t(fam, t)
    e, s = fam.d - 1, fam.s_C
    # c < 1: need t - c*e > 0 and t - c*e > s*(1 - c)
    lo = Rational(1)
    for th in (_linear_threshold(t, Rational(-e)), _linear_threshold(t - s, s - e)):
        if th is not None and th < lo:
            lo = th

    g = fam.g
    L, Z = PlaneCoords(t, -1), PlaneCoords(e, -1)
    candidates: list[tuple[object, str]] = []
    for name, E in (("Z", Z), ("Delta", PlaneCoords(1, 1)), ("f", PlaneCoords(1, 0))):
        th = _linear_threshold(L.pair(E, g), -Z.pair(E, g))
        if th is not None:
            candidates.append((th, name))
    # (L - cZ)^2 = L^2 - 2c L.Z + c^2 Z^2: first root past lo where it turns negative
    q0, q1, q2 = L.pair(L, g), -2 * L.pair(Z, g), Z.pair(Z, g)
    for root in quadratic_roots(q2, q1, q0):
        if compare(root, lo) < 0:
            continue
        # negative just past the root iff the derivative there is negative
        # (or zero at a double root of a concave quadratic)
        ds = compare(root * (2 * q2) + q1, 0) if q2 else _sign(q1)
        if ds < 0 or (ds == 0 and q2 < 0):
            candidates.append((root.canonical() if isinstance(root, Surd) else root, "self"))
            break
    if not candidates:
        raise SearchExhausted("no necessary condition bounds the Seshadri constant")
    hi, binding = candidates[0]
    for value, name in candidates[1:]:
        if compare(value, hi) < 0:
            hi, binding = value, name
    return SeshadriInterval(lo, hi, binding)


def limit_slopes(fam: CurveFamily) -> tuple[Rational, Rational]:
    """``(mu(X, L_sC), mu_1(O_Z, L_sC))`` from the slope engine at the threshold."""
    if (fam.d - 1) ** 2 >= fam.g:
        raise HypothesisNotSatisfied("limit slopes need (d-1)^2 < g")
    data = surface_data(fam, fam.s_C)
    return mu_variety(data), mu_c(data, 1)


def limit_slopes_closed_form(fam: CurveFamily) -> tuple[Rational, Rational]:
    g, e = fam.g, fam.d - 1
    gap = g - e * e
    return (
        Rational(-(2 * g - 2) * e, gap),
        Rational(3 * (g - (2 * g - 2) * e - e * e), 2 * gap),
    )


def find_t0(fam: CurveFamily) -> tuple[Rational, Decision, SeshadriInterval]:
    """Halve the offset above ``s_C`` (from 1/2) until ``Z`` destabilises ``L_t``."""
    offset = Rational(1, 2)
    for _ in range(T0_MAX_HALVINGS + 1):
        t = fam.s_C + offset
        interval = seshadri_interval(fam, t)
        decision = destabilizes(surface_data(fam, t), interval.lo)
        if decision.unstable:
            return t, decision, interval
        offset /= 2
    raise SearchExhausted(f"no destabilising t found within {T0_MAX_HALVINGS} halvings")


def _c1_unstable(fam: CurveFamily, t: Rational) -> bool:
    data = surface_data(fam, t)
    try:
        return mu_c(data, 1) < mu_variety(data)
    except ArithmeticError:
        return False


def destabilizing_t_sup(fam: CurveFamily, resolution) -> tuple[Rational, Rational]:
    """Bracket where the c = 1 instability of ``L_t`` switches off.

    Returns ``(t_lo, t_hi)`` with ``t_hi - t_lo <= resolution``, the condition
    verified true at ``t_lo`` and false at ``t_hi``.
    """
    if not fam.main_eligible:
        raise HypothesisNotSatisfied(f"(g, d) = ({fam.g}, {fam.d}) violates 2 <= d-1 < sqrt(g)")
    resolution = rat(resolution)
    if resolution <= 0:
        raise ValueError("resolution must be positive")
    t_lo, _, _ = find_t0(fam)
    offset = Rational(1, 2)
    if not _c1_unstable(fam, t_lo):
        # t0 may be certified by some c < 1; step down to a c = 1 witness
        off = t_lo - fam.s_C
        for _ in range(T0_MAX_HALVINGS):
            off /= 2
            if _c1_unstable(fam, fam.s_C + off):
                t_lo = fam.s_C + off
                break
        else:
            raise SearchExhausted("no t with a c = 1 witness near s_C")
    t_hi = t_lo + offset
    for _ in range(T_SUP_MAX_DOUBLINGS):
        if not _c1_unstable(fam, t_hi):
            break
        t_lo, offset = t_hi, offset * 2
        t_hi = t_lo + offset
    else:
        raise UnboundedAbove(f"c = 1 instability persists up to t = {t_hi}")
    while t_hi - t_lo > resolution:
        mid = (t_lo + t_hi) / 2
        if _c1_unstable(fam, mid):
            t_lo = mid
        else:
            t_hi = mid
    return t_lo, t_hi
