"""Slopes of a polarised surface and of a curve on it, and the exact
destabilisation test.

Everything is driven by five intersection numbers (L^2, K.L, L.Z, K.Z, Z^2).
For ``0 < c`` the curve slope is the rational function ``N(c)/D(c)`` with

    N(c) = 3*(2*L.Z - c*(K.Z + Z^2))
    D(c) = 2*c*(3*L.Z - c*Z^2)

and ``Z`` destabilises at ``c`` when ``N(c)/D(c) < mu`` where ``mu = -K.L/L^2``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

from .errors import DegenerateSlope, InvalidInterval, InvalidSurfaceData
from .exactnum import compare, quadratic_roots, rat, Rational, simplest_in_interval, sort_exact


@dataclass(frozen=True)
class SurfaceSlopeData:
    L2: Rational
    KL: Rational
    LZ: Rational
    KZ: Rational
    Z2: Rational

    def __post_init__(self):
        for name in ("L2", "KL", "LZ", "KZ", "Z2"):
            object.__setattr__(self, name, rat(getattr(self, name)))
        if self.L2 <= 0:
            raise InvalidSurfaceData(f"L^2 must be positive, got {self.L2}")

    @property
    def z_is_trivial(self) -> bool:
        return self.LZ == 0 and self.KZ == 0 and self.Z2 == 0

    def scaled(self, k) -> "SurfaceSlopeData":
        """Data for ``k*L`` with the same ``Z``."""
        k = rat(k)
        return SurfaceSlopeData(k * k * self.L2, k * self.KL, k * self.LZ, self.KZ, self.Z2)


@dataclass(frozen=True)
class HilbertCoeffs:
    """Leading coefficients of ``chi(kL) = a0 k^n + a1 k^(n-1) + ...``."""

    dim: int
    a0: Rational
    a1: Rational

    def __post_init__(self):
        object.__setattr__(self, "a0", rat(self.a0))
        object.__setattr__(self, "a1", rat(self.a1))
        if self.dim < 1:
            raise ValueError("dimension must be >= 1")
        if self.a0 <= 0:
            raise ValueError("leading Hilbert coefficient must be positive")

    @property
    def mu(self) -> Rational:
        return self.a1 / self.a0

    @classmethod
    def of_surface(cls, d: SurfaceSlopeData) -> "HilbertCoeffs":
        return cls(2, d.L2 / 2, -d.KL / 2)


@dataclass(frozen=True)
class QuadPoly:
    """``c0 + c1*x + c2*x^2``."""

    c0: Rational = Rational(0)
    c1: Rational = Rational(0)
    c2: Rational = Rational(0)

    def __post_init__(self):
        for name in ("c0", "c1", "c2"):
            object.__setattr__(self, name, rat(getattr(self, name)))

    def __call__(self, x) -> Rational:
        x = rat(x)
        return self.c0 + x * (self.c1 + x * self.c2)

    def __add__(self, other: "QuadPoly") -> "QuadPoly":
        return QuadPoly(self.c0 + other.c0, self.c1 + other.c1, self.c2 + other.c2)

    def scale(self, k) -> "QuadPoly":
        k = rat(k)
        return QuadPoly(k * self.c0, k * self.c1, k * self.c2)

    def derivative(self) -> "QuadPoly":
        return QuadPoly(self.c1, 2 * self.c2)

    def integral_from_zero(self, c) -> Rational:
        c = rat(c)
        return c * (self.c0 + c * (self.c1 / 2 + c * self.c2 / 3))

    def is_zero(self) -> bool:
        return self.c0 == 0 and self.c1 == 0 and self.c2 == 0


class Verdict(str, enum.Enum):
    UNSTABLE = "Unstable"
    NO_WITNESS = "NoWitnessFound"


@dataclass(frozen=True)
class Decision:
    verdict: Verdict
    witness_c: Optional[Rational] = None
    mu_at_witness: Optional[Rational] = None

    @property
    def unstable(self) -> bool:
        return self.verdict is Verdict.UNSTABLE


def mu_variety(d: SurfaceSlopeData) -> Rational:
    return -d.KL / d.L2


def _numerator(d: SurfaceSlopeData) -> QuadPoly:
    return QuadPoly(6 * d.LZ, -3 * (d.KZ + d.Z2))


def _denominator(d: SurfaceSlopeData) -> QuadPoly:
    return QuadPoly(0, 6 * d.LZ, -2 * d.Z2)


def mu_c(d: SurfaceSlopeData, c) -> Rational:
    c = rat(c)
    if c <= 0:
        raise InvalidInterval(f"c must be positive, got {c}")
    den = _denominator(d)(c)
    if den == 0:
        raise DegenerateSlope(f"mu_c has a pole at c = {c}")
    return _numerator(d)(c) / den


def atilde_polys(d: SurfaceSlopeData) -> tuple[QuadPoly, QuadPoly]:
    """The drops ``a_i - a_i(x)`` of the Hilbert coefficients of ``L - xZ``."""
    return QuadPoly(0, d.LZ, -d.Z2 / 2), QuadPoly(0, -d.KZ / 2)


def mu_c_integral(d: SurfaceSlopeData, c) -> Rational:
    """The curve slope evaluated from its integral definition."""
    c = rat(c)
    if c <= 0:
        raise InvalidInterval(f"c must be positive, got {c}")
    a0, a1 = atilde_polys(d)
    top = (a1 + a0.derivative().scale(Rational(1, 2))).integral_from_zero(c)
    bottom = a0.integral_from_zero(c)
    if bottom == 0:
        raise DegenerateSlope(f"integral of a~0 vanishes at c = {c}")
    return top / bottom


def instability_polynomial(d: SurfaceSlopeData) -> QuadPoly:
    """``P(c) = N(c) - mu*D(c)``; ``Z`` destabilises where ``P`` and ``D`` differ in sign."""
    return _numerator(d) + _denominator(d).scale(-mu_variety(d))


def destabilizes(d: SurfaceSlopeData, eps_lo) -> Decision:
    """Search ``(0, eps_lo]`` for a ``c`` with ``mu_c < mu``.

    The roots of ``P`` and ``D`` cut the interval into open cells on which
    ``sign(P*D)`` is constant; each cell contributes its simplest rational and
    the simplest one over all negative cells is the witness.  ``eps_lo`` must
    be a certified lower bound for the Seshadri constant.
    """
    eps = rat(eps_lo)
    if eps <= 0:
        raise InvalidInterval(f"eps_lo must be positive, got {eps}")
    P, D = instability_polynomial(d), _denominator(d)
    if D.is_zero() or P.is_zero():
        return Decision(Verdict.NO_WITNESS)

    cuts = []
    for poly in (P, D):
        for root in quadratic_roots(poly.c2, poly.c1, poly.c0):
            if compare(root, 0) > 0 and compare(root, eps) < 0:
                cuts.append(root)
    bounds = [Rational(0)] + sort_exact(cuts) + [eps]
    # eps itself is a candidate only if it is neither a pole nor a tie
    eps_usable = P(eps) != 0 and D(eps) != 0

    best: Optional[Rational] = None
    for i in range(len(bounds) - 1):
        lo, hi = bounds[i], bounds[i + 1]
        last = eps_usable and i == len(bounds) - 2
        if compare(lo, hi) == 0:
            continue
        q = simplest_in_interval(lo, hi, False, last)
        if q is None:
            continue
        if _sign(P(q)) * _sign(D(q)) < 0 and (best is None or _simpler(q, best)):
            best = q
    if best is None:
        return Decision(Verdict.NO_WITNESS)
    return Decision(Verdict.UNSTABLE, best, mu_c(d, best))


def check_decision(d: SurfaceSlopeData, eps_lo, decision: Decision) -> bool:
    """Re-check a decision's witness claim from scratch."""
    if not decision.unstable:
        return decision.witness_c is None and decision.mu_at_witness is None
    c = decision.witness_c
    if c is None or not 0 < c <= rat(eps_lo):
        return False
    value = mu_c(d, c)
    return value == decision.mu_at_witness and value < mu_variety(d)


def _simpler(a: Rational, b: Rational) -> bool:
    return (a.denominator, a.numerator) < (b.denominator, b.numerator)


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def product_coeffs(p: HilbertCoeffs, q: HilbertCoeffs) -> HilbertCoeffs:
    """Leading Hilbert coefficients of ``(X1 x X2, L1 + L2)`` by convolution."""
    return HilbertCoeffs(p.dim + q.dim, p.a0 * q.a0, p.a0 * q.a1 + p.a1 * q.a0)


def product_mu(p: HilbertCoeffs, q: HilbertCoeffs) -> Rational:
    return product_coeffs(p, q).mu
