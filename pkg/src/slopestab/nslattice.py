"""The span of f1, f2 and the diagonal inside N^1(C x C) with its intersection form.

Classes are stored in the basis (f1, f2, delta).  The symmetric plane
``c1 == c2`` is also addressed through coordinates ``a*f + b*delta'`` where
``f = f1 + f2`` and ``delta' = delta - f``; there the pairing is
``2*a*a' - 2*g*b*b'``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidGenus, LatticeMismatch, NotInSymmetricPlane
from .exactnum import _MPQ, format_rational, parse_rational, rat, Rational


def check_genus(g: int) -> int:
    if isinstance(g, bool) or not isinstance(g, int) or g < 2:
        raise InvalidGenus(f"genus must be an integer >= 2, got {g!r}")
    return g


def gram_matrix(g: int) -> tuple[tuple[int, ...], ...]:
    g = check_genus(g)
    return ((0, 1, 1), (1, 0, 1), (1, 1, 2 - 2 * g))


@dataclass(frozen=True)
class NSClass:
    """``c1*f1 + c2*f2 + cdelta*delta`` on C x C for a curve of genus ``g``."""

    g: int
    c1: Rational
    c2: Rational
    cdelta: Rational

    def __post_init__(self):
        check_genus(self.g)
        for name in ("c1", "c2", "cdelta"):
            v = getattr(self, name)
            if type(v) is not _MPQ:
                object.__setattr__(self, name, rat(v))

    @property
    def coeffs(self) -> tuple[Rational, Rational, Rational]:
        return (self.c1, self.c2, self.cdelta)

    @property
    def is_symmetric(self) -> bool:
        return self.c1 == self.c2

    def _check(self, other: "NSClass") -> None:
        if not isinstance(other, NSClass):
            raise TypeError(f"expected NSClass, got {type(other).__name__}")
        if other.g != self.g:
            raise LatticeMismatch(f"genus {self.g} class combined with genus {other.g} class")

    def __add__(self, other: "NSClass") -> "NSClass":
        self._check(other)
        return NSClass(self.g, self.c1 + other.c1, self.c2 + other.c2, self.cdelta + other.cdelta)

    def __sub__(self, other: "NSClass") -> "NSClass":
        return self + (-other)

    def __neg__(self) -> "NSClass":
        return NSClass(self.g, -self.c1, -self.c2, -self.cdelta)

    def __mul__(self, k) -> "NSClass":
        k = rat(k)
        return NSClass(self.g, k * self.c1, k * self.c2, k * self.cdelta)

    __rmul__ = __mul__

    def dot(self, other: "NSClass") -> Rational:
        return intersect(self, other)

    def to_dict(self) -> dict:
        return {
            "g": self.g,
            "f1": format_rational(self.c1),
            "f2": format_rational(self.c2),
            "delta": format_rational(self.cdelta),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "NSClass":
        return cls(int(d["g"]), parse_rational(d["f1"]), parse_rational(d["f2"]), parse_rational(d["delta"]))

    def __str__(self) -> str:
        if self.is_symmetric:
            p = to_plane(self)
            return f"{p.a}f + {p.b}delta'"
        return f"{self.c1}f1 + {self.c2}f2 + {self.cdelta}delta"


@dataclass(frozen=True)
class PlaneCoords:
    """``a*f + b*delta'``."""

    a: Rational
    b: Rational

    def __post_init__(self):
        object.__setattr__(self, "a", rat(self.a))
        object.__setattr__(self, "b", rat(self.b))

    def pair(self, other: "PlaneCoords", g: int) -> Rational:
        return 2 * self.a * other.a - 2 * g * self.b * other.b


def intersect(x: NSClass, y: NSClass) -> Rational:
    x._check(y)
    # the Gram product written out: f1.f2 = f_i.delta = 1, delta^2 = 2 - 2g
    a1, a2, ad = x.c1, x.c2, x.cdelta
    b1, b2, bd = y.c1, y.c2, y.cdelta
    return a1 * (b2 + bd) + a2 * (b1 + bd) + ad * (b1 + b2 + (2 - 2 * x.g) * bd)


def to_plane(x: NSClass) -> PlaneCoords:
    if not x.is_symmetric:
        raise NotInSymmetricPlane(f"f1 and f2 coefficients differ: {x.c1} != {x.c2}")
    # c*(f1+f2) + e*delta = (c+e)*f + e*delta'
    return PlaneCoords(x.c1 + x.cdelta, x.cdelta)


def from_plane(p: PlaneCoords, g: int) -> NSClass:
    return NSClass(g, p.a - p.b, p.a - p.b, p.b)


def plane_class(g: int, a, b) -> NSClass:
    return from_plane(PlaneCoords(a, b), g)


def f1(g: int) -> NSClass:
    return NSClass(g, 1, 0, 0)


def f2(g: int) -> NSClass:
    return NSClass(g, 0, 1, 0)


def fibre_sum(g: int) -> NSClass:
    """f = f1 + f2."""
    return NSClass(g, 1, 1, 0)


def diagonal(g: int) -> NSClass:
    return NSClass(g, 0, 0, 1)


def delta_prime(g: int) -> NSClass:
    return diagonal(g) - fibre_sum(g)


def canonical_class(g: int) -> NSClass:
    return (2 * check_genus(g) - 2) * fibre_sum(g)
