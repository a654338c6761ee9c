"""Exact scalars: rationals (``gmpy2.mpq``) and quadratic surds.

Rationals travel through certificates as ``"num/den"`` strings in lowest
terms with the sign on the numerator.  A :class:`Surd` is ``p + q*sqrt(r)``
with rational ``p, q`` and a square-free integer radicand ``r``; ordering
between surds is decided by sign analysis and squaring only.
"""

from __future__ import annotations

import enum
import math
import operator
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Optional, Union

import gmpy2
from gmpy2 import mpq

from .errors import DivisionByZero, RationalFormatError

Rational = mpq
Number = Union[mpq, "Surd"]

_RATIONAL_RE = re.compile(r"^(-?\d+)/(\d+)$")
_LOOSE_RE = re.compile(r"^\s*(-?\d+)(?:\s*/\s*(\d+))?\s*$")


class Ordering(enum.IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


def _sign(x) -> int:
    return (x > 0) - (x < 0)


# ---------------------------------------------------------------------------
# rationals

_MPQ = type(mpq(0))
_MPZ = type(gmpy2.mpz(0))


def rat(x) -> mpq:
    """Coerce an int, Fraction, mpq or rational string to an exact rational."""
    if type(x) is _MPQ:
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, (int, _MPZ)):
        return mpq(x)
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    if isinstance(x, str):
        return parse_rational(x, strict=False)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def format_rational(x) -> str:
    x = rat(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text: str, strict: bool = True) -> mpq:
    """Parse a rational string.

    With ``strict`` only the canonical ``"num/den"`` form is accepted (lowest
    terms, positive denominator); otherwise plain integers and unreduced
    fractions are allowed too, as on the command line.
    """
    if not isinstance(text, str):
        raise RationalFormatError(f"expected a rational string, got {text!r}")
    if strict:
        m = _RATIONAL_RE.match(text)
        if not m:
            raise RationalFormatError(f"not a canonical num/den string: {text!r}")
        num, den = int(m.group(1)), int(m.group(2))
        if den == 0 or math.gcd(num, den) != 1:
            raise RationalFormatError(f"not in lowest terms: {text!r}")
        return mpq(num, den)
    m = _LOOSE_RE.match(text)
    if not m:
        raise RationalFormatError(f"not a rational number: {text!r}")
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise RationalFormatError(f"zero denominator: {text!r}")
    return mpq(int(m.group(1)), den)


_OPS: dict[str, Callable[[mpq, mpq], mpq]] = {
    "add": operator.add,
    "sub": operator.sub,
    "mul": operator.mul,
    "div": operator.truediv,
}


def rat_arith(a, b, op: str) -> mpq:
    a, b = rat(a), rat(b)
    if op not in _OPS:
        raise ValueError(f"unknown operation {op!r}")
    if op == "div" and b == 0:
        raise DivisionByZero(f"{format_rational(a)} / 0")
    return _OPS[op](a, b)


# ---------------------------------------------------------------------------
# square-free decomposition

_SMALL_PRIMES = [p for p in range(2, 1000) if all(p % k for k in range(2, math.isqrt(p) + 1))]


@lru_cache(maxsize=4096)
def square_free_split(n: int) -> tuple[int, int]:
    """Return ``(s, m)`` with ``n == s*s*m`` and ``m`` square-free.

    Primes below 1000 are divided out first.  A cofactor below 1000**3 with
    no smaller prime factor has at most two prime factors, so it is either a
    perfect square or square-free; anything larger is handed to sympy.
    """
    n = int(n)
    if n < 0:
        raise ValueError("negative radicand")
    if n == 0:
        return 0, 0
    s, m = 1, 1
    for p in _SMALL_PRIMES:
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            s *= p ** (e // 2)
            if e % 2:
                m *= p
    if n == 1:
        return s, m
    if gmpy2.is_square(n):
        return s * math.isqrt(n), m
    if n < 1000**3:
        return s, m * n
    from sympy import factorint

    for p, e in factorint(n).items():
        s *= p ** (e // 2)
        if e % 2:
            m *= p
    return s, m


# ---------------------------------------------------------------------------
# surds

_ZERO = mpq(0)


@dataclass(frozen=True)
class Surd:
    """The real number ``p + q*sqrt(r)``.

    Construction canonicalises: square factors of ``r`` move into ``q``,
    ``r`` becomes a square-free integer, and a rational value is stored as
    ``(p, 0, 0)``.  :meth:`unreduced` skips the square-free step for values
    that only take part in comparisons.
    """

    p: mpq
    q: mpq = _ZERO
    r: mpq = _ZERO

    def __post_init__(self):
        p, q, r = rat(self.p), rat(self.q), rat(self.r)
        if r < 0:
            raise ValueError("surd radicand must be non-negative")
        # sqrt(a/b) = sqrt(a*b)/b
        s, m = square_free_split(r.numerator * r.denominator)
        q = q * mpq(s, r.denominator) if r else _ZERO
        if m == 1:
            p, q, m = p + q, _ZERO, 0
        if q == 0:
            m = 0
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "r", mpq(m))

    @classmethod
    def unreduced(cls, p, q, r) -> "Surd":
        """Value ``p + q*sqrt(r)`` with ``r`` made integral but not square-free.

        Rationality is still detected exactly, so :attr:`is_rational` and all
        comparisons stay correct; :meth:`canonical` finishes the job.
        """
        p, q, r = rat(p), rat(q), rat(r)
        if r < 0:
            raise ValueError("surd radicand must be non-negative")
        n = r.numerator * r.denominator
        q = q / r.denominator
        if q == 0 or n == 0:
            q, n = _ZERO, 0
        elif gmpy2.is_square(n):
            p, q, n = p + q * gmpy2.isqrt(n), _ZERO, 0
        obj = object.__new__(cls)
        object.__setattr__(obj, "p", p)
        object.__setattr__(obj, "q", q)
        object.__setattr__(obj, "r", mpq(n))
        return obj

    def canonical(self) -> "Surd":
        return Surd(self.p, self.q, self.r)

    @classmethod
    def sqrt(cls, x) -> "Surd":
        return cls(_ZERO, mpq(1), rat(x))

    @property
    def is_rational(self) -> bool:
        return self.q == 0

    def as_rational(self) -> mpq:
        if not self.is_rational:
            raise ValueError(f"{self} is irrational")
        return self.p

    def sign(self) -> int:
        return _surd_sign(self.p, self.q, self.r)

    def __neg__(self) -> "Surd":
        return Surd.unreduced(-self.p, -self.q, self.r)

    def __add__(self, other) -> "Surd":
        if isinstance(other, Surd):
            if other.is_rational:
                return Surd.unreduced(self.p + other.p, self.q, self.r)
            if self.is_rational:
                return Surd.unreduced(self.p + other.p, other.q, other.r)
            a, b = self.canonical(), other.canonical()
            if a.r != b.r:
                raise ValueError("sum of surds with unlike radicands")
            return Surd(a.p + b.p, a.q + b.q, a.r)
        return Surd.unreduced(self.p + rat(other), self.q, self.r)

    __radd__ = __add__

    def __sub__(self, other) -> "Surd":
        return self + (-other if isinstance(other, Surd) else -rat(other))

    def __rsub__(self, other) -> "Surd":
        return (-self) + other

    def __mul__(self, other) -> "Surd":
        k = rat(other)
        return Surd.unreduced(self.p * k, self.q * k, self.r)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Surd":
        k = rat(other)
        if k == 0:
            raise DivisionByZero("surd divided by zero")
        return Surd.unreduced(self.p / k, self.q / k, self.r)

    def _cmp(self, other) -> int:
        return int(surd_cmp(self, other))

    def __eq__(self, other):
        if isinstance(other, (Surd, _MPQ, _MPZ, Fraction, int)):
            return self._cmp(other) == 0
        return NotImplemented

    def __hash__(self):
        if self.is_rational:
            return hash(self.p)
        c = self.canonical()
        return hash((c.p, c.q, c.r))

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __float__(self) -> float:
        return float(self.p) + float(self.q) * math.sqrt(self.r)

    def __str__(self) -> str:
        c = self.canonical()
        if c.is_rational:
            return format_rational(c.p)
        return f"{format_rational(c.p)} + {format_rational(c.q)}*sqrt({c.r.numerator})"

    def to_dict(self) -> dict:
        c = self.canonical()
        return {"p": format_rational(c.p), "q": format_rational(c.q), "r": format_rational(c.r)}

    @classmethod
    def from_dict(cls, d: dict) -> "Surd":
        return cls(parse_rational(d["p"]), parse_rational(d["q"]), parse_rational(d["r"]))


def _surd_sign(p, q, r) -> int:
    sp, sq = _sign(p), _sign(q)
    if sq == 0 or r == 0:
        return sp
    if sp == 0 or sp == sq:
        return sq
    # opposite signs: the larger magnitude wins
    return _sign(p * p - q * q * r) * sp


def as_surd(x) -> Surd:
    return x if isinstance(x, Surd) else Surd.unreduced(rat(x), 0, 0)


def surd_cmp(s, x) -> Ordering:
    """Exact three-way comparison of two surds (or a surd and a rational)."""
    a, b = as_surd(s), as_surd(x)
    if b.is_rational:
        return Ordering(_surd_sign(a.p - b.p, a.q, a.r))
    if a.is_rational:
        return Ordering(-_surd_sign(b.p - a.p, b.q, b.r))
    if a.r == b.r:
        return Ordering(_surd_sign(a.p - b.p, a.q - b.q, a.r))
    # a - b = X - Y with X = w + q1*sqrt(r1), Y = q2*sqrt(r2)
    w = a.p - b.p
    sx = _surd_sign(w, a.q, a.r)
    sy = _sign(b.q)
    if sx != sy:
        return Ordering(_sign(sx - sy))
    if sx == 0:
        return Ordering.EQUAL
    # same sign: compare squares, X^2 - Y^2 lives in Q(sqrt(r1))
    t = _surd_sign(w * w + a.q * a.q * a.r - b.q * b.q * b.r, 2 * w * a.q, a.r)
    return Ordering(t * sx)


def compare(x, y) -> int:
    """Three-way compare returning -1/0/1 for any mix of rationals and Surds."""
    xs, ys = isinstance(x, Surd), isinstance(y, Surd)
    if not xs and not ys:
        return _sign(x - y)
    if not xs:
        return -_surd_sign(y.p - x, y.q, y.r)
    if not ys:
        return _surd_sign(x.p - y, x.q, x.r)
    return int(surd_cmp(x, y))


def quadratic_roots(a, b, c) -> list:
    """Real roots of ``a x^2 + b x + c`` in increasing order, without repeats.

    Rational roots come back as rationals, irrational ones as unreduced
    surds.  Degenerates to the linear and constant cases (a constant,
    including zero, has no isolated roots).
    """
    a, b, c = rat(a), rat(b), rat(c)
    if a == 0:
        if b == 0:
            return []
        return [-c / b]
    disc = b * b - 4 * a * c
    if disc < 0:
        return []
    mid = -b / (2 * a)
    if disc == 0:
        return [mid]
    half = abs(1 / (2 * a))
    lo, hi = Surd.unreduced(mid, -half, disc), Surd.unreduced(mid, half, disc)
    if lo.is_rational:
        return [lo.p, hi.p]
    return [lo, hi]


class _SortKey:
    __slots__ = ("v",)

    def __init__(self, v):
        self.v = v

    def __lt__(self, other):
        return compare(self.v, other.v) < 0


def sort_exact(values) -> list:
    return sorted(values, key=_SortKey)


# ---------------------------------------------------------------------------
# Stern-Brocot search

def simplest_in_interval(
    lo: Optional[Number],
    hi: Optional[Number],
    lo_closed: bool = False,
    hi_closed: bool = False,
) -> Optional[mpq]:
    """Smallest-denominator rational in an interval (ties: smaller numerator).

    ``None`` endpoints are unbounded.  Endpoints may be surds.  Returns
    ``None`` when the interval is empty.  Runs of identical Stern-Brocot moves
    are taken in one galloping step, so thin intervals stay cheap.
    """
    if lo is not None and hi is not None:
        c = compare(lo, hi)
        if c > 0 or (c == 0 and not (lo_closed and hi_closed)):
            return None

    def below(x: mpq) -> bool:
        if lo is None:
            return False
        c = compare(x, lo)
        return c < 0 or (c == 0 and not lo_closed)

    def above(x: mpq) -> bool:
        if hi is None:
            return False
        c = compare(x, hi)
        return c > 0 or (c == 0 and not hi_closed)

    if not below(_ZERO) and not above(_ZERO):
        return _ZERO
    if above(_ZERO):
        # interval lies left of zero: mirror it
        res = simplest_in_interval(
            None if hi is None else -hi,
            None if lo is None else -lo,
            hi_closed,
            lo_closed,
        )
        return None if res is None else -res

    if lo is not None and not isinstance(lo, Surd):
        # an interval holding an integer: the least such integer is simplest
        q = rat(lo)
        n = mpq(q.numerator // q.denominator)
        if not (n == q and lo_closed):
            n += 1
        if not above(n):
            return n

    ln, ld, rn, rd = 0, 1, 1, 0
    while True:
        mn, md = ln + rn, ld + rd
        m = mpq(mn, md)
        if below(m):
            k = _gallop(lambda k: below(mpq(ln + k * rn, ld + k * rd)))
            ln, ld = ln + k * rn, ld + k * rd
        elif above(m):
            k = _gallop(lambda k: above(mpq(k * ln + rn, k * ld + rd)))
            rn, rd = k * ln + rn, k * ld + rd
        else:
            return m


def _gallop(pred: Callable[[int], bool]) -> int:
    """Largest k >= 1 with pred(k), given pred(1) and pred monotone decreasing."""
    hi = 2
    while pred(hi):
        hi *= 2
    lo = hi // 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if pred(mid):
            lo = mid
        else:
            hi = mid
    return lo
