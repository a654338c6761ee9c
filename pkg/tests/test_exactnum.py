import decimal
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from slopestab.errors import DivisionByZero, RationalFormatError
from slopestab.exactnum import (
    Ordering,
    Rational,
    Surd,
    compare,
    format_rational,
    parse_rational,
    quadratic_roots,
    rat,
    rat_arith,
    simplest_in_interval,
    sort_exact,
    square_free_split,
    surd_cmp,
)

CTX = decimal.Context(prec=220)


def dec(x) -> decimal.Decimal:
    """200-digit decimal oracle for rationals and surds."""
    if isinstance(x, Surd):
        p, q, r = Fraction(int(x.p.numerator), int(x.p.denominator)), x.q, x.r
        root = CTX.sqrt(CTX.divide(int(r.numerator), int(r.denominator))) if r else decimal.Decimal(0)
        qd = CTX.divide(int(q.numerator), int(q.denominator))
        return CTX.add(CTX.divide(p.numerator, p.denominator), CTX.multiply(qd, root))
    x = Fraction(int(x.numerator), int(x.denominator))
    return CTX.divide(x.numerator, x.denominator)


def test_format_and_parse_basics():
    assert format_rational(rat(-6)) == "-6/1"
    assert format_rational(Rational(10, 4)) == "5/2"
    assert parse_rational("-39/8") == Rational(-39, 8)
    assert parse_rational("7", strict=False) == 7
    assert parse_rational(" 3/6 ", strict=False) == Rational(1, 2)


@pytest.mark.parametrize("text", ["3", "6/4", "1/0", "1/-2", "a/b", "", "1.5", "+1/2"])
def test_strict_parse_rejects(text):
    with pytest.raises(RationalFormatError):
        parse_rational(text)


def test_rat_rejects_bool_and_float():
    with pytest.raises(TypeError):
        rat(True)
    with pytest.raises(TypeError):
        rat(0.5)


def test_division_by_zero():
    with pytest.raises(DivisionByZero):
        rat_arith(1, 0, "div")
    with pytest.raises(ZeroDivisionError):
        rat_arith(Rational(1, 3), 0, "div")


def test_rat_arith_matches_fraction(rng):
    for _ in range(500):
        a = Fraction(rng.randint(-10**6, 10**6), rng.randint(1, 10**6))
        b = Fraction(rng.randint(-10**6, 10**6), rng.randint(1, 10**6))
        for op, fn in (("add", a.__add__), ("sub", a.__sub__), ("mul", a.__mul__)):
            assert rat_arith(rat(a), rat(b), op) == rat(fn(b))
        if b:
            assert rat_arith(rat(a), rat(b), "div") == rat(a / b)


def test_round_trip_10k(rng):
    for _ in range(10_000):
        num = rng.randint(-10**30, 10**30)
        den = rng.randint(1, 10**30)
        x = Rational(num, den)
        text = format_rational(x)
        assert parse_rational(text) == x
        assert format_rational(parse_rational(text)) == text
        f = Fraction(num, den)
        assert text == f"{f.numerator}/{f.denominator}"


@given(st.fractions())
def test_round_trip_property(f):
    x = rat(f)
    assert parse_rational(format_rational(x)) == x


def test_square_free_split():
    assert square_free_split(12) == (2, 3)
    assert square_free_split(1) == (1, 1)
    assert square_free_split(49) == (7, 1)
    big = 1_000_003 ** 2 * 6
    assert square_free_split(big) == (1_000_003, 6)


@given(st.integers(1, 10**6))
def test_square_free_split_property(n):
    k, m = square_free_split(n)
    assert k * k * m == n
    assert all(m % (p * p) for p in range(2, math.isqrt(m) + 1))


def test_surd_canonical_form():
    s = Surd(Rational(5, 2), Rational(1, 2), 20)
    assert (s.p, s.q, s.r) == (Rational(5, 2), 1, 5)
    assert Surd(1, 2, 9) == Surd(7)
    assert Surd(1, 2, 9).is_rational
    assert Surd(0, 1, Rational(1, 2)) == Surd(0, Rational(1, 2), 2)
    assert str(Surd(Rational(5, 2), Rational(1, 2), 5)) == "5/2 + 1/2*sqrt(5)"
    assert Surd.from_dict(s.to_dict()) == s
    assert s.to_dict() == {"p": "5/2", "q": "1/1", "r": "5/1"}


def test_surd_negative_radicand():
    with pytest.raises(ValueError):
        Surd(0, 1, -2)


def test_surd_arithmetic():
    a = Surd(1, 2, 3)
    b = Surd(Rational(1, 2), -1, 12)  # 1/2 - 2 sqrt 3
    assert a + b == Surd(Rational(3, 2), 0, 0)
    assert a * 3 == Surd(3, 6, 3)
    assert a / 2 == Surd(Rational(1, 2), 1, 3)
    assert -a == Surd(-1, -2, 3)
    with pytest.raises(ValueError):
        a + Surd(0, 1, 2)


def test_surd_comparisons_fixed():
    t_star = Surd(Rational(5, 2), Rational(1, 2), 5)
    assert t_star > 3
    assert t_star < 4
    assert surd_cmp(t_star, 3) is Ordering.GREATER
    assert surd_cmp(Surd(0, 1, 2), Surd(0, 1, 3)) is Ordering.LESS
    assert surd_cmp(Surd(1, 1, 2), Surd(Rational(-1, 2), 1, 8)) is Ordering.GREATER
    assert compare(Surd(0, 1, 4), 2) == 0


def _random_surd(rng):
    p = Rational(rng.randint(-50, 50), rng.randint(1, 12))
    q = Rational(rng.randint(-12, 12), rng.randint(1, 12))
    r = rng.choice([0, 2, 3, 5, 6, 7, 10, 12, 18, rng.randint(1, 500)])
    return Surd(p, q, r)


def test_surd_cmp_against_200_digit_oracle(rng):
    checked = 0
    while checked < 1000:
        x, y = _random_surd(rng), _random_surd(rng)
        if rng.random() < 0.2:
            # near-ties: perturb by a tiny rational
            y = x + Rational(rng.choice([-1, 0, 1]), 10**40)
        dx, dy = dec(x), dec(y)
        gap = abs(CTX.subtract(dx, dy))
        expected = (dx > dy) - (dx < dy)
        if x == y:
            expected = 0
        elif gap < decimal.Decimal("1e-180"):
            continue  # the oracle cannot separate these
        assert int(surd_cmp(x, y)) == expected, (x, y)
        checked += 1


def test_cmp_antisymmetry_and_transitivity(rng):
    pool = [_random_surd(rng) for _ in range(60)] + [Surd(rat(k)) for k in range(-3, 4)]
    for a in pool:
        assert surd_cmp(a, a) is Ordering.EQUAL
        for b in pool:
            assert int(surd_cmp(a, b)) == -int(surd_cmp(b, a))
    ordered = sort_exact(pool)
    for i in range(len(ordered) - 1):
        assert compare(ordered[i], ordered[i + 1]) <= 0
    for a in pool[:25]:
        for b in pool[:25]:
            for c in pool[:25]:
                if compare(a, b) <= 0 and compare(b, c) <= 0:
                    assert compare(a, c) <= 0


def _poly_at(a, b, c, x):
    if isinstance(x, Surd):
        # a x^2 + b x + c evaluated symbolically: x^2 = p^2 + q^2 r + 2pq sqrt r
        p, q, r = x.p, x.q, x.r
        return Surd(a * (p * p + q * q * r) + b * p + c, 2 * a * p * q + b * q, r)
    return a * x * x + b * x + c


def test_quadratic_roots_are_roots(rng):
    for _ in range(500):
        a, b, c = (Rational(rng.randint(-20, 20), rng.randint(1, 5)) for _ in range(3))
        if a == b == 0:
            continue
        roots = quadratic_roots(a, b, c)
        disc = b * b - 4 * a * c
        expected = 1 if a == 0 else (0 if disc < 0 else (1 if disc == 0 else 2))
        assert len(roots) == expected
        for r in roots:
            val = _poly_at(a, b, c, r.canonical() if isinstance(r, Surd) else r)
            assert compare(val, 0) == 0
        assert roots == sort_exact(roots)


def _brute_simplest(lo, hi, lo_closed, hi_closed, max_den=400):
    for den in range(1, max_den + 1):
        lo_f, hi_f = float(lo), float(hi)
        start = math.floor(lo_f * den) - 1
        for num in sorted(range(start, math.ceil(hi_f * den) + 2), key=lambda n: (abs(n), n)):
            x = Rational(num, den)
            c1, c2 = compare(x, lo), compare(x, hi)
            if (c1 > 0 or (c1 == 0 and lo_closed)) and (c2 < 0 or (c2 == 0 and hi_closed)):
                return x
    return None


def test_simplest_in_interval_examples():
    assert simplest_in_interval(Rational(0), Rational(1), False, True) == 1
    assert simplest_in_interval(Rational(0), Rational(1)) == Rational(1, 2)
    assert simplest_in_interval(Rational(2, 7), Rational(3, 7)) == Rational(1, 3)
    assert simplest_in_interval(Rational(-1), Rational(1)) == 0
    assert simplest_in_interval(Rational(-5, 2), Rational(-2)) == Rational(-7, 3)
    assert simplest_in_interval(Rational(1), Rational(1)) is None
    assert simplest_in_interval(Rational(1), Rational(1), True, True) == 1
    assert simplest_in_interval(Rational(10**9), None) == 10**9 + 1
    root5 = Surd(0, 1, 5)
    assert simplest_in_interval(Rational(2), root5) == Rational(11, 5)


def test_simplest_in_interval_brute_force(rng):
    for _ in range(300):
        a = Rational(rng.randint(-60, 60), rng.randint(1, 20))
        b = a + Rational(rng.randint(1, 40), rng.randint(1, 60))
        lc, hc = rng.random() < 0.5, rng.random() < 0.5
        got = simplest_in_interval(a, b, lc, hc)
        assert got == _brute_simplest(a, b, lc, hc), (a, b, lc, hc)


def test_simplest_in_thin_interval_is_fast():
    lo = Rational(10**12 + 1, 10**12)
    hi = Rational(10**12 + 2, 10**12)
    x = simplest_in_interval(lo, hi)
    assert lo < x < hi
    assert x.denominator <= 10**12


@settings(max_examples=200)
@given(
    st.fractions(min_value=-100, max_value=100, max_denominator=50),
    st.fractions(min_value=Fraction(1, 50), max_value=10, max_denominator=50),
)
def test_simplest_in_interval_property(lo, width):
    lo, hi = rat(lo), rat(lo + width)
    x = simplest_in_interval(lo, hi)
    assert lo < x < hi
    # nothing with a smaller denominator fits
    for den in range(1, x.denominator):
        n = math.floor(lo * den) + 1
        assert not Rational(n, den) < hi
