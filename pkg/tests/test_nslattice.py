from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from slopestab import nslattice as ns
from slopestab.errors import InvalidGenus, LatticeMismatch, NotInSymmetricPlane
from slopestab.exactnum import Rational, rat


def gram_dot(g, x, y):
    G = [[0, 1, 1], [1, 0, 1], [1, 1, 2 - 2 * g]]
    xs = [Fraction(int(v.numerator), int(v.denominator)) for v in x.coeffs]
    ys = [Fraction(int(v.numerator), int(v.denominator)) for v in y.coeffs]
    return sum(xs[i] * G[i][j] * ys[j] for i in range(3) for j in range(3))


coef = st.fractions(min_value=-50, max_value=50, max_denominator=12)


def cls(g, a, b, c):
    return ns.NSClass(g, rat(a), rat(b), rat(c))


def test_basic_numbers():
    g = 5
    f1, f2, delta = ns.f1(g), ns.f2(g), ns.diagonal(g)
    assert f1.dot(f1) == 0 and f1.dot(f2) == 1 and f1.dot(delta) == 1
    assert delta.dot(delta) == 2 - 2 * g
    assert ns.gram_matrix(g) == ((0, 1, 1), (1, 0, 1), (1, 1, -8))
    assert ns.canonical_class(g).dot(delta) + delta.dot(delta) == 2 * g - 2  # adjunction on the diagonal


def test_invalid_genus():
    for g in (0, 1, -3):
        with pytest.raises(InvalidGenus):
            ns.check_genus(g)


def test_genus_mismatch():
    with pytest.raises(LatticeMismatch):
        ns.f1(3).dot(ns.f1(4))
    with pytest.raises(LatticeMismatch):
        ns.f1(3) + ns.f1(4)


@given(st.integers(2, 40), coef, coef, coef, coef, coef, coef, coef, coef, coef, coef)
def test_bilinear_symmetric(g, a, b, c, d, e, f, p, q, r, k):
    x, y, z = cls(g, a, b, c), cls(g, d, e, f), cls(g, p, q, r)
    k = rat(k)
    assert x.dot(y) == y.dot(x)
    assert x.dot(y) == rat(gram_dot(g, x, y))
    assert (x + y).dot(z) == x.dot(z) + y.dot(z)
    assert (x * k).dot(y) == k * x.dot(y)


@given(st.integers(2, 40), coef, coef, coef, coef)
def test_plane_pairing_matches_lattice(g, a, b, c, d):
    p, q = ns.PlaneCoords(rat(a), rat(b)), ns.PlaneCoords(rat(c), rat(d))
    x, y = ns.from_plane(p, g), ns.from_plane(q, g)
    assert x.is_symmetric
    assert x.dot(y) == p.pair(q, g) == 2 * rat(a) * rat(c) - 2 * g * rat(b) * rat(d)
    assert ns.to_plane(x) == p


def test_plane_signature():
    for g in range(2, 60):
        f, dp = ns.fibre_sum(g), ns.delta_prime(g)
        # f, delta' are orthogonal with f^2 > 0 > delta'^2: signature (1, 1)
        assert f.dot(f) == 2 and dp.dot(dp) == -2 * g and f.dot(dp) == 0
        # whole lattice: det 2g > 0 with one positive direction -> (1, 2)
        G = ns.gram_matrix(g)
        det = (
            G[0][0] * (G[1][1] * G[2][2] - G[1][2] * G[2][1])
            - G[0][1] * (G[1][0] * G[2][2] - G[1][2] * G[2][0])
            + G[0][2] * (G[1][0] * G[2][1] - G[1][1] * G[2][0])
        )
        assert det == 2 * g


def test_to_plane_rejects_asymmetric():
    with pytest.raises(NotInSymmetricPlane):
        ns.to_plane(cls(5, 1, 2, 0))


def test_serialisation_round_trip():
    x = cls(7, Rational(3, 2), Rational(3, 2), -4)
    d = x.to_dict()
    assert d == {"g": 7, "f1": "3/2", "f2": "3/2", "delta": "-4/1"}
    assert ns.NSClass.from_dict(d) == x
