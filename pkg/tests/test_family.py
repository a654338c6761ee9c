import pytest

from slopestab import family as fm
from slopestab import nslattice as ns
from slopestab.errors import HypothesisNotSatisfied, KouvidakisHypothesisFailed, NotAmplePolarization
from slopestab.exactnum import Rational, Surd, compare
from slopestab.slope import Verdict, mu_c, mu_variety

FAM53 = fm.new_family(5, 3)


def hand_data(g, d, t):
    e = d - 1
    return (2 * t * t - 2 * g, 2 * t * (2 * g - 2), 2 * t * e - 2 * g, 2 * (2 * g - 2) * e, 2 * e * e - 2 * g)


def test_new_family():
    assert FAM53.s_C == Rational(5, 2)
    assert fm.new_family(9, 4).s_C == 3
    with pytest.raises(KouvidakisHypothesisFailed):
        fm.new_family(5, 4)  # (d-1)^2 = 9 > 5
    with pytest.raises(KouvidakisHypothesisFailed):
        fm.new_family(5, 1)
    assert fm.eligible_degrees(5) == [3]
    assert fm.eligible_degrees(10) == [3, 4]
    assert fm.eligible_degrees(9) == [3]


def test_surface_data_matches_hand_formulas(rng):
    for _ in range(300):
        g = rng.randint(2, 300)
        d = rng.choice(range(2, 2 + int(g ** 0.5)))
        fam = fm.new_family(g, d)
        t = Rational(rng.randint(-100, 400), rng.randint(1, 30))
        if t * t <= g:
            continue
        data = fm.surface_data(fam, t)
        got = (data.L2, data.KL, data.LZ, data.KZ, data.Z2)
        assert got == hand_data(g, d, t)
        # the same numbers from the full rank-3 lattice
        L, Z, K = fm.polarization(fam, t), fm.residual_class(fam), ns.canonical_class(g)
        assert got == (L.dot(L), K.dot(L), L.dot(Z), K.dot(Z), Z.dot(Z))


def test_is_ample_rules():
    g = 5
    assert fm.is_ample(FAM53, ns.plane_class(g, 158, -63)) is fm.AmpleVerdict.AMPLE
    assert fm.is_ample(FAM53, ns.plane_class(g, Rational(5, 2), -1)) is fm.AmpleVerdict.NOT_AMPLE
    assert fm.is_ample(FAM53, ns.plane_class(g, 1, 0)) is fm.AmpleVerdict.AMPLE
    assert fm.is_ample(FAM53, ns.plane_class(g, -1, 0)) is fm.AmpleVerdict.NOT_AMPLE
    assert fm.is_ample(FAM53, ns.plane_class(g, 10, 1)) is fm.AmpleVerdict.UNKNOWN
    assert fm.is_ample(FAM53, ns.plane_class(g, 1, 1)) is fm.AmpleVerdict.NOT_AMPLE  # x^2 < 0
    with pytest.raises(ns.NotInSymmetricPlane):
        fm.is_ample(FAM53, ns.NSClass(5, 1, 0, 0))


def test_polarization_ample_iff_above_threshold(rng):
    for _ in range(500):
        g = rng.randint(2, 200)
        fam = fm.new_family(g, rng.choice(range(2, 2 + int(g ** 0.5))))
        off = Rational(rng.randint(1, 100), rng.randint(1, 100))
        above = fm.polarization(fam, fam.s_C + off)
        assert fm.is_ample(fam, above) is fm.AmpleVerdict.AMPLE
        assert fm.is_ample(fam, fm.polarization(fam, fam.s_C - off)) is not fm.AmpleVerdict.AMPLE
        assert fm.is_ample(fam, fm.polarization(fam, fam.s_C)) is fm.AmpleVerdict.NOT_AMPLE


def test_seshadri_example():
    iv = fm.seshadri_interval(FAM53, 3)
    assert (iv.lo, iv.hi, iv.binding) == (1, Rational(8, 7), "Delta")
    # the self-intersection condition alone: (3-2c)^2 = 5(1-c)^2 at c = -1 + sqrt(5)
    c = Surd(-1, 1, 5)
    lhs = (Surd(3) - c * 2)
    assert compare(c, Rational(8, 7)) > 0
    a = 3 - 2 * c.p, -2 * c.q
    b = 1 - c.p, -c.q
    # expand (a0 + a1 r)^2 - 5 (b0 + b1 r)^2 with r = sqrt(5)
    rat_part = a[0] ** 2 + 5 * a[1] ** 2 - 5 * (b[0] ** 2 + 5 * b[1] ** 2)
    irr_part = 2 * a[0] * a[1] - 5 * 2 * b[0] * b[1]
    assert rat_part == 0 and irr_part == 0 and lhs.r == 5
    with pytest.raises(NotAmplePolarization):
        fm.seshadri_interval(FAM53, Rational(5, 2))


def test_seshadri_lower_bound_certified(rng):
    for _ in range(300):
        g = rng.randint(5, 200)
        fam = fm.new_family(g, rng.choice(fm.eligible_degrees(g) or [2]))
        t = fam.s_C + Rational(rng.randint(1, 50), rng.randint(1, 50))
        iv = fm.seshadri_interval(fam, t)
        assert iv.lo >= 1
        assert compare(iv.lo, iv.hi) <= 0
        Z = fm.residual_class(fam)
        L = fm.polarization(fam, t)
        for k in (1, 2, 5, 17):
            c = iv.lo * Rational(k, k + 1)
            assert fm.is_ample(fam, L - Z * c) is fm.AmpleVerdict.AMPLE


def test_limit_slopes():
    assert fm.limit_slopes(FAM53) == (-16, Rational(-45, 2))
    assert fm.limit_slopes(fm.new_family(9, 3)) == (Rational(-32, 5), Rational(-81, 10))
    for g in range(5, 120):
        for d in fm.eligible_degrees(g):
            fam = fm.new_family(g, d)
            e = d - 1
            mu, mu1 = fm.limit_slopes(fam)
            assert mu == Rational(-(2 * g - 2) * e, g - e * e)
            assert mu1 == Rational(3 * (g - (2 * g - 2) * e - e * e), 2 * (g - e * e))
            assert fam.Q == 2 * (g - e * e) * (mu1 - mu)
    with pytest.raises(HypothesisNotSatisfied):
        fm.limit_slopes(fm.new_family(9, 4))


def test_find_t0_example():
    t0, dec, iv = fm.find_t0(FAM53)
    assert t0 == Rational(11, 4)
    assert dec.verdict is Verdict.UNSTABLE and dec.witness_c == Rational(1, 2)
    # hand oracle at t = 11/4: L2 = 41/8, KL = 44, LZ = 1, KZ = 32, Z2 = -2
    g, e, t = 5, 2, Rational(11, 4)
    L2, KL, LZ, KZ, Z2 = hand_data(g, 3, t)
    assert (L2, KL, LZ) == (Rational(41, 8), 44, 1)
    c = Rational(1, 2)
    hand_mu_c = 3 * (2 * LZ - c * (KZ + Z2)) / (2 * c * (3 * LZ - c * Z2))
    assert dec.mu_at_witness == hand_mu_c == Rational(-39, 4)
    assert hand_mu_c < Rational(-KL, 1) / L2 == Rational(-352, 41)
    # c = 1 also destabilises at 13/5, the bound quoted for this family
    data = fm.surface_data(FAM53, Rational(13, 5))
    assert mu_c(data, 1) < mu_variety(data)


def test_destabilizing_t_sup_brackets_cubic_root():
    lo, hi = fm.destabilizing_t_sup(FAM53, Rational(1, 100))
    assert hi - lo <= Rational(1, 100)

    # mu_1(t) - mu(t) has the sign of the cubic below for t > sqrt(5)
    def cubic(t):
        return 12 * t ** 3 + 21 * t ** 2 - 284 * t + 375

    assert (cubic(lo) > 0) != (cubic(hi) > 0)
    for t in (lo, hi):
        data = fm.surface_data(FAM53, t)
        assert (mu_c(data, 1) < mu_variety(data)) == (t == lo)
    with pytest.raises(HypothesisNotSatisfied):
        fm.destabilizing_t_sup(fm.new_family(9, 4), Rational(1, 10))
