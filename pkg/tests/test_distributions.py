import math
import random
from fractions import Fraction

import mpmath
import pytest

from conftest import SEEDED_FIXTURES, family
from embedlimit.distributions import (
    EmbeddingDistribution,
    NegativeCoefficient,
    NonpositiveSigma,
    NotConstantCoefficients,
    NotConverged,
    ZeroCrosscap,
    ZeroTotal,
    beta_bound_check,
    clt_series,
    crosscap_euler_gap,
    discrete_limit,
    distribution_from_polynomial,
    euler_from_parts,
    ks_distance,
    moments,
    normal_cdf,
)
from embedlimit.kinds import Kind
from embedlimit.poly import ONE, IntPolynomial as P
from embedlimit.polymatrix import ProductionMatrix
from embedlimit.recurrence import FamilySpec, iter_recurrence, iter_totals, total_polynomial

G = Kind.GENUS


def test_distribution_from_polynomial():
    d = distribution_from_polynomial(P([4, 2]), G, 1)
    assert d.weights == (4, 2) and d.total == 6
    d = distribution_from_polynomial(P.monomial(3), G)
    assert d.probabilities() == [0, 0, 0, 1]
    with pytest.raises(ZeroTotal):
        distribution_from_polynomial(P(), G)
    with pytest.raises(NegativeCoefficient):
        distribution_from_polynomial(P([3, -1]), G)
    with pytest.raises(ValueError):
        EmbeddingDistribution((1, 2), 4, G)


def test_moments_examples():
    m = moments(distribution_from_polynomial(P.monomial(5), G))
    assert (m.mean, m.variance) == (5, 0)
    m = moments(distribution_from_polynomial(P([4, 2]), G))
    assert (m.mean, m.variance) == (Fraction(1, 3), Fraction(2, 9))


def _direct_moments(d):
    mean = sum(Fraction(i * w, d.total) for i, w in enumerate(d.weights))
    var = sum((i - mean) ** 2 * Fraction(w, d.total) for i, w in enumerate(d.weights))
    return mean, var


@pytest.mark.parametrize("name", SEEDED_FIXTURES)
def test_moments_match_definition(name):
    fam = family(name)
    spec = fam.spec()
    totals = iter_totals(spec) if fam.is_matrix else iter_recurrence(spec)
    for n, Pn in zip(range(1, 31), totals):
        d = distribution_from_polynomial(Pn, fam.kind, n)
        assert sum(d.probabilities()) == 1
        m = moments(d)
        assert (m.mean, m.variance) == _direct_moments(d)
        assert m.variance >= 0


def test_claw_mean_gap_bounded():
    spec = family("claw_genus").family_spec()
    e = Fraction(6, 7)
    gaps = [abs(moments(distribution_from_polynomial(total_polynomial(spec, n), G)).mean - e * n) for n in (25, 50, 100)]
    assert max(gaps) < 2


def test_normal_cdf():
    assert normal_cdf(0) == 0.5
    rng = random.Random(3)
    mpmath.mp.dps = 30
    for _ in range(200):
        x = rng.uniform(-9, 9)
        assert abs(normal_cdf(-x) - (1 - normal_cdf(x))) < 1e-15
        assert abs(normal_cdf(x) - float(mpmath.ncdf(x))) <= 1e-12
    assert round(normal_cdf(2) - normal_cdf(-2), 4) == 0.9545


def test_ks_examples():
    point = distribution_from_polynomial(ONE, G)
    assert ks_distance(point, 0.0, 1.0) == 0.5
    with pytest.raises(NonpositiveSigma):
        ks_distance(point, 0.0, 0.0)


def test_ks_binned_normal_is_small():
    mu, sigma = 200.0, 40.0
    weights = [round(10**12 * (normal_cdf((i + 0.5 - mu) / sigma) - normal_cdf((i - 0.5 - mu) / sigma))) for i in range(401)]
    d = EmbeddingDistribution(tuple(weights), sum(weights), G)
    assert ks_distance(d, mu, sigma) < 0.011


def test_ks_zero_padding_and_range():
    d = distribution_from_polynomial(P([1, 5, 3]), G)
    padded = EmbeddingDistribution(d.weights + (0, 0, 0), d.total, G)
    for mu, sigma in ((1.0, 0.7), (-3.0, 2.0), (9.0, 0.1)):
        k = ks_distance(d, mu, sigma)
        assert k == ks_distance(padded, mu, sigma)
        assert 0 <= k <= 1


def test_ks_claw_regression():
    spec = family("claw_genus").family_spec()
    d = distribution_from_polynomial(total_polynomial(spec, 100), G, 100)
    # pinned; an mpmath evaluation at 40 digits agrees to 1e-15
    assert ks_distance(d, 600 / 7, math.sqrt(800 / 147)) == pytest.approx(0.2860498765929800, abs=1e-12)


def test_clt_series_claw():
    spec = family("claw_genus").family_spec()
    rows = clt_series(spec, Fraction(6, 7), Fraction(8, 147), [25, 50, 100, 200])
    ks = [r.ks_distance for r in rows]
    assert all(a > b for a, b in zip(ks, ks[1:]))
    assert rows[-1].mean_gap / 200 < rows[0].mean_gap / 25
    assert [r.n for r in rows] == [25, 50, 100, 200]


def test_clt_series_point_mass():
    spec = FamilySpec(ProductionMatrix([[1]]), (ONE,))
    assert clt_series(spec, Fraction(0), Fraction(1), [1])[0].ks_distance == 0.5
    with pytest.raises(ValueError):
        clt_series(spec, Fraction(0), Fraction(0), [1])


def test_euler_from_parts():
    assert euler_from_parts(ONE, P()) == ONE
    assert euler_from_parts(ONE, P([0, 1])) == P([1, 1])
    assert euler_from_parts(P([4, 2]), P([0, 10, 8])) == P([4, 10, 10])


def test_crosscap_euler_gap():
    r = crosscap_euler_gap(ONE, P([0, 1]))
    assert (r.gap, r.bound, r.a_n, r.argmax) == (Fraction(1, 2), 1, Fraction(1, 2), 0)
    r = crosscap_euler_gap(P(), P([0, 3, 1]))
    assert r.gap == 0 and r.bound == 0
    with pytest.raises(ZeroCrosscap):
        crosscap_euler_gap(ONE, P())


def test_beta_bound_check():
    assert beta_bound_check(1, 2, 1)
    assert beta_bound_check(6, 24, 2)
    assert beta_bound_check(5, 5, 0)
    assert not beta_bound_check(6, 12, 2)


def test_discrete_limit():
    spec = family("constant_two").family_spec()
    for n in (1, 3, 10):
        lim = discrete_limit(spec, n, 1e-9)
        assert lim.omegas == (Fraction(1, 2), Fraction(1, 2)) and lim.kappa == 1
    spec = FamilySpec(ProductionMatrix([[1, 1], [1, 1]]), (ONE, P([0, 1])))
    lim = discrete_limit(spec, 2, 1e-9)
    assert lim.omegas == (Fraction(1, 2), Fraction(1, 2))
    with pytest.raises(NotConstantCoefficients):
        discrete_limit(family("claw_genus").family_spec(), 5, 1e-3)
    drifting = FamilySpec(ProductionMatrix([[1, 0], [0, 2]]), (ONE, P([0, 1])))
    with pytest.raises(NotConverged):
        discrete_limit(drifting, 2, 1e-6)
