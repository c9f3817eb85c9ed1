import random
from fractions import Fraction

import pytest

from conftest import MATRIX_FIXTURES, SEEDED_FIXTURES, family
from embedlimit.enumerator import MultiGraph, amalgamate, euler_and_crosscap_polynomials, partial_polynomials
from embedlimit.kinds import Kind
from embedlimit.poly import ONE, X, IntPolynomial as P, poly_eval
from embedlimit.polymatrix import ProductionMatrix, char_poly
from embedlimit.recurrence import (
    FamilySpec,
    RecurrenceSpec,
    evolve_recurrence,
    evolve_vector,
    iter_recurrence,
    ladderlike_matrix,
    pathlike_matrix,
    recurrence_from_matrix,
    total_polynomial,
)
from embedlimit.spectral import common_column_sum

LADDER_EULER = ProductionMatrix([[2, 4], [P([0, 2, 4]), P([0, 4])]])


def test_evolve_vector_n1_is_initial():
    spec = family("claw_genus").family_spec()
    assert tuple(evolve_vector(spec, 1)) == spec.initial_vector


def test_ladder_matrix_action():
    a, b = P([1, 3]), P([0, 0, 5])
    assert LADDER_EULER.apply([a, b])[0] == a * 2 + b * 4
    assert LADDER_EULER.apply([a, b])[1] == P([0, 2, 4]) * a + P([0, 4]) * b


def test_ladder_totals_match_enumeration():
    fam = family("ladder_euler")
    spec = fam.family_spec()
    for n in (1, 2):
        G = fam.construction.build(n)
        assert total_polynomial(spec, n) == euler_and_crosscap_polynomials(G)[0]


def test_spider_default_is_ones():
    spec = FamilySpec(LADDER_EULER, (P([1]), P([0, 1])))
    assert spec.spider_vector == (ONE, ONE)
    assert total_polynomial(spec, 1) == P([1, 1])


def test_claw_recurrence_from_matrix():
    rec = recurrence_from_matrix(family("claw_genus").family_spec())
    assert rec.coefficients == (P([0, 20]), P([0, 24, -64]), P([0, 0, 0, -384]))
    assert len(rec.seeds) == 3


def test_one_by_one_recurrence():
    spec = FamilySpec(ProductionMatrix([[P([1, 2])]]), (P([3]),))
    rec = recurrence_from_matrix(spec)
    assert rec.coefficients == (P([1, 2]),)
    assert evolve_recurrence(rec, 4) == P([3]) * P([1, 2]) ** 3


@pytest.mark.parametrize("seed", range(5))
def test_pathlike_recurrence_is_trace_and_det(seed):
    rng = random.Random(seed)
    D = P([rng.randint(0, 4) for _ in range(3)])
    S = P([rng.randint(1, 4) for _ in range(3)])
    rec = recurrence_from_matrix(FamilySpec(pathlike_matrix(D, S), (D, S)))
    b = rec.coefficients + (P(),) * (2 - rec.order)
    for _ in range(3):
        x = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
        d, s = poly_eval(D, x), poly_eval(S, x)
        trace, det = d + 2 * s, (d + s) * s
        assert poly_eval(b[0], x) == trace
        assert poly_eval(b[1], x) == -det


def test_evolve_recurrence_seeds_and_unrolling():
    fam = family("grid_genus")
    rec = fam.recurrence_spec()
    for n in range(1, 5):
        assert evolve_recurrence(rec, n) == rec.seeds[n - 1]
    b, s = rec.coefficients, rec.seeds
    assert evolve_recurrence(rec, 5) == b[0] * s[3] + b[1] * s[2] + b[2] * s[1] + b[3] * s[0]


def test_claw_unrolled_once():
    rec = recurrence_from_matrix(family("claw_genus").family_spec())
    b, s = rec.coefficients, rec.seeds
    assert evolve_recurrence(rec, 4) == b[0] * s[2] + b[1] * s[1] + b[2] * s[0]


@pytest.mark.parametrize("name", MATRIX_FIXTURES)
def test_engines_agree(name):
    spec = family(name).family_spec()
    rec = recurrence_from_matrix(spec)
    for n in range(1, 13):
        assert evolve_recurrence(rec, n) == total_polynomial(spec, n), n


@pytest.mark.parametrize("name", MATRIX_FIXTURES)
def test_column_sum_ratio(name):
    spec = family(name).family_spec()
    D = common_column_sum(spec.matrix)
    prev = poly_eval(total_polynomial(spec, 1), 1)
    for n in range(2, 15):
        cur = poly_eval(total_polynomial(spec, n), 1)
        assert Fraction(cur, prev) == D
        prev = cur


@pytest.mark.parametrize("name", SEEDED_FIXTURES)
def test_totals_nonnegative(name):
    spec = family(name).spec()
    it = iter_recurrence(spec) if isinstance(spec, RecurrenceSpec) else None
    for n in range(1, 51):
        P_n = next(it) if it else total_polynomial(spec, n)
        assert P_n.is_nonnegative(), n


def test_pathlike_matrix():
    assert pathlike_matrix(P(), ONE) == ProductionMatrix([[1, 0], [0, 1]])
    D, S = P([1, 2]), P([0, 3])
    M = pathlike_matrix(D, S)
    assert M[0, 0] == D + S and M[0, 1] == D and M[1, 0].is_zero() and M[1, 1] == S
    F1 = char_poly(M).at_x(1)
    for lam in (poly_eval(D + S, 1), poly_eval(S, 1)):
        assert sum(c * lam**i for i, c in enumerate(F1)) == 0
    with pytest.raises(ValueError):
        pathlike_matrix(D, P())


def test_ladderlike_matrix():
    M = ladderlike_matrix(P(), ONE)
    assert M == ProductionMatrix([[0, 0, 0], [0, 2, 4], [P([0, 4]), P([0, 2]), 0]])
    p, q = P([1, 1]), P([2])
    M = ladderlike_matrix(p, q)
    D = 4 * (poly_eval(p, 1) + poly_eval(q, 1))
    assert common_column_sum(M) == D
    F1 = char_poly(M).at_x(1)
    for lam in (D, 4 * poly_eval(p, 1) - 2 * poly_eval(q, 1), 0):
        assert sum(c * lam**i for i, c in enumerate(F1)) == 0
    with pytest.raises(ValueError):
        ladderlike_matrix(p, P())


PATH_H = MultiGraph(5, ((0, 1), (1, 2), (2, 0), (0, 3), (1, 4)), (3, 4))


@pytest.mark.parametrize("euler", [False, True])
def test_pathlike_closure_against_enumeration(euler):
    D, S = partial_polynomials(PATH_H, euler=euler)
    spec = FamilySpec(pathlike_matrix(D, S), (D, S), kind=Kind.EULER if euler else Kind.GENUS)
    for n in (2, 3):
        G, u, v = amalgamate(PATH_H, [3], [4], n)
        G = MultiGraph(G.vertex_count, G.edges, (u[0], v[0]))
        Dn, Sn = partial_polynomials(G, euler=euler)
        assert evolve_vector(spec, n) == [Dn, Sn]
    # unrolled by hand for n = 2
    G2, u, v = amalgamate(PATH_H, [3], [4], 2)
    Dn, Sn = partial_polynomials(MultiGraph(G2.vertex_count, G2.edges, (u[0], v[0])), euler=euler)
    assert Dn == (D + S) * D + D * S
    assert Sn == S * S


def test_family_spec_validation():
    with pytest.raises(ValueError, match="length"):
        FamilySpec(LADDER_EULER, (ONE,))
    with pytest.raises(ValueError, match="negative"):
        FamilySpec(LADDER_EULER, (ONE, P([-1])))
    with pytest.raises(ValueError, match="zero"):
        FamilySpec(LADDER_EULER, (P(), P()))
    with pytest.raises(ValueError):
        FamilySpec(LADDER_EULER, (ONE, ONE), kind=Kind.CROSSCAP)
    with pytest.raises(ValueError):
        ProductionMatrix([[1, P([-1])], [0, 1]])
    with pytest.raises(ValueError):
        ProductionMatrix([[1, 2]])


def test_recurrence_spec_validation():
    with pytest.raises(ValueError, match="zero"):
        RecurrenceSpec((X, P()), (ONE, ONE))
    with pytest.raises(ValueError, match="seeds"):
        RecurrenceSpec((X, ONE), (ONE,))
    rec = RecurrenceSpec((X,))
    with pytest.raises(ValueError):
        evolve_recurrence(rec, 1)
