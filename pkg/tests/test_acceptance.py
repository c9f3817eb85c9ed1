"""Acceptance criteria, one test per criterion.

Each test records a PASS/FAIL line in RESULTS; conftest prints them at the end
of the run.  Run alone with:  pytest tests/test_acceptance.py -v
"""

import functools
import json
import math
import time
from fractions import Fraction

import pytest

from conftest import SEEDED_FIXTURES, family, graph
from embedlimit import cli
from embedlimit.distributions import (
    clt_series,
    crosscap_euler_gap,
    discrete_limit,
    distribution_from_polynomial,
    euler_from_parts,
    moments,
)
from embedlimit.enumerator import euler_and_crosscap_polynomials, genus_polynomial
from embedlimit.poly import IntPolynomial as P, bipoly_eval, bipoly_partials, poly_eval
from embedlimit.polymatrix import ProductionMatrix, char_poly
from embedlimit.recurrence import iter_recurrence, iter_totals, ladderlike_matrix, pathlike_matrix, total_polynomial
from embedlimit.spectral import (
    LimitCase,
    Primitivity,
    analyze_matrix,
    approximate_roots,
    dominant_simplicity,
    primitivity,
    recurrence_char_poly,
)

RESULTS: dict[int, str] = {}

PUBLISHED = {
    "claw_genus": (16, Fraction(6, 7), Fraction(8, 147)),
    "claw_euler": (64, Fraction(160, 87), Fraction(269092, 1975509)),
    "grid_genus": (24, Fraction(34, 41), Fraction(4816, 68921)),
    "grid_euler": (96, Fraction(5488, 3037), Fraction(4819233780, 28011371653)),
    "ladders_genus": (4, Fraction(1, 3), Fraction(2, 27)),
    "ladders_euler": (8, Fraction(4, 5), Fraction(22, 125)),
}


def criterion(number, title):
    def wrap(fn):
        @functools.wraps(fn)
        def run(*args, **kwargs):
            start = time.perf_counter()
            try:
                fn(*args, **kwargs)
            except BaseException as exc:
                line = f"[FAIL] criterion {number}: {title} ({type(exc).__name__}: {exc})"
                RESULTS[number] = line
                print(line)
                raise
            line = f"[PASS] criterion {number}: {title} ({time.perf_counter() - start:.2f} s)"
            RESULTS[number] = line
            print(line)

        return run

    return wrap


def _char_poly(fam):
    return char_poly(fam.matrix) if fam.is_matrix else recurrence_char_poly(fam.recurrence)


@criterion(1, "exact e and v for the six published fixtures, < 1 s each")
def test_criterion_1_exact_limit_parameters(tmp_path, capsys):
    for name, (D, e, v) in PUBLISHED.items():
        out = tmp_path / f"{name}.json"
        start = time.perf_counter()
        code = cli.main(["analyze", f"fixture:{name}", "-o", str(out)])
        elapsed = time.perf_counter() - start
        doc = json.loads(out.read_text())
        assert code == 0, name
        assert Fraction(doc["D"]) == D, name
        assert Fraction(doc["e"]) == e, name
        assert Fraction(doc["v"]) == v, name
        assert doc["case"] == "NormalLimit", name
        assert elapsed < 1.0, f"{name} took {elapsed:.2f} s"


@criterion(2, "D is a simple strictly dominant root, margin > 0.1")
def test_criterion_2_dominant_root():
    for name, (D, _, _) in PUBLISHED.items():
        F = _char_poly(family(name))
        assert bipoly_eval(F, 1, D) == 0, name
        assert bipoly_eval(bipoly_partials(F)[1], 1, D) != 0, name
        summary = dominant_simplicity(F.at_x(1), D, tol=1e-9)
        assert summary.margin > 0.1, name
        assert all(b <= 1e-9 for b in summary.error_bounds), name
        assert all(abs(z) < D - 0.1 for z in summary.others), name


@criterion(3, "ladder Euler M(1) primitive; diag(x+1, 2x) imprimitive and Inconclusive")
def test_criterion_3_primitivity():
    M = family("ladder_euler").matrix
    assert M.at(1) == [[2, 4], [6, 4]]
    assert primitivity(M.at(1)) is Primitivity.PRIMITIVE
    q3 = family("example_q3").matrix
    assert q3 == ProductionMatrix([[P([1, 1]), 0], [0, P([0, 2])]])
    assert primitivity(q3.at(1)) is Primitivity.IMPRIMITIVE
    report = analyze_matrix(q3)
    assert report.primitivity is Primitivity.IMPRIMITIVE
    assert report.case is LimitCase.INCONCLUSIVE


def _conservation(G, genus, euler):
    rot = G.rotation_count()
    assert poly_eval(genus, 1) == rot
    assert poly_eval(euler, 1) == rot * 2**G.cycle_rank


@criterion(4, "ladder transfer-matrix totals equal enumeration of L_1..L_3; count conservation; < 60 s")
def test_criterion_4_oracle_equivalence():
    start = time.perf_counter()
    genus_fam, euler_fam = family("ladder_genus"), family("ladder_euler")
    gspec, espec = genus_fam.family_spec(), euler_fam.family_spec()
    for n in (1, 2, 3):
        G = euler_fam.construction.build(n)
        assert G.embedding_count() <= 10**5
        genus = genus_polynomial(G)
        euler, _ = euler_and_crosscap_polynomials(G)
        assert total_polynomial(gspec, n) == genus, n
        assert total_polynomial(espec, n) == euler, n
        _conservation(G, genus, euler)
    for G in _enumerated_graphs():
        _conservation(G, genus_polynomial(G), euler_and_crosscap_polynomials(G)[0])
    assert time.perf_counter() - start < 60


def _enumerated_graphs():
    graphs = [graph(n) for n in ("graph_c3", "graph_b2", "graph_d3", "graph_k4", "graph_tree", "graph_p2")]
    for name, ns in (("ladder_euler", (1, 2, 3)), ("claw_genus", (1, 2, 3)), ("grid_genus", (1, 2))):
        build = family(name).construction.build
        graphs += [build(n) for n in ns]
    return graphs


@criterion(5, "E(x) = Gamma(x^2) + crosscap(x) and CDF gap <= 2 * 2^-beta on every enumerated graph")
def test_criterion_5_euler_identity_and_gap():
    for G in _enumerated_graphs():
        genus = genus_polynomial(G)
        euler, crosscap = euler_and_crosscap_polynomials(G)
        assert euler == euler_from_parts(genus, crosscap)
        if G.cycle_rank == 0:
            assert crosscap.is_zero()
            continue
        report = crosscap_euler_gap(genus, crosscap)
        assert report.bound == 2 * Fraction(poly_eval(genus, 1), poly_eval(euler, 1)) == Fraction(2, 2**G.cycle_rank)
        assert report.gap <= report.bound


@criterion(6, "KS distance strictly decreasing over n = 25, 50, 100, 200; mean_gap/n halves; < 120 s")
def test_criterion_6_clt_convergence():
    start = time.perf_counter()
    for name in ("claw_genus", "ladder_genus"):
        fam = family(name)
        report = analyze_matrix(fam.matrix)
        assert report.case is LimitCase.NORMAL
        rows = clt_series(fam.family_spec(), report.e, report.v, [25, 50, 100, 200])
        ks = [r.ks_distance for r in rows]
        assert ks[0] > ks[1] > ks[2] > ks[3], (name, ks)
        assert rows[3].mean_gap / 200 < 0.5 * rows[0].mean_gap / 25, name
    assert analyze_matrix(family("ladder_genus").matrix).e == Fraction(1, 3)
    assert time.perf_counter() - start < 120


@criterion(7, "P'/P'' moments equal the summation definitions for n <= 30")
def test_criterion_7_moment_formulas():
    for name in SEEDED_FIXTURES:
        fam = family(name)
        spec = fam.spec()
        totals = iter_totals(spec) if fam.is_matrix else iter_recurrence(spec)
        for n, Pn in zip(range(1, 31), totals):
            d = distribution_from_polynomial(Pn, fam.kind, n)
            mean = sum(Fraction(i * w, d.total) for i, w in enumerate(d.weights))
            var = sum((i - mean) ** 2 * Fraction(w, d.total) for i, w in enumerate(d.weights))
            m = moments(d)
            assert (m.mean, m.variance) == (mean, var), (name, n)


@criterion(8, "constant matrix [[2]] with seed 1+x has omega = (1/2, 1/2), kappa = 1")
def test_criterion_8_discrete_limit():
    fam = family("constant_two")
    assert fam.matrix == ProductionMatrix([[2]]) and fam.initial_vector == (P([1, 1]),)
    assert analyze_matrix(fam.matrix).case is LimitCase.DISCRETE
    for n in (1, 2, 5, 20):
        lim = discrete_limit(fam.family_spec(), n, 1e-12)
        assert lim.omegas == (Fraction(1, 2), Fraction(1, 2)) and lim.kappa == 1
        assert lim.max_change == 0


@criterion(9, "path-like and ladder-like constructors match the displayed matrices and eigenvalues")
def test_criterion_9_constructors():
    cases = [(P([1, 2]), P([0, 3])), (P([0, 1, 1]), P([2])), (P(), P([1])), (P([5]), P([1, 0, 4]))]
    for D, S in cases:
        M = pathlike_matrix(D, S)
        assert M.entries == ((D + S, D), (P(), S))
        roots, _ = approximate_roots(char_poly(M).at_x(1))
        expected = {float(poly_eval(D + S, 1)), float(poly_eval(S, 1))}
        assert all(min(abs(z - t) for t in expected) < 1e-9 for z in roots)
        assert all(min(abs(z - t) for z in roots) < 1e-9 for t in expected)
    x = P([0, 1])
    A = ((x * 4, x * 2, P()), (P(), P(), P()), (P(), x * 2, x * 4))
    B = ((P(), P(), P()), (P(), P([2]), P([4])), (x * 4, x * 2, P()))
    for p, q in ((P([1]), P([1])), (P(), P([1])), (P([0, 2]), P([3, 1])), (P([2, 0, 1]), P([0, 1]))):
        M = ladderlike_matrix(p, q)
        assert M.entries == tuple(tuple(p * A[i][j] + q * B[i][j] for j in range(3)) for i in range(3))
        p1, q1 = poly_eval(p, 1), poly_eval(q, 1)
        expected = [4 * (p1 + q1), 4 * p1 - 2 * q1, 0]
        roots, _ = approximate_roots(char_poly(M).at_x(1))
        assert all(min(abs(z - t) for t in expected) < 1e-9 for z in roots)
        assert all(min(abs(z - t) for z in roots) < 1e-9 for t in expected)
