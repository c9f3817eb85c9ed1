"""Embedding distributions, their moments, and distances to limit laws.

CDFs and moments are exact rationals; conversion to float happens only where a
value is compared with the normal CDF.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Union

from .kinds import Kind
from .poly import IntPolynomial, poly_compose_square, poly_derivative, poly_eval
from .recurrence import (
    FamilySpec,
    RecurrenceSpec,
    iter_recurrence,
    iter_totals,
    recurrence_from_matrix,
)

__all__ = [
    "Kind", "EmbeddingDistribution", "MomentSummary", "ConvergenceRow", "GapReport",
    "DiscreteLimit", "NegativeCoefficient", "ZeroTotal", "ZeroCrosscap",
    "NotConstantCoefficients", "NotConverged", "NonpositiveSigma", "distribution_from_polynomial", "moments",
    "normal_cdf", "ks_distance", "clt_series", "euler_from_parts", "crosscap_euler_gap",
    "beta_bound_check", "discrete_limit",
]


class NegativeCoefficient(ValueError):
    pass


class ZeroTotal(ValueError):
    pass


class ZeroCrosscap(ValueError):
    pass


class NotConstantCoefficients(ValueError):
    pass


class NotConverged(RuntimeError):
    pass


class NonpositiveSigma(ValueError):
    pass


@dataclass(frozen=True)
class EmbeddingDistribution:
    weights: tuple[int, ...]
    total: int
    kind: Kind
    n: Optional[int] = None

    def __post_init__(self):
        if any(w < 0 for w in self.weights):
            raise NegativeCoefficient("embedding counts must be nonnegative")
        if sum(self.weights) != self.total:
            raise ValueError("total does not equal the sum of weights")
        if self.total <= 0:
            raise ZeroTotal("distribution has no embeddings")

    @classmethod
    def from_polynomial(cls, P: IntPolynomial, kind: Kind, n: Optional[int] = None) -> "EmbeddingDistribution":
        return distribution_from_polynomial(P, kind, n)

    def polynomial(self) -> IntPolynomial:
        return IntPolynomial(self.weights)

    def probabilities(self) -> list[Fraction]:
        return [Fraction(w, self.total) for w in self.weights]

    def cdf(self) -> list[Fraction]:
        """Exact P(X <= i) for i = 0..len(weights)-1."""
        out, acc = [], 0
        for w in self.weights:
            acc += w
            out.append(Fraction(acc, self.total))
        return out


def distribution_from_polynomial(P: IntPolynomial, kind: Kind, n: Optional[int] = None) -> EmbeddingDistribution:
    if not P.is_nonnegative():
        raise NegativeCoefficient(f"polynomial {P} has a negative coefficient")
    total = poly_eval(P, 1)
    if total == 0:
        raise ZeroTotal("polynomial evaluates to 0 at x = 1")
    return EmbeddingDistribution(tuple(P.coeffs), total, kind, n)


@dataclass(frozen=True)
class MomentSummary:
    mean: Fraction
    variance: Fraction


def moments(d: EmbeddingDistribution) -> MomentSummary:
    """Mean P'(1)/P(1) and variance (P''(1) + P'(1))/P(1) - mean^2."""
    P = d.polynomial()
    d1 = poly_derivative(P)
    p1 = poly_eval(d1, 1)
    p2 = poly_eval(poly_derivative(d1), 1)
    mean = Fraction(p1, d.total)
    return MomentSummary(mean, Fraction(p2 + p1, d.total) - mean * mean)


_SQRT2 = math.sqrt(2.0)


def normal_cdf(x: float) -> float:
    """Standard normal CDF.  erfc keeps full relative accuracy in the lower tail."""
    return 0.5 * math.erfc(-x / _SQRT2)


def ks_distance(d: EmbeddingDistribution, mu: float, sigma: float) -> float:
    """sup_t |P(X <= t) - Phi((t - mu) / sigma)|.

    The distribution's CDF is a step function with jumps at integers and Phi
    is increasing, so the supremum is attained on one side of a jump.
    """
    if not sigma > 0:
        raise NonpositiveSigma(f"sigma must be positive, got {sigma}")
    best = 0.0
    below = 0.0
    acc = 0
    for i, w in enumerate(d.weights):
        phi = normal_cdf((i - mu) / sigma)
        acc += w
        at = acc / d.total  # int / int rounds correctly at any size
        best = max(best, abs(below - phi), abs(at - phi))
        below = at
    return min(best, 1.0)


@dataclass(frozen=True)
class ConvergenceRow:
    n: int
    ks_distance: float
    mean_gap: float
    var_gap: float


def _totals(spec: Union[FamilySpec, RecurrenceSpec]):
    if isinstance(spec, FamilySpec):
        return iter_totals(spec)
    return iter_recurrence(spec)


def clt_series(
    spec: Union[FamilySpec, RecurrenceSpec], e: Fraction, v: Fraction, n_list: Iterable[int]
) -> list[ConvergenceRow]:
    """Distance of the n-th distribution to N(e*n, v*n) for every n in n_list."""
    if not v > 0:
        raise ValueError("clt_series needs v > 0")
    wanted = sorted(set(n_list))
    if not wanted or wanted[0] < 1:
        raise ValueError("n_list must contain positive integers")
    rows = {}
    for n, P in enumerate(_totals(spec), start=1):
        if n in wanted:
            d = distribution_from_polynomial(P, spec.kind, n)
            m = moments(d)
            ks = ks_distance(d, float(e * n), math.sqrt(v * n))
            rows[n] = ConvergenceRow(n, ks, float(abs(m.mean - e * n)), float(abs(m.variance - v * n)))
        if n >= wanted[-1]:
            break
    return [rows[n] for n in n_list]


def euler_from_parts(genus: IntPolynomial, crosscap: IntPolynomial) -> IntPolynomial:
    """Euler-genus polynomial from the genus and crosscap-number polynomials."""
    if not genus.is_nonnegative() or not crosscap.is_nonnegative():
        raise NegativeCoefficient("embedding polynomials must have nonnegative coefficients")
    return poly_compose_square(genus) + crosscap


@dataclass(frozen=True)
class GapReport:
    gap: Fraction
    bound: Fraction
    a_n: Fraction
    argmax: int


def crosscap_euler_gap(genus: IntPolynomial, crosscap: IntPolynomial) -> GapReport:
    """Sup distance between the Euler-genus and crosscap-number CDFs.

    The bound is 2 * a_n with a_n = Gamma(1) / E(1), the share of orientable
    embeddings.
    """
    if crosscap.is_zero():
        raise ZeroCrosscap("graph has no nonorientable embeddings")
    euler = euler_from_parts(genus, crosscap)
    E1 = poly_eval(euler, 1)
    C1 = poly_eval(crosscap, 1)
    gap, where = Fraction(0), 0
    ce = cc = 0
    for i in range(max(len(euler), len(crosscap))):
        ce += euler[i]
        cc += crosscap[i]
        diff = abs(Fraction(ce, E1) - Fraction(cc, C1))
        if diff > gap:
            gap, where = diff, i
    a_n = Fraction(poly_eval(genus, 1), E1)
    return GapReport(gap, 2 * a_n, a_n, where)


def beta_bound_check(genus_at_1: int, euler_at_1: int, beta: int) -> bool:
    """E(1) = Gamma(1) * 2^beta: each rotation system carries 2^beta twist patterns."""
    if beta < 0:
        raise ValueError("beta must be nonnegative")
    return euler_at_1 == genus_at_1 << beta


@dataclass(frozen=True)
class DiscreteLimit:
    omegas: tuple[Fraction, ...]
    kappa: int
    n_probe: int
    max_change: Fraction


def discrete_limit(spec: Union[FamilySpec, RecurrenceSpec], n_probe: int, tol: float) -> DiscreteLimit:
    """Estimate lim P(X_n = j) for a family whose recurrence has constant coefficients.

    Compares the distributions at n_probe and 2*n_probe; the later one is
    reported when every probability moved by less than tol.
    """
    rec = recurrence_from_matrix(spec) if isinstance(spec, FamilySpec) else spec
    if not rec.is_constant():
        raise NotConstantCoefficients("recurrence coefficients depend on x; no discrete limit law")
    if n_probe < 1:
        raise ValueError("n_probe must be >= 1")
    probes = {}
    for n, P in enumerate(_totals(spec), start=1):
        if n in (n_probe, 2 * n_probe):
            probes[n] = distribution_from_polynomial(P, spec.kind, n).probabilities()
        if n >= 2 * n_probe:
            break
    a, b = probes[n_probe], probes[2 * n_probe]
    width = max(len(a), len(b))
    a = a + [Fraction(0)] * (width - len(a))
    b = b + [Fraction(0)] * (width - len(b))
    change = max(abs(x - y) for x, y in zip(a, b))
    if change >= tol:
        raise NotConverged(f"probabilities moved by {float(change):.3g} between n={n_probe} and n={2 * n_probe}")
    kappa = max(i for i, p in enumerate(b) if p > 0)
    return DiscreteLimit(tuple(b[: kappa + 1]), kappa, n_probe, change)
