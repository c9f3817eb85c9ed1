"""Linear graph families and the evolution of their embedding polynomials.

A family is given either by a production matrix acting on the vector of
partial polynomials, or directly by a linear recurrence with polynomial
coefficients.  Initial data always comes from the user or from the
brute-force enumerator; nothing here invents seeds.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence

from .kinds import Kind
from .poly import ONE, X, ZERO, IntPolynomial
from .polymatrix import ProductionMatrix, char_poly


@dataclass(frozen=True)
class FamilySpec:
    matrix: ProductionMatrix
    initial_vector: tuple[IntPolynomial, ...]
    spider_vector: Optional[tuple[IntPolynomial, ...]] = None
    kind: Kind = Kind.GENUS
    name: str = ""

    def __post_init__(self):
        k = self.matrix.k
        init = tuple(self.initial_vector)
        object.__setattr__(self, "initial_vector", init)
        if len(init) != k:
            raise ValueError(f"initial_vector has length {len(init)}, matrix dimension is {k}")
        for i, p in enumerate(init):
            if not p.is_nonnegative():
                raise ValueError(f"initial_vector[{i}] = {p} has a negative coefficient")
        if all(p.is_zero() for p in init):
            raise ValueError("initial_vector is identically zero")
        spider = self.spider_vector
        spider = (ONE,) * k if spider is None else tuple(spider)
        if len(spider) != k:
            raise ValueError(f"spider_vector has length {len(spider)}, matrix dimension is {k}")
        object.__setattr__(self, "spider_vector", spider)
        if self.kind not in (Kind.GENUS, Kind.EULER):
            raise ValueError(f"family kind must be genus or euler, got {self.kind.value}")

    @property
    def k(self) -> int:
        return self.matrix.k


@dataclass(frozen=True)
class RecurrenceSpec:
    """P_n = b_1 P_{n-1} + ... + b_k P_{n-k} for n > len(seeds).

    ``seeds`` holds P_1..P_m with m >= k.  It may be empty for a recurrence
    that is only analysed spectrally (the limit parameters do not depend on
    the seeds).
    """

    coefficients: tuple[IntPolynomial, ...]
    seeds: tuple[IntPolynomial, ...] = field(default=())
    kind: Kind = Kind.GENUS
    name: str = ""

    def __post_init__(self):
        coeffs = tuple(self.coefficients)
        seeds = tuple(self.seeds)
        object.__setattr__(self, "coefficients", coeffs)
        object.__setattr__(self, "seeds", seeds)
        if not coeffs:
            raise ValueError("recurrence needs at least one coefficient")
        if coeffs[-1].is_zero():
            raise ValueError("last recurrence coefficient b_k is zero; drop it to lower the order")
        if seeds and len(seeds) < len(coeffs):
            raise ValueError(f"order {len(coeffs)} recurrence needs at least {len(coeffs)} seeds, got {len(seeds)}")

    @property
    def order(self) -> int:
        return len(self.coefficients)

    def is_constant(self) -> bool:
        return all(b.is_constant() for b in self.coefficients)


def iter_vectors(spec: FamilySpec) -> Iterator[list[IntPolynomial]]:
    """Yield V_{G_1}, V_{G_2}, ... indefinitely."""
    vec = list(spec.initial_vector)
    while True:
        yield vec
        vec = spec.matrix.apply(vec)


def evolve_vector(spec: FamilySpec, n: int) -> list[IntPolynomial]:
    """Partial polynomials of G_n, i.e. M(x)^(n-1) applied to the initial vector."""
    if n < 1:
        raise ValueError("n must be >= 1")
    vec = list(spec.initial_vector)
    for _ in range(n - 1):
        vec = spec.matrix.apply(vec)
    return vec


def spider_total(spec: FamilySpec, vec: Sequence[IntPolynomial]) -> IntPolynomial:
    acc = ZERO
    for s, v in zip(spec.spider_vector, vec):
        acc = acc + s * v
    return acc


def total_polynomial(spec: FamilySpec, n: int) -> IntPolynomial:
    return spider_total(spec, evolve_vector(spec, n))


def iter_totals(spec: FamilySpec) -> Iterator[IntPolynomial]:
    for vec in iter_vectors(spec):
        yield spider_total(spec, vec)


def recurrence_from_matrix(spec: FamilySpec) -> RecurrenceSpec:
    """Cayley-Hamilton recurrence of the family's total polynomial.

    With det(lam I - M) = lam^k - b_1 lam^(k-1) - ... - b_k, the totals obey
    P_n = sum_j b_j P_{n-j} for n > k.  Trailing zero b_j (zero eigenvalues)
    are dropped; the k seeds are kept, so the recurrence still starts after P_k.
    """
    F = char_poly(spec.matrix)
    k = spec.k
    c = F.lambda_coeffs
    b = [-(c[k - j]) if k - j < len(c) else ZERO for j in range(1, k + 1)]
    while b and b[-1].is_zero():
        b.pop()
    if not b:
        raise ValueError("production matrix is nilpotent; its totals vanish after n = k")
    seeds = []
    it = iter_totals(spec)
    for _ in range(k):
        seeds.append(next(it))
    return RecurrenceSpec(tuple(b), tuple(seeds), spec.kind, spec.name)


def iter_recurrence(spec: RecurrenceSpec) -> Iterator[IntPolynomial]:
    if not spec.seeds:
        raise ValueError(f"recurrence {spec.name or '<unnamed>'} has no seeds; it can be analysed but not evolved")
    history = list(spec.seeds)
    yield from history
    k = spec.order
    while True:
        nxt = ZERO
        for j in range(1, k + 1):
            b = spec.coefficients[j - 1]
            if not b.is_zero():
                nxt = nxt + b * history[-j]
        history.append(nxt)
        if len(history) > k:
            history.pop(0)
        yield nxt


def evolve_recurrence(spec: RecurrenceSpec, n: int) -> IntPolynomial:
    if n < 1:
        raise ValueError("n must be >= 1")
    for i, p in enumerate(iter_recurrence(spec), start=1):
        if i == n:
            return p
    raise AssertionError("unreachable")


def pathlike_matrix(D_H: IntPolynomial, S_H: IntPolynomial) -> ProductionMatrix:
    """2x2 matrix acting on (D, S) partials of a path-like chain."""
    if S_H.is_zero():
        raise ValueError("S_H must be nonzero for a connected graph H")
    return ProductionMatrix([[D_H + S_H, D_H], [ZERO, S_H]])


def ladderlike_matrix(p: IntPolynomial, q: IntPolynomial) -> ProductionMatrix:
    """3x3 genus production matrix of a ladder-like sequence built from partials p, q."""
    if q.is_zero():
        raise ValueError("q must be nonzero")
    x2, x4 = X * 2, X * 4
    P = [[x4, x2, ZERO], [ZERO, ZERO, ZERO], [ZERO, x2, x4]]
    Q = [[ZERO, ZERO, ZERO], [ZERO, ONE * 2, ONE * 4], [x4, x2, ZERO]]
    return ProductionMatrix([[p * P[i][j] + q * Q[i][j] for j in range(3)] for i in range(3)])
