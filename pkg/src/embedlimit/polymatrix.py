"""Square matrices with IntPolynomial entries and their characteristic polynomial."""

from __future__ import annotations

from typing import Sequence

from .poly import ONE, ZERO, BiPoly, IntPolynomial, Number, poly_eval


class ProductionMatrix:
    """k x k matrix of polynomials acting on column vectors from the left.

    Entry (i, j) gives the contribution of partial type j of G_{n-1} to
    partial type i of G_n.
    """

    __slots__ = ("entries",)

    def __init__(self, entries: Sequence[Sequence[IntPolynomial | int]], *, check_nonnegative: bool = True):
        rows = tuple(
            tuple(e if isinstance(e, IntPolynomial) else IntPolynomial.constant(e) for e in row)
            for row in entries
        )
        k = len(rows)
        if k == 0:
            raise ValueError("production matrix must have dimension >= 1")
        for i, row in enumerate(rows):
            if len(row) != k:
                raise ValueError(f"row {i} has {len(row)} entries, expected {k}")
            if check_nonnegative:
                for j, e in enumerate(row):
                    if not e.is_nonnegative():
                        raise ValueError(f"entry ({i},{j}) = {e} has a negative coefficient")
        object.__setattr__(self, "entries", rows)

    def __setattr__(self, name, value):
        raise AttributeError("ProductionMatrix is immutable")

    @property
    def k(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij: tuple[int, int]) -> IntPolynomial:
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other) -> bool:
        if not isinstance(other, ProductionMatrix):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self) -> int:
        return hash(self.entries)

    def __repr__(self) -> str:
        return f"ProductionMatrix({[[list(e.coeffs) for e in row] for row in self.entries]})"

    def apply(self, vec: Sequence[IntPolynomial]) -> list[IntPolynomial]:
        """Matrix-vector product M(x) * vec."""
        if len(vec) != self.k:
            raise ValueError(f"vector length {len(vec)} != matrix dimension {self.k}")
        out = []
        for row in self.entries:
            acc = ZERO
            for m, v in zip(row, vec):
                if not m.is_zero() and not v.is_zero():
                    acc = acc + m * v
            out.append(acc)
        return out

    def at(self, x: Number) -> list[list[Number]]:
        return [[poly_eval(e, x) for e in row] for row in self.entries]

    def is_constant(self) -> bool:
        return all(e.is_constant() for row in self.entries for e in row)


def _matmul(A, B):
    k = len(A)
    out = []
    for i in range(k):
        row = []
        for j in range(k):
            acc = ZERO
            for t in range(k):
                a, b = A[i][t], B[t][j]
                if not a.is_zero() and not b.is_zero():
                    acc = acc + a * b
            row.append(acc)
        out.append(row)
    return out


def char_poly(M: ProductionMatrix) -> BiPoly:
    """det(lam*I - M(x)) as a BiPoly monic in lam.

    Faddeev-LeVerrier over Z[x]; every division by j is exact because the
    coefficients of the characteristic polynomial are integer polynomials.
    """
    k = M.k
    A = [list(row) for row in M.entries]
    coeffs: list[IntPolynomial] = [ZERO] * (k + 1)
    coeffs[k] = ONE
    Mj = [[ZERO] * k for _ in range(k)]
    for j in range(1, k + 1):
        AM = _matmul(A, Mj)
        Mj = [
            [AM[r][c] + (coeffs[k - j + 1] if r == c else ZERO) for c in range(k)]
            for r in range(k)
        ]
        AMj = _matmul(A, Mj)
        trace = ZERO
        for r in range(k):
            trace = trace + AMj[r][r]
        coeffs[k - j] = (-trace).exact_div(j)
    return BiPoly(coeffs)


