"""Spectral analysis of production matrices and recurrences.

Everything that decides the limit parameters is exact: the characteristic
polynomial, F(1, D) = 0, simplicity via F_lam(1, D) != 0, and the implicit
derivatives of the dominant eigenvalue branch.  Only the strict dominance
check |lam_i(1)| < D for the other roots is numerical, with a certified
inclusion radius for every approximated root.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import mpmath

from .poly import BiPoly, IntPolynomial, Number, bipoly_eval, bipoly_partials, uni_eval
from .polymatrix import ProductionMatrix, char_poly
from .recurrence import RecurrenceSpec

CharPoly = BiPoly

DEFAULT_TOL = 1e-9


class ColumnSumMismatch(ValueError):
    def __init__(self, sums: Sequence[Fraction]):
        super().__init__(f"column sums of M(1) differ: {[str(s) for s in sums]}")
        self.sums = list(sums)


class NegativeEntry(ValueError):
    pass


class NotARoot(ValueError):
    pass


class DominanceFails(ValueError):
    def __init__(self, message: str, summary: Optional["RootSummary"] = None):
        super().__init__(message)
        self.summary = summary


class SingularPoint(ValueError):
    pass


class Primitivity(str, enum.Enum):
    PRIMITIVE = "Primitive"
    IMPRIMITIVE = "Imprimitive"
    UNKNOWN = "Unknown"


class LimitCase(str, enum.Enum):
    NORMAL = "NormalLimit"
    DEGENERATE = "DegenerateImpossible"
    DISCRETE = "DiscreteOrOnePoint"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class RootSummary:
    dominant: Fraction
    others: tuple[complex, ...]
    error_bounds: tuple[float, ...]
    margin: float

    @property
    def max_other_modulus(self) -> float:
        return max((abs(z) for z in self.others), default=0.0)


@dataclass
class LimitReport:
    D: Optional[Fraction]
    e: Optional[Fraction]
    v: Optional[Fraction]
    dominant_simple: bool
    primitivity: Primitivity
    case: LimitCase
    margin: Optional[float]
    lambda1_prime: Optional[Fraction] = None
    lambda1_doubleprime: Optional[Fraction] = None
    constant_coefficients: bool = False
    input_error: Optional[str] = None
    diagnostics: list[str] = field(default_factory=list)


# --- characteristic polynomial ---------------------------------------------


def recurrence_char_poly(coefficients: Sequence[IntPolynomial]) -> BiPoly:
    """lam^k - b_1 lam^(k-1) - ... - b_k."""
    k = len(coefficients)
    lam = [-coefficients[k - 1 - j] for j in range(k)]
    return BiPoly([*lam, IntPolynomial.constant(1)])


def common_column_sum(M: ProductionMatrix) -> Fraction:
    M1 = M.at(1)
    sums = [Fraction(sum(M1[i][j] for i in range(M.k))) for j in range(M.k)]
    if any(s != sums[0] for s in sums):
        raise ColumnSumMismatch(sums)
    return sums[0]


# --- primitivity ------------------------------------------------------------


def _bool_mul(A: list[list[bool]], B: list[list[bool]]) -> list[list[bool]]:
    k = len(A)
    return [[any(A[i][t] and B[t][j] for t in range(k)) for j in range(k)] for i in range(k)]


def primitivity(M1: Sequence[Sequence[Number]]) -> Primitivity:
    """Wielandt test: primitive iff the boolean power (k-1)^2 + 1 is all true."""
    k = len(M1)
    for row in M1:
        for a in row:
            if a < 0:
                raise NegativeEntry(f"negative entry {a} in M(1)")
    A = [[a > 0 for a in row] for row in M1]
    exponent = (k - 1) ** 2 + 1
    result = None
    base = A
    while exponent:
        if exponent & 1:
            result = base if result is None else _bool_mul(result, base)
        base = _bool_mul(base, base)
        exponent >>= 1
    ok = all(all(row) for row in result)
    return Primitivity.PRIMITIVE if ok else Primitivity.IMPRIMITIVE


# --- univariate helpers over Q ------------------------------------------------


def _trim(p: list[Fraction]) -> list[Fraction]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _divmod(a: Sequence[Fraction], b: Sequence[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    a = _trim([Fraction(c) for c in a])
    b = _trim([Fraction(c) for c in b])
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    while len(a) >= len(b):
        shift = len(a) - len(b)
        f = a[-1] / b[-1]
        q[shift] = f
        for i, c in enumerate(b):
            a[i + shift] -= f * c
        _trim(a)
    return q, a


def _gcd(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    a = _trim([Fraction(c) for c in a])
    b = _trim([Fraction(c) for c in b])
    while b:
        _, r = _divmod(a, b)
        a, b = b, r
    return [c / a[-1] for c in a] if a else a


def _squarefree(p: Sequence[Fraction]) -> list[Fraction]:
    dp = [i * c for i, c in enumerate(p)][1:]
    if not _trim(list(dp)):
        return list(p)
    g = _gcd(p, dp)
    q, r = _divmod(p, g)
    assert not r
    return q


def deflate(F1: Sequence[Number], root: Number) -> list[Fraction]:
    """Exact synthetic division of F1 (ascending coefficients) by (lam - root)."""
    q, r = _divmod(F1, [-Fraction(root), Fraction(1)])
    if r:
        raise NotARoot(f"{root} is not a root")
    return q


def approximate_roots(p: Sequence[Number], tol: float = DEFAULT_TOL) -> tuple[list[complex], list[float]]:
    """All distinct roots of p with certified inclusion radii.

    The squarefree part is solved with mpmath at 60 digits; for each
    approximation z the disk of radius deg * |q(z) / q'(z)| contains a root
    of the squarefree part q.
    """
    q = _squarefree([Fraction(c) for c in p])
    deg = len(q) - 1
    if deg < 1:
        return [], []
    for dps in (60, 120):
        with mpmath.workdps(dps):
            hi_first = [mpmath.mpf(c.numerator) / c.denominator for c in reversed(q)]
            roots = mpmath.polyroots(hi_first, maxsteps=400, extraprec=dps)
            if not isinstance(roots, (list, tuple)):
                roots = [roots]
            dq = [i * c for i, c in enumerate(q)][1:]
            bounds = []
            for z in roots:
                num = abs(mpmath.polyval(hi_first, z))
                den = abs(mpmath.polyval([mpmath.mpf(c.numerator) / c.denominator for c in reversed(dq)], z))
                bounds.append(float(deg * num / den) if den != 0 else float("inf"))
            if max(bounds) <= tol:
                return [complex(z) for z in roots], bounds
    raise DominanceFails(f"root approximation did not reach tolerance {tol} (bounds {bounds})")


def dominant_simplicity(F1: Sequence[Number], D: Number, tol: float = DEFAULT_TOL) -> RootSummary:
    """Check that D is a simple root of F1 strictly dominating every other root."""
    D = Fraction(D)
    if uni_eval(F1, D) != 0:
        raise NotARoot(f"D = {D} is not a root of F(1, lam)")
    rest = deflate(F1, D)
    if rest and uni_eval(rest, D) == 0:
        raise DominanceFails(f"D = {D} is a multiple root of F(1, lam)")
    others, bounds = approximate_roots(rest, tol)
    max_mod = max((abs(z) for z in others), default=0.0)
    margin = float(D) - max_mod
    summary = RootSummary(D, tuple(others), tuple(bounds), margin)
    if D <= 0:
        raise DominanceFails(f"D = {D} is not positive", summary)
    if max_mod >= float(D) - tol:
        raise DominanceFails(f"another root has modulus {max_mod:.12g}, not below D = {D}", summary)
    return summary


def dominant_root(F1: Sequence[Number], tol: float = DEFAULT_TOL) -> Fraction:
    """Exact dominant root of a monic integer polynomial, when it is an integer.

    Used for families given by a recurrence only, where D is not available as
    a column sum.  Raises DominanceFails when the largest-modulus root is not
    real positive or not rational.
    """
    roots, _ = approximate_roots(F1, tol)
    if not roots:
        raise DominanceFails("F(1, lam) has no roots")
    top = max(roots, key=abs)
    if abs(top.imag) > 1e-6 or top.real <= 0:
        raise DominanceFails(f"largest-modulus root {top} is not real positive")
    # monic with integer coefficients: rational roots are integers
    cand = round(top.real)
    if uni_eval(F1, Fraction(cand)) != 0:
        raise DominanceFails(f"dominant root {top.real:.12g} is irrational; exact analysis needs a rational D")
    return Fraction(cand)


# --- implicit derivatives -----------------------------------------------------


def implicit_derivatives(F: BiPoly, D: Number) -> tuple[Fraction, Fraction]:
    """lam_1'(1) and lam_1''(1) of the branch F(x, lam_1(x)) = 0 through (1, D)."""
    D = Fraction(D)
    one = Fraction(1)
    if bipoly_eval(F, one, D) != 0:
        raise NotARoot(f"F(1, {D}) != 0")
    Fx, Fl, Fxx, Fxl, Fll = (bipoly_eval(G, one, D) for G in bipoly_partials(F))
    if Fl == 0:
        raise SingularPoint(f"F_lam(1, {D}) = 0; D is not a simple root")
    d1 = Fraction(-Fx) / Fl
    d2 = -(Fxx + 2 * Fxl * d1 + Fll * d1 * d1) / Fl
    return d1, Fraction(d2)


def limit_parameters(F: BiPoly, D: Number) -> tuple[Fraction, Fraction]:
    """(e, v): asymptotic mean and variance per step."""
    D = Fraction(D)
    d1, d2 = implicit_derivatives(F, D)
    return d1 / D, (-d1 * d1 + D * d2 + D * d1) / (D * D)


# --- classification -------------------------------------------------------------


def classify(
    D: Optional[Fraction],
    e: Optional[Fraction],
    v: Optional[Fraction],
    *,
    dominant_simple: bool,
    primitivity: Primitivity = Primitivity.UNKNOWN,
    constant_coefficients: bool = False,
    margin: Optional[float] = None,
    derivatives: tuple[Optional[Fraction], Optional[Fraction]] = (None, None),
    diagnostics: Sequence[str] = (),
) -> LimitReport:
    diag = list(diagnostics)
    report = LimitReport(
        D, e, v, dominant_simple, primitivity, LimitCase.INCONCLUSIVE, margin,
        derivatives[0], derivatives[1], constant_coefficients, None, diag,
    )
    if primitivity is Primitivity.IMPRIMITIVE:
        diag.append("M(1) is not primitive (Wielandt test)")
        return report
    if not dominant_simple or e is None or v is None:
        return report
    if v < 0:
        report.input_error = f"computed v = {v} < 0, which cannot occur for embedding polynomials; check the matrix or recurrence"
        return report
    if v == 0:
        report.case = LimitCase.DISCRETE
        if constant_coefficients:
            diag.append("all recurrence coefficients are constant: limit law is discrete")
        return report
    report.case = LimitCase.NORMAL
    return report


def _analyze(F: BiPoly, D: Optional[Fraction], prim: Primitivity, constant: bool, tol: float, diag: list[str]) -> LimitReport:
    F1 = F.at_x(1)
    if D is None:
        try:
            D = dominant_root(F1, tol)
        except DominanceFails as exc:
            diag.append(str(exc))
            return classify(None, None, None, dominant_simple=False, primitivity=prim,
                            constant_coefficients=constant, diagnostics=diag)
    try:
        summary = dominant_simplicity(F1, D, tol)
    except (DominanceFails, NotARoot) as exc:
        diag.append(str(exc))
        margin = exc.summary.margin if isinstance(exc, DominanceFails) and exc.summary else None
        return classify(D, None, None, dominant_simple=False, primitivity=prim,
                        constant_coefficients=constant, margin=margin, diagnostics=diag)
    if prim is Primitivity.IMPRIMITIVE:
        # no differentiability of lam_1 is claimed here; the recurrence form
        # of the family needs only the simple dominant root
        if summary.margin > 0:
            diag.append("D is a simple dominant root; analyze the recurrence form for e and v")
        return classify(D, None, None, dominant_simple=True, primitivity=prim,
                        constant_coefficients=constant, margin=summary.margin, diagnostics=diag)
    try:
        d1, d2 = implicit_derivatives(F, D)
    except SingularPoint as exc:
        diag.append(str(exc))
        return classify(D, None, None, dominant_simple=False, primitivity=prim,
                        constant_coefficients=constant, margin=summary.margin, diagnostics=diag)
    e = d1 / D
    v = (-d1 * d1 + D * d2 + D * d1) / (D * D)
    return classify(D, e, v, dominant_simple=True, primitivity=prim, constant_coefficients=constant,
                    margin=summary.margin, derivatives=(d1, d2), diagnostics=diag)


def analyze_matrix(M: ProductionMatrix, tol: float = DEFAULT_TOL) -> LimitReport:
    """Full limit analysis of a production matrix (raises ColumnSumMismatch)."""
    D = common_column_sum(M)
    prim = primitivity(M.at(1))
    F = char_poly(M)
    constant = all(b.is_constant() for b in F.lambda_coeffs)
    return _analyze(F, D, prim, constant, tol, [])


def analyze_recurrence(R: RecurrenceSpec, tol: float = DEFAULT_TOL) -> LimitReport:
    F = recurrence_char_poly(R.coefficients)
    return _analyze(F, None, Primitivity.UNKNOWN, R.is_constant(), tol, [])
