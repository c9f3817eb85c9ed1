"""Exact polynomial arithmetic over the integers.

Integers are Python ints (unbounded) and rationals are ``fractions.Fraction``,
which is always kept in lowest terms with a positive denominator.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence, Union

Number = Union[int, Fraction]


def _trim(coeffs: Iterable[int]) -> tuple[int, ...]:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


class IntPolynomial:
    """Dense univariate polynomial with integer coefficients.

    ``coeffs[i]`` is the coefficient of ``x**i``; the zero polynomial has an
    empty coefficient tuple.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = _trim(coeffs)
        for a in c:
            if not isinstance(a, int) or isinstance(a, bool):
                raise TypeError(f"coefficients must be int, got {type(a).__name__}")
        object.__setattr__(self, "coeffs", c)

    def __setattr__(self, name, value):
        raise AttributeError("IntPolynomial is immutable")

    @classmethod
    def constant(cls, c: int) -> "IntPolynomial":
        return cls((c,))

    @classmethod
    def monomial(cls, degree: int, c: int = 1) -> "IntPolynomial":
        return cls((0,) * degree + (c,))

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def is_nonnegative(self) -> bool:
        return all(c >= 0 for c in self.coeffs)

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = IntPolynomial.constant(other)
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"IntPolynomial({list(self.coeffs)})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                mono = "x" if i == 1 else f"x^{i}"
                coef = "" if c == 1 else "-" if c == -1 else f"{c}*"
                terms.append(coef + mono)
        return " + ".join(terms).replace("+ -", "- ")

    def __add__(self, other) -> "IntPolynomial":
        other = _coerce(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPolynomial(out)

    __radd__ = __add__

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(-c for c in self.coeffs)

    def __sub__(self, other) -> "IntPolynomial":
        return self + (-_coerce(other))

    def __rsub__(self, other) -> "IntPolynomial":
        return _coerce(other) - self

    def __mul__(self, other) -> "IntPolynomial":
        if isinstance(other, int) and not isinstance(other, bool):
            return IntPolynomial(c * other for c in self.coeffs)
        other = _coerce(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPolynomial()
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "IntPolynomial":
        if n < 0:
            raise ValueError("negative power")
        result = IntPolynomial.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def exact_div(self, d: int) -> "IntPolynomial":
        """Divide every coefficient by ``d``; the division must be exact."""
        out = []
        for c in self.coeffs:
            q, r = divmod(c, d)
            if r:
                raise ArithmeticError(f"{c} is not divisible by {d}")
            out.append(q)
        return IntPolynomial(out)

    def __call__(self, x: Number) -> Number:
        return poly_eval(self, x)

    def derivative(self) -> "IntPolynomial":
        return poly_derivative(self)

    def compose_square(self) -> "IntPolynomial":
        return poly_compose_square(self)


def _coerce(p) -> IntPolynomial:
    if isinstance(p, IntPolynomial):
        return p
    if isinstance(p, int) and not isinstance(p, bool):
        return IntPolynomial.constant(p)
    raise TypeError(f"cannot use {type(p).__name__} as IntPolynomial")


ZERO = IntPolynomial()
ONE = IntPolynomial.constant(1)
X = IntPolynomial.monomial(1)


def poly_add(a: IntPolynomial, b: IntPolynomial) -> IntPolynomial:
    return a + b


def poly_mul(a: IntPolynomial, b: IntPolynomial) -> IntPolynomial:
    return a * b


def poly_eval(p: IntPolynomial, x: Number) -> Number:
    """Horner evaluation; exact for int and Fraction arguments."""
    acc: Number = 0
    for c in reversed(p.coeffs):
        acc = acc * x + c
    return acc


def poly_derivative(p: IntPolynomial) -> IntPolynomial:
    return IntPolynomial(i * c for i, c in enumerate(p.coeffs) if i > 0)


def poly_compose_square(p: IntPolynomial) -> IntPolynomial:
    """Return p(x^2)."""
    out = [0] * max(0, 2 * len(p.coeffs) - 1)
    for i, c in enumerate(p.coeffs):
        out[2 * i] = c
    return IntPolynomial(out)


class BiPoly:
    """Polynomial in (x, lam) stored as coefficients of powers of lam.

    ``lambda_coeffs[j]`` is the IntPolynomial in x multiplying ``lam**j``.
    """

    __slots__ = ("lambda_coeffs",)

    def __init__(self, lambda_coeffs: Iterable[IntPolynomial] = ()):
        c = [_coerce(p) for p in lambda_coeffs]
        while c and c[-1].is_zero():
            c.pop()
        object.__setattr__(self, "lambda_coeffs", tuple(c))

    def __setattr__(self, name, value):
        raise AttributeError("BiPoly is immutable")

    @property
    def lambda_degree(self) -> int:
        return len(self.lambda_coeffs) - 1

    def is_monic(self) -> bool:
        return bool(self.lambda_coeffs) and self.lambda_coeffs[-1] == ONE

    def __eq__(self, other) -> bool:
        if not isinstance(other, BiPoly):
            return NotImplemented
        return self.lambda_coeffs == other.lambda_coeffs

    def __hash__(self) -> int:
        return hash(self.lambda_coeffs)

    def __repr__(self) -> str:
        return f"BiPoly({[list(p.coeffs) for p in self.lambda_coeffs]})"

    def partial_x(self) -> "BiPoly":
        return BiPoly(p.derivative() for p in self.lambda_coeffs)

    def partial_lambda(self) -> "BiPoly":
        return BiPoly(p * j for j, p in enumerate(self.lambda_coeffs) if j > 0)

    def at_x(self, x: Number) -> list[Number]:
        """Univariate polynomial in lam (ascending coefficients) at fixed x."""
        return [poly_eval(p, x) for p in self.lambda_coeffs]

    def __call__(self, x: Number, lam: Number) -> Number:
        return bipoly_eval(self, x, lam)


def bipoly_eval(F: BiPoly, x: Number, lam: Number) -> Number:
    acc: Number = 0
    for p in reversed(F.lambda_coeffs):
        acc = acc * lam + poly_eval(p, x)
    return acc


def bipoly_partials(F: BiPoly) -> tuple[BiPoly, BiPoly, BiPoly, BiPoly, BiPoly]:
    """Return (F_x, F_lam, F_xx, F_xlam, F_lamlam)."""
    Fx = F.partial_x()
    Fl = F.partial_lambda()
    return Fx, Fl, Fx.partial_x(), Fx.partial_lambda(), Fl.partial_lambda()


def uni_eval(coeffs: Sequence[Number], t: Number) -> Number:
    """Horner evaluation of an ascending coefficient list."""
    acc: Number = 0
    for c in reversed(coeffs):
        acc = acc * t + c
    return acc
