"""Exact arithmetic kernel: rationals, polynomials and matrices over Q.

Every construction in this package reduces to identities between polynomials
with rational coefficients, so all arithmetic here is exact.  Rationals are
``fractions.Fraction`` values (always reduced, positive denominator,
arbitrary-precision integers underneath).  Polynomials store coefficients in
ascending power order with no trailing zeros; a two-variable polynomial is
represented as a :class:`Poly` in the outer variable whose coefficients are
again ``Poly`` values in the inner variable (see :func:`nest_outer` and
:func:`nest_inner`), so checking a two-variable identity reduces to all
nested coefficients being zero.  Matrices are dense tuples of Fractions, and
row reduction, ranks, nullspaces and linear solves are exact Gaussian
elimination.

Wire formats: a rational serializes as the string ``"p/q"``, or ``"p"`` when
the denominator is 1; a polynomial serializes as a JSON array of such strings
in ascending power order.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

Rational = Fraction

Coeff = Union[Fraction, "Poly"]

_RATIONAL_RE = re.compile(r"[+-]?\d+(/[1-9]\d*)?")


def rational_from_str(text: str) -> Fraction:
    """Parse the wire form ``"p"`` or ``"p/q"`` (q > 0) into a Fraction."""
    if not isinstance(text, str):
        raise ValueError(f"expected a rational string, got {type(text).__name__}")
    s = text.strip()
    if not _RATIONAL_RE.fullmatch(s):
        raise ValueError(f"not a rational string (expected 'p' or 'p/q'): {text!r}")
    return Fraction(s)


def rational_to_str(value: Fraction) -> str:
    """Serialize as ``"p/q"``, or ``"p"`` when the denominator is 1."""
    return str(Fraction(value))


def _coeff(value: object) -> Coeff:
    if isinstance(value, Poly):
        return Fraction(0) if value.is_zero else value
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"cannot use {type(value).__name__} as a polynomial coefficient")


class PolyKind(str, Enum):
    ZERO = "zero"
    CONSTANT = "constant"
    LINEAR = "linear"
    NONLINEAR = "nonlinear"


class Poly:
    """Univariate polynomial with exact coefficients, ascending powers.

    Coefficients are Fractions, or Poly values themselves when the object
    stands for a two-variable polynomial.  The zero polynomial has an empty
    coefficient tuple.  Instances are immutable; all operations return new
    polynomials and never round.
    """

    __slots__ = ("coeffs",)

    coeffs: tuple[Coeff, ...]

    def __init__(self, coeffs: Iterable[object] = ()):
        items = [_coeff(c) for c in coeffs]
        while items and items[-1] == 0:
            items.pop()
        object.__setattr__(self, "coeffs", tuple(items))

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("Poly is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls) -> Poly:
        return cls()

    @classmethod
    def const(cls, value: object) -> Poly:
        return cls((value,))

    @classmethod
    def monomial(cls, power: int, coeff: object = 1) -> Poly:
        if power < 0:
            raise ValueError("power must be nonnegative")
        return cls((0,) * power + (coeff,))

    @classmethod
    def var(cls) -> Poly:
        """The polynomial x."""
        return cls.monomial(1)

    @classmethod
    def from_strings(cls, items: Sequence[str]) -> Poly:
        return cls(rational_from_str(s) for s in items)

    # -- structure ----------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        """Degree of the polynomial; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def coefficient(self, power: int) -> Coeff:
        """Coefficient of x**power (zero beyond the stored degree)."""
        if 0 <= power < len(self.coeffs):
            return self.coeffs[power]
        return Fraction(0)

    def classify(self) -> PolyKind:
        """Zero, nonzero constant, degree-1, or degree >= 2."""
        d = self.degree
        if d < 0:
            return PolyKind.ZERO
        if d == 0:
            return PolyKind.CONSTANT
        if d == 1:
            return PolyKind.LINEAR
        return PolyKind.NONLINEAR

    def to_strings(self) -> list[str]:
        if any(isinstance(c, Poly) for c in self.coeffs):
            raise TypeError("nested polynomial has no flat string form")
        return [str(c) for c in self.coeffs]

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other: object) -> Poly:
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for k, c in enumerate(b):
            out[k] = out[k] + c
        return Poly(out)

    __radd__ = __add__

    def __neg__(self) -> Poly:
        return Poly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: object) -> Poly:
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: object) -> Poly:
        if isinstance(other, (int, Fraction)):
            return Poly.const(other) + (-self)
        return NotImplemented

    def __mul__(self, other: object) -> Poly:
        if isinstance(other, (int, Fraction)):
            return Poly(tuple(c * Fraction(other) for c in self.coeffs))
        if not isinstance(other, Poly):
            return NotImplemented
        if self.is_zero or other.is_zero:
            return Poly()
        out: list[object] = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Poly(out)

    def __rmul__(self, other: object) -> Poly:
        if isinstance(other, (int, Fraction)):
            return self.__mul__(other)
        return NotImplemented

    def __pow__(self, power: int) -> Poly:
        if not isinstance(power, int) or power < 0:
            raise ValueError("only nonnegative integer powers")
        result = Poly.const(1)
        for _ in range(power):
            result = result * self
        return result

    def __call__(self, point: object):
        """Evaluate by Horner's rule; exact for Fraction or Poly arguments."""
        result: object = 0
        for c in reversed(self.coeffs):
            result = result * point + c
        if isinstance(result, (Fraction, Poly)):
            return result
        return Fraction(result)

    # -- comparison / display ------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(("Poly", self.coeffs))

    def __repr__(self) -> str:
        return f"Poly([{', '.join(str(c) for c in self.coeffs)}])"

    def __str__(self) -> str:
        return self.format()

    def format(self, var: str = "x") -> str:
        """Human-readable form, highest power first."""
        if self.is_zero:
            return "0"
        inner_var = "y" if var != "y" else "z"
        parts: list[str] = []
        for k in range(self.degree, -1, -1):
            c = self.coefficient(k)
            if c == 0:
                continue
            power = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
            if isinstance(c, Poly):
                body = f"({c.format(inner_var)})" + (f"*{power}" if power else "")
                sign = "+"
            else:
                sign = "-" if c < 0 else "+"
                mag = abs(c)
                if not power:
                    body = str(mag)
                elif mag == 1:
                    body = power
                else:
                    body = f"{mag}*{power}"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text


def nest_outer(p: Poly) -> Poly:
    """Reinterpret a scalar polynomial in the outer variable of a pair."""
    return Poly(tuple(Poly.const(c) for c in p.coeffs))


def nest_inner(p: Poly) -> Poly:
    """Embed a scalar polynomial as an inner-variable constant of a pair."""
    return Poly((p,))


# ---------------------------------------------------------------------------
# Matrices and linear algebra over Q
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RatMatrix:
    """Dense rectangular matrix of Fractions."""

    entries: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self) -> None:
        rows = tuple(tuple(Fraction(e) for e in row) for row in self.entries)
        if not rows or not rows[0]:
            raise ValueError("matrix must have positive dimensions")
        width = len(rows[0])
        if any(len(row) != width for row in rows):
            raise ValueError("matrix rows must all have the same length")
        object.__setattr__(self, "entries", rows)

    @classmethod
    def identity(cls, n: int) -> RatMatrix:
        return cls(tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)))

    @classmethod
    def zero(cls, rows: int, cols: int) -> RatMatrix:
        return cls(tuple((Fraction(0),) * cols for _ in range(rows)))

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    @property
    def is_zero(self) -> bool:
        return all(not e for row in self.entries for e in row)

    def __matmul__(self, other: RatMatrix) -> RatMatrix:
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        out = []
        for arow in self.entries:
            acc = [Fraction(0)] * other.cols
            for k, aik in enumerate(arow):
                if not aik:
                    continue
                for j, bkj in enumerate(other.entries[k]):
                    if bkj:
                        acc[j] += aik * bkj
            out.append(tuple(acc))
        return RatMatrix(tuple(out))

    def __add__(self, other: RatMatrix) -> RatMatrix:
        self._same_shape(other)
        return RatMatrix(tuple(tuple(a + b for a, b in zip(r1, r2))
                               for r1, r2 in zip(self.entries, other.entries)))

    def __sub__(self, other: RatMatrix) -> RatMatrix:
        self._same_shape(other)
        return RatMatrix(tuple(tuple(a - b for a, b in zip(r1, r2))
                               for r1, r2 in zip(self.entries, other.entries)))

    def scaled(self, factor: Fraction) -> RatMatrix:
        f = Fraction(factor)
        return RatMatrix(tuple(tuple(f * e for e in row) for row in self.entries))

    def apply(self, vector: Sequence[Fraction]) -> tuple[Fraction, ...]:
        """Matrix-vector product."""
        if len(vector) != self.cols:
            raise ValueError("vector length does not match matrix width")
        return tuple(sum((e * v for e, v in zip(row, vector) if v), Fraction(0))
                     for row in self.entries)

    @property
    def rank(self) -> int:
        return len(row_space_basis(self.entries))

    def transpose(self) -> RatMatrix:
        return RatMatrix(tuple(zip(*self.entries)))

    def _same_shape(self, other: RatMatrix) -> None:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("matrix shapes differ")


def _rref_inplace(mat: list[list[Fraction]]) -> list[int]:
    """Reduce to reduced row echelon form in place; return pivot columns."""
    pivots: list[int] = []
    if not mat:
        return pivots
    n_rows, n_cols = len(mat), len(mat[0])
    r = 0
    for c in range(n_cols):
        pivot_row = next((i for i in range(r, n_rows) if mat[i][c]), None)
        if pivot_row is None:
            continue
        mat[r], mat[pivot_row] = mat[pivot_row], mat[r]
        inv = 1 / mat[r][c]
        mat[r] = [e * inv for e in mat[r]]
        for i in range(n_rows):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == n_rows:
            break
    return pivots


def row_space_basis(vectors: Iterable[Sequence[Fraction]]) -> tuple[tuple[Fraction, ...], ...]:
    """Reduced row echelon basis of the span of the given vectors.

    The output is canonical: two spans are equal iff their bases are equal
    tuples, and re-reducing a basis returns it unchanged.
    """
    mat = [[Fraction(e) for e in v] for v in vectors]
    widths = {len(row) for row in mat}
    if len(widths) > 1:
        raise ValueError("vectors must all have the same length")
    pivots = _rref_inplace(mat)
    return tuple(tuple(row) for row in mat[: len(pivots)])


def span_residual(vector: Sequence[Fraction],
                  basis: Sequence[Sequence[Fraction]]) -> tuple[Fraction, ...]:
    """Residual of a vector after elimination against an RREF basis."""
    res = [Fraction(e) for e in vector]
    for row in basis:
        pivot = next(i for i, e in enumerate(row) if e)
        f = res[pivot]
        if f:
            res = [a - f * b for a, b in zip(res, row)]
    return tuple(res)


def in_row_space(vector: Sequence[Fraction], basis: Sequence[Sequence[Fraction]]) -> bool:
    return not any(span_residual(vector, basis))


def nullspace(rows: Sequence[Sequence[Fraction]], n_cols: int) -> tuple[tuple[Fraction, ...], ...]:
    """Basis of the solution space of the homogeneous system rows * x = 0."""
    mat = [[Fraction(e) for e in row] for row in rows]
    pivots = _rref_inplace(mat)
    free = [c for c in range(n_cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * n_cols
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -mat[r][fc]
        basis.append(tuple(v))
    return tuple(basis)


@dataclass(frozen=True)
class LinearSolution:
    """A particular solution plus a basis of the homogeneous solutions."""

    particular: tuple[Fraction, ...]
    null_basis: tuple[tuple[Fraction, ...], ...]

    @property
    def unique(self) -> bool:
        return not self.null_basis


def linear_solve(a: RatMatrix, b: Sequence[Fraction]) -> Optional[LinearSolution]:
    """Solve a*x = b exactly; None when the system is inconsistent."""
    if a.rows != len(b):
        raise ValueError("right-hand side length does not match matrix height")
    aug = [list(row) + [Fraction(bb)] for row, bb in zip(a.entries, b)]
    pivots = _rref_inplace(aug)
    if a.cols in pivots:
        return None
    particular = [Fraction(0)] * a.cols
    for r, pc in enumerate(pivots):
        particular[pc] = aug[r][-1]
    return LinearSolution(tuple(particular), nullspace(a.entries, a.cols))
