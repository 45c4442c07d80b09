"""The elementary filiform Lie algebra of dimension n+2 over Q.

Basis e_1, ..., e_{n+2}; the only nonzero products of basis vectors are
[e_1, e_i] = (n+2-i) e_{i+1} for 2 <= i <= n+1, extended bilinearly and
antisymmetrically.  Besides the bracket, this module carries the span and
closure machinery for subalgebras, the normal form of non-commutative
subalgebras, the largest ideal contained in a subalgebra, the abelian
subalgebras spanned by e_{1+i} + a_i e_{n+2}, and the automorphism that
straightens those onto span{e_2, ..., e_{n+1}}.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Optional, Sequence

from .exact import (
    RatMatrix,
    in_row_space,
    nullspace,
    rational_from_str,
    row_space_basis,
    span_residual,
)


class NotClosedError(ValueError):
    """Raised when an operation requires a bracket-closed subspace."""


@dataclass(frozen=True)
class AlgebraElement:
    """Element of the algebra, as coefficients over e_1, ..., e_{n+2}.

    ``coeffs[i-1]`` is the e_i coefficient.
    """

    n: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("n must be >= 1")
        coeffs = tuple(Fraction(c) for c in self.coeffs)
        if len(coeffs) != self.n + 2:
            raise ValueError(f"expected {self.n + 2} coefficients, got {len(coeffs)}")
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __add__(self, other: AlgebraElement) -> AlgebraElement:
        _same_n(self, other)
        return AlgebraElement(self.n, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: AlgebraElement) -> AlgebraElement:
        _same_n(self, other)
        return AlgebraElement(self.n, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> AlgebraElement:
        return AlgebraElement(self.n, tuple(-c for c in self.coeffs))

    def __mul__(self, scalar: object) -> AlgebraElement:
        if not isinstance(scalar, (int, Fraction)):
            return NotImplemented
        f = Fraction(scalar)
        return AlgebraElement(self.n, tuple(f * c for c in self.coeffs))

    __rmul__ = __mul__

    def to_json(self) -> dict:
        return {"n": self.n, "coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> AlgebraElement:
        return cls(int(data["n"]), tuple(rational_from_str(s) for s in data["coeffs"]))


def _same_n(x: AlgebraElement, y: AlgebraElement) -> None:
    if x.n != y.n:
        raise ValueError(f"dimension mismatch: n={x.n} vs n={y.n}")


def zero_element(n: int) -> AlgebraElement:
    return AlgebraElement(n, (Fraction(0),) * (n + 2))


def basis_element(n: int, i: int) -> AlgebraElement:
    """The basis vector e_i, 1 <= i <= n+2."""
    if not 1 <= i <= n + 2:
        raise ValueError(f"basis index {i} out of range 1..{n + 2}")
    return AlgebraElement(n, tuple(Fraction(int(j == i - 1)) for j in range(n + 2)))


def bracket(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    """Lie bracket [x, y]."""
    _same_n(x, y)
    n = x.n
    out = [Fraction(0)] * (n + 2)
    for i in range(2, n + 2):
        w = x.coeffs[0] * y.coeffs[i - 1] - y.coeffs[0] * x.coeffs[i - 1]
        if w:
            out[i] += (n + 2 - i) * w
    return AlgebraElement(n, tuple(out))


@dataclass(frozen=True)
class SubalgebraBasis:
    """Subspace of the algebra held as a reduced row echelon basis.

    The reduced form is canonical, so two SubalgebraBasis values are equal
    iff they describe the same subspace.
    """

    n: int
    basis: tuple[AlgebraElement, ...]

    @classmethod
    def span(cls, n: int, elements: Iterable[AlgebraElement]) -> SubalgebraBasis:
        elems = list(elements)
        for e in elems:
            if e.n != n:
                raise ValueError("element dimension does not match subalgebra dimension")
        rows = row_space_basis([e.coeffs for e in elems]) if elems else ()
        return cls(n, tuple(AlgebraElement(n, row) for row in rows))

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def coord_rows(self) -> tuple[tuple[Fraction, ...], ...]:
        return tuple(e.coeffs for e in self.basis)

    def contains(self, element: AlgebraElement) -> bool:
        if element.n != self.n:
            return False
        return in_row_space(element.coeffs, self.coord_rows())

    def is_bracket_closed(self) -> bool:
        rows = self.coord_rows()
        items = self.basis
        for i in range(len(items)):
            for j in range(i + 1, len(items)):
                if not in_row_space(bracket(items[i], items[j]).coeffs, rows):
                    return False
        return True

    def is_commutative(self) -> bool:
        items = self.basis
        return all(bracket(items[i], items[j]).is_zero
                   for i in range(len(items)) for j in range(i + 1, len(items)))

    def to_json(self) -> list:
        return [e.to_json() for e in self.basis]

    @classmethod
    def from_json(cls, n: int, data: list) -> SubalgebraBasis:
        return cls.span(n, [AlgebraElement.from_json(d) for d in data])


def full_algebra(n: int) -> SubalgebraBasis:
    return SubalgebraBasis.span(n, [basis_element(n, i) for i in range(1, n + 3)])


def lower_central_series(n: int) -> list[SubalgebraBasis]:
    """The descending series g, [g, g], [g, [g, g]], ... down to zero."""
    g = full_algebra(n)
    series = [g]
    while series[-1].dimension > 0:
        prev = series[-1]
        products = [bracket(x, y) for x in g.basis for y in prev.basis]
        series.append(SubalgebraBasis.span(n, products))
    return series


def subalgebra_closure(generators: Sequence[AlgebraElement]) -> SubalgebraBasis:
    """Smallest bracket-closed subspace containing the generators."""
    if not generators:
        raise ValueError("need at least one generator")
    n = generators[0].n
    current = SubalgebraBasis.span(n, generators)
    while True:
        rows = current.coord_rows()
        fresh = []
        items = current.basis
        for i in range(len(items)):
            for j in range(i + 1, len(items)):
                b = bracket(items[i], items[j])
                if not b.is_zero and not in_row_space(b.coeffs, rows):
                    fresh.append(b)
        if not fresh:
            return current
        current = SubalgebraBasis.span(n, list(items) + fresh)


@dataclass(frozen=True)
class SubalgebraForm:
    """Normal form of a non-commutative subalgebra.

    The subspace equals span{e_1 + offset, e_index, ..., e_{n+2}} with the
    offset supported on e_2, ..., e_{index-1}.
    """

    n: int
    index: int
    offset: AlgebraElement

    def rebuild(self) -> SubalgebraBasis:
        first = basis_element(self.n, 1) + self.offset
        tail = [basis_element(self.n, i) for i in range(self.index, self.n + 3)]
        return SubalgebraBasis.span(self.n, [first] + tail)


def classify_subalgebra(v: SubalgebraBasis) -> Optional[SubalgebraForm]:
    """Normal form of a bracket-closed subspace; None when commutative."""
    if not v.is_bracket_closed():
        raise NotClosedError("subspace is not closed under the bracket")
    if v.is_commutative():
        return None
    n = v.n
    size = n + 2
    rows = v.coord_rows()
    first = rows[0]
    if not first[0]:
        raise RuntimeError("non-commutative subspace with no e_1 component")
    tail = rows[1:]
    start_col = size - len(tail)
    for offset_col, row in enumerate(tail):
        expected = tuple(Fraction(int(c == start_col + offset_col)) for c in range(size))
        if row != expected:
            raise RuntimeError("bracket-closed subspace is not in tail normal form")
    index = start_col + 1
    if index > n + 1:
        raise RuntimeError("non-commutative subspace cannot have an empty bracket range")
    offset = AlgebraElement(n, (Fraction(0),) + first[1:])
    return SubalgebraForm(n, index, offset)


def core_ideal(h: SubalgebraBasis) -> SubalgebraBasis:
    """Largest ideal of the full algebra contained in the subspace h."""
    if not h.is_bracket_closed():
        raise NotClosedError("subspace is not closed under the bracket")
    n = h.n
    generators = [basis_element(n, i) for i in range(1, n + 3)]
    current = h
    while current.dimension > 0:
        rows = current.coord_rows()
        d = current.dimension
        constraints: list[list[Fraction]] = []
        for g in generators:
            residuals = [span_residual(bracket(g, b).coeffs, rows) for b in current.basis]
            for coord in range(n + 2):
                row = [res[coord] for res in residuals]
                if any(row):
                    constraints.append(row)
        if not constraints:
            return current
        lam = nullspace(constraints, d)
        if len(lam) == d:
            return current
        kept = []
        for coeffs in lam:
            acc = zero_element(n)
            for c, b in zip(coeffs, current.basis):
                if c:
                    acc = acc + c * b
            kept.append(acc)
        current = SubalgebraBasis.span(n, kept)
    return current


def inn_subalgebra(a: Sequence[Fraction]) -> SubalgebraBasis:
    """The abelian subalgebra spanned by e_{1+i} + a_i e_{n+2}, i = 1..n."""
    n = len(a)
    if n < 1:
        raise ValueError("parameter vector must be nonempty")
    top = basis_element(n, n + 2)
    elems = [basis_element(n, 1 + i) + Fraction(a[i - 1]) * top for i in range(1, n + 1)]
    return SubalgebraBasis.span(n, elems)


@dataclass(frozen=True)
class LinearMap:
    """Linear self-map of the algebra, acting on basis coordinates."""

    n: int
    matrix: RatMatrix

    def __post_init__(self) -> None:
        size = self.n + 2
        if (self.matrix.rows, self.matrix.cols) != (size, size):
            raise ValueError(f"matrix must be {size}x{size}")

    def apply(self, x: AlgebraElement) -> AlgebraElement:
        if x.n != self.n:
            raise ValueError("element dimension does not match map dimension")
        return AlgebraElement(self.n, self.matrix.apply(x.coeffs))

    @property
    def invertible(self) -> bool:
        return self.matrix.rank == self.n + 2

    def map_span(self, v: SubalgebraBasis) -> SubalgebraBasis:
        return SubalgebraBasis.span(self.n, [self.apply(b) for b in v.basis])


def identity_map(n: int) -> LinearMap:
    return LinearMap(n, RatMatrix.identity(n + 2))


def phi_automorphism(a: Sequence[Fraction]) -> LinearMap:
    """The straightening automorphism attached to the parameter vector a.

    It fixes e_1 and e_{n+2}; for 2 <= j <= n+1 it sends e_j to

        e_j - sum_{d=1}^{n+2-j} C(n+2-j, d) a_{n+1-d} e_{j+d}.

    The binomial coefficients are forced: matching
    [e_1, phi(e_j)] = phi([e_1, e_j]) propagates each e_{n+2}-column entry
    -a_{j-1} down the diagonals, and the resulting cascade is the unique
    bracket automorphism with these last-column entries.  Its image of
    inn_subalgebra(a) is span{e_2, ..., e_{n+1}}, because the e_{n+2}
    component of phi(e_{1+i}) is exactly -a_i.
    """
    n = len(a)
    if n < 1:
        raise ValueError("parameter vector must be nonempty")
    vals = [Fraction(x) for x in a]
    size = n + 2
    columns: list[list[Fraction]] = []
    for j in range(1, size + 1):
        col = [Fraction(0)] * size
        col[j - 1] = Fraction(1)
        if 2 <= j <= n + 1:
            for d in range(1, size - j + 1):
                col[j + d - 1] -= comb(size - j, d) * vals[n - d]
        columns.append(col)
    rows = tuple(tuple(columns[c][r] for c in range(size)) for r in range(size))
    return LinearMap(n, RatMatrix(rows))


def is_bracket_automorphism(m: LinearMap) -> bool:
    """True iff the map is invertible and preserves all basis brackets."""
    if not m.invertible:
        return False
    n = m.n
    elems = [basis_element(n, i) for i in range(1, n + 3)]
    images = [m.apply(e) for e in elems]
    for i in range(len(elems)):
        for j in range(i + 1, len(elems)):
            if m.apply(bracket(elems[i], elems[j])) != bracket(images[i], images[j]):
                return False
    return True
