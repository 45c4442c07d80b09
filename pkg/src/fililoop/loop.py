"""Two-dimensional loops constructed from polynomial data.

A loop is specified by n polynomials v_1, ..., v_n with v_i(0) = 0.  Points
are pairs (u, z) multiplied by

    (u1, z1) * (u2, z2) = (u1 + u2, z1 + z2 + sum_k (-1)^k u2^k v_k(u1)),

which is the coset multiplication induced on G/H by the section sending
(u, z) to g(u, v_1(u), ..., v_n(u), z) in the filiform group.  The spec is
proper (the loop is not a group) iff every v_i is nonconstant and v_n is
nonlinear.  Divisions are closed-form because the z-component above is
affine in z1 and z2.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .exact import Poly, PolyKind, RatMatrix, nest_inner, nest_outer, rational_from_str
from .group import GroupElement, decompose, gmul

__all__ = [
    "CommMatrix",
    "LoopPoint",
    "LoopSpec",
    "SpecError",
    "SpecReport",
    "comm_defect",
    "coset_representative",
    "is_commutative",
    "ldiv",
    "left_translation",
    "lmul",
    "rdiv",
    "section_sharply_transitive",
    "section_solve",
    "spec_from_comm_matrix",
    "validate_spec",
]


class SpecError(ValueError):
    """Loop specification violates a structural requirement."""


@dataclass(frozen=True)
class LoopSpec:
    """n polynomials v_1..v_n with v_i(0) = 0, defining the multiplication.

    Construction rejects data violating the identity condition; the
    properness flag and its reasons are computed once here.
    """

    n: int
    v: tuple[Poly, ...]
    proper: bool = field(init=False, compare=False, repr=False)
    proper_reasons: tuple[str, ...] = field(init=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        if self.n < 1:
            raise SpecError("n must be >= 1")
        polys = tuple(self.v)
        if len(polys) != self.n:
            raise SpecError(f"expected {self.n} polynomials, got {len(polys)}")
        for idx, p in enumerate(polys, start=1):
            if not isinstance(p, Poly):
                raise SpecError(f"v{idx} is not a polynomial")
            if p.coefficient(0) != 0:
                raise SpecError(f"v{idx}(0) = {p.coefficient(0)}, loop identity requires 0")
        object.__setattr__(self, "v", polys)
        report = validate_spec(self.n, polys)
        object.__setattr__(self, "proper", report.proper)
        object.__setattr__(self, "proper_reasons", report.reasons)

    def to_json(self) -> dict:
        return {"n": self.n, "v": [p.to_strings() for p in self.v]}

    @classmethod
    def from_json(cls, data: dict) -> LoopSpec:
        return cls(int(data["n"]), tuple(Poly.from_strings(item) for item in data["v"]))


@dataclass(frozen=True)
class SpecReport:
    identity_ok: bool
    proper: bool
    reasons: tuple[str, ...]

    def to_json(self) -> dict:
        return {"identity_ok": self.identity_ok, "proper": self.proper,
                "reasons": list(self.reasons)}


def validate_spec(n: int, polys: Sequence[Poly]) -> SpecReport:
    """Check the identity condition and properness of raw polynomial data."""
    if n < 1 or len(polys) != n:
        raise ValueError(f"expected {n} polynomials with n >= 1, got {len(polys)}")
    reasons: list[str] = []
    identity_ok = True
    for idx, p in enumerate(polys, start=1):
        c0 = p.coefficient(0)
        if c0 != 0:
            identity_ok = False
            reasons.append(f"v{idx}(0) = {c0}, loop identity requires 0")
    proper = identity_ok
    for idx, p in enumerate(polys, start=1):
        kind = p.classify()
        if kind in (PolyKind.ZERO, PolyKind.CONSTANT):
            proper = False
            reasons.append(f"v{idx} must be non-constant")
        elif idx == n and kind is PolyKind.LINEAR:
            proper = False
            reasons.append(f"v{n} must be non-linear")
    return SpecReport(identity_ok, proper, tuple(reasons))


@dataclass(frozen=True)
class LoopPoint:
    u: Fraction
    z: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "u", Fraction(self.u))
        object.__setattr__(self, "z", Fraction(self.z))

    @classmethod
    def origin(cls) -> LoopPoint:
        return cls(Fraction(0), Fraction(0))

    def to_json(self) -> dict:
        return {"u": str(self.u), "z": str(self.z)}

    @classmethod
    def from_json(cls, data: dict) -> LoopPoint:
        return cls(rational_from_str(data["u"]), rational_from_str(data["z"]))


def _twist(spec: LoopSpec, u1: Fraction, u2: Fraction) -> Fraction:
    """The z-correction sum_k (-1)^k u2^k v_k(u1)."""
    total = Fraction(0)
    for k in range(1, spec.n + 1):
        total += Fraction((-1) ** k) * u2 ** k * spec.v[k - 1](u1)
    return total


def lmul(spec: LoopSpec, a: LoopPoint, b: LoopPoint) -> LoopPoint:
    """Loop product a * b."""
    return LoopPoint(a.u + b.u, a.z + b.z + _twist(spec, a.u, b.u))


def ldiv(spec: LoopSpec, a: LoopPoint, b: LoopPoint) -> LoopPoint:
    """The unique y with a * y = b."""
    u = b.u - a.u
    return LoopPoint(u, b.z - a.z - _twist(spec, a.u, u))


def rdiv(spec: LoopSpec, b: LoopPoint, a: LoopPoint) -> LoopPoint:
    """The unique x with x * a = b."""
    u = b.u - a.u
    return LoopPoint(u, b.z - a.z - _twist(spec, u, a.u))


def coset_representative(n: int, p: LoopPoint) -> GroupElement:
    """The group element g(u, 0, ..., 0, z) representing the coset of p."""
    return GroupElement(n, p.u, (Fraction(0),) * n, p.z)


def left_translation(spec: LoopSpec, a: LoopPoint) -> GroupElement:
    """Section image g(u, v_1(u), ..., v_n(u), z) acting as translation by a.

    Multiplying this element onto a coset representative and decomposing
    reproduces lmul, which the test suite uses as the master oracle.
    """
    values = tuple(p(a.u) for p in spec.v)
    return GroupElement(spec.n, a.u, values, a.z)


def section_solve(spec: LoopSpec, source: LoopPoint,
                  target: LoopPoint) -> tuple[LoopPoint, tuple[Fraction, ...]]:
    """Solve sigma(u, z) * rep(source) = rep(target) * h for (u, z) and h.

    The first coordinate forces u = target.u - source.u and the remaining
    scalar equation is affine in z with unit coefficient, so the solution
    exists and is unique; the returned tuple carries the H-component
    parameters of the factorization.
    """
    u = target.u - source.u
    z = target.z - source.z - _twist(spec, u, source.u)
    moved = gmul(left_translation(spec, LoopPoint(u, z)),
                 coset_representative(spec.n, source))
    slice_part, h_part = decompose(moved)
    if (slice_part.c, slice_part.b) != (target.u, target.z):
        raise RuntimeError("closed-form section solution failed verification")
    return LoopPoint(u, z), h_part.a


def section_sharply_transitive(spec: LoopSpec,
                               samples: Sequence[tuple[LoopPoint, LoopPoint]]) -> bool:
    """Verify existence and uniqueness of the section equation on samples."""
    for source, target in samples:
        section_solve(spec, source, target)
    return True


@dataclass(frozen=True)
class CommMatrix:
    """Coefficient matrix A with v_i(x) = sum_j A[i][j] x^j."""

    n: int
    a: RatMatrix

    def __post_init__(self) -> None:
        if (self.a.rows, self.a.cols) != (self.n, self.n):
            raise ValueError(f"matrix must be {self.n}x{self.n}")

    @property
    def signed_symmetric(self) -> bool:
        """True iff a_ij = (-1)^(i+j) a_ji for all i, j."""
        e = self.a.entries
        return all(e[i][j] == Fraction((-1) ** (i + j)) * e[j][i]
                   for i in range(self.n) for j in range(i + 1, self.n))


def spec_from_comm_matrix(cm: CommMatrix) -> LoopSpec:
    """Build the loop spec v_i(x) = sum_j a_ij x^j from a signed-symmetric A.

    Signed symmetry makes the resulting loop commutative (comm_defect is the
    zero polynomial); matrices without it are rejected.
    """
    if not cm.signed_symmetric:
        raise ValueError("matrix is not signed-symmetric (a_ij = (-1)^(i+j) a_ji)")
    polys = tuple(Poly((Fraction(0),) + row) for row in cm.a.entries)
    return LoopSpec(cm.n, polys)


def comm_defect(spec: LoopSpec) -> Poly:
    """The formal difference of the z-components of a*b and b*a.

    Returned as a polynomial in the first argument's u whose coefficients
    are polynomials in the second argument's u; the loop is commutative iff
    the result is the zero polynomial.
    """
    total = Poly.zero()
    for k in range(1, spec.n + 1):
        vk = spec.v[k - 1]
        term1 = nest_outer(vk) * nest_inner(Poly.monomial(k))
        term2 = nest_outer(Poly.monomial(k)) * nest_inner(vk)
        total = total + Fraction((-1) ** k) * (term1 - term2)
    return total


def is_commutative(spec: LoopSpec) -> bool:
    return comm_defect(spec).is_zero
