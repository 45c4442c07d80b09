"""Multiplication-group certificates for the polynomial loops.

Two independent questions are decided here.  First, for a loop spec on the
group of dimension n+2: do the right translations stay inside the group
generated by the left translations?  That holds iff companion polynomials
s_1, ..., s_n exist solving the two-variable identity

    sum_k (-1)^k x^k (s_k(u) + v_k(u)) = sum_j (-1)^j u^j v_j(x),

which coefficient matching decides exactly (:func:`solve_companions`).

Second, for a loop with a single nonlinear polynomial v_1 (degree m >= 2):
the multiplication group is the filiform group of dimension m+2.  The
verification is constructive: the family of left translations embeds into
that group, the unique linear transversal connected to it is computed from
the coefficients of v_1, the commutator condition is checked on a sample
grid, generation is certified through the Lie algebra closure of element
logarithms with a rank-stabilization guard, and the candidate stabilizer
subalgebra is checked to contain no nonzero ideal.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .algebra import (
    SubalgebraBasis,
    basis_element,
    core_ideal,
    inn_subalgebra,
    phi_automorphism,
    subalgebra_closure,
)
from .exact import Poly, PolyKind, nest_inner, nest_outer
from .group import GroupElement, commutator, glog, in_H
from .loop import LoopSpec

__all__ = [
    "Certificate",
    "CompanionSolution",
    "DEFAULT_GRID",
    "HConnectedness",
    "LeftTranslationFamily",
    "MultReport",
    "SampleGrid",
    "StabilizationError",
    "TransversalSpec",
    "check_h_connected",
    "companion_residual",
    "generated_subalgebra_of",
    "grid_points",
    "h_connected_transversal",
    "inn_correspondence_check",
    "left_translation_elements",
    "mult_group_dimension",
    "mult_group_report",
    "solve_companions",
    "transversal_elements",
]


class StabilizationError(RuntimeError):
    """The log-closure rank grew on held-out samples; enlarge the sample."""


# ---------------------------------------------------------------------------
# Companion polynomials (does the multiplication group collapse onto G?)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CompanionSolution:
    s: tuple[Poly, ...]

    def to_json(self) -> list:
        return [p.to_strings() for p in self.s]


def companion_residual(spec: LoopSpec, s: Sequence[Poly]) -> Poly:
    """Left minus right side of the companion identity, as a nested polynomial.

    Outer variable x, inner variable u; the candidate s solves the identity
    iff the residual is the zero polynomial.
    """
    if len(s) != spec.n:
        raise ValueError(f"expected {spec.n} companion polynomials")
    left = Poly.zero()
    right = Poly.zero()
    for k in range(1, spec.n + 1):
        sign = Fraction((-1) ** k)
        left = left + sign * nest_outer(Poly.monomial(k)) * nest_inner(s[k - 1] + spec.v[k - 1])
        right = right + sign * nest_inner(Poly.monomial(k)) * nest_outer(spec.v[k - 1])
    return left - right


def solve_companions(spec: LoopSpec) -> Optional[CompanionSolution]:
    """Companion polynomials s_1..s_n, or None when none exist.

    Matching the coefficient of x^k for k = 1..n determines each s_k
    uniquely; any coefficient of x^k with k > n on the right side must
    vanish identically, otherwise there is no solution.
    """
    n = spec.n
    max_deg = max(p.degree for p in spec.v)
    for m in range(n + 1, max_deg + 1):
        if any(p.coefficient(m) != 0 for p in spec.v):
            return None
    out = []
    for k in range(1, n + 1):
        r_k = Poly([Fraction(0)] + [Fraction((-1) ** j) * spec.v[j - 1].coefficient(k)
                                    for j in range(1, n + 1)])
        out.append(Fraction((-1) ** k) * r_k - spec.v[k - 1])
    solution = CompanionSolution(tuple(out))
    if not companion_residual(spec, solution.s).is_zero:
        raise RuntimeError("companion solution failed the identity check")
    return solution


# ---------------------------------------------------------------------------
# Transversals and left-translation families inside the bigger group
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TransversalSpec:
    """The linear transversal T = {g(x, a_1 x, ..., a_m x, y)}."""

    m: int
    a: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        vals = tuple(Fraction(x) for x in self.a)
        if len(vals) != self.m:
            raise ValueError(f"expected {self.m} coefficients, got {len(vals)}")
        object.__setattr__(self, "a", vals)


@dataclass(frozen=True)
class LeftTranslationFamily:
    """Left translations of the degree-m loop, embedded in dimension m+2.

    Elements are g(u, v1(u), 0, ..., 0, -v1(u)*u/2 + z).
    """

    m: int
    v1: Poly

    def __post_init__(self) -> None:
        if self.m < self.v1.degree:
            raise ValueError("ambient dimension is smaller than the polynomial degree")


def _check_v1(v1: Poly) -> None:
    if v1.coefficient(0) != 0:
        raise ValueError(f"v1(0) = {v1.coefficient(0)}, loop identity requires 0")
    if v1.classify() is not PolyKind.NONLINEAR:
        raise ValueError("v1 must be non-linear (the loop is not proper otherwise)")


def h_connected_transversal(v1: Poly) -> TransversalSpec:
    """The unique linear transversal whose commutators with the left
    translations of the v1-loop land in the stabilizer subgroup.

    For v1(u) = sum_k c_k u^k of degree m the coefficients are
    a_k = (-1)^(k+1) c_k, making x*v1(u) = sum_k (-1)^(k+1) u^k (a_k x) a
    formal identity; a_m is automatically nonzero.
    """
    _check_v1(v1)
    m = v1.degree
    a = tuple(Fraction((-1) ** (k + 1)) * v1.coefficient(k) for k in range(1, m + 1))
    spec = TransversalSpec(m, a)
    if not transversal_identity_holds(v1, spec):
        raise RuntimeError("transversal coefficients failed the formal identity")
    return spec


def transversal_identity_holds(v1: Poly, trans: TransversalSpec) -> bool:
    """Formal check of x*v1(u) = sum_k (-1)^(k+1) u^k a_k x (outer x, inner u)."""
    x = Poly.monomial(1)
    left = nest_outer(x) * nest_inner(v1)
    right = Poly.zero()
    for k in range(1, trans.m + 1):
        right = right + Fraction((-1) ** (k + 1)) * nest_outer(trans.a[k - 1] * x) * nest_inner(Poly.monomial(k))
    return (left - right).is_zero


def mult_group_dimension(v1: Poly) -> int:
    """Dimension of the multiplication group of the v1-loop: deg(v1) + 2."""
    _check_v1(v1)
    return v1.degree + 2


def left_translation_elements(family: LeftTranslationFamily,
                              samples: Sequence[tuple[Fraction, Fraction]]) -> list[GroupElement]:
    """Instantiate the embedded left-translation family at (u, z) samples."""
    m = family.m
    out = []
    for u, z in samples:
        u, z = Fraction(u), Fraction(z)
        value = family.v1(u)
        a = (value,) + (Fraction(0),) * (m - 1)
        out.append(GroupElement(m, u, a, -value * u / 2 + z))
    return out


def transversal_elements(trans: TransversalSpec,
                         samples: Sequence[tuple[Fraction, Fraction]]) -> list[GroupElement]:
    """Instantiate the linear transversal at (x, y) samples."""
    out = []
    for x, y in samples:
        x, y = Fraction(x), Fraction(y)
        out.append(GroupElement(trans.m, x, tuple(ak * x for ak in trans.a), y))
    return out


@dataclass(frozen=True)
class HConnectedness:
    ok: bool
    witness: Optional[tuple[GroupElement, GroupElement, GroupElement]]


def check_h_connected(left: Sequence[GroupElement],
                      right: Sequence[GroupElement]) -> HConnectedness:
    """Whether every pairwise commutator lands in the stabilizer subgroup.

    On failure the witness carries the offending pair and its commutator.
    """
    for x in left:
        for y in right:
            k = commutator(x, y)
            if not in_H(k):
                return HConnectedness(False, (x, y, k))
    return HConnectedness(True, None)


def generated_subalgebra_of(elements: Sequence[GroupElement],
                            holdout: int = 5) -> SubalgebraBasis:
    """Lie algebra closure of the logarithms of the sampled elements.

    The last ``holdout`` samples act as a stabilization guard: the closure
    of the earlier samples must already have the same dimension, otherwise
    the sample was too small to certify the generated subgroup and
    StabilizationError is raised.
    """
    if not elements:
        raise ValueError("need at least one element")
    logs = [glog(g) for g in elements]
    full = subalgebra_closure(logs)
    if holdout and len(logs) > holdout:
        base = subalgebra_closure(logs[:-holdout])
        if base.dimension != full.dimension:
            raise StabilizationError(
                f"closure rank grew from {base.dimension} to {full.dimension} on held-out samples")
    return full


def inn_correspondence_check(a: Sequence[Fraction]) -> bool:
    """Whether the straightening automorphism carries inn_subalgebra(a) onto
    span{e_2, ..., e_{n+1}}."""
    n = len(a)
    phi = phi_automorphism(a)
    image = phi.map_span(inn_subalgebra(a))
    target = SubalgebraBasis.span(n, [basis_element(n, i) for i in range(2, n + 2)])
    return image == target


# ---------------------------------------------------------------------------
# The full certificate pipeline
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SampleGrid:
    """Deterministic parameter grids for sampling group elements."""

    u_values: tuple[Fraction, ...] = tuple(Fraction(k) for k in (-2, -1, 1, 2, 3))
    z_values: tuple[Fraction, ...] = (Fraction(0), Fraction(1))


DEFAULT_GRID = SampleGrid()

_EXTRA_SAMPLE_SEED = 7193


def grid_points(grid: SampleGrid) -> list[tuple[Fraction, Fraction]]:
    return [(u, z) for u in grid.u_values for z in grid.z_values]


@dataclass(frozen=True)
class Certificate:
    name: str
    passed: bool
    witness: Optional[object] = None

    def to_json(self) -> dict:
        return {"name": self.name, "pass": self.passed, "witness": self.witness}


@dataclass(frozen=True)
class MultReport:
    claim: str
    certificates: tuple[Certificate, ...]
    mult_dimension: Optional[int]

    @property
    def all_pass(self) -> bool:
        return all(c.passed for c in self.certificates)

    def to_json(self) -> dict:
        return {
            "claim": self.claim,
            "certificates": [c.to_json() for c in self.certificates],
            "mult_dimension": self.mult_dimension,
        }


def _extra_samples(count: int, rng: random.Random) -> list[tuple[Fraction, Fraction]]:
    return [(Fraction(rng.randint(-6, 6), rng.randint(1, 4)),
             Fraction(rng.randint(-3, 3), rng.randint(1, 3))) for _ in range(count)]


def mult_group_report(v1: Poly, grid: SampleGrid = DEFAULT_GRID) -> MultReport:
    """Certify the multiplication group of the loop defined by a single
    nonlinear polynomial v1.

    Runs the transversal construction, the pairwise commutator check on the
    grid, the log-closure generation check with held-out random samples, and
    the core-triviality check of the stabilizer subalgebra.  Rejects linear
    or identity-violating v1 before any certificate runs.
    """
    trans = h_connected_transversal(v1)
    m = trans.m
    family = LeftTranslationFamily(m, v1)

    lam_elements = left_translation_elements(family, grid_points(grid))
    t_elements = transversal_elements(trans, grid_points(grid))

    certs = [Certificate("transversal-identity", transversal_identity_holds(v1, trans))]

    connect = check_h_connected(lam_elements, t_elements)
    witness = None
    if not connect.ok:
        x, y, k = connect.witness
        witness = {"pair": [x.to_json(), y.to_json()], "commutator": k.to_json()}
    certs.append(Certificate("h-connected", connect.ok, witness))

    rng = random.Random(_EXTRA_SAMPLE_SEED)
    extra_lam = left_translation_elements(family, _extra_samples(3, rng))
    extra_t = transversal_elements(trans, _extra_samples(2, rng))
    try:
        closure = generated_subalgebra_of(
            lam_elements + t_elements + extra_lam + extra_t, holdout=5)
        certs.append(Certificate("generation", closure.dimension == m + 2,
                                 {"closure_dimension": closure.dimension}))
    except StabilizationError as exc:
        certs.append(Certificate("generation", False, {"stabilization": str(exc)}))

    stabilizer = SubalgebraBasis.span(m, [basis_element(m, i) for i in range(2, m + 2)])
    core = core_ideal(stabilizer)
    certs.append(Certificate("core-trivial", core.dimension == 0,
                             {"core_dimension": core.dimension}))

    certs.sort(key=lambda c: c.name)
    return MultReport(claim=f"Mult(L) isomorphic to F_{m + 2}",
                      certificates=tuple(certs),
                      mult_dimension=m + 2)
