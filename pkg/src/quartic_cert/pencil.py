"""Geometry of the S6-invariant quartic pencil X_t : t*sum x^4 - (sum x^2)^2 = 0.

Everything here works on the chart of P(V) that eliminates x5 unless a
different ``drop`` index is passed.  Cubic forms are handled as coefficient
vectors in the frame ``graded_monomials(5, 3)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from . import linalg
from .exactfield import CycNum, Rat, rat, render
from .groebner import GroebnerBasis, buchberger, quotient_graded_dim, stable_hilbert_value
from .multipoly import (
    MPoly,
    build_pencil_quartic,
    coefficient_vector,
    evaluate,
    from_coefficients,
    graded_monomials,
    lift_from_hyperplane,
    linear_form,
    permute_vars,
    power_sum,
    project_point,
    restrict_to_hyperplane,
)
from .symmetric import (
    NODE_SEED,
    Perm,
    ProjPoint,
    char_inner_product,
    class_function,
    conjugacy_classes,
    orbit,
    standard_character,
    trivial_character,
)

EXCLUDED_T = (Rat(0), Rat(2), Rat(4), Rat(6), Rat(10, 7))
SPECIAL_SEEDS = {
    Rat(2): (1, -1, 0, 0, 0, 0),
    Rat(6): (-1, -1, -1, 1, 1, 1),
    Rat(10, 7): (-5, 1, 1, 1, 1, 1),
}
CUBIC_FRAME = graded_monomials(5, 3)
DIM_CUBICS = len(CUBIC_FRAME)  # 35
STABLE_FROM = 10
STABLE_SPAN = 3


class UnsupportedParameterError(ValueError):
    pass


class NotStableError(ArithmeticError):
    pass


class SingularCountMismatch(ArithmeticError):
    def __init__(self, degree: int):
        super().__init__(f"singular scheme has degree {degree}, expected 30")
        self.degree = degree


class DecompositionError(ArithmeticError):
    pass


@dataclass(frozen=True)
class PencilMember:
    t: Rat
    F: MPoly
    G: MPoly

    @property
    def is_excluded(self) -> bool:
        return self.t in EXCLUDED_T


@lru_cache(maxsize=None)
def pencil_member(t) -> PencilMember:
    t = rat(t)
    F = build_pencil_quartic(t)
    G = restrict_to_hyperplane(F)
    if F.homogeneous_degree() != 4 or G.homogeneous_degree() != 4:
        raise ArithmeticError("pencil member is not a quartic form")
    return PencilMember(t, F, G)


@lru_cache(maxsize=None)
def node_orbit() -> tuple[ProjPoint, ...]:
    return tuple(orbit(NODE_SEED))


def _chart_point(p: Sequence, drop: int = 5) -> tuple:
    if sum(p, CycNum(0)) != 0:
        raise ValueError(f"point {p} does not lie on the hyperplane sum x_i = 0")
    return project_point(p, drop)


# --- singular points ------------------------------------------------------


@lru_cache(maxsize=None)
def _gradient(t: Rat, drop: int = 5) -> tuple[MPoly, ...]:
    G = restrict_to_hyperplane(pencil_member(t).F, drop)
    return tuple(G.gradient())


def verify_node_singular(member: PencilMember, p: Sequence, drop: int = 5) -> bool:
    """All partials of G vanish at p (and hence G itself, by Euler)."""
    q = _chart_point(p, drop)
    grad = [evaluate(d, q) for d in _gradient(member.t, drop)]
    singular = all(v == 0 for v in grad)
    if singular:
        G = member.G if drop == 5 else restrict_to_hyperplane(member.F, drop)
        euler = sum((qi * gi for qi, gi in zip(q, grad)), CycNum(0))
        if evaluate(G, q) * 4 != euler:
            raise ArithmeticError("Euler identity failed")
    return singular


def odp_hessian_determinant(member: PencilMember, p: Sequence):
    """Determinant of the 4x4 Hessian of the affine equation at p.

    The chart is y_k = 1 for the first k with p_k != 0.  Raises ValueError
    if p is not a singular point.
    """
    if not verify_node_singular(member, p):
        raise ValueError(f"{p} is not a singular point of X_t")
    q = _chart_point(p)
    k = next(i for i, c in enumerate(q) if c != 0)
    inv = 1 / q[k]
    q = tuple(c * inv for c in q)
    grad = _gradient(member.t)
    local = [i for i in range(5) if i != k]
    hess = [[evaluate(grad[i].partial(j), q) for j in local] for i in local]
    return linalg.determinant(hess)


def verify_odp(member: PencilMember, p: Sequence) -> bool:
    return odp_hessian_determinant(member, p) != 0


# --- Jacobian ideals --------------------------------------------------------


@lru_cache(maxsize=None)
def jacobian_basis(t, drop: int = 5) -> GroebnerBasis:
    return buchberger(_gradient(rat(t), drop))


@lru_cache(maxsize=None)
def fermat_jacobian_basis() -> GroebnerBasis:
    return buchberger(power_sum(4, 5).gradient())


def singular_scheme_degree(member: PencilMember, d_from: int = STABLE_FROM, span: int = STABLE_SPAN) -> int:
    """Stable value of the Hilbert function of the Jacobian ring."""
    value = stable_hilbert_value(jacobian_basis(member.t), d_from, span)
    if value is None:
        raise NotStableError(f"Hilbert function not constant on [{d_from}, {d_from + span}]")
    return value


def singular_count_certificate(member: PencilMember) -> int:
    """Certify exactly 30 ordinary double points.

    The singular scheme has degree 30 and contains the 30 known nodes, each
    of multiplicity one (nondegenerate Hessian); so they are all of it.
    """
    degree = singular_scheme_degree(member)
    if degree != 30:
        raise SingularCountMismatch(degree)
    nodes = node_orbit()
    if len(nodes) != 30 or not all(verify_odp(member, p) for p in nodes):
        raise ArithmeticError("a known node failed the ordinary double point test")
    return degree


def defect_jacobian(member: PencilMember, drop: int = 5) -> int:
    """dim R_7 - dim R^sm_7 (Dimca-Saito)."""
    return quotient_graded_dim(jacobian_basis(member.t, drop), 7) - quotient_graded_dim(
        fermat_jacobian_basis(), 7
    )


# --- cubics through the nodes -------------------------------------------------


@dataclass(frozen=True)
class CubicSpace:
    basis: tuple
    frame: tuple = field(default=CUBIC_FRAME, repr=False)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def polys(self) -> list[MPoly]:
        return [from_coefficients(v, self.frame) for v in self.basis]


def evaluation_matrix(points: Sequence[Sequence], drop: int = 5) -> list[list]:
    """Rows: points; columns: degree-3 monomials of the chart."""
    rows = []
    for p in points:
        q = _chart_point(p, drop)
        rows.append([evaluate(MPoly.monomial(m), q) for m in CUBIC_FRAME])
    return rows


def cubic_space(nodes: Sequence[Sequence]) -> CubicSpace:
    """Cubic forms on P(V) vanishing at every point of ``nodes``."""
    if not nodes:
        raise ValueError("empty point set")
    return CubicSpace(tuple(tuple(v) for v in linalg.kernel_basis(evaluation_matrix(nodes))))


def defect_direct(member: PencilMember | None, nodes: Sequence[Sequence]) -> int:
    """dim C - (35 - #nodes).

    ``member`` may be None for a hypothetical point set; otherwise every
    point must lie on X_t.
    """
    if member is not None:
        for p in nodes:
            if evaluate(member.G, _chart_point(p)) != 0:
                raise ValueError(f"{p} does not lie on X_t")
    return cubic_space(nodes).dim - (DIM_CUBICS - len(nodes))


def _check_in_V(v: Sequence) -> None:
    if len(v) != 6:
        raise ValueError("expected a vector of length 6")
    if sum(v, Rat(0)) != 0:
        raise ValueError("vector does not lie in V (coordinates must sum to 0)")


def map_a(v: Sequence) -> list:
    """Coefficients of sum v_i x_i^3 restricted to the chart."""
    _check_in_V(v)
    f = MPoly({tuple(3 if j == i else 0 for j in range(6)): c for i, c in enumerate(v)}, 6)
    return coefficient_vector(restrict_to_hyperplane(f), CUBIC_FRAME)


def map_b(v: Sequence) -> list:
    """Coefficients of (sum v_i x_i) * (sum x_j^2) restricted to the chart."""
    _check_in_V(v)
    f = linear_form(v, 6) * power_sum(2, 6)
    return coefficient_vector(restrict_to_hyperplane(f), CUBIC_FRAME)


def standard_basis_V() -> list[list[int]]:
    """e_i - e_5 for i < 5."""
    return [[1 if j == i else (-1 if j == 5 else 0) for j in range(6)] for i in range(5)]


@lru_cache(maxsize=None)
def cubic_operator(g: Perm) -> tuple:
    """Matrix of g acting on chart cubics (column j = image of monomial j)."""
    cols = []
    for m in CUBIC_FRAME:
        lifted = lift_from_hyperplane(MPoly.monomial(m))
        cols.append(coefficient_vector(restrict_to_hyperplane(permute_vars(g, lifted)), CUBIC_FRAME))
    return tuple(tuple(row) for row in zip(*cols))


def apply_cubic_operator(g: Perm, vec: Sequence) -> list:
    return linalg.matvec(cubic_operator(g), vec)


def space_character(space: CubicSpace) -> list[int]:
    """Character of S6 on an invariant space of cubics, per conjugacy class."""
    chi = []
    for cd in conjugacy_classes():
        tr = linalg.operator_trace_on_subspace(cubic_operator(cd.representative), space.basis)
        tr = CycNum._lift(tr)
        if not tr.is_rational() or tr.a.denominator != 1:
            raise DecompositionError(f"non-integral character value {tr}")
        chi.append(int(tr.a))
    return chi


@dataclass
class Decomposition:
    dim_a: int
    dim_b: int
    dim_sum: int
    a_in_C: bool
    b_in_C: bool
    character: list[int]
    mult_V: Rat
    mult_self: Rat
    mult_trivial: Rat

    @property
    def dim_complement(self) -> int:
        """dim C minus the dimension of the cohomological copy of V."""
        return self.dim_sum - 5


def decompose_C(space: CubicSpace) -> Decomposition:
    """Check C = a(V) + b(V) and compute the character multiplicities."""
    if space.dim != 10:
        raise DecompositionError(f"cubic space has dimension {space.dim}, expected 10")
    avecs = [map_a(v) for v in standard_basis_V()]
    bvecs = [map_b(v) for v in standard_basis_V()]
    dim_a = linalg.rank(avecs)
    dim_b = linalg.rank(bvecs)
    dim_sum = linalg.rank(avecs + bvecs)
    a_in = all(linalg.in_span(v, space.basis) for v in avecs)
    b_in = all(linalg.in_span(v, space.basis) for v in bvecs)
    if (dim_a, dim_b, dim_sum) != (5, 5, 10) or not (a_in and b_in):
        raise DecompositionError(
            f"ranks a={dim_a} b={dim_b} a+b={dim_sum}, a in C: {a_in}, b in C: {b_in}"
        )
    chi = space_character(space)
    chi_v = class_function(standard_character)
    return Decomposition(
        dim_a,
        dim_b,
        dim_sum,
        a_in,
        b_in,
        chi,
        char_inner_product(chi, chi_v),
        char_inner_product(chi, chi),
        char_inner_product(chi, trivial_character()),
    )


# --- special parameters -----------------------------------------------------


def seed_parameter(seed: Sequence) -> Rat:
    """The t for which X_t passes through ``seed``: (sum x^2)^2 / sum x^4."""
    s2 = sum(Rat(x) ** 2 for x in seed)
    s4 = sum(Rat(x) ** 4 for x in seed)
    return s2 * s2 / s4


def special_orbits(t) -> tuple[ProjPoint, ...]:
    """The extra singular orbit at t in {2, 6, 10/7}."""
    t = rat(t)
    if t not in SPECIAL_SEEDS:
        raise UnsupportedParameterError(f"no extra singular orbit recorded for t = {render(t)}")
    pts = tuple(orbit(SPECIAL_SEEDS[t]))
    member = pencil_member(t)
    if not all(verify_node_singular(member, p) for p in pts):
        raise ArithmeticError(f"extra orbit is not singular at t = {render(t)}")
    return pts


def cubic_difference_values(points: Sequence[Sequence]) -> list:
    """Values of x1^3 - x0^3 at each point (representatives as stored)."""
    return [p[1] ** 3 - p[0] ** 3 for p in points]
