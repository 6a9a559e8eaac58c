"""Linear systems of degree-a forms through prescribed points."""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import comb

from .fields import Field
from .linalg import Matrix, mat_kernel_basis, mat_rank
from .poly import MultiPoly, monomials
from .projective import PointConfig


class EmptySystemError(ValueError):
    pass


def monomial_basis(n: int, a: int):
    """The C(n+a, n) degree-a monomials in x_0..x_n, grevlex-descending."""
    if a < 1:
        raise ValueError("degree must be at least 1")
    return monomials(n + 1, a)


def evaluation_matrix(cfg: PointConfig, mons) -> Matrix:
    """Row s holds the values of every monomial at P_s."""
    F = cfg.field
    rows = []
    for pt in cfg.points:
        rows.append([MultiPoly.monomial(m, F).eval(pt.coords) for m in mons])
    return Matrix(rows, F, len(mons))


@dataclass(frozen=True)
class SystemDimension:
    vector_dim: int
    projective_dim: int


class LinearSystem:
    """All degree-a forms vanishing at the points of a configuration.

    ``basis`` is the canonical reduced-echelon kernel basis of the
    evaluation matrix, written back as polynomials, so two systems describe
    the same space exactly when their bases are equal.
    """

    def __init__(self, points: PointConfig, degree: int, basis, monomials, condition_rank: int):
        self.points = points
        self.degree = degree
        self.basis = tuple(basis)
        self.monomials = tuple(monomials)
        self.condition_rank = condition_rank

    @property
    def n(self) -> int:
        return self.points.n

    @property
    def field(self) -> Field:
        return self.points.field

    @property
    def vector_dim(self) -> int:
        return len(self.basis)

    def __repr__(self):
        return f"LinearSystem(n={self.n}, degree={self.degree}, q={self.points.q}, dim={self.vector_dim})"

    def __eq__(self, other):
        return isinstance(other, LinearSystem) and self.degree == other.degree and self.basis == other.basis

    def coefficient_matrix(self) -> Matrix:
        return Matrix([h.coefficient_vector(self.monomials) for h in self.basis], self.field, len(self.monomials))

    def contains(self, form: MultiPoly) -> bool:
        """Membership of a degree-a form, by a rank test against the basis."""
        if form.field != self.field or form.nvars != self.n + 1:
            return False
        if form.is_zero():
            return True
        if form.homogeneous_degree() != self.degree:
            return False
        m = self.coefficient_matrix()
        ext = m.stack(Matrix([form.coefficient_vector(self.monomials)], self.field, m.ncols))
        return mat_rank(ext) == m.nrows

    def combination(self, coeffs) -> MultiPoly:
        F = self.field
        out = MultiPoly(self.n + 1, {}, F)
        for c, h in zip(coeffs, self.basis):
            if not F.is_zero(c):
                out = out + h.scale(c)
        return out

    def to_json(self) -> dict:
        dim = system_dimension(self)
        return {
            "vector_dim": dim.vector_dim,
            "projective_dim": dim.projective_dim,
            "basis": [str(h) for h in self.basis],
        }


def vanishing_system(cfg: PointConfig, a: int) -> LinearSystem:
    mons = monomial_basis(cfg.n, a)
    F = cfg.field
    if cfg.q:
        ev = evaluation_matrix(cfg, mons)
        rank = mat_rank(ev)
        kernel = mat_kernel_basis(ev)
    else:
        rank = 0
        kernel = [tuple(F.one if j == i else F.zero for j in range(len(mons))) for i in range(len(mons))]
    basis = [MultiPoly.from_coefficients(mons, v, F) for v in kernel]
    return LinearSystem(cfg, a, basis, mons, rank)


def system_dimension(L: LinearSystem) -> SystemDimension:
    if not L.basis:
        raise EmptySystemError("the linear system contains only the zero form")
    return SystemDimension(len(L.basis), len(L.basis) - 1)


def expected_dimension(n: int, a: int, q: int) -> int:
    """C(n+a, n) - q: the vector dimension when the q point conditions are independent."""
    return comb(n + a, n) - q


def random_member(L: LinearSystem, seed=None, bound: int = 10) -> MultiPoly:
    """A nonzero random combination of the basis.

    Coefficients are uniform in GF(p), or uniform integers in [-bound, bound]
    over QQ.  *seed* may be an int or a :class:`random.Random`; zero
    combinations are redrawn.
    """
    if not L.basis:
        raise EmptySystemError("cannot sample from an empty system")
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    F = L.field
    while True:
        coeffs = [F.random(rng, bound) for _ in L.basis]
        if any(not F.is_zero(c) for c in coeffs):
            # basis is linearly independent, so nonzero coefficients give a nonzero form
            return L.combination(coeffs)


def lift_degree(L: LinearSystem, a_new: int) -> LinearSystem:
    """The vanishing system at the same points in degree *a_new*.

    Also checks that every ``x_i^(a_new - a) * h`` with h in ``L.basis``
    lies in the new system, raising ``AssertionError`` otherwise.
    """
    if a_new <= L.degree:
        raise ValueError(f"new degree {a_new} must exceed {L.degree}")
    W = vanishing_system(L.points, a_new)
    nv = L.n + 1
    k = a_new - L.degree
    for i in range(nv):
        xi_pow = MultiPoly.var(nv, i, L.field) ** k
        for h in L.basis:
            if not W.contains(xi_pow * h):
                raise AssertionError(f"x{i}^{k} * ({h}) is missing from the degree-{a_new} system")
    return W
