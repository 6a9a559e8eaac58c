"""Jets of a linear system along a smooth complete intersection.

For a point x of X and a form h of degree a, the jet of h at x is the pair
(value, differential along X) of ``h / x_i^a`` in the affine chart
``x_i != 0``.  Stacking jets of a basis gives the jet matrix; its rank
stratifies X into points where the system separates 1-jets (rank d+1) and
base points (rank d, zero value column).
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from functools import lru_cache

from .fields import QQ, DomainError, Field, GF
from .linalg import Matrix, _dot as dot, mat_kernel_basis, mat_rank
from .linsys import LinearSystem, system_dimension
from .poly import MultiPoly, parse_poly
from .projective import ProjPoint


class NotOnVarietyError(ValueError):
    pass


class SingularVarietyError(ValueError):
    """The generators' Jacobian drops rank at a point of X."""

    def __init__(self, msg, point=None):
        super().__init__(msg)
        self.point = point


@dataclass(frozen=True)
class VarietySpec:
    """X in P^n cut out by ``n - dim`` homogeneous generators."""

    n: int
    generators: tuple
    dim: int
    label: str = "X"
    base_field: Field | None = None

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        if len(self.generators) != self.n - self.dim:
            raise ValueError(
                f"{self.label}: {len(self.generators)} generators for codimension {self.n - self.dim}"
            )
        fields = {g.field for g in self.generators}
        if len(fields) > 1:
            raise DomainError("generators over different fields")
        for g in self.generators:
            if g.nvars != self.n + 1:
                raise ValueError(f"generator {g} is not a form on P^{self.n}")
            if not g.is_homogeneous():
                raise ValueError(f"generator {g} is not homogeneous")

    @classmethod
    def projective_space(cls, n: int, field: Field = QQ) -> VarietySpec:
        return cls(n, (), n, f"P^{n}", field)

    @property
    def field(self) -> Field:
        if self.generators:
            return self.generators[0].field
        return self.base_field or QQ

    @property
    def codim(self) -> int:
        return self.n - self.dim

    def contains(self, x: ProjPoint) -> bool:
        return all(self.field.is_zero(g.eval(x.coords)) for g in self.generators)

    def reduce_mod(self, p: int) -> VarietySpec:
        if not self.generators:
            return VarietySpec.projective_space(self.n, GF(p))
        return VarietySpec(self.n, tuple(g.reduce_mod(p) for g in self.generators), self.dim, self.label)

    def to_json(self) -> dict:
        return {"n": self.n, "dim": self.dim, "label": self.label, "generators": [str(g) for g in self.generators]}

    @classmethod
    def from_json(cls, data: dict, field: Field = QQ) -> VarietySpec:
        n = int(data["n"])
        gens = tuple(parse_poly(s, n + 1, field) for s in data["generators"])
        if not gens:
            return cls(n, (), n, data.get("label", f"P^{n}"), field)
        return cls(n, gens, int(data["dim"]), data.get("label", "X"))

    @classmethod
    def load(cls, path, field: Field = QQ) -> VarietySpec:
        with open(path) as fh:
            return cls.from_json(json.load(fh), field)


@lru_cache(maxsize=4096)
def _chart_form(form: MultiPoly, chart: int):
    affine = form.dehomogenize(chart)
    return affine, tuple(affine.partial(j) for j in range(affine.nvars))


def chart_coordinates(x: ProjPoint, chart: int):
    """Affine coordinates ``x_j / x_chart`` (j != chart) of x."""
    F = x.field
    c = x.coords[chart]
    if F.is_zero(c):
        raise ValueError(f"{x} is not in chart {chart}")
    inv = F.inv(c)
    return tuple(F.mul(v, inv) for j, v in enumerate(x.coords) if j != chart)


def chart_jacobian(forms, x: ProjPoint, chart: int | None = None) -> Matrix:
    """Jacobian of the dehomogenized *forms* at x, one row per form."""
    if chart is None:
        chart = x.chart()
    y = chart_coordinates(x, chart)
    rows = [[d.eval(y) for d in _chart_form(f, chart)[1]] for f in forms]
    return Matrix(rows, x.field, x.n)


def _check_field(X: VarietySpec, x: ProjPoint):
    if X.field != x.field:
        raise DomainError(f"point over {x.field}, variety over {X.field}")


def tangent_basis(X: VarietySpec, x: ProjPoint, chart: int | None = None):
    """d vectors spanning the tangent space of X at x, in chart coordinates."""
    _check_field(X, x)
    if not X.contains(x):
        raise NotOnVarietyError(f"{x} is not on {X.label}")
    if chart is None:
        chart = x.chart()
    if not X.generators:
        F = x.field
        return [tuple(F.one if i == j else F.zero for j in range(X.n)) for i in range(X.n)]
    jac = chart_jacobian(X.generators, x, chart)
    if mat_rank(jac) != X.codim:
        raise SingularVarietyError(f"{X.label} is singular at {x}", x)
    return mat_kernel_basis(jac)


@dataclass(frozen=True)
class JetMatrix:
    """Rows ``(value | tangent derivatives)`` of each basis form at a point."""

    matrix: Matrix
    chart: int
    at_point: ProjPoint
    tangents: tuple

    @property
    def constant_column(self):
        return self.matrix.column(0) if self.matrix.nrows else ()

    def rank(self) -> int:
        return mat_rank(self.matrix)


def jet_row(form: MultiPoly, x: ProjPoint, chart: int, tangents) -> list:
    F = x.field
    affine, grads = _chart_form(form, chart)
    y = chart_coordinates(x, chart)
    g = [d.eval(y) for d in grads]
    row = [affine.eval(y)]
    for t in tangents:
        row.append(dot(F, g, t))
    return row


def xi_matrix(L: LinearSystem, X: VarietySpec, x: ProjPoint, chart: int | None = None) -> JetMatrix:
    if L.field != x.field:
        raise DomainError("system and point over different fields")
    if chart is None:
        chart = x.chart()
    tangents = tuple(tangent_basis(X, x, chart))
    rows = [jet_row(h, x, chart, tangents) for h in L.basis]
    return JetMatrix(Matrix(rows, x.field, X.dim + 1), chart, x, tangents)


def xi_rank(L: LinearSystem, X: VarietySpec, x: ProjPoint, chart: int | None = None) -> int:
    return xi_matrix(L, X, x, chart).rank()


def fiber_dimension(L: LinearSystem, X: VarietySpec, x: ProjPoint) -> int:
    """Projective dimension of the members whose section is singular at x."""
    return system_dimension(L).projective_dim - xi_rank(L, X, x)


def is_base_point(L: LinearSystem, x: ProjPoint) -> bool:
    return all(L.field.is_zero(h.eval(x.coords)) for h in L.basis)


@dataclass
class PointRecord:
    point: ProjPoint
    rank: int
    fiber_dim: int
    base: bool
    constant_zero: bool


@dataclass
class IncidenceDimension:
    """Dimension count for the incidence set of singular sections.

    ``dim_S`` is the largest stratum dimension: the generic fiber over the
    d-dimensional non-base part of X, or a base-point fiber over a point.
    """

    dim_S: int
    dim_V: int
    margin: int
    d: int
    generic_fiber: int | None
    base_fibers: list
    records: list = field(repr=False)
    jumps: list = field(default_factory=list)

    @property
    def stratification_holds(self) -> bool:
        """Base points have rank d with zero value column; all others rank d+1."""
        for r in self.records:
            if r.base and (r.rank != self.d or not r.constant_zero):
                return False
        return not self.jumps


def incidence_dimension(L: LinearSystem, X: VarietySpec, sample) -> IncidenceDimension:
    sample = list(sample)
    if not sample:
        raise ValueError("need at least one sample point")
    d = X.dim
    dim_V = system_dimension(L).projective_dim
    records = []
    for x in sample:
        jm = xi_matrix(L, X, x)
        rank = jm.rank()
        const_zero = all(L.field.is_zero(v) for v in jm.constant_column)
        listed = x in L.points.points
        records.append(PointRecord(x, rank, dim_V - rank, listed, const_zero))
    # a point where every member vanishes is a 0-dimensional stratum whether listed or not
    generic = [r.fiber_dim for r in records if not (r.base or r.constant_zero)]
    base = [r.fiber_dim for r in records if r.base or r.constant_zero]
    jumps = [r for r in records if not r.base and (r.rank < d + 1 or r.constant_zero)]
    strata = [g + d for g in generic] + base
    dim_S = max(strata)
    return IncidenceDimension(
        dim_S=dim_S,
        dim_V=dim_V,
        margin=dim_V - dim_S,
        d=d,
        generic_fiber=max(generic) if generic else None,
        base_fibers=base,
        records=records,
        jumps=jumps,
    )


# -- rational points on X -------------------------------------------------


def random_points_on(X: VarietySpec, count: int, rng=None, anchor: ProjPoint | None = None, bound: int = 10):
    """Random rational points of X over QQ.

    Supported: X = P^n (random integer vectors), and X a quadric hypersurface
    with a known rational point *anchor* (second intersection of random
    lines through the anchor).  Other varieties should be sampled over
    GF(p) by enumeration.
    """
    rng = rng if isinstance(rng, random.Random) else random.Random(rng)
    F = X.field
    out = []
    if not X.generators:
        while len(out) < count:
            v = [rng.randint(-bound, bound) for _ in range(X.n + 1)]
            if any(v):
                out.append(ProjPoint(v, F))
        return out
    if len(X.generators) != 1 or X.generators[0].homogeneous_degree() != 2:
        raise NotImplementedError("rational sampling needs P^n or a quadric hypersurface")
    if anchor is None or not X.contains(anchor):
        raise ValueError("quadric sampling needs a rational anchor point on X")
    g = X.generators[0]
    grad = [d.eval(anchor.coords) for d in g.gradient()]
    attempts = 0
    while len(out) < count:
        attempts += 1
        if attempts > 100 * count + 100:
            raise RuntimeError("quadric sampling stalled")
        v = [F.convert(rng.randint(-bound, bound)) for _ in range(X.n + 1)]
        gv = g.eval(v)
        bv = sum((a * b for a, b in zip(grad, v)), F.zero)
        if F.is_zero(gv) or F.is_zero(bv):
            continue
        # g(P + t v) = t * (bv + t * gv), so the second root is t = -bv / gv
        pt = [gv * a - bv * b for a, b in zip(anchor.coords, v)]
        if not any(pt):
            continue
        x = ProjPoint(pt, F)
        if x != anchor:
            out.append(x)
    return out
