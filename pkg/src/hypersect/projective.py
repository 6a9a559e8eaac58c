"""Projective points, point configurations and the coordinate normalization
that moves a configuration into standard position."""

from __future__ import annotations

import json
from itertools import combinations, product
from math import lcm

from .fields import QQ, DomainError, Field, GF, PrimeField, field_from_tag
from .linalg import Matrix, _dot as dot, mat_kernel_basis, mat_rank


class InvalidConfigError(ValueError):
    pass


class HyperplaneNotFound(LookupError):
    """Every hyperplane over the (finite) field meets some point."""


class ProjPoint:
    """A point of P^n over QQ or GF(p), scaled so its first nonzero coordinate is 1."""

    __slots__ = ("coords", "field")

    def __init__(self, coords, field: Field = QQ):
        vals = [field.convert(v) for v in coords]
        lead = next((v for v in vals if not field.is_zero(v)), None)
        if lead is None:
            raise ValueError("the zero vector is not a projective point")
        inv = field.inv(lead)
        self.coords = tuple(field.mul(v, inv) for v in vals)
        self.field = field

    @property
    def n(self) -> int:
        return len(self.coords) - 1

    def __len__(self):
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __eq__(self, other):
        return isinstance(other, ProjPoint) and self.field == other.field and self.coords == other.coords

    def __hash__(self):
        return hash((self.field, self.coords))

    def __lt__(self, other):
        return self.coords < other.coords

    def __repr__(self):
        return f"ProjPoint(({', '.join(map(str, self.coords))}), {self.field!r})"

    def chart(self) -> int:
        """Lowest index with a nonzero coordinate (that coordinate equals 1)."""
        return next(i for i, v in enumerate(self.coords) if not self.field.is_zero(v))

    def integer_coords(self):
        """Primitive integer representative of a rational point."""
        if self.field != QQ:
            return list(self.coords)
        den = lcm(*(c.denominator for c in self.coords))
        return [int(c * den) for c in self.coords]

    def reduce_mod(self, p: int) -> ProjPoint:
        if self.field == GF(p):
            return self
        if self.field != QQ:
            raise DomainError(f"cannot reduce a point over {self.field} mod {p}")
        return ProjPoint([v % p for v in self.integer_coords()], GF(p))

    def transform(self, t: Matrix) -> ProjPoint:
        return ProjPoint(t.apply(self.coords), self.field)

    def to_strings(self):
        return [self.field.to_str(v) for v in self.coords]


class PointConfig:
    """Distinct points P_0, ..., P_{q-1} in P^n (``q <= n + 2`` accepted)."""

    def __init__(self, points, n: int | None = None, field: Field | None = None):
        points = list(points)
        if field is None:
            field = points[0].field if points else QQ
        if n is None:
            if not points:
                raise ValueError("ambient dimension needed for an empty configuration")
            n = points[0].n
        pts = [p if isinstance(p, ProjPoint) else ProjPoint(p, field) for p in points]
        for p in pts:
            if p.field != field:
                raise DomainError(f"point {p} not over {field}")
            if p.n != n:
                raise ValueError(f"point {p} does not live in P^{n}")
        if len(set(pts)) != len(pts):
            raise InvalidConfigError("points must be distinct")
        if len(pts) > n + 2:
            raise InvalidConfigError(f"at most n+2 = {n + 2} points accepted, got {len(pts)}")
        self.points = tuple(pts)
        self.n = n
        self.field = field

    @property
    def q(self) -> int:
        return len(self.points)

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __getitem__(self, i):
        return self.points[i]

    def __eq__(self, other):
        return isinstance(other, PointConfig) and (self.n, self.field, self.points) == (other.n, other.field, other.points)

    def __repr__(self):
        return f"PointConfig(n={self.n}, field={self.field!r}, points={list(self.points)})"

    def matrix(self) -> Matrix:
        """Coordinate vectors as the rows of a q x (n+1) matrix."""
        return Matrix([p.coords for p in self.points], self.field, self.n + 1)

    def transform(self, t: Matrix) -> PointConfig:
        return PointConfig([p.transform(t) for p in self.points], self.n, self.field)

    def reduce_mod(self, p: int) -> PointConfig:
        return PointConfig([pt.reduce_mod(p) for pt in self.points], self.n, GF(p))

    # -- file format ------------------------------------------------------

    def to_json(self) -> dict:
        return {"n": self.n, "field": self.field.tag, "points": [p.to_strings() for p in self.points]}

    @classmethod
    def from_json(cls, data: dict) -> PointConfig:
        field = field_from_tag(data.get("field", "Q"))
        n = int(data["n"])
        pts = []
        for raw in data["points"]:
            if len(raw) != n + 1:
                raise ValueError(f"point {raw} needs {n + 1} coordinates")
            pts.append(ProjPoint([field.from_str(str(v)) for v in raw], field))
        return cls(pts, n, field)

    @classmethod
    def load(cls, path) -> PointConfig:
        with open(path) as fh:
            return cls.from_json(json.load(fh))


def general_position(cfg: PointConfig) -> bool:
    """Fewer than n+1 points: independent coordinate vectors.  Exactly n+1
    points: every n of them independent."""
    q, n = cfg.q, cfg.n
    if q > n + 1:
        raise InvalidConfigError(f"general position is defined for q <= n+1, got q={q}")
    rows = [p.coords for p in cfg.points]
    if q < n + 1:
        return mat_rank(Matrix(rows, cfg.field, n + 1)) == q
    return all(mat_rank(Matrix(sub, cfg.field, n + 1)) == n for sub in combinations(rows, n))


def _height_ordered(nvars: int, top: int):
    for h in range(1, top + 1):
        for v in product(range(h + 1), repeat=nvars):
            if max(v) == h:
                yield v


def avoiding_hyperplane(cfg: PointConfig) -> tuple:
    """Coefficients c with ``c . P_s != 0`` for every point of *cfg*.

    Candidates are scanned by height (largest coordinate) and then
    lexicographically over ``[0, q]``; q hyperplanes cannot cover that grid,
    so over QQ (and over GF(p) with p > q) the search always succeeds.
    """
    F = cfg.field
    nvars = cfg.n + 1
    pts = [p.coords for p in cfg.points]

    def avoids(c):
        c = [F.convert(v) for v in c]
        return all(not F.is_zero(dot(F, c, pt)) for pt in pts)

    top = max(cfg.q, 1)
    if isinstance(F, PrimeField):
        top = min(top, F.p - 1)
    for c in _height_ordered(nvars, top):
        if avoids(c):
            return tuple(F.convert(v) for v in c)
    raise HyperplaneNotFound(f"no hyperplane over {F} misses all {cfg.q} points")


def normalize_coordinates(cfg: PointConfig, c=None) -> Matrix:
    """An invertible T with T P_0 ~ (1, 0, ..., 0) whose row 0 is an
    avoiding hyperplane, so ``X_0 != 0`` at every point of *cfg*.

    Rows 1..n span the annihilator of P_0.  Row s (1 <= s < q) is taken to
    annihilate P_s as well whenever that keeps the rows independent; the
    remaining rows are completed greedily from the canonical basis of the
    annihilator.
    """
    if cfg.q < 1:
        raise InvalidConfigError("need at least one point")
    if not general_position(cfg):
        raise InvalidConfigError("points are not in general position")
    F = cfg.field
    n = cfg.n
    if c is None:
        c = avoiding_hyperplane(cfg)
    c = tuple(F.convert(v) for v in c)
    p0 = cfg.points[0].coords
    rows: list[tuple] = []

    def try_add(v):
        if mat_rank(Matrix(rows + [tuple(v)], F, n + 1)) == len(rows) + 1:
            rows.append(tuple(v))
            return True
        return False

    for s in range(1, min(cfg.q, n + 1)):
        ann = mat_kernel_basis(Matrix([p0, cfg.points[s].coords], F, n + 1))
        for v in ann:
            if try_add(v):
                break
    for v in mat_kernel_basis(Matrix([p0], F, n + 1)):
        if len(rows) == n:
            break
        try_add(v)
    t = Matrix([c] + rows, F, n + 1)
    # postconditions, checked rather than trusted
    image = t.apply(p0)
    if F.is_zero(image[0]) or any(not F.is_zero(v) for v in image[1:]):
        raise InvalidConfigError("normalization failed to send P_0 to (1:0:...:0)")
    for pt in cfg.points:
        if F.is_zero(t.apply(pt.coords)[0]):
            raise InvalidConfigError(f"X_0 vanishes at {pt}")
    if mat_rank(t) != n + 1:
        raise InvalidConfigError("normalization is not invertible")
    return t
