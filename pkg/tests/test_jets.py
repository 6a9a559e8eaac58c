import json
import random
from math import comb

import pytest

from hypersect.fields import GF, QQ
from hypersect.jets import (
    NotOnVarietyError,
    SingularVarietyError,
    VarietySpec,
    chart_jacobian,
    fiber_dimension,
    incidence_dimension,
    is_base_point,
    random_points_on,
    tangent_basis,
    xi_matrix,
    xi_rank,
)
from hypersect.linalg import mat_inverse
from hypersect.linsys import LinearSystem, monomial_basis, vanishing_system
from hypersect.poly import parse_poly
from hypersect.projective import PointConfig, ProjPoint
from hypersect.smoothness import variety_points

from conftest import random_invertible

P0 = ProjPoint([1, 0, 0, 0])
P1 = ProjPoint([0, 0, 0, 1])


def quadric(field=QQ):
    return VarietySpec(3, (parse_poly("x0*x3 - x1*x2", 4, field),), 2, "Q")


def two_point_system(field=QQ):
    cfg = PointConfig([ProjPoint(P0.coords, QQ), ProjPoint(P1.coords, QQ)])
    if field != QQ:
        cfg = cfg.reduce_mod(field.p)
    return vanishing_system(cfg, 2)


def moved_variety(X, t):
    t_inv = mat_inverse(t)
    return VarietySpec(X.n, tuple(g.linear_change(t_inv) for g in X.generators), X.dim, X.label, X.base_field)


class TestVarietySpec:
    def test_codimension_must_match(self):
        with pytest.raises(ValueError):
            VarietySpec(3, (parse_poly("x0*x3 - x1*x2", 4, QQ),), 1)

    def test_generators_homogeneous(self):
        with pytest.raises(ValueError):
            VarietySpec(2, (parse_poly("x0 + x1^2", 3, QQ),), 1)

    def test_file_round_trip(self, tmp_path, quadric_file):
        X = VarietySpec.load(quadric_file)
        assert X.n == 3 and X.dim == 2 and X.generators == quadric().generators
        path = tmp_path / "x.json"
        path.write_text(json.dumps(X.to_json()))
        assert VarietySpec.load(path) == X
        assert set(X.to_json()) == {"n", "dim", "label", "generators"}


class TestTangents:
    def test_projective_space(self):
        X = VarietySpec.projective_space(3)
        assert tangent_basis(X, P0) == [(1, 0, 0), (0, 1, 0), (0, 0, 1)]

    def test_quadric_at_origin(self):
        assert chart_jacobian(quadric().generators, P0).rows == ((0, 0, 1),)
        assert tangent_basis(quadric(), P0) == [(1, 0, 0), (0, 1, 0)]

    def test_singular_cone(self):
        cone = VarietySpec(3, (parse_poly("x1^2 - x2*x3", 4, QQ),), 2, "cone")
        with pytest.raises(SingularVarietyError) as err:
            tangent_basis(cone, P0)
        assert err.value.point == P0

    def test_off_variety(self):
        with pytest.raises(NotOnVarietyError):
            tangent_basis(quadric(), ProjPoint([1, 1, 1, 0]))


class TestJetMatrix:
    def test_single_form_example(self):
        L = LinearSystem(PointConfig([], 2, QQ), 2, [parse_poly("x0*x1", 3, QQ)], monomial_basis(2, 2), 0)
        jm = xi_matrix(L, VarietySpec.projective_space(2), ProjPoint([0, 1, 0]))
        assert jm.chart == 1
        assert jm.matrix.rows == ((0, 1, 0),)

    def test_shape_and_base_point_column(self):
        L = two_point_system()
        jm = xi_matrix(L, quadric(), P0)
        assert jm.matrix.shape == (L.vector_dim, 3)
        assert all(v == 0 for v in jm.constant_column)

    def test_generic_and_base_ranks(self):
        L, X = two_point_system(), quadric()
        for x in random_points_on(X, 20, random.Random(1), anchor=P0):
            assert xi_rank(L, X, x) == 3
            assert fiber_dimension(L, X, x) == 9 - 2 - 2 - 1
        for base in (P0, P1):
            assert xi_rank(L, X, base) == 2
            assert fiber_dimension(L, X, base) == 5
            assert is_base_point(L, base)

    def test_one_point_fibers(self):
        L = vanishing_system(PointConfig([P0]), 2)
        X = quadric()
        x = random_points_on(X, 1, random.Random(4), anchor=P0)[0]
        assert fiber_dimension(L, X, x) == 3 * 6 // 2 - 2 - 2

    def test_no_base_points_full_rank(self):
        L = vanishing_system(PointConfig([], 2, QQ), 2)
        X = VarietySpec.projective_space(2)
        for x in random_points_on(X, 10, random.Random(0)):
            assert xi_rank(L, X, x) == 3

    def test_chart_independence(self):
        L, X = two_point_system(), quadric()
        for x in random_points_on(X, 20, random.Random(2), anchor=P0) + [P0, P1]:
            ranks = {xi_rank(L, X, x, chart=j) for j in range(4) if x.coords[j] != 0}
            assert len(ranks) == 1

    def test_rank_invariant_under_coordinate_change(self):
        rng = random.Random(3)
        L, X = two_point_system(), quadric()
        xs = random_points_on(X, 20, rng, anchor=P0)
        for x in xs:
            t = random_invertible(4, rng)
            L2 = vanishing_system(L.points.transform(t), 2)
            X2 = moved_variety(X, t)
            assert xi_rank(L2, X2, x.transform(t)) == xi_rank(L, X, x)


class TestIncidence:
    def test_two_points_on_quadric(self):
        L, X = two_point_system(), quadric()
        sample = random_points_on(X, 30, random.Random(5), anchor=P0) + [P0, P1]
        inc = incidence_dimension(L, X, sample)
        assert (inc.dim_S, inc.dim_V, inc.margin) == (6, 7, 1)
        assert inc.generic_fiber == 4 and inc.base_fibers == [5, 5]
        assert inc.stratification_holds

    def test_one_point_on_quadric(self):
        L, X = vanishing_system(PointConfig([P0]), 2), quadric()
        sample = random_points_on(X, 30, random.Random(6), anchor=P0) + [P0]
        inc = incidence_dimension(L, X, sample)
        assert (inc.dim_S, inc.dim_V, inc.margin) == (7, 8, 1)

    def test_projective_space_without_base_points(self):
        for n in (2, 3):
            L = vanishing_system(PointConfig([], n, QQ), 2)
            X = VarietySpec.projective_space(n)
            inc = incidence_dimension(L, X, random_points_on(X, 15, random.Random(n)))
            assert inc.dim_V == comb(n + 2, 2) - 1
            assert inc.dim_S == inc.dim_V - n - 1 + n
            assert inc.margin == 1 and inc.stratification_holds

    def test_over_prime_field_every_point(self):
        F = GF(7)
        L, X = two_point_system(F), quadric(F)
        pts = [ProjPoint([int(v) for v in r], F) for r in variety_points(X, 7)]
        assert len(pts) == (7 + 1) ** 2
        inc = incidence_dimension(L, X, pts)
        assert inc.margin == 1 and inc.stratification_holds

    def test_jump_reported_not_raised(self):
        # a point listed as non-base but where every member vanishes to first order
        L = vanishing_system(PointConfig([P0]), 2)
        X = quadric()
        sub = LinearSystem(L.points, 2, L.basis[:2], L.monomials, L.condition_rank)
        inc = incidence_dimension(sub, X, random_points_on(X, 5, random.Random(1), anchor=P0))
        assert inc.jumps and not inc.stratification_holds


class TestSampling:
    def test_quadric_points_on_variety(self):
        X = quadric()
        for x in random_points_on(X, 50, random.Random(0), anchor=P0):
            assert X.contains(x) and x != P0

    def test_quadric_needs_anchor(self):
        with pytest.raises(ValueError):
            random_points_on(quadric(), 3, random.Random(0))
