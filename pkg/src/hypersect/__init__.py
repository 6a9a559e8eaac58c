"""Exact linear systems of hypersurfaces through points, their jets, and smoothness checks."""

from .fields import GF, QQ, DomainError, PrimeField, RationalField, field_from_tag
from .linalg import Matrix, mat_det, mat_inverse, mat_kernel_basis, mat_rank
from .poly import MultiPoly, PolySyntaxError, monomials, parse_poly
from .projective import (
    PointConfig,
    ProjPoint,
    avoiding_hyperplane,
    general_position,
    normalize_coordinates,
)
from .linsys import (
    LinearSystem,
    expected_dimension,
    lift_degree,
    random_member,
    system_dimension,
    vanishing_system,
)
from .jets import VarietySpec, incidence_dimension, tangent_basis, xi_matrix, xi_rank
from .smoothness import (
    jacobian_rank_at,
    quadric_discriminant,
    quadric_is_singular,
    singular_points_bruteforce,
    smooth_intersection_check,
    tangent_hyperplane_test,
)
from .experiments import ExperimentConfig, ExperimentReport, emit_report, run_experiment

__version__ = "0.1.0"

__all__ = [
    "GF", "QQ", "DomainError", "PrimeField", "RationalField", "field_from_tag",
    "Matrix", "mat_det", "mat_inverse", "mat_kernel_basis", "mat_rank",
    "MultiPoly", "PolySyntaxError", "monomials", "parse_poly",
    "PointConfig", "ProjPoint", "avoiding_hyperplane", "general_position", "normalize_coordinates",
    "LinearSystem", "expected_dimension", "lift_degree", "random_member", "system_dimension",
    "vanishing_system",
    "VarietySpec", "incidence_dimension", "tangent_basis", "xi_matrix", "xi_rank",
    "jacobian_rank_at", "quadric_discriminant", "quadric_is_singular", "singular_points_bruteforce",
    "smooth_intersection_check", "tangent_hyperplane_test",
    "ExperimentConfig", "ExperimentReport", "emit_report", "run_experiment",
]
