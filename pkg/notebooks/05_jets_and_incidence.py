"""
Jets of a linear system along a smooth quadric surface
======================================================

For each point x of X the jet matrix stacks (value, derivative along X) of
every basis member.  Its rank separates base points from the rest, and the
fibre dimensions give the dimension of the incidence set of singular
sections.
"""

import random

from hypersect import QQ, PointConfig, ProjPoint, VarietySpec, incidence_dimension, parse_poly, vanishing_system, xi_matrix
from hypersect.jets import random_points_on

X = VarietySpec(3, (parse_poly("x0*x3 - x1*x2", 4, QQ),), 2, "quadric")
P0, P1 = ProjPoint([1, 0, 0, 0]), ProjPoint([0, 0, 0, 1])
L = vanishing_system(PointConfig([P0, P1]), 2)

jm = xi_matrix(L, X, P0)
print("at P0: rank", jm.rank(), "value column", [str(v) for v in jm.constant_column])

sample = random_points_on(X, 50, random.Random(1), anchor=P0) + [P0, P1]
inc = incidence_dimension(L, X, sample)
print("generic fibre", inc.generic_fiber, "base fibres", inc.base_fibers)
print("dim S =", inc.dim_S, " dim V =", inc.dim_V, " margin =", inc.margin)
print("stratification holds:", inc.stratification_holds)
