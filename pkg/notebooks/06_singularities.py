"""
Singular quadrics and singular sections
=======================================

Two routes to singularity of a quadric: the determinant of its symmetric
matrix, and a brute-force search for common zeros of the partials over
P^n(F_p).  For sections of a variety X the Jacobian of (X, h) is checked at
every rational point.
"""

from hypersect import GF, QQ, ProjPoint, VarietySpec, parse_poly, quadric_is_singular, singular_points_bruteforce
from hypersect.smoothness import hyperplane_form, smooth_intersection_check, tangent_hyperplane

for text in ("x0^2 + x1^2 + x2^2", "x1*x2", "x0^2 - x1^2"):
    h = parse_poly(text, 3, QQ)
    print(text, quadric_is_singular(h), [pt.to_strings() for pt in singular_points_bruteforce(h, 5)])

F = GF(31)
X = VarietySpec(3, (parse_poly("x0*x3 - x1*x2", 4, F),), 2, "quadric")

generic = smooth_intersection_check(X, parse_poly("x0 + 2*x1 + 3*x2 + 5*x3", 4, F), 31)
print(generic.verdict, generic.points_checked)

# the tangent plane at a point cuts X in two lines through that point
x = ProjPoint([1, 2, 3, 6], F)
tangent = smooth_intersection_check(X, hyperplane_form(tangent_hyperplane(X, x), F), 31)
print(tangent.verdict, "witness", tangent.witness.to_strings())
