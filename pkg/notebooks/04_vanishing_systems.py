"""
Linear systems of hypersurfaces through points
==============================================
"""

import random
from math import comb

from hypersect import PointConfig, ProjPoint, lift_degree, random_member, system_dimension, vanishing_system

# quadrics in P^3 through one point: 10 - 1 = 9 coefficients remain
one = vanishing_system(PointConfig([ProjPoint([1, 0, 0, 0])]), 2)
print(system_dimension(one))

# q points in general position impose q independent conditions in every degree tried
pts = PointConfig([ProjPoint([1, 0, 0, 0]), ProjPoint([0, 0, 0, 1]), ProjPoint([1, 1, 1, 1])])
for a in (2, 3, 4):
    print(a, vanishing_system(pts, a).vector_dim, comb(3 + a, 3) - 3)

# raising the degree keeps x_i^(a-2) * h inside the new system (checked inside lift_degree)
W = lift_degree(vanishing_system(pts, 2), 4)
print("degree 4:", W.vector_dim)

# members are random combinations of the echelon basis; over F_101 they stay exact residues
L = vanishing_system(pts.reduce_mod(101), 2)
h = random_member(L, random.Random(0))
print(h)
print([h.eval(p.coords) for p in L.points])
