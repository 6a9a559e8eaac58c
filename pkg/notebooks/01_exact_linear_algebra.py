"""
Exact linear algebra over Q and F_p
===================================

Rank, kernel and determinant never round: rationals go through
fraction-free elimination, residues through Gauss-Jordan mod p.
"""

from fractions import Fraction

from hypersect import GF, QQ, Matrix, mat_det, mat_kernel_basis, mat_rank

# a rank-2 matrix over Q
m = Matrix([[1, 2, 3], [2, 4, 6], [1, 0, Fraction(1, 2)]])
print("rank", mat_rank(m))

# the kernel comes back in reduced echelon form, so two spans compare by equality
print("kernel", [[str(v) for v in vec] for vec in mat_kernel_basis(m)])

# determinant of the symmetric matrix of x0*x1 + x2*x3
a = Matrix([[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]])
print("det", mat_det(a))

# the same integer matrix can be singular mod p and invertible over Q
rows = [[1, 2], [3, 1]]
print("det over Q", mat_det(Matrix(rows, QQ)), "over F_5", mat_det(Matrix(rows, GF(5))))
