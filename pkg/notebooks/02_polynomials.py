"""
Sparse forms: parsing, printing, calculus and charts
====================================================
"""

from hypersect import GF, QQ, Matrix, parse_poly

h = parse_poly("x0*x1 - 3*x1*x2 + 1/2*x2^2", 3, QQ)

# printing is canonical (graded reverse lexicographic), and parses back to itself
print(h)
assert parse_poly(str(h), 3, QQ) == h

# formal partials and Euler's identity sum x_i dh/dx_i = 2 h
print([str(d) for d in h.gradient()])
print("euler", h.euler_check())

# over F_3 a cubic satisfies Euler trivially (3 = 0), so the check reports None
print("euler mod 3", parse_poly("x0^3 + x1^3", 2, GF(3)).euler_check())

# chart x0 != 0: h / x0^2 in y1 = x1/x0, y2 = x2/x0 (printed with the remaining indices 0, 1)
print("chart 0:", h.dehomogenize(0))

# a linear change of coordinates x -> T x
t = Matrix([[1, 1, 0], [0, 1, 0], [0, 0, 2]])
print("h(Tx) =", h.linear_change(t))
