"""
Points in general position and normalized coordinates
=====================================================
"""

from hypersect import PointConfig, ProjPoint, avoiding_hyperplane, general_position, normalize_coordinates


def e(*v):
    return ProjPoint(list(v))


# three points on a line of P^3 are dependent ...
print(general_position(PointConfig([e(1, 0, 0, 0), e(0, 1, 0, 0), e(1, 1, 0, 0)])))

# ... but in P^2 the count is q = n + 1, where only n of them at a time must be independent
print(general_position(PointConfig([e(1, 0, 0), e(0, 1, 0), e(1, 1, 0)])))

cfg = PointConfig([e(1, 2, 0, 1), e(0, 1, 1, 1), e(3, 0, 1, 0)])

# a hyperplane missing every point, found by a deterministic height-ordered search
c = avoiding_hyperplane(cfg)
print("avoiding hyperplane", [str(v) for v in c])

# T sends P0 to (1:0:...:0) and makes x0 = 0 that avoiding hyperplane
t = normalize_coordinates(cfg)
for pt in cfg:
    print(pt.to_strings(), "->", pt.transform(t).to_strings())
