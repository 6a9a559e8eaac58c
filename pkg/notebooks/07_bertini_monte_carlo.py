"""
How often is a random member singular on X?
===========================================

Draw members of the quadrics through two points of a smooth quadric
surface and test each section over F_p.  The singular fraction should
shrink roughly like 1/p.
"""

from hypersect import GF, QQ, ExperimentConfig, PointConfig, ProjPoint, VarietySpec, parse_poly, run_experiment

X = VarietySpec(3, (parse_poly("x0*x3 - x1*x2", 4, QQ),), 2, "quadric")
pts = PointConfig([ProjPoint([1, 0, 0, 0]), ProjPoint([0, 0, 0, 1])])

for p in (31, 101):
    rep = run_experiment(ExperimentConfig("bertini-sample", GF(p), 2, pts, X, trials=200, seed=1))
    agg = rep.aggregates
    print(p, agg["verdict_counts"], round(agg["singular_fraction"], 3))

# forcing the member to be singular at a chosen point always produces that witness
rep = run_experiment(ExperimentConfig("bertini-sample", GF(31), 2, pts, X, trials=3, seed=2, member="singular-at-point"))
for r in rep.trials:
    print(r["target"], r["singular_points"])
