"""Seeded experiments over finite fields and their JSON/CSV reports.

Trial ``t`` of an experiment with seed ``s`` draws from
``Random((s << 32) ^ t)``, so a trial's record does not depend on which
other trials ran or in what order.  The shift keeps the trial streams of
small neighbouring seeds disjoint: with a plain ``s ^ t``, seeds 1, 2 and 3
would reuse the same set of trial seeds whenever the trial count is a
multiple of 4.
"""

from __future__ import annotations

import csv
import io
import json
import random
import time
from collections import Counter
from dataclasses import dataclass
from itertools import product

from .fields import Field, PrimeField
from .fpenum import DEFAULT_MAX_POINTS
from .jets import VarietySpec, incidence_dimension, random_points_on, xi_matrix
from .linalg import mat_kernel_basis
from .linsys import EmptySystemError, LinearSystem, random_member, vanishing_system
from .poly import MultiPoly
from .projective import InvalidConfigError, PointConfig, ProjPoint, general_position
from .smoothness import (
    SINGULAR,
    jacobian_rank_at,
    quadric_is_singular,
    singular_points_bruteforce,
    smooth_intersection_check,
    variety_points,
)

EXPERIMENTS = ("bertini-sample", "jet-survey", "disc-density", "linsys", "check-member")


@dataclass
class ExperimentConfig:
    experiment: str
    field: Field
    degree: int = 2
    points: PointConfig | None = None
    variety: VarietySpec | None = None
    n: int | None = None
    trials: int = 1
    seed: int = 0
    member: str = "random"
    threshold: float | None = None
    exhaustive: bool = False
    max_points: int | None = DEFAULT_MAX_POINTS

    def __post_init__(self):
        if self.experiment not in EXPERIMENTS:
            raise ValueError(f"unknown experiment {self.experiment!r}")
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if self.degree < 1:
            raise ValueError("degree must be at least 1")
        if self.member not in ("random", "singular-at-point"):
            raise ValueError(f"unknown member construction {self.member!r}")
        if self.n is None:
            if self.points is not None:
                self.n = self.points.n
            elif self.variety is not None:
                self.n = self.variety.n
            else:
                raise ValueError("ambient dimension unknown")
        if self.variety is not None and self.variety.n != self.n:
            raise ValueError("variety and points live in different projective spaces")
        if self.points is not None and self.points.n != self.n:
            raise ValueError("points do not live in P^n")

    @property
    def p(self) -> int:
        if not isinstance(self.field, PrimeField):
            raise ValueError(f"{self.experiment} needs a prime field, got {self.field}")
        return self.field.p

    def base_points(self) -> PointConfig:
        """The configuration moved into the experiment's field."""
        if self.points is None:
            return PointConfig([], self.n, self.field)
        if self.points.field == self.field:
            return self.points
        if isinstance(self.field, PrimeField):
            return self.points.reduce_mod(self.field.p)
        raise ValueError("cannot lift points from GF(p) to QQ")

    def to_json(self) -> dict:
        return {
            "experiment": self.experiment,
            "field": self.field.tag,
            "n": self.n,
            "degree": self.degree,
            "points": self.points.to_json() if self.points is not None else None,
            "variety": self.variety.to_json() if self.variety is not None else None,
            "trials": self.trials,
            "seed": self.seed,
            "member": self.member,
            "threshold": self.threshold,
            "exhaustive": self.exhaustive,
            "max_points": self.max_points,
        }


@dataclass
class ExperimentReport:
    config: dict
    trials: list
    aggregates: dict
    runtime_ms: int = 0

    def to_json(self, timing: bool = True) -> dict:
        return {
            "config": self.config,
            "trials": self.trials,
            "aggregates": self.aggregates,
            "runtime_ms": self.runtime_ms if timing else None,
        }


TRIAL_BITS = 32


def trial_seed(seed: int, t: int) -> int:
    if not 0 <= t < 1 << TRIAL_BITS:
        raise ValueError(f"trial index {t} out of range")
    return (seed << TRIAL_BITS) ^ t


def _fraction(k: int, total: int) -> float:
    return k / total if total else 0.0


def _system(cfg: ExperimentConfig) -> LinearSystem:
    pts = cfg.base_points()
    if pts.q and pts.q <= pts.n + 1 and not general_position(pts):
        raise InvalidConfigError(f"base points are not in general position over {cfg.field}")
    return vanishing_system(pts, cfg.degree)


def singular_member_at(L: LinearSystem, X: VarietySpec, x: ProjPoint, rng) -> MultiPoly:
    """A random member whose section is singular at x: a random element of ker xi_x."""
    jm = xi_matrix(L, X, x)
    kernel = mat_kernel_basis(jm.matrix.transpose())
    if not kernel:
        raise ValueError(f"every member is smooth at {x}")
    F = L.field
    while True:
        weights = [F.random(rng) for _ in kernel]
        coeffs = [sum(w * v[i] for w, v in zip(weights, kernel)) for i in range(len(L.basis))]
        coeffs = [F.convert(c) for c in coeffs]
        if any(not F.is_zero(c) for c in coeffs):
            return L.combination(coeffs)


def run_bertini_experiment(cfg: ExperimentConfig) -> ExperimentReport:
    """Fraction of sampled members whose section of X is singular at a rational point."""
    start = time.perf_counter()
    if cfg.variety is None:
        raise ValueError("bertini-sample needs a variety")
    p = cfg.p
    X = cfg.variety.reduce_mod(p)
    L = _system(cfg)
    threshold = 0.10 if cfg.threshold is None else cfg.threshold
    records = []
    xpts = None
    for t in range(cfg.trials):
        seed_t = trial_seed(cfg.seed, t)
        rng = random.Random(seed_t)
        target = None
        if cfg.member == "singular-at-point":
            if xpts is None:
                base = set(L.points.points)
                xpts = [pt for pt in (ProjPoint([int(v) for v in row], cfg.field) for row in variety_points(X, p, cfg.max_points)) if pt not in base]
            target = xpts[rng.randrange(len(xpts))]
            h = singular_member_at(L, X, target, rng)
        else:
            h = random_member(L, rng)
        rep = smooth_intersection_check(X, h, p, cfg.max_points)
        rec = {
            "trial": t,
            "seed": seed_t,
            "member": str(h),
            "verdict": rep.verdict,
            "points_checked": rep.points_checked,
            "singular_points": [pt.to_strings() for pt in rep.singular_points],
            "witness_ranks": [jacobian_rank_at(X, h, pt) for pt in rep.singular_points],
        }
        if target is not None:
            rec["target"] = target.to_strings()
        records.append(rec)
    n_sing = sum(r["verdict"] == SINGULAR for r in records)
    verdicts = Counter(r["verdict"] for r in records)
    frac = _fraction(n_sing, len(records))
    aggregates = {
        "trials": len(records),
        "verdict_counts": dict(sorted(verdicts.items())),
        "singular_fraction": frac,
        "threshold": threshold,
        "within_threshold": frac <= threshold,
        "expected_rank": X.codim + 1,
        "vector_dim": L.vector_dim,
    }
    return ExperimentReport(cfg.to_json(), records, aggregates, int((time.perf_counter() - start) * 1000))


def _survey_points(cfg: ExperimentConfig, X: VarietySpec, L: LinearSystem):
    rng = random.Random(cfg.seed)
    base_on_x = [pt for pt in L.points if X.contains(pt)]
    base = set(L.points.points)
    if isinstance(cfg.field, PrimeField):
        rows = variety_points(X, cfg.p, cfg.max_points)
        candidates = [pt for pt in (ProjPoint([int(v) for v in r], cfg.field) for r in rows) if pt not in base]
        if cfg.trials >= len(candidates):
            chosen = candidates
        else:
            chosen = [candidates[i] for i in sorted(rng.sample(range(len(candidates)), cfg.trials))]
    else:
        anchor = base_on_x[0] if base_on_x else None
        chosen = [pt for pt in random_points_on(X, cfg.trials, rng, anchor=anchor) if pt not in base]
    return chosen + base_on_x


def run_jet_survey(cfg: ExperimentConfig) -> ExperimentReport:
    """Jet-map ranks over sampled points of X and the resulting dimension count.

    ``cfg.trials`` is the number of non-base sample points.
    """
    start = time.perf_counter()
    if cfg.variety is None:
        raise ValueError("jet-survey needs a variety")
    X = cfg.variety.reduce_mod(cfg.p) if isinstance(cfg.field, PrimeField) else cfg.variety
    L = _system(cfg)
    sample = _survey_points(cfg, X, L)
    inc = incidence_dimension(L, X, sample)
    records = [
        {
            "point": r.point.to_strings(),
            "base": r.base,
            "rank": r.rank,
            "fiber_dim": r.fiber_dim,
            "constant_zero": r.constant_zero,
        }
        for r in inc.records
    ]
    hist = Counter(r.rank for r in inc.records)
    aggregates = {
        "points": len(records),
        "d": inc.d,
        "rank_histogram": {str(k): hist[k] for k in sorted(hist)},
        "generic_ranks": sorted({r.rank for r in inc.records if not r.base}),
        "base_ranks": sorted({r.rank for r in inc.records if r.base}),
        "generic_fiber": inc.generic_fiber,
        "base_fibers": inc.base_fibers,
        "dim_S": inc.dim_S,
        "dim_V": inc.dim_V,
        "margin": inc.margin,
        "jumps": [r.point.to_strings() for r in inc.jumps],
        "stratification_holds": inc.stratification_holds,
    }
    return ExperimentReport(cfg.to_json(), records, aggregates, int((time.perf_counter() - start) * 1000))


def _all_members(L: LinearSystem):
    """Every member of a GF(p) system up to scalar (first nonzero weight 1)."""
    p = L.field.p
    k = len(L.basis)
    for lead in range(k):
        for tail in product(range(p), repeat=k - lead - 1):
            yield L.combination([0] * lead + [1] + list(tail))


def run_disc_density(cfg: ExperimentConfig) -> ExperimentReport:
    """Fraction of quadrics in the system with vanishing discriminant."""
    start = time.perf_counter()
    if cfg.degree != 2:
        raise ValueError("disc-density needs degree 2")
    p = cfg.p
    L = _system(cfg)
    if not L.basis:
        raise EmptySystemError("the system is zero")
    if cfg.exhaustive:
        members = list(_all_members(L))
        seeds = [None] * len(members)
    else:
        seeds = [trial_seed(cfg.seed, t) for t in range(cfg.trials)]
        members = [random_member(L, random.Random(s)) for s in seeds]
    records = []
    for t, (h, s) in enumerate(zip(members, seeds)):
        rec = {"trial": t, "seed": s, "member": str(h), "singular": quadric_is_singular(h)}
        if cfg.exhaustive:
            rec["bruteforce_points"] = len(singular_points_bruteforce(h, p, cfg.max_points))
        records.append(rec)
    n_sing = sum(r["singular"] for r in records)
    frac = _fraction(n_sing, len(records))
    threshold = 10 / p if cfg.threshold is None else cfg.threshold
    aggregates = {
        "members": len(records),
        "singular": n_sing,
        "singular_fraction": frac,
        "threshold": threshold,
        "within_threshold": frac <= threshold,
        "vector_dim": L.vector_dim,
    }
    if cfg.exhaustive:
        aggregates["bruteforce_agrees"] = all(r["singular"] == (r["bruteforce_points"] > 0) for r in records)
    return ExperimentReport(cfg.to_json(), records, aggregates, int((time.perf_counter() - start) * 1000))


RUNNERS = {
    "bertini-sample": run_bertini_experiment,
    "jet-survey": run_jet_survey,
    "disc-density": run_disc_density,
}


def run_experiment(cfg: ExperimentConfig) -> ExperimentReport:
    return RUNNERS[cfg.experiment](cfg)


def _cell(v):
    if isinstance(v, (list, dict)):
        return json.dumps(v, separators=(",", ":"))
    if v is None:
        return ""
    return v


def render_report(report, fmt: str = "json", timing: bool = True) -> str:
    """Serialize an ExperimentReport (or anything with ``to_json``) deterministically."""
    data = report.to_json(timing=timing) if hasattr(report, "to_json") else report
    if fmt == "json":
        return json.dumps(data, indent=2) + "\n"
    if fmt != "csv":
        raise ValueError(f"unknown format {fmt!r}")
    rows = data.get("trials") if isinstance(data, dict) and "trials" in data else data
    if isinstance(rows, dict):
        rows = [rows]
    buf = io.StringIO()
    columns = []
    for r in rows:
        for k in r:
            if k not in columns:
                columns.append(k)
    writer = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n")
    writer.writeheader()
    for r in rows:
        writer.writerow({k: _cell(r.get(k)) for k in columns})
    return buf.getvalue()


def emit_report(report, fmt: str = "json", path=None, timing: bool = True) -> str:
    """Write the rendered report to *path* (if given) and return the text."""
    text = render_report(report, fmt, timing)
    if path is not None:
        try:
            with open(path, "w", newline="") as fh:
                fh.write(text)
        except OSError as exc:
            raise OSError(f"cannot write report to {path}: {exc}") from exc
    return text
