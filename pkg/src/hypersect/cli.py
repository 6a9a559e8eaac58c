"""Command-line entry point: ``hypersect <subcommand> ...`` (or ``python -m hypersect``)."""

from __future__ import annotations

import argparse
import sys

from .experiments import ExperimentConfig, emit_report, run_experiment
from .fields import QQ, PrimeField, field_from_tag
from .jets import VarietySpec
from .linsys import vanishing_system
from .poly import infer_nvars, parse_poly
from .projective import PointConfig
from .smoothness import quadric_discriminant, quadric_matrix, smooth_intersection_check


def _field(text: str):
    return field_from_tag(text)


def _prime_field(text: str):
    F = field_from_tag(text)
    if not isinstance(F, PrimeField):
        raise argparse.ArgumentTypeError(f"expected pINT, got {text!r}")
    return F


def _points_in(path, field, n=None):
    cfg = PointConfig.load(path)
    if n is not None and cfg.n != n:
        raise SystemExit(f"points file is in P^{cfg.n}, expected P^{n}")
    if cfg.field == field:
        return cfg
    if isinstance(field, PrimeField):
        return cfg.reduce_mod(field.p)
    raise SystemExit(f"cannot move points from {cfg.field} to {field}")


def _cmd_linsys(args):
    F = args.field or QQ
    cfg = _points_in(args.points, F, args.n)
    return vanishing_system(cfg, args.degree).to_json()


def _cmd_check_member(args):
    X = VarietySpec.load(args.variety)
    form = parse_poly(args.form, X.n + 1, QQ)
    return smooth_intersection_check(X, form, args.field.p)


def _cmd_disc(args):
    F = args.field or QQ
    n1 = args.n + 1 if args.n is not None else infer_nvars(args.form)
    h = parse_poly(args.form, n1, F)
    det = quadric_discriminant(h)
    return {
        "form": str(h),
        "field": F.tag,
        "matrix": [[F.to_str(v) for v in row] for row in quadric_matrix(h).rows],
        "discriminant": F.to_str(det),
        "singular": F.is_zero(det),
    }


def _experiment(args, name):
    X = VarietySpec.load(args.variety) if getattr(args, "variety", None) else None
    pts = _points_in(args.points, QQ) if getattr(args, "points", None) else None
    trials = getattr(args, "trials", None) or getattr(args, "samples", None) or 1
    cfg = ExperimentConfig(
        experiment=name,
        field=args.field,
        degree=args.degree,
        points=pts,
        variety=X,
        n=getattr(args, "n", None),
        trials=trials,
        seed=args.seed,
        member=getattr(args, "member", "random"),
        threshold=getattr(args, "threshold", None),
        exhaustive=getattr(args, "exhaustive", False),
    )
    return run_experiment(cfg)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hypersect", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--out", help="write to this path instead of stdout")
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--no-timing", action="store_true", help="emit runtime_ms as null for byte-stable output")

    p = sub.add_parser("linsys", help="basis of the degree-a forms through the given points")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--points", required=True)
    p.add_argument("--field", type=_field, default=None, help="Q or pINT")
    common(p)
    p.set_defaults(func=_cmd_linsys)

    p = sub.add_parser("check-member", help="smoothness of X and {form = 0} at rational points")
    p.add_argument("--variety", required=True)
    p.add_argument("--form", required=True)
    p.add_argument("--field", type=_prime_field, required=True)
    common(p)
    p.set_defaults(func=_cmd_check_member)

    p = sub.add_parser("disc", help="quadric discriminant verdict")
    p.add_argument("--form", required=True)
    p.add_argument("--n", type=int, default=None, help="ambient dimension (default: from the form)")
    p.add_argument("--field", type=_field, default=None)
    common(p)
    p.set_defaults(func=_cmd_disc)

    p = sub.add_parser("jet-survey", help="jet-map rank stratification on X")
    p.add_argument("--variety", required=True)
    p.add_argument("--points", required=True)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--field", type=_prime_field, required=True)
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    common(p)
    p.set_defaults(func=lambda a: _experiment(a, "jet-survey"))

    p = sub.add_parser("bertini-sample", help="Monte Carlo singular-section fraction")
    p.add_argument("--variety", required=True)
    p.add_argument("--points", required=True)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--field", type=_prime_field, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--member", choices=("random", "singular-at-point"), default="random")
    p.add_argument("--threshold", type=float, default=None)
    common(p)
    p.set_defaults(func=lambda a: _experiment(a, "bertini-sample"))

    p = sub.add_parser("disc-density", help="fraction of singular quadrics in a system")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--points", default=None)
    p.add_argument("--field", type=_prime_field, required=True)
    p.add_argument("--trials", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--exhaustive", action="store_true")
    p.add_argument("--threshold", type=float, default=None)
    common(p)
    p.set_defaults(func=lambda a: _experiment(a, "disc-density"), degree=2)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        result = args.func(args)
    except (ValueError, LookupError, RuntimeError, OSError) as exc:
        print(f"hypersect {args.command}: error: {exc}", file=sys.stderr)
        return 2
    text = emit_report(result, args.format, None, timing=not args.no_timing)
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0
