"""Command-line front end.

    padicdyn check <file> [--precision N] [--truncation T] [--max-iter K] [--report PATH]
    padicdyn linearize <file> --map-index i [--precision N] [--truncation T]
    padicdyn fixed-points <file> --map-index i [--precision N]
    padicdyn orbit <file> --steps K [--map-index i] [--precision N]

Exit codes for ``check``: 0 finite intersection, 1 invariant-subvariety
candidate, 2 inconclusive, 3 input or validation error.  The other subcommands
use 0/3.
"""

from __future__ import annotations

import argparse
import sys

from .errors import PrecisionError, ValidationError
from .checker import analyze
from .dynamics import find_fixed_points, orbit_distances
from .linearize import linearize, verify_functional_equation
from .problemfile import load_problem, render_padic, render_report

_EXIT = {"finite": 0, "invariant_candidate": 1, "inconclusive": 2}
_ERROR_EXIT = 3


def _fmt_padic(x, digits: int = 8) -> str:
    d = render_padic(x, digits)
    if "zero" in d:
        return "0 (exact)"
    if "zero_to_valuation" in d:
        return f"O(p^{d['zero_to_valuation']})"
    ds = ",".join(str(t) for t in d["digits"])
    return f"v={d['valuation']} digits=[{ds}] prec={d['precision']}"


def _load(args):
    with open(args.file, "r", encoding="utf-8") as fh:
        text = fh.read()
    return load_problem(
        text,
        path=args.file,
        precision=getattr(args, "precision", None),
        truncation=getattr(args, "truncation", None),
        max_iterations=getattr(args, "max_iter", None),
    )


def _select_map(spec, index: int):
    if not 1 <= index <= len(spec.maps):
        raise ValidationError(
            f"--map-index {index} out of range 1..{len(spec.maps)}"
        )
    return spec.maps[index - 1], spec.fixed_points[index - 1], spec.start[index - 1]


def _cmd_check(args) -> int:
    spec = _load(args)
    report = analyze(spec)
    text = render_report(report, spec)
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return _EXIT[report.verdict]


def _cmd_linearize(args) -> int:
    spec = _load(args)
    P, alpha, _ = _select_map(spec, args.map_index)
    lin = linearize(P, alpha, spec.truncation)
    print(f"fixed point: {_fmt_padic(lin.fixed_point)}")
    print(f"multiplier:  {_fmt_padic(lin.multiplier)}")
    print(f"convergence radius valuation: {lin.convergence_radius_valuation}")
    print(f"isometry radius valuation:    {lin.isometry_radius_valuation}")
    residual = verify_functional_equation(lin)
    ok = residual.is_certified_zero_through_order()
    print(f"functional equation residual: {'certified zero' if ok else 'NONZERO (failure)'}")
    for n in range(1, lin.exp_series.order + 1):
        print(f"c_{n}: {_fmt_padic(lin.exp_series.coefficient(n))}")
    return 0


def _cmd_fixed_points(args) -> int:
    spec = _load(args)
    P, _, _ = _select_map(spec, args.map_index)
    scan = find_fixed_points(P)
    if not scan.points and not scan.unresolved_residues:
        print("no Z_p fixed points found")
    for fp in scan.points:
        line = f"{fp.classification}: point {_fmt_padic(fp.point)}; multiplier {_fmt_padic(fp.multiplier)}"
        if fp.attracting_radius_valuation is not None:
            line += f"; attracting radius valuation {fp.attracting_radius_valuation}"
        print(line)
    for a in scan.unresolved_residues:
        print(f"unresolved residue class: {a} mod {spec.ctx.prime} (Hensel criterion fails)")
    return 0


def _cmd_orbit(args) -> int:
    spec = _load(args)
    indices = [args.map_index] if args.map_index else range(1, len(spec.maps) + 1)
    for idx in indices:
        P, alpha, x = _select_map(spec, idx)
        points, dists, exhausted = orbit_distances(P, alpha, x, args.steps)
        print(f"coordinate {idx}:")
        for n, (z, d) in enumerate(zip(points, dists)):
            dv = "unresolved" if d is None else str(d)
            print(f"  n={n}: {_fmt_padic(z)}  v(P^n(x)-alpha)={dv}")
        if exhausted is not None:
            print(
                f"  distance collapsed below working precision at n={exhausted};"
                " raise --precision to iterate further"
            )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="padicdyn",
        description="Exact p-adic arithmetic dynamics: linearization and"
        " certified orbit-variety intersection analysis",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, max_iter=False):
        p.add_argument("file", help="problem file (JSON)")
        p.add_argument("--precision", type=int, default=None, help="override working precision")
        p.add_argument("--truncation", type=int, default=None, help="override truncation order")
        if max_iter:
            p.add_argument("--max-iter", type=int, default=None, dest="max_iter",
                           help="override the direct-scan iteration cap")

    p_check = sub.add_parser("check", help="run the full intersection analysis")
    common(p_check, max_iter=True)
    p_check.add_argument("--report", default=None, help="write the report here instead of stdout")
    p_check.set_defaults(func=_cmd_check)

    p_lin = sub.add_parser("linearize", help="print the linearization of one map")
    common(p_lin)
    p_lin.add_argument("--map-index", type=int, required=True, help="1-based coordinate index")
    p_lin.set_defaults(func=_cmd_linearize)

    p_fp = sub.add_parser("fixed-points", help="scan Z_p fixed points of one map")
    common(p_fp)
    p_fp.add_argument("--map-index", type=int, required=True, help="1-based coordinate index")
    p_fp.set_defaults(func=_cmd_fixed_points)

    p_orb = sub.add_parser("orbit", help="print orbit points with distance valuations")
    common(p_orb)
    p_orb.add_argument("--steps", type=int, required=True, help="number of iterations")
    p_orb.add_argument("--map-index", type=int, default=None, help="restrict to one coordinate")
    p_orb.set_defaults(func=_cmd_orbit)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValidationError, PrecisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _ERROR_EXIT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _ERROR_EXIT


if __name__ == "__main__":
    sys.exit(main())
