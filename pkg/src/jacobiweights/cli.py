"""Batch front end: every pipeline stage behind one subcommand each.

Reports are JSON, sorted keys, rationals as "p/q" strings, so exact
subcommands emit byte-identical output across runs.  Exit status: 0 when
every identity the subcommand asserts holds, 1 when a computation ran but
an asserted identity failed, 2 for invalid arguments or input files.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction

from .algebras import algebra_by_name, algebra_from_spec, build_gl, defining_rep, double, rep_R
from .corpus import enumerate_diagrams, primitive_audit
from .diagrams import (
    CIRCLE,
    INTERVAL,
    JacobiDiagram,
    make_theta_power,
    make_tripod,
    make_wheel,
)
from .geometry import (
    DegeneratePairError,
    PolygonalCurve,
    linking_gauss,
    load_curve_points,
    writhe_exact,
    writhe_monte_carlo,
)
from .observables import interpolate_polynomial, sigma_wheel_fast
from .orientations import legal_orientations, reduce_wheel_on_circle, verify_leg_bound
from .weights import contract_l, directed_weight_sum, weight_circle


def _emit(report, out):
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _frac(x):
    return str(Fraction(x))


def _load_algebra(arg):
    """Shorthand name (gl2, sl2, ...), inline JSON, or a spec file path."""
    if arg is None:
        g = build_gl(2)
        return g, defining_rep(g)
    if re.fullmatch(r"(gl\d+|sl2)", arg):
        return algebra_by_name(arg)
    return algebra_from_spec(arg)


def _builtin_diagram(name):
    m = re.fullmatch(r"theta(?:\^(\d+))?", name)
    if m:
        return make_theta_power(int(m.group(1) or 1))
    m = re.fullmatch(r"wheel(\d+)", name)
    if m:
        return make_wheel(int(m.group(1)))
    if name == "tripod":
        return make_tripod()
    raise ValueError(
        "unknown builtin %r (try theta, theta^2, wheel2, wheel4, tripod)" % name
    )


def _load_diagram(args, parser):
    if args.builtin and args.diagram:
        parser.error("--diagram and --builtin are mutually exclusive")
    try:
        if args.builtin:
            return _builtin_diagram(args.builtin)
        if args.diagram:
            with open(args.diagram) as fh:
                return JacobiDiagram.from_json(json.load(fh))
    except (OSError, ValueError, KeyError) as exc:
        parser.error(str(exc))
    parser.error("need --diagram FILE or --builtin NAME")


# -- subcommands ---------------------------------------------------------------


def cmd_wheel_vanish(args, parser):
    if args.m_max < args.m_min:
        parser.error("empty m range: %d..%d" % (args.m_min, args.m_max))
    base, base_rep = _load_algebra(args.algebra)
    dbl = double(base)
    rho = rep_R(base_rep, dbl)
    rows = []
    ok = True
    for m in range(args.m_min, args.m_max + 1):
        survivors, trace = reduce_wheel_on_circle(m)
        value = directed_weight_sum(make_wheel(m), dbl, rho)
        rewrite_zero = trace["reduced_to_zero"] and not survivors
        ok = ok and rewrite_zero and value == 0
        rows.append(
            {
                "m": m,
                "rewrite_reduced_to_zero": rewrite_zero,
                "rewrite_steps": [
                    [s["op"] for s in t["steps"]] for t in trace["orientations"]
                ],
                "directed_weight_sum": _frac(value),
            }
        )
    _emit({"check": "wheel-vanish", "algebra": "double(%s)" % base.name, "rows": rows, "ok": ok}, args.out)
    return 0 if ok else 1


def _sigma_point(task):
    m, n = task
    g = build_gl(n)
    return n, sigma_wheel_fast(m, g, defining_rep(g))


def cmd_sigma(args, parser):
    ns = [int(x) for x in args.n.split(",")] if args.n else list(range(1, args.m + 3))
    if len(set(ns)) != len(ns):
        parser.error("duplicate n values: %s" % args.n)
    if not ns:
        parser.error("empty n list")
    if args.m < 2:
        parser.error("m must be >= 2")
    tasks = [(args.m, n) for n in ns]
    if args.jobs > 1:
        import multiprocessing

        with multiprocessing.Pool(args.jobs) as pool:
            points = pool.map(_sigma_point, tasks)
    else:
        points = [_sigma_point(t) for t in tasks]
    coeffs = interpolate_polynomial(points) if len(points) > 1 else None
    report = {
        "check": "sigma",
        "m": args.m,
        "values": [{"n": n, "value": _frac(v)} for n, v in points],
    }
    ok = True
    if coeffs:
        degree = len(coeffs) - 1
        report["polynomial_ascending"] = [_frac(c) for c in coeffs]
        report["degree"] = degree
        report["leading_coefficient"] = _frac(coeffs[-1])
        ok = degree <= args.m + 1
        report["degree_bound_ok"] = ok
    _emit(report, args.out)
    return 0 if ok else 1


def cmd_weight(args, parser):
    diagram = _load_diagram(args, parser)
    base, base_rep = _load_algebra(args.algebra)
    if diagram.directed or args.double:
        algebra = double(base)
        rho = rep_R(base_rep, algebra)
    else:
        algebra, rho = base, base_rep
    report = {
        "check": "weight",
        "algebra": algebra.name,
        "skeleton": diagram.skeleton,
        "degree": diagram.degree,
        "legs": diagram.legs,
    }
    if diagram.skeleton == CIRCLE:
        report["weight"] = _frac(weight_circle(diagram, algebra, rho))
        if not diagram.directed and args.double:
            report["directed_weight_sum"] = _frac(directed_weight_sum(diagram, algebra, rho))
    else:
        report["words"] = contract_l(diagram, algebra).to_json()
    _emit(report, args.out)
    return 0


def cmd_orientations(args, parser):
    diagram = _load_diagram(args, parser)
    if diagram.directed:
        parser.error("pass the undirected diagram; orientations are enumerated here")
    rows = []
    ok = True
    for oriented in legal_orientations(diagram):
        try:
            bound = verify_leg_bound(oriented)
        except ValueError as exc:
            ok = False
            bound = {"error": str(exc)}
        rows.append(
            {
                "directions": oriented.to_json()["directions"],
                "leg_bound": {
                    k: (v if not isinstance(v, list) else list(v))
                    for k, v in bound.items()
                },
            }
        )
    _emit(
        {
            "check": "orientations",
            "degree": diagram.degree,
            "legs": diagram.legs,
            "count": len(rows),
            "orientations": rows,
            "ok": ok,
        },
        args.out,
    )
    return 0 if ok else 1


def cmd_corpus(args, parser):
    try:
        corpus = enumerate_diagrams(args.max_degree, args.skeleton, shuffle_seed=args.seed)
    except ValueError as exc:
        parser.error(str(exc))
    text = corpus.to_jsonl()
    ok = True
    if args.audit is not None:
        try:
            report = primitive_audit(corpus, args.audit)
        except ValueError as exc:
            parser.error(str(exc))
        ok = report["ok"]
        text += json.dumps({"audit": report}, sort_keys=True) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if ok else 1


def _load_curve(path, closed_flag, clearance, parser):
    try:
        points, closed_hint = load_curve_points(path)
    except (OSError, ValueError, KeyError) as exc:
        parser.error("cannot read curve %s: %s" % (path, exc))
    closed = closed_flag or bool(closed_hint)
    if not closed:
        parser.error("curve %s is open; pass --closed for a closed curve" % path)
    try:
        return PolygonalCurve(points, closed=True, clearance=clearance)
    except ValueError as exc:
        parser.error("invalid curve %s: %s" % (path, exc))


def cmd_writhe(args, parser):
    curve = _load_curve(args.curve, args.closed, args.clearance, parser)
    try:
        value = writhe_exact(curve)
    except DegeneratePairError as exc:
        parser.error(str(exc))
    report = {"check": "writhe", "segments": len(curve.segments()), "writhe": value}
    code = 0
    if args.mc_samples:
        est, err = writhe_monte_carlo(curve, samples=args.mc_samples, seed=args.seed or 0)
        sigma = abs(est - value) / err if err > 0 else 0.0
        report["monte_carlo"] = {
            "estimate": est,
            "std_error": err,
            "samples": args.mc_samples,
            "seed": args.seed or 0,
            "sigma_distance": sigma,
            "within_3_sigma": sigma <= 3.0,
        }
        if sigma > 3.0:
            code = 1
    _emit(report, args.out)
    return code


def cmd_link(args, parser):
    c1 = _load_curve(args.curve, args.closed, args.clearance, parser)
    c2 = _load_curve(args.curve2, args.closed, args.clearance, parser)
    try:
        value = linking_gauss(c1, c2)
    except DegeneratePairError as exc:
        parser.error(str(exc))
    nearest = round(value)
    dist = abs(value - nearest)
    report = {
        "check": "link",
        "linking": value,
        "nearest_integer": nearest,
        "integer_distance": dist,
        "integer_ok": dist <= args.tolerance,
    }
    _emit(report, args.out)
    return 0 if dist <= args.tolerance else 1


# -- argument wiring -------------------------------------------------------------


def build_parser():
    parser = argparse.ArgumentParser(
        prog="jacobiweights",
        description="Exact diagram weights, legal orientations, wheel observables, and polygonal writhe/linking.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--algebra", help="shorthand (gl2, gl3, sl2), JSON, or spec file")
    common.add_argument("--out", help="write the JSON report here instead of stdout")
    common.add_argument("--jobs", type=int, default=1, help="worker processes where supported")
    common.add_argument("--seed", type=int, help="seed for randomized paths (Monte Carlo, corpus shuffling)")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("wheel-vanish", parents=[common], help="reduce wheels to zero two ways")
    p.add_argument("--m-min", type=int, default=2)
    p.add_argument("--m-max", type=int, default=4)
    p.set_defaults(func=cmd_wheel_vanish)

    p = sub.add_parser("sigma", parents=[common], help="wheel observable over an n range, with interpolation")
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--n", help="comma-separated n values (default 1..m+2)")
    p.set_defaults(func=cmd_sigma)

    p = sub.add_parser("weight", parents=[common], help="weight of a circle diagram or word dump of an interval one")
    p.add_argument("--diagram", help="diagram JSON file")
    p.add_argument("--builtin", help="theta, theta^K, wheelM, tripod")
    p.add_argument("--double", action="store_true", help="evaluate over the doubled algebra")
    p.set_defaults(func=cmd_weight)

    p = sub.add_parser("orientations", parents=[common], help="legal orientations and their leg-bound reports")
    p.add_argument("--diagram", help="diagram JSON file")
    p.add_argument("--builtin", help="theta, theta^K, wheelM, tripod")
    p.set_defaults(func=cmd_orientations)

    p = sub.add_parser("corpus", parents=[common], help="enumerate small-degree classes, optionally audit primitives")
    p.add_argument("--max-degree", type=int, default=4)
    p.add_argument("--skeleton", choices=[CIRCLE, INTERVAL], default=CIRCLE)
    p.add_argument("--audit", type=int, help="run the primitive audit at this degree")
    p.set_defaults(func=cmd_corpus)

    p = sub.add_parser("writhe", parents=[common], help="Gauss self-linking of a closed polygonal curve")
    p.add_argument("--curve", required=True, help="JSON or CSV point file")
    p.add_argument("--closed", action="store_true", help="treat the curve as closed")
    p.add_argument("--clearance", type=float, help="embedding clearance override")
    p.add_argument("--mc-samples", type=int, help="cross-check against the Monte Carlo oracle")
    p.set_defaults(func=cmd_writhe)

    p = sub.add_parser("link", parents=[common], help="Gauss linking number of two closed curves")
    p.add_argument("--curve", required=True)
    p.add_argument("--curve2", required=True)
    p.add_argument("--closed", action="store_true", help="treat both curves as closed")
    p.add_argument("--clearance", type=float)
    p.add_argument("--tolerance", type=float, default=1e-6, help="allowed distance from an integer")
    p.set_defaults(func=cmd_link)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args, parser)


if __name__ == "__main__":
    sys.exit(main())
