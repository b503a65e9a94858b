"""Command-line entry point.

Every run first echoes its resolved configuration as ``# key: value`` lines,
then the result.  Exit status: 0 success, 1 domain error, 2 usage error.
"""
from __future__ import annotations

import argparse
import sys
from typing import List, Optional

from . import bounds as bnd
from . import constructions as gen
from . import formats as fmt
from . import incidence as inc
from . import setsystem as sets
from . import simtri
from .errors import NondegenError, FormatError
from .geometry import Sphere


def _rational(text):
    try:
        return fmt.parse_rational(text)
    except FormatError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def _seed(text):
    if not text.isdigit() or int(text) >= gen.SEED_LIMIT:
        raise argparse.ArgumentTypeError(f"seed must be a decimal 64-bit unsigned integer, got {text!r}")
    return int(text)


def _nonneg(text):
    if not text.isdigit():
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text!r}")
    return int(text)


def _positive(text):
    v = _nonneg(text)
    if v < 1:
        raise argparse.ArgumentTypeError("expected a positive integer")
    return v


def _read(path):
    with open(path, "r", encoding="ascii") as fh:
        return fh.read()


def _emit(text: str, out: Optional[str]):
    if out:
        with open(out, "w", encoding="ascii") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_objects(args):
    if getattr(args, "spheres", None):
        return fmt.loads_spheres(_read(args.spheres)).spheres
    return fmt.loads_planes(_read(args.planes)).planes


def _seed_comment(args):
    return [f"# seed: {args.seed}"]


# -- handlers ----------------------------------------------------------------------


def gen_points(args):
    pts = gen.gen_random_points(args.count, args.dim, args.bound, args.seed)
    _emit(fmt.dumps_points(pts, args.dim, _seed_comment(args)), args.out)


def gen_onsphere(args):
    sphere = None
    if args.center is not None or args.sq_radius is not None:
        center = [fmt.parse_rational(c) for c in args.center.split(",")] if args.center else [0] * args.dim
        sphere = Sphere(center, args.sq_radius if args.sq_radius is not None else 1)
    pts = gen.gen_points_on_sphere(args.count, args.dim, args.seed, sphere, args.param_bound)
    _emit(fmt.dumps_points(pts, args.dim, _seed_comment(args)), args.out)


def gen_spheres(args):
    pf = fmt.loads_points(_read(args.points))
    spheres = gen.gen_sphere_family(pf.points, args.k, args.seed)
    _emit(fmt.dumps_spheres(spheres, pf.dim, _seed_comment(args)), args.out)


def gen_cluster(args):
    pts, sphere = gen.gen_degenerate_cluster(args.dim, args.circle, args.off, args.seed)
    _emit(fmt.dumps_points(pts, args.dim, _seed_comment(args)), args.points_out)
    _emit(fmt.dumps_spheres([sphere], args.dim, _seed_comment(args)), args.sphere_out)
    print(f"points {len(pts)}")


def gen_graph_thm1(args):
    o = gen.thm1_random_graph(args.m, args.n, args.beta, args.seed)
    print(f"# rho: {o.rho}")
    print(f"# edges: {o.graph.edge_count}")
    print(f"# min_degree: {o.min_degree}")
    print(f"# max_pair_intersection: {o.max_pair_intersection}")
    print(f"# passed: {'true' if o.passed else 'false'}")
    _emit(fmt.dumps_graph(o.graph, _seed_comment(args)), args.out)


def incidence_count(args):
    pts = fmt.loads_points(_read(args.points)).points
    print(inc.build_incidence(pts, _load_objects(args)).edge_count)


def incidence_build(args):
    pts = fmt.loads_points(_read(args.points)).points
    _emit(fmt.dumps_graph(inc.build_incidence(pts, _load_objects(args))), args.out)


def check_nondeg(args):
    g = fmt.loads_graph(_read(args.graph))
    fn = inc.check_dually_nondegenerate if args.dual else inc.check_nondegenerate
    sys.stdout.write(fmt.dumps_report(fn(g, args.beta, args.max_witnesses)))


def check_geo(args):
    pts = fmt.loads_points(_read(args.points)).points
    objs = _load_objects(args)
    test = inc.geometric_nondegeneracy_sphere if args.spheres else inc.geometric_nondegeneracy_hyperplane
    for i, o in enumerate(objs):
        print(f"{i} {'true' if test(pts, o, args.beta) else 'false'}")


def spanning(args):
    pts = fmt.loads_points(_read(args.points)).points
    count = inc.count_spanning_spheres if args.what == "spheres" else inc.count_spanning_hyperplanes
    print(count(pts))


def vcdim(args):
    if args.sets:
        print(sets.vc_dimension(fmt.loads_setsystem(_read(args.sets)), args.cap))
    else:
        left, right = sets.left_right_vc(fmt.loads_graph(_read(args.graph)), args.cap)
        print(f"{left} {right}")


def shatter(args):
    print(sets.shatter_function(fmt.loads_setsystem(_read(args.sets)), args.z, args.budget))


def peel(args):
    cert = sets.peel_certify(fmt.loads_graph(_read(args.graph)), args.beta)
    sys.stdout.write(fmt.dumps_certificate(cert))


def simtri_cmd(args):
    pts = fmt.loads_points(_read(args.points)).points
    shape = simtri.TriangleShape.parse(args.shape)
    if args.algo == "brute":
        count = simtri.count_similar_brute(pts, shape)
        print(count * shape.aut if args.ordered else count)
    else:
        print(simtri.count_similar_orbit(pts, shape, ordered=args.ordered))
    if args.breakdown:
        for (a, b), k in sorted(simtri.orbit_breakdown(pts, shape).items()):
            print(f"{a} {b} {k}")


def bounds_cmd(args):
    f = bnd.BoundFormula(args.kind, args.d)
    print(f"# dominant_term: {bnd.dominant_term(f, args.m, args.n)}")
    print(bnd.evaluate(f, args.m, args.n))


def report_ratio(args):
    f = bnd.BoundFormula(args.kind, args.d)
    if args.measured is not None:
        if args.m is None or args.n is None:
            raise NondegenError("--measured needs --m and --n")
        measured, m, n = args.measured, args.m, args.n
    else:
        if not args.points or not (args.spheres or args.planes):
            raise NondegenError("give --measured or --points with --spheres/--planes")
        pts = fmt.loads_points(_read(args.points)).points
        objs = _load_objects(args)
        measured, m, n = inc.build_incidence(pts, objs).edge_count, len(pts), len(objs)
    rep = bnd.ratio_report(measured, f, m, n)
    if not args.no_header:
        print(bnd.CSV_HEADER)
    print(rep.csv_row())


# -- parser --------------------------------------------------------------------------


def _objects(p, required=True):
    g = p.add_mutually_exclusive_group(required=required)
    g.add_argument("--spheres", help="sphere file")
    g.add_argument("--planes", help="hyperplane file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nondegen", description="Exact nondegenerate incidence geometry.")
    sub = parser.add_subparsers(dest="verb", required=True)

    g = sub.add_parser("gen", help="generators").add_subparsers(dest="what", required=True)
    p = g.add_parser("points")
    p.add_argument("--count", type=_positive, required=True)
    p.add_argument("--dim", type=_positive, required=True)
    p.add_argument("--bound", type=_nonneg, required=True)
    p.add_argument("--seed", type=_seed, required=True)
    p.add_argument("--out")
    p.set_defaults(func=gen_points)

    p = g.add_parser("onsphere")
    p.add_argument("--count", type=_positive, required=True)
    p.add_argument("--dim", type=_positive, required=True)
    p.add_argument("--center", help="comma-separated rationals")
    p.add_argument("--sq-radius", type=_rational)
    p.add_argument("--param-bound", type=_positive, default=8)
    p.add_argument("--seed", type=_seed, required=True)
    p.add_argument("--out")
    p.set_defaults(func=gen_onsphere)

    p = g.add_parser("spheres")
    p.add_argument("--points", required=True)
    p.add_argument("--k", type=_positive, required=True)
    p.add_argument("--seed", type=_seed, required=True)
    p.add_argument("--out")
    p.set_defaults(func=gen_spheres)

    p = g.add_parser("cluster")
    p.add_argument("--dim", type=_positive, required=True)
    p.add_argument("--circle", type=_positive, required=True)
    p.add_argument("--off", type=_nonneg, required=True)
    p.add_argument("--seed", type=_seed, required=True)
    p.add_argument("--points-out", required=True)
    p.add_argument("--sphere-out", required=True)
    p.set_defaults(func=gen_cluster)

    p = g.add_parser("graph-thm1")
    p.add_argument("--m", type=_positive, required=True)
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--beta", type=_rational, required=True)
    p.add_argument("--seed", type=_seed, required=True)
    p.add_argument("--out")
    p.set_defaults(func=gen_graph_thm1)

    i = sub.add_parser("incidence", help="point-object incidences").add_subparsers(dest="what", required=True)
    for name, func in (("count", incidence_count), ("build", incidence_build)):
        p = i.add_parser(name)
        p.add_argument("--points", required=True)
        _objects(p)
        if name == "build":
            p.add_argument("--out")
        p.set_defaults(func=func)

    c = sub.add_parser("check", help="nondegeneracy checks").add_subparsers(dest="what", required=True)
    for name, dual in (("nondeg", False), ("dual-nondeg", True)):
        p = c.add_parser(name)
        p.add_argument("--graph", required=True)
        p.add_argument("--beta", type=_rational, required=True)
        p.add_argument("--max-witnesses", type=_positive)
        p.set_defaults(func=check_nondeg, dual=dual)
    p = c.add_parser("geo-sphere")
    p.add_argument("--points", required=True)
    p.add_argument("--spheres", required=True)
    p.add_argument("--beta", type=_rational, required=True)
    p.set_defaults(func=check_geo)
    p = c.add_parser("geo-plane")
    p.add_argument("--points", required=True)
    p.add_argument("--planes", required=True)
    p.add_argument("--beta", type=_rational, required=True)
    p.set_defaults(func=check_geo, spheres=None)

    s = sub.add_parser("spanning", help="count spanning hyperplanes or spheres")
    s.add_argument("what", choices=["planes", "spheres"])
    s.add_argument("--points", required=True)
    s.set_defaults(func=spanning)

    p = sub.add_parser("vcdim", help="exact VC dimension")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--sets")
    src.add_argument("--graph")
    p.add_argument("--cap", type=_positive, default=sets.DEFAULT_VC_CAP)
    p.set_defaults(func=vcdim)

    p = sub.add_parser("shatter", help="shatter function value")
    p.add_argument("--sets", required=True)
    p.add_argument("--z", type=_nonneg, required=True)
    p.add_argument("--budget", type=_positive, default=sets.DEFAULT_SHATTER_BUDGET)
    p.set_defaults(func=shatter)

    p = sub.add_parser("peel", help="peeling edge-bound certificate")
    p.add_argument("--graph", required=True)
    p.add_argument("--beta", type=_rational, required=True)
    p.set_defaults(func=peel)

    p = sub.add_parser("simtri", help="count similar triangles")
    p.add_argument("--points", required=True)
    p.add_argument("--shape", required=True, help="squared sides L2,s2,s3")
    p.add_argument("--algo", choices=["brute", "orbit"], required=True)
    p.add_argument("--ordered", action="store_true")
    p.add_argument("--breakdown", action="store_true")
    p.set_defaults(func=simtri_cmd)

    p = sub.add_parser("bounds", help="evaluate an incidence bound")
    p.add_argument("--kind", choices=bnd.KINDS, required=True)
    p.add_argument("--m", type=_positive, required=True)
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--d", type=_positive)
    p.set_defaults(func=bounds_cmd)

    r = sub.add_parser("report", help="measured-to-bound ratios").add_subparsers(dest="what", required=True)
    p = r.add_parser("ratio")
    p.add_argument("--kind", choices=bnd.KINDS, required=True)
    p.add_argument("--d", type=_positive)
    p.add_argument("--measured", type=_nonneg)
    p.add_argument("--m", type=_positive)
    p.add_argument("--n", type=_positive)
    p.add_argument("--points")
    _objects(p, required=False)
    p.add_argument("--no-header", action="store_true")
    p.set_defaults(func=report_ratio)
    return parser


def _echo_config(args):
    words = [args.verb] + ([args.what] if getattr(args, "what", None) else [])
    print(f"# nondegen {' '.join(words)}")
    for key in sorted(vars(args)):
        if key in ("func", "verb", "what", "dual"):  # implied by the verb
            continue
        val = getattr(args, key)
        if val is None or val is False:
            continue
        print(f"# {key}: {val}")


def run(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    _echo_config(args)
    try:
        args.func(args)
    except NondegenError as e:
        sys.stdout.flush()
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return 1
    except OSError as e:
        sys.stdout.flush()
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return 1
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
