"""Command-line front end: ``qgcount {check,count,ehrhart,reeb,verify} FILE``.

Exit status is 0 when the check passes, 1 when a theorem check fails (or the
minimizer does not converge) and 2 for malformed input or unmet hypotheses.
"""

import argparse
import json
import sys
from fractions import Fraction

from . import ratmath as rm
from .cones import dual, gorenstein_check
from .counting import count_levels, count_polytope, polytope_cone
from .errors import NoConvergence, QGError
from .orbifold import ray_terms
from .quasifit import fit_counts
from .reeb import DEFAULT_TOL, nearby_primitive_directions, reeb_direction
from .specfile import load_spec
from .verify import (
    _enc,
    fit_levels,
    emit,
    summarize_reeb,
    verify_main_theorem,
    verify_polytope_bound,
)

EXIT_PASS, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class UsageError(Exception):
    pass


def _fmt(x) -> str:
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (tuple, list)):
        return "(" + ", ".join(_fmt(v) for v in x) + ")"
    if isinstance(x, float):
        return f"{x:.12e}"
    return str(x)


def _parse_vec(text: str) -> tuple:
    try:
        return tuple(int(t) for t in text.replace(" ", "").split(","))
    except ValueError:
        raise UsageError(f"--xi expects comma-separated integers, got {text!r}") from None


def _xi_for(spec, arg):
    if arg is not None:
        return _parse_vec(arg)
    if spec.xi is not None:
        return spec.xi
    if spec.polytope_vertices is not None:
        return (0,) * spec.dim + (1,)
    raise UsageError("no xi given (use --xi or put 'xi' in the file)")


def _check_xi(C, xi):
    if len(xi) != C.dim:
        raise UsageError(f"xi has length {len(xi)}, expected {C.dim}")
    if rm.vec_gcd(xi) != 1:
        raise UsageError(f"xi = {_fmt(xi)} is not primitive")
    if not C.is_interior(xi):
        raise UsageError(f"xi = {_fmt(xi)} is not in the interior of the cone")


def cmd_check(args, out):
    spec = load_spec(args.file)
    if spec.polytope_vertices is not None:
        P = polytope_cone(spec.polytope_vertices)
        print(f"polytope {spec.name}".rstrip(), file=out)
        print(f"vertices: {_fmt(tuple(r[:-1] for r in P.rays))}", file=out)
    C = spec.primal_cone()
    print(f"dim: {C.dim}", file=out)
    print(f"rays: {_fmt(C.rays)}", file=out)
    print(f"facet normals: {_fmt(C.facet_normals)}", file=out)
    G = gorenstein_check(C)
    print(f"Q-Gorenstein: yes, lambda = {_fmt(G.lam)}, l = {G.l}", file=out)
    if G.smooth:
        print("smooth facets: yes", file=out)
    else:
        print(f"smooth facets: no, failing facets {_fmt(G.bad_faces)}", file=out)
    if spec.xi is not None:
        _check_xi(C, spec.xi)
        print(f"q({_fmt(spec.xi)}) = {G.q_of(spec.xi)}", file=out)
    if not G.smooth:
        print("error: NotSmooth: facet rays do not extend to a Z-basis", file=sys.stderr)
        return EXIT_INPUT
    return EXIT_PASS


def cmd_count(args, out):
    spec = load_spec(args.file)
    if args.k < 0:
        raise UsageError("--k must be nonnegative")
    if spec.polytope_vertices is not None and args.xi is None and spec.xi is None:
        ks = range(args.k + 1) if args.table else [args.k]
        vals = [count_polytope(spec.polytope_vertices, k) for k in ks]
    else:
        C = spec.primal_cone()
        xi = _xi_for(spec, args.xi)
        if len(xi) != C.dim or not C.is_interior(xi):
            raise UsageError(f"xi = {_fmt(xi)} is not in the interior of the cone")
        vals = count_levels(dual(C), xi, args.k, strategy=args.strategy, workers=args.threads)
        ks = range(args.k + 1)
        if not args.table:
            ks, vals = [args.k], [vals[-1]]
    if args.table:
        print("k,count", file=out)
        for k, v in zip(ks, vals):
            print(f"{k},{v}", file=out)
    else:
        print(vals[-1], file=out)
    return EXIT_PASS


def _print_qp(qp, out):
    print(f"degree {qp.degree}, period {qp.period}", file=out)
    for r in range(qp.period):
        row = ", ".join(f"b{i} = {qp.coefficient(i, r)}" for i in range(qp.degree, -1, -1))
        print(f"  k = {r} mod {qp.period}: {row}", file=out)


def cmd_ehrhart(args, out):
    spec = load_spec(args.file)
    if spec.polytope_vertices is not None and args.xi is None:
        n = spec.dim
        kmax = args.kmax if args.kmax is not None else n + 3
        counts = [count_polytope(spec.polytope_vertices, k) for k in range(kmax + 1)]
        _print_qp(fit_counts(counts, n, 1), out)
        return EXIT_PASS
    C = spec.primal_cone()
    xi = _xi_for(spec, args.xi)
    _check_xi(C, xi)
    Cdual = dual(C)
    p0 = rm.lcm(*(t.data.g for t in ray_terms(C, xi)))

    def counts_upto(k):
        return count_levels(Cdual, xi, k, workers=args.threads)

    qp, _ = fit_levels(Cdual, xi, C.dim, p0, counts_upto, kmin=args.kmax or 0)
    _print_qp(qp, out)
    return EXIT_PASS


def _run_reeb(C, tol, max_den):
    G = gorenstein_check(C)
    R = reeb_direction(C, G, tol=tol, max_denominator=max_den)
    cands = () if R.rational_xi is not None else tuple(nearby_primitive_directions(R, C))
    return R, cands


def cmd_reeb(args, out):
    spec = load_spec(args.file)
    C = spec.primal_cone()
    R, cands = _run_reeb(C, args.tol, args.max_den)
    print(f"xi_c = {_fmt(tuple(float(f'{v:.12e}') for v in R.xi_c))}", file=out)
    print(f"projected gradient norm = {R.grad_norm:.3e}", file=out)
    print(f"Newton steps = {R.iterations}", file=out)
    print(f"projected Hessian positive definite: {'yes' if R.hessian_pd else 'no'}", file=out)
    if R.rational_xi is not None:
        print(f"direction {_fmt(R.rational_xi)} (certified: exact projected gradient is zero)",
              file=out)
    else:
        print("no rational direction certified; nearest primitive candidates:", file=out)
        for v in cands:
            print(f"  {_fmt(v)}", file=out)
    return EXIT_PASS


def _verify_polytope(spec, args, out):
    rep = verify_polytope_bound(spec.polytope_vertices, args.kmax)
    print(f"polytope {spec.name}".rstrip(), file=out)
    print(f"reflexive: {rep.reflexive}, balanced: {rep.balanced}, centroid {_fmt(rep.centroid)}",
          file=out)
    print(f"Vol = {rep.vol}", file=out)
    print("Ehrhart coefficients a_0..a_n: " + ", ".join(str(a) for a in rep.coefficients),
          file=out)
    if args.json:
        _write_json(args.json, json.dumps(_enc(rep), indent=2) + "\n", out)
    if not rep.hypotheses_met:
        missing = [name for name, ok in (("reflexive", rep.reflexive),
                                         ("balanced", rep.balanced),
                                         ("dimension >= 2", rep.n >= 2)) if not ok]
        print(f"error: hypotheses not met: {', '.join(missing)}", file=sys.stderr)
        return EXIT_INPUT
    print(f"a_(n-2) = {rep.a_nm2}, bound = {rep.bound}, margin = {rep.margin}", file=out)
    print("PASS" if rep.holds else "FAIL", file=out)
    return EXIT_PASS if rep.holds else EXIT_FAIL


def _write_json(path, text, out):
    if path == "-":
        out.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def cmd_verify(args, out):
    spec = load_spec(args.file)
    if spec.polytope_vertices is not None and args.xi is None:
        return _verify_polytope(spec, args, out)
    C = spec.primal_cone()
    G = gorenstein_check(C)
    if not G.smooth:
        print(f"error: NotSmooth: facets {_fmt(G.bad_faces)} do not extend to a Z-basis",
              file=sys.stderr)
        return EXIT_INPUT
    reeb = None
    if args.xi is not None or spec.xi is not None:
        xi = _xi_for(spec, args.xi)
        source = "given"
    else:
        R, cands = _run_reeb(C, DEFAULT_TOL, 1000)
        reeb = summarize_reeb(R, cands)
        if R.rational_xi is not None:
            xi, source = R.rational_xi, "reeb-certified"
        else:
            xi, source = cands[0], "reeb-candidate"
    _check_xi(C, xi)
    rep = verify_main_theorem(C, xi, kmax=args.kmax, name=spec.name, workers=args.threads,
                              xi_source=source, reeb=reeb)
    n = C.dim - 1
    print(f"cone {rep.name}".rstrip(), file=out)
    print(f"xi = {_fmt(rep.xi)} ({rep.xi_source})", file=out)
    print(f"lambda = {_fmt(rep.lam)}, l = {rep.l}, q = {rep.q}", file=out)
    print(f"Vol = {rep.vol}, period = {rep.period}, kmax = {rep.kmax}", file=out)
    for r in range(rep.period):
        row = rep.coefficients[r]
        coeffs = ", ".join(f"b{i} = {row[i]}" for i in range(n + 1, -1, -1))
        print(f"  r = {r}: {coeffs}; bound = {rep.bounds[r]}, margin = {rep.margins[r]}",
              file=out)
    print(f"leading coefficient equals Vol: {rep.top_ok}", file=out)
    print(f"subleading coefficient equals (1+q)(n+1)/2 Vol: {rep.sub_ok}", file=out)
    print(f"c(q,n) = {rep.c_qn}; inequality on every residue: {rep.inequality_ok}", file=out)
    print(f"periodic part matches orbifold term: {rep.periodic_consistent}", file=out)
    if rep.smooth_excess is not None:
        print(f"constant part minus c(q,n) Vol: {rep.smooth_excess}", file=out)
    if rep.exact_formula_ok is not None:
        print(f"exact rank-2 formula reproduces every count: {rep.exact_formula_ok}", file=out)
    print(f"chart data independent of facet choice: {rep.chart_independent}", file=out)
    print("PASS" if rep.passed else "FAIL", file=out)
    if args.json:
        _write_json(args.json, emit(rep), out)
    return EXIT_PASS if rep.passed else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qgcount", description=__doc__.splitlines()[0])
    p.add_argument("--threads", type=int, default=1, help="cap on counting workers")
    sub = p.add_subparsers(dest="cmd", required=True)

    s = sub.add_parser("check", help="Gorenstein and smoothness report")
    s.add_argument("file")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("count", help="lattice points of the dual cone at level <= K")
    s.add_argument("file")
    s.add_argument("--xi")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--strategy", choices=("slab", "bbox"), default="slab")
    s.add_argument("--table", action="store_true", help="print k,count for k = 0..K")
    s.set_defaults(func=cmd_count)

    s = sub.add_parser("ehrhart", help="fit the counting quasi-polynomial")
    s.add_argument("file")
    s.add_argument("--xi")
    s.add_argument("--kmax", type=int)
    s.set_defaults(func=cmd_ehrhart)

    s = sub.add_parser("reeb", help="volume-minimizing Reeb direction")
    s.add_argument("file")
    s.add_argument("--tol", type=float, default=DEFAULT_TOL)
    s.add_argument("--max-den", type=int, default=1000)
    s.set_defaults(func=cmd_reeb)

    s = sub.add_parser("verify", help="check the coefficient equalities and inequality")
    s.add_argument("file")
    s.add_argument("--xi")
    s.add_argument("--kmax", type=int)
    s.add_argument("--json", metavar="PATH", help="write the structured report ('-' for stdout)")
    s.set_defaults(func=cmd_verify)
    return p


def run(argv=None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_PASS
    if args.threads < 1:
        print("error: --threads must be positive", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args, out)
    except (QGError, UsageError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NoConvergence as exc:
        print(f"error: NoConvergence: {exc}", file=sys.stderr)
        return EXIT_FAIL


def main() -> None:
    sys.exit(run())
