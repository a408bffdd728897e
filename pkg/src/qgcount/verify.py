"""
Coefficient checks against lattice point counts.

:func:`verify_main_theorem` counts, fits, and compares the three leading
coefficients of ``n_xi(k)`` against volume data; :func:`verify_polytope_bound`
does the same for the Ehrhart polynomial of a balanced reflexive polytope.
Reports serialize to JSON with rationals written as ``"p/q"`` strings.
"""

import dataclasses
import json
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Optional

from . import ratmath as rm
from .cones import Cone, dual, gorenstein_check
from .counting import count_levels, count_polytope, polytope_cone
from .errors import NotInterior, NotSmooth
from .orbifold import chart_independence, ray_terms, total_orbifold_term
from .quasifit import fit_counts, fit_with_period_search, samples_needed
from .slices import msy_triangulate, placing_triangulation, volume


def smooth_constant(q: Fraction, n: int) -> Fraction:
    """``(n/24) (q^2 (3n+2) + 2 (3q+1) (n+1))``."""
    return Fraction(n, 24) * (q * q * (3 * n + 2) + 2 * (3 * q + 1) * (n + 1))


def polytope_constant(n: int) -> Fraction:
    """``(3n+2)(n-1)n / (24 (n+1))``."""
    return Fraction((3 * n + 2) * (n - 1) * n, 24 * (n + 1))


@dataclass(frozen=True)
class TheoremBound:
    c_qn: Fraction
    per_residue_bound: tuple
    vol: Fraction
    q: Fraction


@dataclass
class RayRow:
    ray: tuple
    tau: tuple
    mu: tuple
    c_coeffs: tuple
    d: int
    g: int
    c_rho: int
    S: tuple
    w: Fraction


@dataclass
class ReebSummary:
    xi_c: tuple
    grad_norm: float
    hessian_pd: bool
    iterations: int
    rational_xi: Optional[tuple]
    candidates: tuple = ()


@dataclass
class VerificationReport:
    name: str
    dim: int
    rays: tuple
    facet_normals: tuple
    xi: tuple
    xi_source: str
    lam: tuple
    l: int
    q: Fraction
    vol: Fraction
    period: int
    kmax: int
    coefficients: tuple  # per residue, powers 0..n+1
    top_ok: bool
    sub_ok: bool
    c_qn: Fraction
    bounds: tuple
    margins: tuple
    inequality_ok: bool
    periodic_consistent: bool
    smooth_excess: Optional[Fraction]
    chart_independent: bool
    exact_formula_ok: Optional[bool]
    passed: bool
    orbifold_rays: tuple
    counts: tuple
    reeb: Optional[ReebSummary] = None

    def theorem_bound(self) -> TheoremBound:
        return TheoremBound(self.c_qn, self.bounds, self.vol, self.q)


def _round(x: float) -> float:
    return float(f"{float(x):.12e}")


def summarize_reeb(R, candidates=()) -> ReebSummary:
    """Float fields rounded to 13 significant digits so that reports are
    byte-stable and survive a JSON round trip."""
    return ReebSummary(tuple(_round(v) for v in R.xi_c), _round(R.grad_norm), bool(R.hessian_pd),
                       int(R.iterations), R.rational_xi, tuple(tuple(c) for c in candidates))


def period_candidates(p0: int, guaranteed: int) -> list:
    """Divisors of ``guaranteed`` that are multiples of ``p0``, ascending."""
    if guaranteed % p0:
        raise ValueError(f"{p0} does not divide {guaranteed}")
    m = guaranteed // p0
    return [p0 * e for e in range(1, m + 1) if m % e == 0]


def fit_levels(Cdual: Cone, xi, degree: int, p0: int, count_fn, kmin: int = 0):
    """Fit ``n_xi`` with the smallest consistent period among the divisors
    of ``D = lcm((u, xi))`` that ``p0`` divides.

    ``D`` is always a period, and at least ``D (degree + 1)`` samples are
    used, so whichever candidate fits does so for every ``k``: each residue
    class mod ``D`` has ``degree + 1`` samples on which the two agree.
    """
    D = rm.lcm(*(rm.dot(u, xi) for u in Cdual.rays))
    window = max(kmin, samples_needed(degree, D, holdout=0))
    return fit_with_period_search(count_fn, degree, period_candidates(p0, D), kmin=window)


def verify_main_theorem(C: Cone, xi, kmax: Optional[int] = None, name: str = "",
                        workers: int = 1, xi_source: str = "given",
                        reeb: Optional[ReebSummary] = None) -> VerificationReport:
    G = gorenstein_check(C)
    if not G.smooth:
        raise NotSmooth(f"facets {list(G.bad_faces)} do not extend to a Z-basis")
    xi = tuple(int(x) for x in xi)
    if not C.is_interior(xi):
        raise NotInterior(f"{xi} is not in the interior of the cone")
    if rm.vec_gcd(xi) != 1:
        raise ValueError(f"{xi} is not primitive")
    n = C.dim - 1
    Cdual = dual(C)
    vol = volume(msy_triangulate(Cdual), xi)
    q = G.q_of(xi)
    terms = ray_terms(C, xi)
    p0 = rm.lcm(*(t.data.g for t in terms))

    cache = {}

    def counts_upto(k):
        if cache.get("k", -1) < k:
            cache["k"] = k
            cache["counts"] = count_levels(Cdual, xi, k, workers=workers)
        return cache["counts"][: k + 1]

    qp, _ = fit_levels(Cdual, xi, n + 1, p0, counts_upto, kmin=kmax or 0)
    P = qp.period
    if kmax is None:
        kmax = max(P * (n + 4), cache["k"])
    counts = counts_upto(max(kmax, cache["k"]))
    kmax = len(counts) - 1
    qp = fit_counts(counts, n + 1, P)

    top_ok = all(qp.coefficient(n + 1, r) == vol for r in range(P))
    sub_ok = all(qp.coefficient(n, r) == (1 + q) * (n + 1) / 2 * vol for r in range(P))
    c_qn = smooth_constant(q, n)
    orb = [total_orbifold_term(C, xi, r, terms) for r in range(P)]
    bounds = tuple(c_qn * vol + o for o in orb)
    low = [qp.coefficient(n - 1, r) for r in range(P)]
    margins = tuple(b - bd for b, bd in zip(low, bounds))
    inequality_ok = all(m >= 0 for m in margins)
    residual = {b - o for b, o in zip(low, orb)}
    periodic_consistent = len(residual) == 1
    smooth_excess = residual.pop() - c_qn * vol if periodic_consistent else None

    independent = True
    for _, rows in chart_independence(C, xi):
        if len({(g, c) for _, _, g, c in rows}) > 1:
            independent = False

    exact_ok = None
    if n == 1:
        exact_ok = all(
            (k * k + (1 + q) * k + q) * vol + total_orbifold_term(C, xi, k, terms) == counts[k]
            for k in range(kmax + 1)
        )
        passed = top_ok and sub_ok and exact_ok
    else:
        passed = top_ok and sub_ok and inequality_ok

    rows = tuple(
        RayRow(C.rays[t.data.rho], t.data.tau, t.data.mu,
               tuple(sorted(t.data.c_coeffs.items())), t.data.d, t.data.g, t.data.c_rho,
               t.S.values, t.w)
        for t in terms
    )
    return VerificationReport(
        name=name, dim=C.dim, rays=C.rays, facet_normals=C.facet_normals, xi=xi,
        xi_source=xi_source, lam=G.lam, l=G.l, q=q, vol=vol, period=P, kmax=kmax,
        coefficients=qp.coeffs, top_ok=top_ok, sub_ok=sub_ok, c_qn=c_qn, bounds=bounds,
        margins=margins, inequality_ok=inequality_ok,
        periodic_consistent=periodic_consistent, smooth_excess=smooth_excess,
        chart_independent=independent, exact_formula_ok=exact_ok, passed=passed,
        orbifold_rays=rows, counts=tuple(counts), reeb=reeb,
    )


@dataclass
class PolytopeReport:
    vertices: tuple
    n: int
    reflexive: bool
    balanced: bool
    centroid: tuple
    vol: Fraction
    coefficients: tuple  # a_0 .. a_n
    a_nm2: Optional[Fraction]
    bound: Optional[Fraction]
    margin: Optional[Fraction]
    hypotheses_met: bool
    holds: Optional[bool]


def polytope_volume_centroid(vertices):
    """Euclidean volume and exact centroid of a full-dimensional polytope."""
    P = polytope_cone(vertices)
    pts = [r[:-1] for r in P.rays]
    n = len(pts[0])
    total = Fraction(0)
    moment = [Fraction(0)] * n
    for s in placing_triangulation(P.rays):
        vol = Fraction(abs(rm.det([P.rays[i] for i in s])), factorial(n))
        total += vol
        for j in range(n):
            moment[j] += vol * Fraction(sum(pts[i][j] for i in s), n + 1)
    return total, tuple(m / total for m in moment)


def is_reflexive(vertices) -> bool:
    P = polytope_cone(vertices)
    return all(u[-1] == 1 and rm.vec_gcd(u[:-1]) == 1 for u in P.facet_normals)


def verify_polytope_bound(vertices, kmax: Optional[int] = None) -> PolytopeReport:
    verts = tuple(tuple(int(x) for x in v) for v in vertices)
    n = len(verts[0])
    P = polytope_cone(verts)
    verts = tuple(r[:-1] for r in P.rays)
    vol, centroid = polytope_volume_centroid(verts)
    reflexive = is_reflexive(verts)
    balanced = all(c == 0 for c in centroid)
    if kmax is None:
        kmax = n + 3
    counts = [count_polytope(verts, k) for k in range(kmax + 1)]
    poly = fit_counts(counts, n, 1)
    coeffs = poly.coeffs[0]
    hyp = reflexive and balanced and n >= 2
    a = coeffs[n - 2] if n >= 2 else None
    bound = polytope_constant(n) * vol if n >= 2 else None
    margin = a - bound if n >= 2 else None
    holds = (margin >= 0) if hyp else None
    return PolytopeReport(verts, n, reflexive, balanced, centroid, vol, coeffs, a, bound,
                          margin, hyp, holds)


# --- serialization -------------------------------------------------------

def _enc(x):
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, float):
        return float(f"{x:.12e}")
    if dataclasses.is_dataclass(x):
        return {f.name: _enc(getattr(x, f.name)) for f in dataclasses.fields(x)}
    if isinstance(x, (tuple, list)):
        return [_enc(v) for v in x]
    if isinstance(x, dict):
        return {str(k): _enc(v) for k, v in x.items()}
    return float(x)


def _dec_frac(s):
    return None if s is None else Fraction(s)


def _tup(x):
    return tuple(_tup(v) for v in x) if isinstance(x, list) else x


def report_to_dict(r: VerificationReport) -> dict:
    return _enc(r)


def report_from_dict(d: dict) -> VerificationReport:
    d = dict(d)
    for key in ("q", "vol", "c_qn", "smooth_excess"):
        d[key] = _dec_frac(d[key])
    d["coefficients"] = tuple(tuple(Fraction(c) for c in row) for row in d["coefficients"])
    d["bounds"] = tuple(Fraction(x) for x in d["bounds"])
    d["margins"] = tuple(Fraction(x) for x in d["margins"])
    for key in ("rays", "facet_normals", "xi", "lam", "counts"):
        d[key] = _tup(d[key])
    rows = []
    for row in d["orbifold_rays"]:
        row = {k: _tup(v) for k, v in row.items()}
        row["S"] = tuple(Fraction(s) for s in row["S"])
        row["w"] = Fraction(row["w"])
        rows.append(RayRow(**row))
    d["orbifold_rays"] = tuple(rows)
    if d.get("reeb") is not None:
        rb = {k: _tup(v) for k, v in d["reeb"].items()}
        d["reeb"] = ReebSummary(**rb)
    return VerificationReport(**d)


def emit(r: VerificationReport) -> str:
    return json.dumps(report_to_dict(r), indent=2) + "\n"


def parse(text: str) -> VerificationReport:
    return report_from_dict(json.loads(text))
