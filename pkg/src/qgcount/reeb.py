"""
Volume minimization on the Gorenstein slice
``I = {xi : (lam, xi) = -(n+1) l}``.

The minimizer (the canonical Reeb direction) is found by damped Newton
steps in an orthonormal parametrization of ``I``.  Floats are used only
here; :func:`rationalize` hands back an exact primitive direction when the
exact projected gradient vanishes there.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from . import ratmath as rm
from .cones import Cone, GorensteinData, dual
from .errors import InfeasibleSlice, NoConvergence
from .slices import msy_gradient, msy_hessian, msy_triangulate, volume

DEFAULT_TOL = 1e-10
MAX_ITER = 200


@dataclass(frozen=True)
class ReebResult:
    xi_c: tuple
    grad_norm: float
    hessian_pd: bool
    iterations: int
    volume: float
    rational_xi: Optional[tuple] = None


def _slice_frame(lam):
    lam = np.asarray(lam, dtype=float)
    _, _, vt = np.linalg.svd(lam.reshape(1, -1))
    return vt[1:].T  # columns span lam^perp


def _interior(Cdual: Cone, x) -> bool:
    return all(float(np.dot(u, x)) > 0 for u in Cdual.rays)


def minimize_volume(C: Cone, G: GorensteinData, tol: float = DEFAULT_TOL,
                    max_iter: int = MAX_ITER, start=None) -> ReebResult:
    Cdual = dual(C)
    F = msy_triangulate(Cdual)
    n1 = C.dim
    target = -n1 * G.l
    lam = np.asarray(G.lam, dtype=float)
    if start is None:
        start = np.sum(np.asarray(C.rays, dtype=float), axis=0)
    x = np.asarray(start, dtype=float)
    s = float(np.dot(lam, x))
    if s >= 0:
        raise InfeasibleSlice("starting point does not meet the slice")
    x = x * (target / s)
    if not _interior(Cdual, x):
        raise InfeasibleSlice("starting point is not interior")
    Z = _slice_frame(lam)

    def f(y):
        return volume(F, tuple(y))

    fx = f(x)
    it = 0
    while True:
        g = np.asarray(msy_gradient(F, tuple(x)))
        pg = Z.T @ g
        gnorm = float(np.linalg.norm(pg))
        H = np.asarray(msy_hessian(F, tuple(x)))
        Hr = Z.T @ H @ Z
        if gnorm < tol:
            break
        if it >= max_iter:
            raise NoConvergence(f"no convergence after {max_iter} Newton steps",
                                best=ReebResult(tuple(x), gnorm, False, it, fx))
        try:
            step = -np.linalg.solve(Hr, pg)
        except np.linalg.LinAlgError:
            step = -pg
        if float(pg @ step) >= 0:
            step = -pg
        dx = Z @ step
        alpha = 1.0
        while True:
            y = x + alpha * dx
            if _interior(Cdual, y):
                fy = f(y)
                if fy <= fx + 1e-4 * alpha * float(pg @ step):
                    break
            alpha *= 0.5
            if alpha < 1e-14:
                break
        if alpha < 1e-14:
            # no representable decrease left; accept the current point
            break
        x, fx = y, fy
        it += 1
    eig = np.linalg.eigvalsh(Hr) if Hr.size else np.array([1.0])
    return ReebResult(tuple(float(v) for v in x), gnorm, bool(np.all(eig > 0)), it, float(fx))


def exact_projected_gradient_vanishes(C: Cone, G: GorensteinData, xi) -> bool:
    """True iff the exact gradient of the volume at the point of ``I`` on
    the ray of ``xi`` is parallel to ``lam``."""
    if not C.is_interior(xi):
        return False
    s = rm.dot(G.lam, xi)
    point = tuple(Fraction(-C.dim * G.l, s) * x for x in xi)
    g = msy_gradient(msy_triangulate(dual(C)), point)
    lam = G.lam
    return all(g[i] * lam[j] == g[j] * lam[i] for i in range(len(g)) for j in range(i + 1, len(g)))


def rationalize(R: ReebResult, C: Cone, G: GorensteinData, max_denominator: int = 1000):
    """Primitive integer vector parallel to ``R.xi_c`` when the exact check
    certifies it, else ``None``."""
    x = np.asarray(R.xi_c, dtype=float)
    pivot = float(np.max(np.abs(x)))
    if pivot == 0:
        return None
    approx = [Fraction(float(v) / pivot).limit_denominator(max_denominator) for v in x]
    if not any(approx):
        return None
    cand = rm.primitive(approx)
    if exact_projected_gradient_vanishes(C, G, cand):
        return cand
    return None


def _convergent_denominators(x: float, limit: int) -> list:
    dens = []
    h0, h1 = 0, 1
    k0, k1 = 1, 0
    y = x
    for _ in range(64):
        a = int(np.floor(y))
        h0, h1 = h1, a * h1 + h0
        k0, k1 = k1, a * k1 + k0
        if k1 > limit:
            break
        dens.append(k1)
        frac = y - a
        if abs(frac) < 1e-12:
            break
        y = 1.0 / frac
    return dens


def nearby_primitive_directions(R: ReebResult, C: Cone, budget: int = 10,
                                max_entry: int = 12) -> list:
    """Primitive interior vectors near the direction of ``R.xi_c``, sorted by
    angle (ties by length, then lexicographically)."""
    x = np.asarray(R.xi_c, dtype=float)
    unit = x / np.linalg.norm(x)
    p = int(np.argmax(np.abs(x)))
    base = x / abs(x[p])
    dens = {1}
    for j in range(len(x)):
        if j != p:
            dens.update(_convergent_denominators(abs(base[j]), max_entry))
    for a in list(dens):
        for b in list(dens):
            m = rm.lcm(a, b)
            if m <= max_entry:
                dens.add(m)
    seeds = set()
    for D in sorted(dens):
        v = tuple(int(round(c)) for c in D * base)
        if any(v):
            seeds.add(rm.primitive(v))
    cands = set(seeds)
    for v in seeds:
        for i in range(len(v)):
            for s in (1, -1):
                w = list(v)
                w[i] += s
                if any(w):
                    cands.add(rm.primitive(w))
    good = [v for v in cands if C.is_interior(v) and max(abs(c) for c in v) <= max_entry]

    def key(v):
        vv = np.asarray(v, dtype=float)
        cosang = float(np.dot(vv, unit) / np.linalg.norm(vv))
        return (-round(cosang, 15), float(np.dot(vv, vv)), v)

    return sorted(good, key=key)[:budget]


def reeb_direction(C: Cone, G: GorensteinData, tol: float = DEFAULT_TOL,
                   max_denominator: int = 1000) -> ReebResult:
    """Minimize, then attach the certified rational direction when found."""
    R = minimize_volume(C, G, tol)
    rat = rationalize(R, C, G, max_denominator)
    return ReebResult(R.xi_c, R.grad_norm, R.hessian_pd, R.iterations, R.volume, rat)
