"""
Slice polytopes ``{x in C^dual : (x, xi) <= 1}`` and the volume function.

Volumes use the lattice normalization (unit cube of ``M`` has volume 1).
The volume function is a sum over a placing triangulation of the dual cone,
``sum |det| / ((n+1)! prod (u_i, xi))``, so it can be evaluated exactly at
rational points and in floating point inside the Newton solver.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from . import ratmath as rm
from .cones import Cone
from .errors import Unbounded


@dataclass(frozen=True)
class SlicePolytope:
    xi: tuple
    vertices: tuple
    facet_map: dict
    cut_facet: tuple


@dataclass(frozen=True)
class Simplex:
    dual_rays: tuple
    det_abs: int


@dataclass(frozen=True)
class VolumeFunction:
    dim: int
    simplices: tuple


def _check_interior(Cdual: Cone, xi):
    for u in Cdual.rays:
        if rm.dot(u, xi) <= 0:
            raise Unbounded(f"{tuple(xi)} pairs non-positively with dual ray {u}")


def slice_polytope(Cdual: Cone, xi) -> SlicePolytope:
    _check_interior(Cdual, xi)
    d = Cdual.dim
    origin = tuple(Fraction(0) for _ in range(d))
    verts = [origin] + [
        tuple(Fraction(c, rm.dot(u, xi)) for c in u) for u in Cdual.rays
    ]
    facet_map = {}
    for v in Cdual.facet_normals:
        facet_map[v] = tuple(i for i, x in enumerate(verts) if rm.dot(x, v) == 0)
    cut = tuple(range(1, len(verts)))
    return SlicePolytope(tuple(xi), tuple(verts), facet_map, cut)


def placing_triangulation(rays) -> list:
    """Placing triangulation of the pointed full-dimensional cone spanned by
    ``rays`` (in list order), without new rays.  Returns index tuples."""
    rays = [tuple(r) for r in rays]
    d = len(rays[0])
    start = []
    for i in range(len(rays)):
        if rm.rank([rays[j] for j in start] + [rays[i]]) > len(start):
            start.append(i)
        if len(start) == d:
            break
    if len(start) < d:
        raise ValueError("rays do not span")
    simplices = [tuple(sorted(start))]
    for i in range(len(rays)):
        if i in start:
            continue
        counts = {}
        owner = {}
        for s in simplices:
            for drop in s:
                f = tuple(j for j in s if j != drop)
                counts[f] = counts.get(f, 0) + 1
                owner[f] = (s, drop)
        added = []
        for f, c in counts.items():
            if c != 1:
                continue
            s, drop = owner[f]
            w = rm.maximal_minor_vector([rays[j] for j in f]) if d > 1 else (1,)
            if rm.dot(w, rays[drop]) < 0:
                w = tuple(-x for x in w)
            if rm.dot(w, rays[i]) < 0:
                added.append(tuple(sorted(f + (i,))))
        simplices.extend(added)
    return simplices


def msy_triangulate(Cdual: Cone, order=None) -> VolumeFunction:
    rays = list(Cdual.rays)
    if order is not None:
        rays = [rays[i] for i in order]
    simplices = []
    for s in placing_triangulation(rays):
        us = tuple(rays[i] for i in s)
        simplices.append(Simplex(us, abs(rm.det(us))))
    return VolumeFunction(Cdual.dim, tuple(simplices))


def _terms(F: VolumeFunction, xi, exact: bool):
    one = Fraction(1) if exact else 1.0
    fact = factorial(F.dim)
    for s in F.simplices:
        pairings = [rm.dot(u, xi) for u in s.dual_rays]
        if any(p <= 0 for p in pairings):
            raise Unbounded(f"{tuple(xi)} is not interior to the cone")
        prod = one
        for p in pairings:
            prod *= p
        yield s, pairings, one * s.det_abs / (fact * prod)


def _is_exact(xi):
    return all(isinstance(x, (int, Fraction)) for x in xi)


def volume(F: VolumeFunction, xi):
    """Lattice-normalized volume of ``{x in C^dual : (x, xi) <= 1}``."""
    return sum((t for _, _, t in _terms(F, xi, _is_exact(xi))), Fraction(0) if _is_exact(xi) else 0.0)


def msy_gradient(F: VolumeFunction, xi) -> tuple:
    exact = _is_exact(xi)
    grad = [Fraction(0) if exact else 0.0] * F.dim
    for s, pairings, t in _terms(F, xi, exact):
        for u, p in zip(s.dual_rays, pairings):
            for j in range(F.dim):
                grad[j] -= t * u[j] / p
    return tuple(grad)


def msy_hessian(F: VolumeFunction, xi) -> tuple:
    exact = _is_exact(xi)
    zero = Fraction(0) if exact else 0.0
    H = [[zero] * F.dim for _ in range(F.dim)]
    for s, pairings, t in _terms(F, xi, exact):
        a = [sum(u[j] / p for u, p in zip(s.dual_rays, pairings)) for j in range(F.dim)]
        for j in range(F.dim):
            for k in range(F.dim):
                sq = sum(u[j] * u[k] / (p * p) for u, p in zip(s.dual_rays, pairings))
                H[j][k] += t * (a[j] * a[k] + sq)
    return tuple(map(tuple, H))


def facet_relative_volume(Cdual: Cone, xi, rho) -> Fraction:
    """Lattice volume of ``H_rho = Delta_xi cap rho^perp`` measured in the
    rank-n lattice ``M cap rho^perp``.

    ``rho`` is a ray of the primal cone, i.e. a facet normal of ``Cdual``.
    For primitive ``rho`` this equals ``Vol_n(H_rho) / |rho|`` in the
    Euclidean metric.
    """
    _check_interior(Cdual, xi)
    rho = tuple(rho)
    face = [u for u in Cdual.rays if rm.dot(u, rho) == 0]
    basis = rm.integer_kernel([rho])
    n = len(basis)
    if rm.rank(face) != n:
        raise ValueError(f"{rho} does not cut out a facet of the dual cone")
    # coordinates of each face ray in the kernel basis
    coords = []
    for u in face:
        sol = rm.solve_rational(rm.transpose(basis), u)
        coords.append(tuple(int(x) for x in sol.x))
    total = Fraction(0)
    for s in placing_triangulation(coords):
        det_abs = abs(rm.det([coords[i] for i in s]))
        prod = 1
        for i in s:
            prod *= rm.dot(face[i], xi)
        total += Fraction(det_abs, factorial(n) * prod)
    return total
