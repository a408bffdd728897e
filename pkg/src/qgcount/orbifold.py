"""
Orbifold chart data along the rays of ``C`` and the root-of-unity correction
sums that make the counting function periodic.

For a facet ``tau`` of ``C`` containing the ray ``rho`` we complete the rays
of ``tau`` to a Z-basis with a vector ``mu`` and expand
``xi = sum_{rho'} c_{rho'} v_{rho'} + d mu``.  The cyclic group ``Z_d`` of the
chart fixes the codimension-two stratum of ``rho`` pointwise on a subgroup of
order ``g = gcd({c_{rho'} : rho' != rho} + {d})``; that subgroup contributes

    S(k) = sum_{eta^g = 1, eta != 1} (1 - eta^(k+1)) / ((1 - eta^(-c_rho)) (1 - eta)),

evaluated exactly through the sawtooth identity

    sum_{j=1}^{g-1} w^(j a) / (1 - w^j) = (g - 1)/2 - ((-a) mod g).
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from . import ratmath as rm
from .cones import Cone, dual
from .errors import NonCoprimeWeight, NotInterior, NotSmoothFacet
from .slices import facet_relative_volume


@dataclass(frozen=True)
class OrbifoldRayData:
    rho: int
    tau: tuple
    mu: tuple
    c_coeffs: dict
    d: int
    g: int
    c_rho: int


@dataclass(frozen=True)
class CorrectionSum:
    rho: int
    values: tuple  # S(k) for k = 0 .. g-1

    @property
    def g(self) -> int:
        return len(self.values)

    def __call__(self, k: int) -> Fraction:
        return self.values[k % len(self.values)]


def facets_containing(C: Cone, rho: int) -> list:
    out = []
    for j in range(len(C.facet_normals)):
        rays = C.facet_rays(j)
        if rho in rays:
            out.append(rays)
    return sorted(out)


def chart_data(C: Cone, xi, rho: int, tau=None) -> OrbifoldRayData:
    """Chart data of ray ``rho`` (an index into ``C.rays``) in the chart of
    the facet ``tau`` (ray indices; defaults to the first facet containing
    ``rho``)."""
    if not C.is_interior(xi):
        raise NotInterior(f"{tuple(xi)} is not interior to the cone")
    if rm.vec_gcd(xi) != 1:
        raise ValueError("xi must be primitive")
    if tau is None:
        tau = facets_containing(C, rho)[0]
    tau = tuple(sorted(tau))
    if rho not in tau:
        raise ValueError(f"facet {tau} does not contain ray {rho}")
    j = C.facet_index(tau)
    rays = [C.rays[i] for i in tau]
    if len(rays) != C.dim - 1 or any(f != 1 for f in rm.invariant_factors(rays)):
        raise NotSmoothFacet(f"rays {tau} do not extend to a Z-basis")
    normal = C.facet_normals[j]
    mu = rm.completing_vector(normal)
    d = rm.dot(normal, xi)
    rest = tuple(x - d * m for x, m in zip(xi, mu))
    sol = rm.solve_rational(rm.transpose(rays), rest)
    if sol is None or any(x.denominator != 1 for x in sol.x):  # pragma: no cover
        raise NotSmoothFacet(f"expansion of xi in the chart of {tau} is not integral")
    c = {i: int(x) for i, x in zip(tau, sol.x)}
    g = d
    for i, ci in c.items():
        if i != rho:
            g = gcd(g, ci)
    return OrbifoldRayData(rho, tau, tuple(mu), c, d, g, c[rho])


def sawtooth_sum(g: int, a: int) -> Fraction:
    """``sum_{j=1}^{g-1} w^(j a) / (1 - w^j)`` for ``w = exp(2 pi i / g)``."""
    return Fraction(g - 1, 2) - ((-a) % g)


def correction_values(g: int, c: int) -> tuple:
    """``S(k)`` for ``k = 0 .. g-1``, given stabilizer order ``g`` and
    normal weight ``c``."""
    if gcd(c, g) != 1:
        raise NonCoprimeWeight(f"gcd({c}, {g}) != 1")
    if g == 1:
        return (Fraction(0),)
    c_inv = pow(c % g, -1, g)
    values = []
    for k in range(g):
        r = (k + 1) % g
        values.append(sum((sawtooth_sum(g, -c_inv * a) for a in range(r)), Fraction(0)))
    return tuple(values)


def correction_sum(data: OrbifoldRayData) -> CorrectionSum:
    return CorrectionSum(data.rho, correction_values(data.g, data.c_rho))


@dataclass(frozen=True)
class RayTerm:
    data: OrbifoldRayData
    S: CorrectionSum
    w: Fraction  # lattice-relative volume of the facet H_rho


def ray_terms(C: Cone, xi) -> list:
    Cdual = dual(C)
    out = []
    for i, v in enumerate(C.rays):
        data = chart_data(C, xi, i)
        out.append(RayTerm(data, correction_sum(data), facet_relative_volume(Cdual, xi, v)))
    return out


def chart_independence(C: Cone, xi) -> list:
    """For every ray, ``(rho, [(tau, d, g, c_rho mod g), ...])`` over all
    facets through it; callers check that ``g`` and ``c_rho mod g`` agree."""
    out = []
    for i in range(len(C.rays)):
        rows = []
        for tau in facets_containing(C, i):
            dat = chart_data(C, xi, i, tau)
            rows.append((tau, dat.d, dat.g, dat.c_rho % dat.g))
        out.append((i, rows))
    return out


def total_orbifold_term(C: Cone, xi, k: int, terms=None) -> Fraction:
    """``sum_rho n S_rho(k) w_rho``."""
    if terms is None:
        terms = ray_terms(C, xi)
    n = C.dim - 1
    return sum((n * t.S(k) * t.w for t in terms), Fraction(0))
