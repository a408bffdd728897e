"""
Pointed full-dimensional rational cones and Q-Gorenstein certification.

A :class:`Cone` stores its primitive extreme rays and primitive inward facet
normals; the normals live in the dual lattice, so ``dual`` just swaps the
two lists.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from . import ratmath as rm
from .errors import NotFullDim, NotGorenstein, NotInterior, NotPointed


@dataclass(frozen=True)
class Cone:
    dim: int
    rays: tuple
    facet_normals: tuple

    def __post_init__(self):
        object.__setattr__(self, "rays", tuple(tuple(int(x) for x in r) for r in self.rays))
        object.__setattr__(
            self, "facet_normals", tuple(tuple(int(x) for x in r) for r in self.facet_normals)
        )

    @property
    def n(self) -> int:
        """Dimension of the slice polytope's facets (ambient rank minus one)."""
        return self.dim - 1

    def contains(self, x) -> bool:
        return all(rm.dot(u, x) >= 0 for u in self.facet_normals)

    def is_interior(self, x) -> bool:
        return all(rm.dot(u, x) > 0 for u in self.facet_normals)

    def facet_rays(self, j: int) -> tuple:
        """Indices of the rays lying on facet ``j``."""
        u = self.facet_normals[j]
        return tuple(i for i, r in enumerate(self.rays) if rm.dot(u, r) == 0)

    def facet_index(self, ray_indices) -> int:
        want = tuple(sorted(ray_indices))
        for j in range(len(self.facet_normals)):
            if self.facet_rays(j) == want:
                return j
        raise KeyError(f"no facet with rays {want}")


@dataclass(frozen=True)
class GorensteinData:
    lam: tuple
    l: int
    smooth: bool
    bad_faces: tuple = field(default=())

    def q_of(self, xi) -> Fraction:
        return Fraction(-rm.dot(self.lam, xi), self.l)


def _dd_extreme_rays(constraints, dim):
    """Extreme rays of ``{y : (a, y) >= 0 for a in constraints}`` by the
    incremental double-description method.  ``constraints`` must span."""
    A = [tuple(Fraction(x) for x in a) for a in constraints]
    basis = []
    for i, a in enumerate(A):
        if rm.rank([A[j] for j in basis] + [a]) > len(basis):
            basis.append(i)
        if len(basis) == dim:
            break
    if len(basis) < dim:
        raise NotPointed("generators do not determine a pointed dual cone")
    # initial simplicial cone: rays are the columns of the inverse
    B = [A[i] for i in basis]
    rays = []
    for k in range(dim):
        e = [Fraction(int(j == k)) for j in range(dim)]
        sol = rm.solve_rational(B, e)
        rays.append(sol.x)
    added = list(basis)
    for i in range(len(A)):
        if i in basis:
            continue
        a = A[i]
        vals = [rm.dot(a, r) for r in rays]
        pos = [r for r, v in zip(rays, vals) if v > 0]
        zer = [r for r, v in zip(rays, vals) if v == 0]
        neg = [(r, v) for r, v in zip(rays, vals) if v < 0]
        new = []
        pos_vals = [(r, v) for r, v in zip(rays, vals) if v > 0]
        for (rp, vp), (rn, vn) in ((p, q) for p in pos_vals for q in neg):
            # combinatorial adjacency: common active set has corank one
            active = [A[j] for j in added if rm.dot(A[j], rp) == 0 and rm.dot(A[j], rn) == 0]
            if rm.rank(active) != dim - 2:
                continue
            new.append(tuple(vp * y - vn * x for x, y in zip(rp, rn)))
        rays = pos + zer + new
        added.append(i)
    out = []
    seen = set()
    for r in rays:
        p = rm.primitive(r)
        if p not in seen:
            seen.add(p)
            out.append(p)
    return out


def make_cone(generators) -> Cone:
    """Build the cone spanned by ``generators`` (integer vectors)."""
    gens = [tuple(int(x) for x in g) for g in generators]
    if not gens:
        raise ValueError("need at least one generator")
    dim = len(gens[0])
    if any(len(g) != dim for g in gens):
        raise ValueError("generators have inconsistent dimensions")
    gens = [g for g in gens if any(g)]
    if not gens or rm.rank(gens) < dim:
        raise NotFullDim("generators do not span the ambient space")
    normals = _dd_extreme_rays(gens, dim)
    if rm.rank(normals) < dim:
        raise NotPointed("cone contains a line")
    rays = []
    for g in gens:
        p = rm.primitive(g)
        if p in rays:
            continue
        tight = [u for u in normals if rm.dot(u, p) == 0]
        if tight and rm.rank(tight) == dim - 1:
            rays.append(p)
    return Cone(dim, tuple(rays), tuple(sorted(normals)))


def dual(C: Cone) -> Cone:
    return Cone(C.dim, C.facet_normals, C.rays)


def orthant(dim: int) -> Cone:
    basis = rm.identity(dim)
    return Cone(dim, basis, basis)


def face_lattice(C: Cone):
    """All faces as ``(ray_indices, normal_indices)`` pairs, the apex and the
    whole cone included."""
    facets = [frozenset(C.facet_rays(j)) for j in range(len(C.facet_normals))]
    found = {frozenset(range(len(C.rays)))}
    frontier = set(facets)
    while frontier:
        found |= frontier
        nxt = set()
        for F in frontier:
            for G in facets:
                H = F & G
                if H not in found:
                    nxt.add(H)
        frontier = nxt
    faces = []
    for F in found:
        normals = tuple(
            j for j, u in enumerate(C.facet_normals) if all(rm.dot(u, C.rays[i]) == 0 for i in F)
        )
        faces.append((tuple(sorted(F)), normals))
    return faces


def face_dim(C: Cone, ray_indices) -> int:
    return rm.rank([C.rays[i] for i in ray_indices]) if ray_indices else 0


def faces(C: Cone, d: int):
    """All ``d``-dimensional faces, sorted by ray index set."""
    if not 0 <= d <= C.dim:
        raise ValueError("face dimension out of range")
    return sorted(f for f in face_lattice(C) if face_dim(C, f[0]) == d)


def gorenstein_check(C: Cone) -> GorensteinData:
    """Solve ``(lam, v) = -l`` over the rays of ``C`` and test smoothness.

    Smoothness is tested on facets only: every proper face of positive
    dimension has its rays inside some facet.
    """
    sol = rm.solve_rational(C.rays, [-1] * len(C.rays))
    if sol is None:
        raise NotGorenstein("no lambda pairs to a constant with every ray")
    l = rm.lcm(*(x.denominator for x in sol.x))
    lam = tuple(int(x * l) for x in sol.x)
    bad = []
    for rays, _ in faces(C, C.dim - 1):
        mat = [C.rays[i] for i in rays]
        if len(mat) != C.dim - 1 or any(f != 1 for f in rm.invariant_factors(mat)):
            bad.append(rays)
    return GorensteinData(lam, l, not bad, tuple(bad))


def q_ratio(G: GorensteinData, xi, C: Cone = None) -> Fraction:
    """``q`` with ``(lam, xi) = -q l``.  When ``C`` is given, ``xi`` is
    checked to be interior."""
    if C is not None and not C.is_interior(xi):
        raise NotInterior(f"{tuple(xi)} is not in the interior of the cone")
    return G.q_of(xi)
