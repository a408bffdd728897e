"""
Exact lattice point enumeration in ``k Delta_xi`` and in dilated polytopes.

Two independent strategies count points of ``C^dual cap M`` by level
``(x, xi)``:

* ``bbox``: every integer point of the bounding box of ``kmax Delta_xi``,
  filtered by the facet inequalities (numpy, chunked).
* ``slab``: change lattice basis so that ``xi`` becomes the last coordinate
  functional, then recurse over coordinate prefixes with exact bounds taken
  from Fourier-Motzkin projections; the innermost coordinate is summed in
  closed form for all levels at once.

Both return the full table ``n(0), ..., n(kmax)``.
"""

from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from math import ceil, floor, gcd
from functools import reduce

import numpy as np

from . import ratmath as rm
from .cones import Cone, make_cone
from .errors import DegeneratePolytope, Unbounded

_CHUNK = 1 << 20


def _check_xi(Cdual: Cone, xi):
    for u in Cdual.rays:
        if rm.dot(u, xi) <= 0:
            raise Unbounded(f"{tuple(xi)} is not interior to the primal cone")


def _cumulate(hist):
    out, s = [], 0
    for h in hist:
        s += int(h)
        out.append(s)
    return out


def _box_points(lo, hi):
    """Yield integer point blocks (2-d int64 arrays) covering ``[lo, hi]``."""
    sizes = [h - l + 1 for l, h in zip(lo, hi)]
    if any(s <= 0 for s in sizes):
        return
    inner = int(np.prod(sizes[1:], dtype=object)) if len(sizes) > 1 else 1
    if len(sizes) > 1:
        grids = np.meshgrid(*[np.arange(l, h + 1) for l, h in zip(lo[1:], hi[1:])], indexing="ij")
        tail = np.stack([g.ravel() for g in grids], axis=1)
    else:
        tail = np.zeros((1, 0), dtype=np.int64)
    step = max(1, _CHUNK // max(inner, 1))
    for x0 in range(lo[0], hi[0] + 1, step):
        heads = np.arange(x0, min(x0 + step, hi[0] + 1))
        block = np.empty((len(heads) * inner, len(sizes)), dtype=np.int64)
        block[:, 0] = np.repeat(heads, inner)
        block[:, 1:] = np.tile(tail, (len(heads), 1))
        yield block


def levels_bbox(Cdual: Cone, xi, kmax: int) -> list:
    """Counts ``n(0..kmax)`` by bounding-box filtering."""
    _check_xi(Cdual, xi)
    d = Cdual.dim
    lo, hi = [0] * d, [0] * d
    for u in Cdual.rays:
        s = rm.dot(u, xi)
        for j in range(d):
            c = Fraction(kmax * u[j], s)
            lo[j] = min(lo[j], floor(c))
            hi[j] = max(hi[j], ceil(c))
    normals = np.array(Cdual.facet_normals, dtype=np.int64).T
    xiv = np.array(xi, dtype=np.int64)
    hist = np.zeros(kmax + 1, dtype=np.int64)
    for block in _box_points(lo, hi):
        ok = (block @ normals >= 0).all(axis=1)
        lev = block[ok] @ xiv
        lev = lev[lev <= kmax]
        hist += np.bincount(lev, minlength=kmax + 1)[: kmax + 1]
    return _cumulate(hist)


def _normalize(ineq):
    g = reduce(gcd, (abs(x) for x in ineq), 0)
    return tuple(x // g for x in ineq) if g else ineq


def _fm_projections(normals, d):
    """Inequalities ``a . x + b K >= 0`` for each projection onto the first
    ``j`` coordinates, ``j = d .. 1``.  Entry ``j`` lists the system in
    coordinates ``x_1..x_j`` (stored as ``(a_1..a_j, b)``)."""
    system = {_normalize(tuple(v) + (0,)) for v in normals}
    system.add(tuple([0] * (d - 1) + [-1, 1]))
    out = {d: sorted(system)}
    for j in range(d, 1, -1):
        pos = [s for s in system if s[j - 1] > 0]
        neg = [s for s in system if s[j - 1] < 0]
        keep = {s[: j - 1] + s[j:] for s in system if s[j - 1] == 0}
        for p in pos:
            for q in neg:
                a, b = p[j - 1], -q[j - 1]
                comb = tuple(b * x + a * y for x, y in zip(p, q))
                comb = comb[: j - 1] + comb[j:]
                if any(comb[:-1]):
                    keep.add(_normalize(comb))
                elif comb[-1] < 0:
                    keep.add(_normalize(comb))
        system = {s for s in keep if any(s[:-1]) or s[-1] < 0}
        out[j - 1] = sorted(system)
    return out


def _bounds(system, prefix, j, K):
    """Integer range of coordinate ``j`` (0-based) given ``prefix``."""
    lo, hi = None, None
    for s in system:
        a = s[j]
        rest = sum(c * x for c, x in zip(s[:j], prefix)) + s[-1] * K
        if a > 0:
            v = -((rest) // a)  # ceil(-rest / a)
            lo = v if lo is None else max(lo, v)
        elif a < 0:
            v = rest // (-a)  # floor(rest / -a)
            hi = v if hi is None else min(hi, v)
        elif rest < 0:
            return 1, 0
    if lo is None or hi is None:
        raise Unbounded("slab bounds are not finite")
    return lo, hi


def _slab_worker(args):
    systems, d, kmax, first_range = args
    d2 = [0] * (kmax + 3)
    last = systems[d]

    def rec(prefix):
        j = len(prefix)
        if j == d - 1:
            lo, hi = _bounds(last, prefix, d - 1, kmax)
            if lo > hi:
                return
            # n(k) gains max(0, min(hi, k) - lo + 1)
            d2[lo] += 1
            d2[min(hi, kmax) + 1] -= 1
            return
        lo, hi = _bounds(systems[j + 1], prefix, j, kmax)
        for x in range(lo, hi + 1):
            rec(prefix + (x,))

    if d == 1:
        rec(())
    else:
        for x in range(first_range[0], first_range[1] + 1):
            rec((x,))
    return d2


def levels_slab(Cdual: Cone, xi, kmax: int, workers: int = 1) -> list:
    """Counts ``n(0..kmax)`` by recursive coordinate slabs."""
    _check_xi(Cdual, xi)
    d = Cdual.dim
    g = rm.vec_gcd(xi)
    if g != 1:
        # level sets of a non-primitive xi: n_xi(k) = n_{xi/g}(k // g)
        prim = tuple(x // g for x in xi)
        base = levels_slab(Cdual, prim, kmax // g, workers)
        return [base[k // g] for k in range(kmax + 1)]
    U = rm.unimodular_sending_to_last(xi)
    normals = [rm.matvec(U, v) for v in Cdual.facet_normals]
    systems = _fm_projections(normals, d)
    if d == 1:
        parts = [_slab_worker((systems, d, kmax, None))]
    else:
        lo, hi = _bounds(systems[1], (), 0, kmax)
        if lo > hi:
            return [0] * (kmax + 1)
        workers = max(1, min(workers, hi - lo + 1))
        edges = [lo + (hi - lo + 1) * i // workers for i in range(workers + 1)]
        jobs = [(systems, d, kmax, (edges[i], edges[i + 1] - 1)) for i in range(workers)]
        if workers == 1:
            parts = [_slab_worker(jobs[0])]
        else:
            with ProcessPoolExecutor(workers) as ex:
                parts = list(ex.map(_slab_worker, jobs))
    d2 = [sum(col) for col in zip(*parts)]
    slope, out, total = 0, [], 0
    for k in range(kmax + 1):
        slope += d2[k]
        total += slope
        out.append(total)
    return out


def count_levels(Cdual: Cone, xi, kmax: int, strategy: str = "slab", workers: int = 1) -> list:
    if kmax < 0:
        raise ValueError("kmax must be nonnegative")
    if strategy == "slab":
        return levels_slab(Cdual, xi, kmax, workers)
    if strategy == "bbox":
        return levels_bbox(Cdual, xi, kmax)
    raise ValueError(f"unknown strategy {strategy!r}")


def count_cone(Cdual: Cone, xi, k: int, strategy: str = "slab", workers: int = 1) -> int:
    """Number of lattice points ``x`` of ``C^dual`` with ``(x, xi) <= k``."""
    return count_levels(Cdual, xi, k, strategy, workers)[k]


def count_strategies_agree(Cdual: Cone, xi, k: int) -> bool:
    return levels_bbox(Cdual, xi, k) == levels_slab(Cdual, xi, k)


def polytope_cone(vertices) -> Cone:
    """``cone(P x {1})`` for a lattice polytope ``P``."""
    return make_cone([tuple(v) + (1,) for v in vertices])


def count_polytope(vertices, k: int) -> int:
    """Number of integer points in ``k P`` by direct enumeration."""
    verts = [tuple(int(x) for x in v) for v in vertices]
    n = len(verts[0])
    if len(verts) < n + 1 or rm.rank([tuple(v) + (1,) for v in verts]) < n + 1:
        raise DegeneratePolytope("vertices do not span a full-dimensional polytope")
    if k == 0:
        return 1
    C = polytope_cone(verts)
    ineq = np.array([u[:-1] for u in C.facet_normals], dtype=np.int64).T
    rhs = np.array([u[-1] for u in C.facet_normals], dtype=np.int64) * k
    lo = [k * min(v[j] for v in verts) for j in range(n)]
    hi = [k * max(v[j] for v in verts) for j in range(n)]
    total = 0
    for block in _box_points(lo, hi):
        total += int((block @ ineq + rhs >= 0).all(axis=1).sum())
    return total
