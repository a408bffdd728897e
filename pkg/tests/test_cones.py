import random
from fractions import Fraction

import pytest

from qgcount import ratmath as rm
from qgcount.cones import (
    dual,
    faces,
    gorenstein_check,
    make_cone,
    orthant,
    q_ratio,
)
from qgcount.errors import NotFullDim, NotGorenstein, NotInterior, NotPointed

from conftest import corpus_cone


def test_make_cone_example(example):
    assert set(example.rays) == {(1, 0), (-1, 3)}
    assert set(example.facet_normals) == {(0, 1), (3, 1)}
    for u in example.facet_normals:
        pairings = [rm.dot(u, v) for v in example.rays]
        assert min(pairings) == 0 and max(pairings) > 0 and pairings.count(0) == 1


def test_make_cone_orthant_self_dual():
    C = make_cone(rm.identity(4))
    assert set(C.facet_normals) == set(rm.identity(4))
    assert set(dual(C).rays) == set(C.rays)


def test_make_cone_drops_redundant():
    C = make_cone([(1, 0), (1, 2), (1, 1)])
    assert set(C.rays) == {(1, 0), (1, 2)}
    # (1, 1) is inside
    assert C.contains((1, 1))


def test_make_cone_reduces_to_primitive():
    C = make_cone([(2, 0), (0, 3), (2, 2)])
    assert set(C.rays) == {(1, 0), (0, 1)}


def test_make_cone_errors():
    with pytest.raises(NotPointed):
        make_cone([(1, 0), (-1, 0), (0, 1)])
    with pytest.raises(NotFullDim):
        make_cone([(1, 0, 0), (0, 1, 0)])


def test_dual_of_example(example):
    D = dual(example)
    assert set(D.rays) == {(0, 1), (3, 1)}
    assert set(dual(orthant(3)).rays) == set(orthant(3).rays)


def test_biduality(corpus_name):
    C = corpus_cone(corpus_name)
    D = dual(C)
    # recompute the dual from its rays alone, then dualize again
    D2 = make_cone(D.rays)
    assert set(D2.facet_normals) == set(C.rays)
    C2 = make_cone(D2.facet_normals)
    assert set(C2.rays) == set(C.rays)
    assert set(C2.facet_normals) == set(C.facet_normals)


def _nonneg_combination(C, x):
    """Membership oracle: x is a nonnegative combination of some linearly
    independent subset of the rays (Caratheodory)."""
    from itertools import combinations

    for r in range(1, C.dim + 1):
        for sub in combinations(C.rays, r):
            if rm.rank(sub) < r:
                continue
            sol = rm.solve_rational(rm.transpose(sub), x)
            if sol is not None and all(c >= 0 for c in sol.x):
                return True
    return not any(x)


def test_membership_consistency(corpus_name):
    C = corpus_cone(corpus_name)
    rng = random.Random(hash(corpus_name) % 1000)
    for _ in range(200):
        x = tuple(rng.randint(-4, 4) for _ in range(C.dim))
        by_normals = all(rm.dot(u, x) >= 0 for u in C.facet_normals)
        assert C.contains(x) == by_normals == _nonneg_combination(C, x)


def test_faces_small_examples():
    two = make_cone([(1, 0), (-1, 3)])
    assert [f[0] for f in faces(two, 1)] == [(0,), (1,)]
    O = orthant(3)
    assert len(faces(O, 2)) == 3 and len(faces(O, 1)) == 3
    assert [f[0] for f in faces(O, 0)] == [()]
    sq = corpus_cone("conifold")
    assert len(faces(sq, 2)) == 4 and len(faces(sq, 1)) == 4


def test_faces_active_normals():
    sq = corpus_cone("conifold")
    for rays, normals in faces(sq, 1):
        assert len(rays) == 1 and len(normals) == 2
    (whole, none), = faces(sq, 3)
    assert whole == (0, 1, 2, 3) and none == ()


def test_gorenstein_example(example):
    G = gorenstein_check(example)
    assert G.lam == (-3, -2) and G.l == 3 and G.smooth


def test_gorenstein_orthant():
    for d in range(1, 6):
        G = gorenstein_check(orthant(d))
        assert G.lam == (-1,) * d and G.l == 1 and G.smooth


def test_gorenstein_derived():
    G = gorenstein_check(make_cone([(1, 0), (1, 2)]))
    assert G.lam == (-1, 0) and G.l == 1 and G.smooth


def test_gorenstein_pairing_and_smoothness(corpus_name):
    C = corpus_cone(corpus_name)
    G = gorenstein_check(C)
    assert all(rm.dot(G.lam, v) == -G.l for v in C.rays)
    # l minimal: no common factor can be divided out of (lam, l)
    assert rm.vec_gcd(list(G.lam) + [G.l]) == 1
    assert G.smooth
    for rays, _ in faces(C, C.dim - 1):
        assert rm.invariant_factors([C.rays[i] for i in rays]) == (1,) * (C.dim - 1)


def test_not_gorenstein():
    with pytest.raises(NotGorenstein):
        gorenstein_check(make_cone([(1, 0, 1), (0, 1, 1), (-1, 0, 1), (0, -1, 2)]))


def test_not_smooth_is_flagged():
    C = make_cone([(0, 1, 0), (0, 0, 1), (2, -1, 0)])
    G = gorenstein_check(C)
    assert not G.smooth
    (bad,) = G.bad_faces
    assert rm.invariant_factors([C.rays[i] for i in bad]) != (1, 1)


def test_q_ratio(example):
    G = gorenstein_check(example)
    assert q_ratio(G, (1, 1), example) == Fraction(5, 3)
    assert q_ratio(G, (0, 1), example) == Fraction(2, 3)
    for d in range(2, 5):
        O = orthant(d)
        assert q_ratio(gorenstein_check(O), (1,) * d, O) == d
    with pytest.raises(NotInterior):
        q_ratio(G, (1, 0), example)


def test_q_independent_of_scaling_lambda(example):
    G = gorenstein_check(example)
    xi = (2, 5)
    q = G.q_of(xi)
    assert Fraction(-rm.dot([2 * x for x in G.lam], xi), 2 * G.l) == q
