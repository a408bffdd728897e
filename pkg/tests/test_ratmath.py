import random
from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from qgcount import ratmath as rm

small = st.integers(-6, 6)


def matrices(rows, cols):
    return st.lists(st.lists(small, min_size=cols, max_size=cols), min_size=rows, max_size=rows)


@st.composite
def any_matrix(draw):
    r = draw(st.integers(1, 4))
    c = draw(st.integers(1, 4))
    return draw(matrices(r, c))


def is_row_hnf(H):
    row_pivot = -1
    for i, row in enumerate(H):
        nz = [j for j, x in enumerate(row) if x]
        if not nz:
            assert all(not any(r) for r in H[i:])
            return True
        j = nz[0]
        assert j > row_pivot and row[j] > 0
        for above in H[:i]:
            assert 0 <= above[j] < row[j]
        row_pivot = j
    return True


def test_hnf_example():
    H, U = rm.hnf([[1, 0], [-1, 3]])
    assert H == ((1, 0), (0, 3))
    assert rm.matmul(U, [[1, 0], [-1, 3]]) == H
    assert abs(rm.det(U)) == 1


def test_hnf_identity():
    I3 = rm.identity(3)
    assert rm.hnf(I3) == (I3, I3)


def test_hnf_preserves_determinant():
    H, _ = rm.hnf([[2, 4], [6, 8]])
    assert abs(rm.det(H)) == 8


@settings(max_examples=200, deadline=None)
@given(any_matrix())
def test_hnf_invariants(A):
    H, U = rm.hnf(A)
    assert rm.matmul(U, A) == H
    assert abs(rm.det(U)) == 1
    assert is_row_hnf(H)


def test_snf_examples():
    assert rm.snf([[2, 0], [0, 6]])[0] == ((2, 0), (0, 6))
    assert rm.snf([[1, 0], [-1, 3]])[0] == ((1, 0), (0, 3))
    assert rm.snf(rm.identity(4))[0] == rm.identity(4)


@settings(max_examples=200, deadline=None)
@given(any_matrix())
def test_snf_invariants(A):
    S, U, V = rm.snf(A)
    assert rm.matmul(rm.matmul(U, A), V) == S
    assert abs(rm.det(U)) == 1 and abs(rm.det(V)) == 1
    diag = [S[i][i] for i in range(min(len(S), len(S[0])))]
    assert all(S[i][j] == 0 for i in range(len(S)) for j in range(len(S[0])) if i != j)
    assert all(d >= 0 for d in diag)
    for a, b in zip(diag, diag[1:]):
        assert (b == 0) if a == 0 else (b % a == 0)


def test_invariant_factors_match_minor_gcds():
    # d_1 = gcd of entries, d_1 d_2 = gcd of 2x2 minors
    A = [[2, 4, 4], [-6, 6, 12], [10, -4, -16]]
    f = rm.invariant_factors(A)
    assert f[0] == 2
    minors = [rm.det([[A[i][a], A[i][b]], [A[j][a], A[j][b]]])
              for i in range(3) for j in range(i + 1, 3) for a in range(3) for b in range(a + 1, 3)]
    assert f[0] * f[1] == rm.vec_gcd(minors)
    assert f[0] * f[1] * f[2] == abs(rm.det(A))


def test_solve_examples():
    sol = rm.solve_rational(rm.identity(3), [Fraction(1, 2), 3, -7])
    assert sol.x == (Fraction(1, 2), 3, -7) and sol.unique
    sol = rm.solve_rational([[1, 0], [-1, 3]], [-1, -1])
    assert sol.x == (-1, Fraction(-2, 3))
    assert rm.solve_rational([[1], [1]], [0, 1]) is None


def test_solve_flags_nonunique():
    sol = rm.solve_rational([[1, 1]], [2])
    assert not sol.unique
    assert sum(sol.x) == 2


def test_solve_random_systems():
    rng = random.Random(3)
    for _ in range(200):
        r, c = rng.randint(1, 4), rng.randint(1, 4)
        A = [[rng.randint(-5, 5) for _ in range(c)] for _ in range(r)]
        x = [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(c)]
        b = rm.matvec(A, x)
        sol = rm.solve_rational(A, b)
        assert sol is not None
        assert rm.matvec(A, sol.x) == tuple(b)
        assert sol.unique == (rm.rank(A) == c)


def test_integer_kernel_is_saturated():
    K = rm.integer_kernel([[3, 1]])
    assert len(K) == 1
    assert rm.primitive(K[0]) in ((1, -3), (-1, 3))
    K = rm.integer_kernel([[2, 4, 6]])
    assert len(K) == 2
    assert all(rm.dot((2, 4, 6), k) == 0 for k in K)
    # basis of the kernel lattice: the 2x2 minors have gcd 1
    assert rm.invariant_factors(K) == (1, 1)


@settings(max_examples=100, deadline=None)
@given(st.lists(small, min_size=2, max_size=5).filter(lambda v: rm.vec_gcd(v) == 1))
def test_completing_vector(w):
    mu = rm.completing_vector(w)
    assert rm.dot(w, mu) == 1


@settings(max_examples=100, deadline=None)
@given(st.lists(small, min_size=2, max_size=5).filter(lambda v: rm.vec_gcd(v) == 1))
def test_unimodular_sending_to_last(xi):
    U = rm.unimodular_sending_to_last(xi)
    assert abs(rm.det(U)) == 1
    assert rm.matvec(U, xi) == (0,) * (len(xi) - 1) + (1,)
    Ui = rm.inverse_unimodular(U)
    assert rm.matmul(U, Ui) == rm.identity(len(xi))
