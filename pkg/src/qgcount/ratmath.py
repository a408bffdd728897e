"""
Exact integer and rational linear algebra.

Rationals are :class:`fractions.Fraction` (always in lowest terms with a
positive denominator).  Integer matrices are tuples of row tuples; every
function accepts any nested sequence of ints and returns tuples.
"""

from fractions import Fraction
from functools import reduce
from math import gcd
from typing import NamedTuple, Optional

Rat = Fraction
IntMat = tuple  # tuple[tuple[int, ...], ...]
RatVec = tuple  # tuple[Fraction, ...]


def as_intmat(A) -> IntMat:
    rows = tuple(tuple(int(x) for x in row) for row in A)
    if rows and any(len(r) != len(rows[0]) for r in rows):
        raise ValueError("matrix is not rectangular")
    return rows


def shape(A):
    return len(A), (len(A[0]) if A else 0)


def identity(n: int) -> IntMat:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def transpose(A):
    return tuple(zip(*A)) if A else ()


def matmul(A, B):
    Bt = transpose(B)
    return tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in Bt) for row in A)


def matvec(A, x):
    return tuple(sum(a * b for a, b in zip(row, x)) for row in A)


def dot(x, y):
    return sum(a * b for a, b in zip(x, y))


def vec_gcd(v) -> int:
    return reduce(gcd, (abs(int(x)) for x in v), 0)


def primitive(v) -> tuple:
    """Scale an integer or rational vector to the primitive integer vector
    on the same ray (sign preserved)."""
    v = [Fraction(x) for x in v]
    den = reduce(lambda a, b: a * b // gcd(a, b), (x.denominator for x in v), 1)
    ints = [int(x * den) for x in v]
    g = vec_gcd(ints)
    if g == 0:
        raise ValueError("zero vector has no primitive representative")
    return tuple(x // g for x in ints)


def lcm(*nums: int) -> int:
    return reduce(lambda a, b: a * b // gcd(a, b), nums, 1)


def det(A) -> int:
    """Determinant of a square integer matrix (Bareiss, fraction free)."""
    n = len(A)
    if n == 0:
        return 1
    M = [list(r) for r in A]
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def rank(A) -> int:
    return len(_rref([[Fraction(x) for x in row] for row in A])[1])


def _rref(M):
    """In-place reduced row echelon form over Q; returns (M, pivot_cols)."""
    rows, cols = len(M), (len(M[0]) if M else 0)
    pivots = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = 1 / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(rows):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return M, pivots


class RationalSolution(NamedTuple):
    x: RatVec
    unique: bool


def solve_rational(A, b) -> Optional[RationalSolution]:
    """Solve ``A x = b`` over Q.

    Returns ``None`` for an inconsistent system.  When the solution space is
    positive dimensional the free variables are set to zero and
    ``unique`` is False.
    """
    A = [[Fraction(x) for x in row] for row in A]
    b = [Fraction(x) for x in b]
    if len(A) != len(b):
        raise ValueError("row count of A does not match length of b")
    cols = len(A[0]) if A else 0
    M, pivots = _rref([row + [bi] for row, bi in zip(A, b)])
    if cols in pivots:
        return None
    x = [Fraction(0)] * cols
    for r, c in enumerate(pivots):
        x[c] = M[r][cols]
    return RationalSolution(tuple(x), len(pivots) == cols)


def hnf(A):
    """Row-style Hermite normal form.

    Returns ``(H, U)`` with ``U`` unimodular and ``U A = H``.  ``H`` is in
    row echelon form with positive pivots, every entry above a pivot reduced
    into ``[0, pivot)``, and zero rows at the bottom.
    """
    A = as_intmat(A)
    m, n = shape(A)
    H = [list(r) for r in A]
    U = [list(r) for r in identity(m)]

    def addrow(dst, src, f):
        if f:
            H[dst] = [a - f * b for a, b in zip(H[dst], H[src])]
            U[dst] = [a - f * b for a, b in zip(U[dst], U[src])]

    def swap(i, j):
        H[i], H[j] = H[j], H[i]
        U[i], U[j] = U[j], U[i]

    r = 0
    for c in range(n):
        if r == m:
            break
        while True:
            nz = [i for i in range(r, m) if H[i][c] != 0]
            if not nz:
                break
            p = min(nz, key=lambda i: abs(H[i][c]))
            swap(r, p)
            done = True
            for i in range(r + 1, m):
                if H[i][c]:
                    addrow(i, r, H[i][c] // H[r][c])
                    if H[i][c]:
                        done = False
            if done:
                break
        if H[r][c] == 0:
            continue
        if H[r][c] < 0:
            H[r] = [-x for x in H[r]]
            U[r] = [-x for x in U[r]]
        for i in range(r):
            addrow(i, r, H[i][c] // H[r][c])
        r += 1
    return tuple(map(tuple, H)), tuple(map(tuple, U))


def snf(A):
    """Smith normal form ``(S, U, V)`` with ``U A V = S``.

    ``S`` is diagonal with nonnegative entries ``d_1 | d_2 | ...``; ``U`` and
    ``V`` are unimodular.
    """
    A = as_intmat(A)
    m, n = shape(A)
    S = [list(r) for r in A]
    U = [list(r) for r in identity(m)]
    V = [list(r) for r in identity(n)]

    def rowop(dst, src, f):
        S[dst] = [a - f * b for a, b in zip(S[dst], S[src])]
        U[dst] = [a - f * b for a, b in zip(U[dst], U[src])]

    def colop(dst, src, f):
        for row in S:
            row[dst] -= f * row[src]
        for row in V:
            row[dst] -= f * row[src]

    def rowswap(i, j):
        S[i], S[j] = S[j], S[i]
        U[i], U[j] = U[j], U[i]

    def colswap(i, j):
        for M in (S, V):
            for row in M:
                row[i], row[j] = row[j], row[i]

    for t in range(min(m, n)):
        while True:
            entries = [(abs(S[i][j]), i, j) for i in range(t, m) for j in range(t, n) if S[i][j]]
            if not entries:
                break
            _, i, j = min(entries)
            rowswap(t, i)
            colswap(t, j)
            clean = True
            for i in range(t + 1, m):
                if S[i][t]:
                    rowop(i, t, S[i][t] // S[t][t])
                    clean = clean and S[i][t] == 0
            for j in range(t + 1, n):
                if S[t][j]:
                    colop(j, t, S[t][j] // S[t][t])
                    clean = clean and S[t][j] == 0
            if not clean:
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if S[i][j] % S[t][t]),
                None,
            )
            if bad is None:
                break
            rowop(t, bad, -1)
        if t < m and t < n and S[t][t] < 0:
            S[t] = [-x for x in S[t]]
            U[t] = [-x for x in U[t]]
    return tuple(map(tuple, S)), tuple(map(tuple, U)), tuple(map(tuple, V))


def invariant_factors(A) -> tuple:
    S, _, _ = snf(A)
    return tuple(S[i][i] for i in range(min(shape(A))))


def integer_kernel(A) -> IntMat:
    """Z-basis (as rows) of the lattice ``{x in Z^n : A x = 0}``."""
    A = as_intmat(A)
    n = len(A[0])
    H, U = hnf(transpose(A)) if A else ((), identity(n))
    if not A:
        return identity(n)
    return tuple(U[i] for i in range(n) if not any(H[i]))


def completing_vector(w) -> tuple:
    """Integer vector ``mu`` with ``w . mu = 1`` for a primitive ``w``."""
    H, U = hnf([[x] for x in w])
    if H[0][0] != 1:
        raise ValueError("vector is not primitive")
    return U[0]


def unimodular_sending_to_last(xi) -> IntMat:
    """Unimodular ``U`` with ``U xi = e_last`` for primitive ``xi``."""
    H, U = hnf([[x] for x in xi])
    if H[0][0] != 1:
        raise ValueError("vector is not primitive")
    rows = list(U)
    rows.append(rows.pop(0))
    if det(rows) not in (1, -1):  # pragma: no cover - hnf guarantees this
        raise AssertionError
    return tuple(rows)


def inverse_unimodular(U) -> IntMat:
    n = len(U)
    M, _ = _rref([[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
                  for i, row in enumerate(U)])
    inv = tuple(tuple(int(x) for x in row[n:]) for row in M)
    if any(Fraction(int(x)) != x for row in M for x in row[n:]):
        raise ValueError("matrix is not unimodular")
    return inv


def maximal_minor_vector(B) -> tuple:
    """Generalized cross product of ``n`` rows in dimension ``n + 1``:
    the vector ``w`` with ``w . x = det([B; x])``."""
    k = len(B)
    d = len(B[0])
    if d != k + 1:
        raise ValueError("need n rows in dimension n + 1")
    w = []
    for j in range(d):
        minor = [[row[c] for c in range(d) if c != j] for row in B]
        w.append((-1) ** (k + j) * det(minor))
    return tuple(w)
