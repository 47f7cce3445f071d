"""Dense exact linear algebra over Q on nested tuples/lists of Fractions."""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations
from typing import Sequence

from .arith import Poly

Matrix = tuple[tuple[Fraction, ...], ...]


def to_matrix(rows: Sequence[Sequence]) -> Matrix:
    return tuple(tuple(Fraction(x) for x in row) for row in rows)


def identity(n: int) -> Matrix:
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def zeros(n: int, m: int | None = None) -> Matrix:
    m = n if m is None else m
    return tuple(tuple(Fraction(0) for _ in range(m)) for _ in range(n))


def diag(entries: Sequence) -> Matrix:
    n = len(entries)
    return tuple(
        tuple(Fraction(entries[i]) if i == j else Fraction(0) for j in range(n)) for i in range(n)
    )


def transpose(A: Matrix) -> Matrix:
    return tuple(zip(*A)) if A else ()


def matmul(A: Matrix, B: Matrix) -> Matrix:
    Bt = transpose(B)
    return tuple(tuple(sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in Bt) for row in A)


def matadd(A: Matrix, B: Matrix, k=1) -> Matrix:
    """``A + k*B``."""
    return tuple(tuple(x + k * y for x, y in zip(ra, rb)) for ra, rb in zip(A, B))


def matscale(A: Matrix, k) -> Matrix:
    return tuple(tuple(k * x for x in row) for row in A)


def trace(A: Matrix):
    return sum((A[i][i] for i in range(len(A))), Fraction(0))


def rank(rows: Sequence[Sequence[Fraction]]) -> int:
    """Row rank by fraction Gaussian elimination."""
    work = [list(r) for r in rows if any(x != 0 for x in r)]
    if not work:
        return 0
    ncols = len(work[0])
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, len(work)) if work[i][col] != 0), None)
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        pr = work[r]
        inv = 1 / pr[col]
        for i in range(r + 1, len(work)):
            row = work[i]
            f = row[col]
            if f != 0:
                f *= inv
                for j in range(col, ncols):
                    row[j] -= f * pr[j]
        r += 1
        if r == len(work):
            break
    return r


def det(A: Matrix) -> Fraction:
    n = len(A)
    work = [list(r) for r in A]
    sign = 1
    out = Fraction(1)
    for col in range(n):
        pivot = next((i for i in range(col, n) if work[i][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            work[col], work[pivot] = work[pivot], work[col]
            sign = -sign
        p = work[col][col]
        out *= p
        for i in range(col + 1, n):
            f = work[i][col] / p
            if f != 0:
                for j in range(col, n):
                    work[i][j] -= f * work[col][j]
    return sign * out


def inverse(A: Matrix) -> Matrix:
    n = len(A)
    work = [list(A[i]) + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for col in range(n):
        pivot = next((i for i in range(col, n) if work[i][col] != 0), None)
        if pivot is None:
            raise ZeroDivisionError("singular matrix")
        work[col], work[pivot] = work[pivot], work[col]
        inv = 1 / work[col][col]
        work[col] = [x * inv for x in work[col]]
        for i in range(n):
            if i != col and work[i][col] != 0:
                f = work[i][col]
                work[i] = [x - f * y for x, y in zip(work[i], work[col])]
    return tuple(tuple(row[n:]) for row in work)


def _perm_sign(p: Sequence[int]) -> int:
    sign, seen = 1, [False] * len(p)
    for i in range(len(p)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def poly_det(A: Sequence[Sequence[Poly]]) -> Poly:
    """Leibniz expansion; meant for the small (n <= 6) pencils used here."""
    n = len(A)
    total = Poly()
    for p in permutations(range(n)):
        term = Poly.constant(_perm_sign(p))
        for i in range(n):
            term = term * A[i][p[i]]
            if term.is_zero():
                break
        total = total + term
    return total


def normalize_projective(A: Matrix) -> Matrix:
    """Scale so the first nonzero entry (row-major) is 1."""
    for row in A:
        for x in row:
            if x != 0:
                return matscale(A, 1 / x)
    raise ZeroDivisionError("zero matrix has no projective class")


def kernel_basis(M) -> list[list[Fraction]]:
    """Null space basis by reduced row echelon form."""
    n = len(M[0])
    work = [list(r) for r in M]
    pivots: list[int] = []
    r = 0
    for col in range(n):
        p = next((i for i in range(r, len(work)) if work[i][col] != 0), None)
        if p is None:
            continue
        work[r], work[p] = work[p], work[r]
        inv = 1 / work[r][col]
        work[r] = [x * inv for x in work[r]]
        for i in range(len(work)):
            if i != r and work[i][col] != 0:
                f = work[i][col]
                work[i] = [x - f * y for x, y in zip(work[i], work[r])]
        pivots.append(col)
        r += 1
    basis = []
    for free in (c for c in range(n) if c not in pivots):
        v = [Fraction(0)] * n
        v[free] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -work[i][free]
        basis.append(v)
    return basis
