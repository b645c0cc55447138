"""Exact linear algebra over Q: Bareiss determinants, rank and kernels."""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = list  # list[list[Fraction]]


def _copy(M: Sequence[Sequence]) -> Matrix:
    return [[Fraction(x) for x in row] for row in M]


def det(M: Sequence[Sequence]) -> Fraction:
    """Fraction-free (Bareiss) determinant of a square matrix."""
    A = _copy(M)
    n = len(A)
    if n == 0:
        return Fraction(1)
    if any(len(row) != n for row in A):
        raise ValueError("det() needs a square matrix")
    sign = 1
    prev = Fraction(1)
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k] != 0), None)
            if swap is None:
                return Fraction(0)
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        pk = A[k][k]
        for i in range(k + 1, n):
            aik = A[i][k]
            row_i, row_k = A[i], A[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pk - aik * row_k[j]) / prev
            row_i[k] = Fraction(0)
        prev = pk
    return sign * A[n - 1][n - 1]


def rref(M: Sequence[Sequence]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and the pivot columns."""
    A = _copy(M)
    rows = len(A)
    cols = len(A[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = next((i for i in range(r, rows) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = 1 / A[r][c]
        A[r] = [x * inv for x in A[r]]
        for i in range(rows):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
    return A, pivots


def rank(M: Sequence[Sequence]) -> int:
    if not M:
        return 0
    return len(rref(M)[1])


def kernel(M: Sequence[Sequence], ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of the right kernel, one vector per free column."""
    if not M:
        if ncols is None:
            raise ValueError("ncols needed for an empty matrix")
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    A, pivots = rref(M)
    cols = len(A[0])
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * cols
        v[f] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -A[r][f]
        basis.append(v)
    return basis


def matvec(M: Sequence[Sequence], v: Sequence) -> list[Fraction]:
    return [sum((a * b for a, b in zip(row, v)), Fraction(0)) for row in M]
