"""Exact Gauss-Jordan elimination over the rationals."""
from __future__ import annotations

from fractions import Fraction
from typing import List, Sequence


class SingularMatrix(ArithmeticError):
    pass


def _copy(matrix: Sequence[Sequence]) -> List[List[Fraction]]:
    return [[Fraction(x) for x in row] for row in matrix]


def inverse(matrix: Sequence[Sequence]) -> List[List[Fraction]]:
    """Inverse of a square matrix; pivots on the first nonzero entry in each column."""
    a = _copy(matrix)
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("matrix must be square")
    inv = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            raise SingularMatrix(f"no pivot in column {col}")
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            inv[col], inv[pivot] = inv[pivot], inv[col]
        p = a[col][col]
        if p != 1:
            a[col] = [x / p for x in a[col]]
            inv[col] = [x / p for x in inv[col]]
        prow, pinv = a[col], inv[col]
        # sparse rows: only touch nonzero entries of the pivot row
        nz_a = [j for j in range(col, n) if prow[j]]
        nz_i = [j for j in range(n) if pinv[j]]
        for r in range(n):
            if r == col:
                continue
            f = a[r][col]
            if not f:
                continue
            row, irow = a[r], inv[r]
            for j in nz_a:
                row[j] -= f * prow[j]
            for j in nz_i:
                irow[j] -= f * pinv[j]
    return inv


def determinant(matrix: Sequence[Sequence]) -> Fraction:
    a = _copy(matrix)
    n = len(a)
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            det = -det
        p = a[col][col]
        det *= p
        for r in range(col + 1, n):
            f = a[r][col] / p
            if f:
                for j in range(col, n):
                    a[r][j] -= f * a[col][j]
    return det


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> List[List[Fraction]]:
    cols = list(zip(*b))
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in cols] for row in a]
