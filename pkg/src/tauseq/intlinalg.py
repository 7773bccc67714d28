"""Exact linear algebra over the integers and rationals.

Everything here works on plain Python ints / Fractions, so results are exact
at any size.  Matrices are lists (or tuples) of rows.  The matrices involved
are small (a handful of rows, up to a few dozen columns), so the simple
cubic algorithms are the right tool.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

Matrix = Sequence[Sequence[int]]


def det_bareiss(matrix: Matrix) -> int:
    """Determinant of a square integer matrix (fraction-free Bareiss)."""
    n = len(matrix)
    if n == 0:
        return 1
    m = [list(row) for row in matrix]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        for i in range(k + 1, n):
            row_i = m[i]
            row_k = m[k]
            f = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = (pivot * row_i[j] - f * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * m[n - 1][n - 1]


def det_fraction(matrix: Sequence[Sequence[Fraction | int]]) -> Fraction:
    """Determinant over exact rationals (Gaussian elimination)."""
    n = len(matrix)
    if n == 0:
        return Fraction(1)
    m = [[Fraction(x) for x in row] for row in matrix]
    sign = 1
    result = Fraction(1)
    for k in range(n):
        pivot_row = None
        for i in range(k, n):
            if m[i][k] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            return Fraction(0)
        if pivot_row != k:
            m[k], m[pivot_row] = m[pivot_row], m[k]
            sign = -sign
        pivot = m[k][k]
        result *= pivot
        for i in range(k + 1, n):
            if m[i][k] != 0:
                f = m[i][k] / pivot
                for j in range(k, n):
                    m[i][j] -= f * m[k][j]
    return sign * result


def det_exact(matrix: Sequence[Sequence[Fraction | int]]) -> Fraction | int:
    """Exact determinant; uses the integer fast path when possible."""
    if all(isinstance(x, int) for row in matrix for x in row):
        return det_bareiss(matrix)
    return det_fraction(matrix)


def rank(matrix: Sequence[Sequence[Fraction | int]]) -> int:
    """Rank over the rationals."""
    if not matrix:
        return 0
    m = [[Fraction(x) for x in row] for row in matrix]
    rows, cols = len(m), len(m[0])
    r = 0
    for c in range(cols):
        pivot_row = None
        for i in range(r, rows):
            if m[i][c] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        pivot = m[r][c]
        for i in range(r + 1, rows):
            if m[i][c] != 0:
                f = m[i][c] / pivot
                for j in range(c, cols):
                    m[i][j] -= f * m[r][j]
        r += 1
        if r == rows:
            break
    return r


def hnf_2rows(matrix: Matrix) -> tuple[list[list[int]], list[list[int]]]:
    """Row Hermite normal form of a rank-2 integer matrix with 2 rows.

    Returns (H, U) with U unimodular (2x2) and H = U @ matrix.  Pivots are
    positive and the entry above the second pivot is reduced into [0, pivot).
    """
    a = list(matrix[0])
    b = list(matrix[1])
    u = [[1, 0], [0, 1]]
    s = len(a)

    def row_op(target: int, source: int, factor: int) -> None:
        rows = [a, b]
        for j in range(s):
            rows[target][j] -= factor * rows[source][j]
        for j in range(2):
            u[target][j] -= factor * u[source][j]

    def swap() -> None:
        nonlocal a, b
        a, b = b, a
        u[0], u[1] = u[1], u[0]

    def negate(target: int) -> None:
        rows = [a, b]
        rows[target][:] = [-x for x in rows[target]]
        u[target][:] = [-x for x in u[target]]

    # first pivot column: leftmost column with a nonzero entry
    col1 = next(j for j in range(s) if a[j] != 0 or b[j] != 0)
    while b[col1] != 0:
        if a[col1] == 0 or abs(b[col1]) < abs(a[col1]):
            swap()
        row_op(1, 0, b[col1] // a[col1])
    if a[col1] < 0:
        negate(0)
    col2 = next(j for j in range(s) if b[j] != 0)
    if b[col2] < 0:
        negate(1)
    row_op(0, 1, a[col2] // b[col2])  # reduce the entry above the 2nd pivot
    return [a, b], u


def kernel_basis(matrix: Matrix) -> list[list[int]]:
    """Basis of the integer kernel lattice {v : matrix @ v = 0}.

    Column-style elimination: accumulate the unimodular column transform and
    return the transform columns that end on zero columns of the reduced
    matrix.  The result is a lattice basis of the full integer kernel.
    """
    rows = len(matrix)
    if rows == 0:
        raise ValueError("empty matrix")
    cols = len(matrix[0])
    m = [list(row) for row in matrix]
    # transform starts as the identity, stored column-major
    t = [[1 if i == j else 0 for i in range(cols)] for j in range(cols)]

    def col_op(target: int, source: int, factor: int) -> None:
        for i in range(rows):
            m[i][target] -= factor * m[i][source]
        for i in range(cols):
            t[target][i] -= factor * t[source][i]

    def col_swap(i: int, j: int) -> None:
        for r in range(rows):
            m[r][i], m[r][j] = m[r][j], m[r][i]
        t[i], t[j] = t[j], t[i]

    pivot_col = 0
    for r in range(rows):
        while True:
            nz = [j for j in range(pivot_col, cols) if m[r][j] != 0]
            if not nz:
                break
            j0 = min(nz, key=lambda j: abs(m[r][j]))
            if j0 != pivot_col:
                col_swap(pivot_col, j0)
            done = True
            for j in range(pivot_col + 1, cols):
                if m[r][j] != 0:
                    col_op(j, pivot_col, m[r][j] // m[r][pivot_col])
                    if m[r][j] != 0:
                        done = False
            if done:
                pivot_col += 1
                break
    zero_cols = [j for j in range(cols)
                 if all(m[i][j] == 0 for i in range(rows))]
    return [t[j] for j in zero_cols]


def snf_invariants_2rows(matrix: Matrix) -> tuple[int, int]:
    """Elementary divisors (d1, d2) of a rank-2 integer matrix with 2 rows.

    d1 = gcd of all entries, d1*d2 = gcd of all 2x2 minors.
    """
    a, b = matrix[0], matrix[1]
    s = len(a)
    d1 = 0
    for x in list(a) + list(b):
        d1 = gcd(d1, x)
    g2 = 0
    for i in range(s):
        for j in range(i + 1, s):
            g2 = gcd(g2, a[i] * b[j] - a[j] * b[i])
    if d1 == 0 or g2 == 0:
        raise ValueError("matrix has rank < 2")
    return d1, g2 // d1


def solve_2unknowns(a: Sequence[int], b: Sequence[int],
                    x: Sequence[int]) -> tuple[int, int] | None:
    """Solve x = p*a + q*b in integers; None when no integer solution."""
    s = len(a)
    for i in range(s):
        for j in range(i + 1, s):
            d = a[i] * b[j] - a[j] * b[i]
            if d != 0:
                p_num = x[i] * b[j] - x[j] * b[i]
                q_num = a[i] * x[j] - a[j] * x[i]
                if p_num % d or q_num % d:
                    return None
                p, q = p_num // d, q_num // d
                if all(x[k] == p * a[k] + q * b[k] for k in range(s)):
                    return p, q
                return None
    return None
