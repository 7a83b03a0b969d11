"""Small exact linear-algebra helpers (integer and rational, no floats)."""

from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Sequence


def integer_matrix_rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank over the rationals of an integer matrix, by fraction-free
    (Bareiss) elimination with arbitrary-precision integers."""
    m = [list(int(x) for x in r) for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    rank = 0
    prev = 1
    row = 0
    for col in range(ncols):
        piv = None
        for r in range(row, nrows):
            if m[r][col] != 0:
                piv = r
                break
        if piv is None:
            continue
        m[row], m[piv] = m[piv], m[row]
        p = m[row][col]
        for r in range(row + 1, nrows):
            f = m[r][col]
            for c in range(col + 1, ncols):
                m[r][c] = (p * m[r][c] - f * m[row][c]) // prev
            m[r][col] = 0
        prev = p
        row += 1
        rank += 1
        if row == nrows:
            break
    return rank


def integer_det(rows: Sequence[Sequence[int]]) -> int:
    """Exact determinant of a square integer matrix (Bareiss)."""
    m = [list(int(x) for x in r) for r in rows]
    n = len(m)
    if any(len(r) != n for r in m):
        raise ValueError("determinant requires a square matrix")
    sign = 1
    prev = 1
    for col in range(n):
        piv = None
        for r in range(col, n):
            if m[r][col] != 0:
                piv = r
                break
        if piv is None:
            return 0
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            sign = -sign
        p = m[col][col]
        for r in range(col + 1, n):
            f = m[r][col]
            for c in range(col + 1, n):
                m[r][c] = (p * m[r][c] - f * m[col][c]) // prev
            m[r][col] = 0
        prev = p
    return sign * m[n - 1][n - 1]


def solve_unique_rational(
    a_rows: Sequence[Sequence[int]], rhs: Sequence
) -> Optional[List[Fraction]]:
    """Solve A x = b exactly for a system with full column rank.

    Returns None when the system is inconsistent.  Raises if the solution is
    not unique (the callers' matrices always have full column rank).
    """
    nrows = len(a_rows)
    ncols = len(a_rows[0]) if nrows else 0
    aug = [
        [Fraction(x) for x in row] + [Fraction(rhs[i])] for i, row in enumerate(a_rows)
    ]
    pivot_cols = []
    row = 0
    for col in range(ncols):
        piv = None
        for r in range(row, nrows):
            if aug[r][col] != 0:
                piv = r
                break
        if piv is None:
            continue
        aug[row], aug[piv] = aug[piv], aug[row]
        pv = aug[row][col]
        aug[row] = [x / pv for x in aug[row]]
        for r in range(nrows):
            if r != row and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[row])]
        pivot_cols.append(col)
        row += 1
        if row == nrows:
            break
    for r in range(row, nrows):
        if aug[r][ncols] != 0:
            return None
    if len(pivot_cols) != ncols:
        raise ValueError("system does not have full column rank")
    sol = [Fraction(0)] * ncols
    for r, col in enumerate(pivot_cols):
        sol[col] = aug[r][ncols]
    return sol
