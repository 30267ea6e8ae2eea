"""Exact linear algebra over the integers and the rationals.

Rank decisions use fraction-free (Bareiss) elimination on integer rows, so no
denominators ever appear.  Row reduction over Q uses :class:`fractions.Fraction`.
"""
from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence


def integer_row(vector: Sequence[Fraction]) -> tuple[int, ...]:
    """Scale a rational vector to a primitive-free integer vector with the same span."""
    denom = 1
    for x in vector:
        denom = lcm(denom, x.denominator)
    return tuple(int(x * denom) for x in vector)


def rank(rows: Iterable[Sequence[int]]) -> int:
    """Rank of an integer matrix given as a list of rows (Bareiss elimination)."""
    m = [list(r) for r in rows]
    if not m:
        return 0
    n_rows, n_cols = len(m), len(m[0])
    r = 0
    prev = 1
    for c in range(n_cols):
        piv = None
        for i in range(r, n_rows):
            if m[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        for i in range(r + 1, n_rows):
            a = m[i][c]
            row_i, row_r = m[i], m[r]
            for j in range(c, n_cols):
                row_i[j] = (p * row_i[j] - a * row_r[j]) // prev
        prev = p
        r += 1
        if r == n_rows:
            break
    return r


def rref(matrix: list[list[Fraction]], column_order: Sequence[int] | None = None):
    """Reduced row echelon form over Q, in place.

    ``column_order`` fixes the order in which columns are tried as pivots, which
    lets callers choose which variables end up free.  Returns the list of
    ``(row_index, pivot_column)`` pairs.
    """
    if not matrix:
        return []
    n_cols = len(matrix[0])
    cols = list(range(n_cols)) if column_order is None else list(column_order)
    pivots = []
    r = 0
    for c in cols:
        piv = None
        for i in range(r, len(matrix)):
            if matrix[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        matrix[r], matrix[piv] = matrix[piv], matrix[r]
        inv = 1 / matrix[r][c]
        row_r = [x * inv for x in matrix[r]]
        matrix[r] = row_r
        for i in range(len(matrix)):
            if i != r and matrix[i][c] != 0:
                f = matrix[i][c]
                row_i = matrix[i]
                matrix[i] = [a - f * b for a, b in zip(row_i, row_r)]
        pivots.append((r, c))
        r += 1
        if r == len(matrix):
            break
    return pivots
