from __future__ import annotations

from fractions import Fraction

import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from tcarrange import linalg

small = st.integers(-6, 6)
matrices = st.integers(1, 5).flatmap(
    lambda cols: st.lists(st.lists(small, min_size=cols, max_size=cols), min_size=1, max_size=6))


@settings(max_examples=200, deadline=None)
@given(matrices)
def test_bareiss_rank_matches_sympy(rows):
    assert linalg.rank(rows) == sympy.Matrix(rows).rank()


@settings(max_examples=100, deadline=None)
@given(matrices)
def test_rref_pivot_count_is_rank(rows):
    m = [[Fraction(x) for x in r] for r in rows]
    pivots = linalg.rref(m)
    assert len(pivots) == linalg.rank(rows)
    for r, c in pivots:
        assert m[r][c] == 1
        assert all(m[i][c] == 0 for i in range(len(m)) if i != r)


def test_rref_column_order_controls_pivots():
    m = [[Fraction(1), Fraction(1)]]
    assert linalg.rref(m, [1, 0]) == [(0, 1)]


def test_integer_row_clears_denominators():
    assert linalg.integer_row((Fraction(1, 2), Fraction(-2, 3))) == (3, -4)


def test_empty_rank():
    assert linalg.rank([]) == 0
