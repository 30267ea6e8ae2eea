"""Arrangements shared by the test modules."""
from __future__ import annotations

from fractions import Fraction

from tcarrange.arrangement import Arrangement, braid, direct_sum, generic


def coordinate_line() -> Arrangement:
    return Arrangement(1, ("H4",), ((Fraction(1),),), name="line")


def braid3_plus_line() -> Arrangement:
    return direct_sum(braid(3), coordinate_line())


TEST_ARRANGEMENTS = {
    "braid:3": lambda: braid(3),
    "braid:4": lambda: braid(4),
    "generic:3:5:1": lambda: generic(3, 5, 1),
    "generic:2:4:0": lambda: generic(2, 4, 0),
    "braid3+line": braid3_plus_line,
}
