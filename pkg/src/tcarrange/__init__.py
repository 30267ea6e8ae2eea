"""Topological complexity of hyperplane arrangement complements, with motion planners."""
from __future__ import annotations

from .arrangement import Arrangement, ArrangementError, braid, generic, named_arrangement, parse_arrangement
from .kernels import BACKEND
from .os_algebra import OrlikSolomon, Parity
from .tc_report import TCReport, report

__version__ = "0.1.0"

__all__ = [
    "Arrangement", "ArrangementError", "BACKEND", "OrlikSolomon", "Parity", "TCReport",
    "braid", "generic", "named_arrangement", "parse_arrangement", "report",
]
