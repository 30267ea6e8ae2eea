"""Piecewise paths in C built from segments and circular arcs.

Every path is parameterised on ``[0, 1]`` at constant speed: each piece gets time in
proportion to its length, and moves at constant speed within that time.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class Segment:
    start: complex
    end: complex

    @property
    def length(self) -> float:
        return abs(self.end - self.start)

    def at(self, s: np.ndarray) -> np.ndarray:
        return self.start + s * (self.end - self.start)


@dataclass(frozen=True)
class Arc:
    """Counterclockwise arc about ``center``; the radius interpolates linearly in angle."""

    center: complex
    start: complex
    end: complex

    @property
    def angles(self) -> tuple[float, float]:
        a0 = cmath.phase(self.start - self.center)
        sweep = (cmath.phase(self.end - self.center) - a0) % (2 * math.pi)
        return a0, sweep

    @property
    def radii(self) -> tuple[float, float]:
        return abs(self.start - self.center), abs(self.end - self.center)

    @property
    def length(self) -> float:
        r0, r1 = self.radii
        return self.angles[1] * 0.5 * (r0 + r1)

    def at(self, s: np.ndarray) -> np.ndarray:
        a0, sweep = self.angles
        r0, r1 = self.radii
        out = self.center + (r0 + s * (r1 - r0)) * np.exp(1j * (a0 + s * sweep))
        # pin the endpoints exactly
        out = np.where(s <= 0, self.start, out)
        return np.where(s >= 1, self.end, out)


class PiecewisePath:
    def __init__(self, pieces, start: complex, end: complex):
        self.pieces = [p for p in pieces if p.length > 0]
        self.start = complex(start)
        self.end = complex(end)
        lengths = np.array([p.length for p in self.pieces], dtype=float)
        self.length = float(lengths.sum())
        self._cum = np.concatenate([[0.0], np.cumsum(lengths)]) / self.length if self.length > 0 else None

    @classmethod
    def constant(cls, z: complex) -> "PiecewisePath":
        return cls([], z, z)

    def __call__(self, t) -> np.ndarray:
        t = np.clip(np.asarray(t, dtype=float), 0.0, 1.0)
        if self._cum is None:
            return np.full(t.shape, self.start, dtype=complex)
        k = np.clip(np.searchsorted(self._cum, t, side="right") - 1, 0, len(self.pieces) - 1)
        out = np.empty(t.shape, dtype=complex)
        for i, piece in enumerate(self.pieces):
            sel = k == i
            if np.any(sel):
                lo, hi = self._cum[i], self._cum[i + 1]
                out[sel] = piece.at((t[sel] - lo) / (hi - lo))
        out = np.where(t <= 0, self.start, out)
        return np.where(t >= 1, self.end, out)


def straight(a: complex, b: complex) -> PiecewisePath:
    if a == b:
        return PiecewisePath.constant(a)
    return PiecewisePath([Segment(a, b)], a, b)
