"""Pure-Python implementations of the hot kernels.

Each function here has a twin with the same signature in ``_kernels.pyx``.
"""
from __future__ import annotations

import math

import numpy as np


def _lowest_bit_index(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


def flag_expansion(closures, idx):
    """Signed standard monomials of the flags of all orderings of an independent set.

    ``idx`` holds the set's ground indices in increasing order; ``closures[m]`` is the
    closure (a ground bitmask) of the local subset ``m`` of ``idx``.  Orderings are
    grown from the back, since the flag is built from the last entry forwards; an
    ordering is abandoned as soon as its picked minima stop decreasing, because such
    a flag can no longer be standard.  Returns a list of ``(nbc_mask, sign)``.
    """
    p = len(idx)
    out = []
    if p == 0:
        return [(0, 1)]

    def grow(local: int, prev_closure: int, last_pick: int, inversions: int, used: int, picks: int):
        if used == p:
            out.append((picks, -1 if inversions & 1 else 1))
            return
        for q in range(p):
            bit = 1 << q
            if local & bit:
                continue
            nxt = local | bit
            x = closures[nxt]
            pick = _lowest_bit_index(x & ~prev_closure)
            if pick >= last_pick:
                continue
            # q is placed in front of every entry chosen so far
            smaller = bin(local & (bit - 1)).count("1")
            grow(nxt, x, pick, inversions + smaller, used + 1, picks | (1 << pick))

    grow(0, 0, 1 << 62, 0, 0, 0)
    return out


def segment_incidence(a, b, punctures, tol):
    """Bitmask per pair of which punctures lie within ``tol * scale`` of segment ``[a, b]``.

    ``a`` and ``b`` are complex arrays of equal length, ``punctures`` a short complex
    sequence.  ``scale`` is ``max(1, |a|, |b|)`` per pair.
    """
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    out = np.zeros(a.shape, dtype=np.int64)
    d = b - a
    dd = (d.real * d.real + d.imag * d.imag)
    scale = np.maximum(1.0, np.maximum(np.abs(a), np.abs(b)))
    for k, p in enumerate(punctures):
        w = p - a
        with np.errstate(invalid="ignore", divide="ignore"):
            t = np.where(dd > 0, (w.real * d.real + w.imag * d.imag) / np.where(dd > 0, dd, 1), 0.0)
        t = np.clip(t, 0.0, 1.0)
        dist = np.abs(a + t * d - p)
        out |= np.where(dist <= tol * scale, 1 << k, 0)
    return out


def frame_distances(frames):
    """Per-frame minimum pairwise distance and the pair attaining it.

    ``frames`` has shape ``(T, n, 2)``.  Returns ``(mins, first, second)``.
    """
    frames = np.asarray(frames, dtype=float)
    T, n, _ = frames.shape
    mins = np.full(T, math.inf)
    first = np.zeros(T, dtype=np.int64)
    second = np.zeros(T, dtype=np.int64)
    for i in range(n):
        for j in range(i + 1, n):
            d = np.hypot(frames[:, i, 0] - frames[:, j, 0], frames[:, i, 1] - frames[:, j, 1])
            better = d < mins
            mins = np.where(better, d, mins)
            first = np.where(better, i, first)
            second = np.where(better, j, second)
    return mins, first, second


def frame_steps(frames):
    """Largest single-particle displacement between consecutive frames, length ``T - 1``."""
    frames = np.asarray(frames, dtype=float)
    if len(frames) < 2:
        return np.zeros(0)
    diff = np.diff(frames, axis=0)
    return np.hypot(diff[..., 0], diff[..., 1]).max(axis=1)
