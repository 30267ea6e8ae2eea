# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the kernels in ``_pykernels``; same signatures, same results."""
import numpy as np

from libc.math cimport hypot, INFINITY, fabs
from libc.stdint cimport uint64_t, int64_t


cdef inline int _lowbit(uint64_t m) nogil:
    cdef int i = 0
    while not (m & 1):
        m >>= 1
        i += 1
    return i


cdef inline int _popcount(uint64_t m) nogil:
    cdef int c = 0
    while m:
        m &= m - 1
        c += 1
    return c


cdef void _grow(uint64_t[:] closures, int p, uint64_t local, uint64_t prev_closure,
                int last_pick, int inversions, int used, uint64_t picks,
                uint64_t[:] out_masks, int64_t[:] out_signs, int* count) nogil:
    cdef int q, pick, smaller
    cdef uint64_t bit, nxt, x
    if used == p:
        out_masks[count[0]] = picks
        out_signs[count[0]] = -1 if inversions & 1 else 1
        count[0] += 1
        return
    for q in range(p):
        bit = (<uint64_t>1) << q
        if local & bit:
            continue
        nxt = local | bit
        x = closures[nxt]
        pick = _lowbit(x & ~prev_closure)
        if pick >= last_pick:
            continue
        smaller = _popcount(local & (bit - 1))
        _grow(closures, p, nxt, x, pick, inversions + smaller, used + 1,
              picks | ((<uint64_t>1) << pick), out_masks, out_signs, count)


def flag_expansion(closures, idx):
    cdef int p = len(idx)
    if p == 0:
        return [(0, 1)]
    cdef uint64_t[:] cl = np.ascontiguousarray(closures, dtype=np.uint64)
    # distinct orderings give distinct flags, hence at most p! standard ones
    cdef long cap = 1
    cdef int k
    for k in range(2, p + 1):
        cap *= k
    masks = np.zeros(cap, dtype=np.uint64)
    signs = np.zeros(cap, dtype=np.int64)
    cdef uint64_t[:] mv = masks
    cdef int64_t[:] sv = signs
    cdef int count = 0
    with nogil:
        _grow(cl, p, 0, 0, 1 << 30, 0, 0, 0, mv, sv, &count)
    return [(int(masks[i]), int(signs[i])) for i in range(count)]


def segment_incidence(a, b, punctures, double tol):
    a = np.ascontiguousarray(a, dtype=complex)
    b = np.ascontiguousarray(b, dtype=complex)
    cdef double[:] ar = np.ascontiguousarray(a.real)
    cdef double[:] ai = np.ascontiguousarray(a.imag)
    cdef double[:] br = np.ascontiguousarray(b.real)
    cdef double[:] bi = np.ascontiguousarray(b.imag)
    pc = np.asarray(punctures, dtype=complex)
    cdef double[:] pr = np.ascontiguousarray(pc.real)
    cdef double[:] pi = np.ascontiguousarray(pc.imag)
    cdef Py_ssize_t n = ar.shape[0], m = pr.shape[0], i
    cdef int k
    out = np.zeros(n, dtype=np.int64)
    cdef int64_t[:] ov = out
    cdef double dr, di, dd, wr, wi, t, ex, ey, scale, na, nb
    with nogil:
        for i in range(n):
            dr = br[i] - ar[i]
            di = bi[i] - ai[i]
            dd = dr * dr + di * di
            na = hypot(ar[i], ai[i])
            nb = hypot(br[i], bi[i])
            scale = 1.0
            if na > scale:
                scale = na
            if nb > scale:
                scale = nb
            for k in range(m):
                wr = pr[k] - ar[i]
                wi = pi[k] - ai[i]
                if dd > 0:
                    t = (wr * dr + wi * di) / dd
                else:
                    t = 0.0
                if t < 0.0:
                    t = 0.0
                elif t > 1.0:
                    t = 1.0
                ex = ar[i] + t * dr - pr[k]
                ey = ai[i] + t * di - pi[k]
                if hypot(ex, ey) <= tol * scale:
                    ov[i] |= (<int64_t>1) << k
    return out.reshape(np.shape(a))


def frame_distances(frames):
    f = np.ascontiguousarray(frames, dtype=float)
    cdef double[:, :, :] fv = f
    cdef Py_ssize_t T = fv.shape[0], n = fv.shape[1], t, i, j
    mins = np.full(T, np.inf)
    first = np.zeros(T, dtype=np.int64)
    second = np.zeros(T, dtype=np.int64)
    cdef double[:] mv = mins
    cdef int64_t[:] f1 = first
    cdef int64_t[:] f2 = second
    cdef double d
    with nogil:
        for t in range(T):
            for i in range(n):
                for j in range(i + 1, n):
                    d = hypot(fv[t, i, 0] - fv[t, j, 0], fv[t, i, 1] - fv[t, j, 1])
                    if d < mv[t]:
                        mv[t] = d
                        f1[t] = i
                        f2[t] = j
    return mins, first, second


def frame_steps(frames):
    f = np.ascontiguousarray(frames, dtype=float)
    cdef double[:, :, :] fv = f
    cdef Py_ssize_t T = fv.shape[0], n = fv.shape[1], t, i
    if T < 2:
        return np.zeros(0)
    steps = np.zeros(T - 1)
    cdef double[:] sv = steps
    cdef double d
    with nogil:
        for t in range(T - 1):
            for i in range(n):
                d = hypot(fv[t + 1, i, 0] - fv[t, i, 0], fv[t + 1, i, 1] - fv[t, i, 1])
                if d > sv[t]:
                    sv[t] = d
    return steps
