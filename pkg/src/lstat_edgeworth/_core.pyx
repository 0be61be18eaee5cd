# cython: language_level=3
"""Compiled Monte-Carlo kernel; mirrors ``_fallback.lstat_replicates``."""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport uint64_t, int64_t
from libc.stdlib cimport malloc, free

cnp.import_array()

cdef uint64_t GOLDEN = 0x9E3779B97F4A7C15ULL
cdef uint64_t STREAM_MULT = 0xD1B54A32D192ED03ULL
cdef double INV53 = 1.0 / 9007199254740992.0


cdef inline uint64_t mix64(uint64_t z) noexcept nogil:
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL
    return z ^ (z >> 31)


cdef void _run(const double* values, const double* c, Py_ssize_t N, Py_ssize_t n,
               uint64_t base, Py_ssize_t start, Py_ssize_t stop, double* out,
               int64_t* perm, int64_t* picks, double* xs) noexcept nogil:
    cdef Py_ssize_t r, t, a, b
    cdef uint64_t key
    cdef double u, acc, v
    cdef int64_t j, tmp
    for t in range(N):
        perm[t] = t
    for r in range(start, stop):
        key = mix64(base + (<uint64_t>r + 1) * STREAM_MULT)
        for t in range(n):
            u = <double>(mix64(key + (<uint64_t>t + 1) * GOLDEN) >> 11) * INV53
            j = t + <int64_t>(u * <double>(N - t))
            if j > N - 1:
                j = N - 1
            picks[t] = j
            tmp = perm[j]
            perm[j] = perm[t]
            perm[t] = tmp
            xs[t] = values[perm[t]]
        # undo the swaps so perm is the identity again
        for t in range(n - 1, -1, -1):
            j = picks[t]
            tmp = perm[j]
            perm[j] = perm[t]
            perm[t] = tmp
        # insertion sort, n is small
        for a in range(1, n):
            v = xs[a]
            b = a - 1
            while b >= 0 and xs[b] > v:
                xs[b + 1] = xs[b]
                b -= 1
            xs[b + 1] = v
        acc = 0.0
        for t in range(n):
            acc = acc + c[t] * xs[t]
        out[r - start] = acc / <double>n


def lstat_replicates(values, c, seed, Py_ssize_t start, Py_ssize_t stop):
    """``L_n`` for replicates ``start .. stop-1`` (float64 array)."""
    cdef cnp.ndarray[cnp.float64_t, ndim=1] vals = np.ascontiguousarray(values, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] cc = np.ascontiguousarray(c, dtype=np.float64)
    cdef Py_ssize_t N = vals.shape[0]
    cdef Py_ssize_t n = cc.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty(stop - start, dtype=np.float64)
    cdef uint64_t s = <uint64_t>(int(seed) & 0xFFFFFFFFFFFFFFFF)
    cdef uint64_t base = mix64(s + GOLDEN)
    cdef int64_t* perm = <int64_t*>malloc(N * sizeof(int64_t))
    cdef int64_t* picks = <int64_t*>malloc((n + 1) * sizeof(int64_t))
    cdef double* xs = <double*>malloc((n + 1) * sizeof(double))
    if perm == NULL or picks == NULL or xs == NULL:
        free(perm); free(picks); free(xs)
        raise MemoryError()
    try:
        with nogil:
            _run(&vals[0], &cc[0], N, n, base, start, stop,
                 &out[0] if stop > start else NULL, perm, picks, xs)
    finally:
        free(perm); free(picks); free(xs)
    return out
