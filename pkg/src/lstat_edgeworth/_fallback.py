"""Pure numpy implementation of the Monte-Carlo kernel.

Vectorized across replicates: each of the ``n`` partial-shuffle steps is one
array operation over a batch. Arithmetic and summation order follow
``_core.pyx`` exactly so both backends give identical bits.
"""

import numpy as np

from . import rng

BATCH = 1 << 15


def lstat_replicates(values, c, seed, start, stop):
    """``L_n`` for replicates ``start .. stop-1`` (float64 array)."""
    values = np.ascontiguousarray(values, dtype=np.float64)
    c = np.ascontiguousarray(c, dtype=np.float64)
    N = values.size
    n = c.size
    out = np.empty(stop - start)
    base = np.arange(N, dtype=np.int64)
    for a in range(start, stop, BATCH):
        b = min(a + BATCH, stop)
        keys = rng.stream_keys(seed, a, b)
        rows = np.arange(b - a)
        perm = np.tile(base, (b - a, 1))
        for t in range(n):
            u = rng.uniform_array(keys, t)
            j = t + (u * float(N - t)).astype(np.int64)
            np.minimum(j, N - 1, out=j)
            tmp = perm[rows, j]
            perm[rows, j] = perm[:, t]
            perm[:, t] = tmp
        x = values[perm[:, :n]]
        x.sort(axis=1)
        acc = np.zeros(b - a)
        for jj in range(n):
            acc = acc + c[jj] * x[:, jj]
        out[a - start:b - start] = acc / n
    return out
