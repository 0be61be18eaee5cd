"""Counter-based uniform streams.

Every uniform is a pure function of ``(seed, stream, counter)``: a SplitMix64
finalizer applied to a Weyl sequence whose starting point is derived from the
seed and the stream index. Replicates of a Monte-Carlo run use their replicate
index as stream index, so any subset of replicates can be recomputed alone and
the partitioning of work across threads cannot change results.

The compiled core in ``_core.pyx`` implements the same arithmetic; both must be
kept in sync with :data:`GENERATOR_VERSION`.
"""

import numpy as np

GENERATOR_VERSION = "splitmix64-keyed-v1"

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
STREAM_MULT = 0xD1B54A32D192ED03
_M1 = 0xBF58476D1CE4E5B9
_M2 = 0x94D049BB133111EB
_INV53 = 1.0 / 9007199254740992.0


def mix64(z):
    """SplitMix64 output function on a Python int."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * _M1) & MASK64
    z = ((z ^ (z >> 27)) * _M2) & MASK64
    return z ^ (z >> 31)


def stream_key(seed, stream):
    """Key of stream ``stream`` under master ``seed`` (both reduced mod 2**64)."""
    base = mix64((seed & MASK64) + GOLDEN)
    return mix64(base + ((stream & MASK64) + 1) * STREAM_MULT)


def derive_seed(seed, *tags):
    """Derive a child seed from ``seed`` and a sequence of integer tags."""
    out = seed & MASK64
    for tag in tags:
        out = stream_key(out, tag)
    return out


def raw(key, counter):
    return mix64(key + (counter + 1) * GOLDEN)


def uniform(key, counter):
    """Uniform on [0, 1) with 53 random bits."""
    return (raw(key, counter) >> 11) * _INV53


def uniform_open(key, counter):
    """Uniform on the open interval (0, 1)."""
    return ((raw(key, counter) >> 11) + 0.5) * _INV53


# vectorized variants; numpy uint64 arithmetic wraps modulo 2**64

def _mix64_array(z):
    z = (z ^ (z >> np.uint64(30))) * np.uint64(_M1)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(_M2)
    return z ^ (z >> np.uint64(31))


def stream_keys(seed, start, stop):
    """Keys for streams ``start .. stop-1`` as a uint64 array."""
    base = np.uint64(mix64((seed & MASK64) + GOLDEN))
    idx = np.arange(start, stop, dtype=np.uint64) + np.uint64(1)
    return _mix64_array(base + idx * np.uint64(STREAM_MULT))


def uniform_array(keys, counter):
    """Uniform on [0, 1) for each key at a common counter value."""
    step = np.uint64(((counter + 1) * GOLDEN) & MASK64)
    bits = _mix64_array(keys + step) >> np.uint64(11)
    return bits.astype(np.float64) * _INV53


def uniform_open_stream(key, count):
    """``count`` consecutive open-interval uniforms from a single key."""
    ctr = (np.arange(count, dtype=np.uint64) + np.uint64(1)) * np.uint64(GOLDEN)
    bits = _mix64_array(np.uint64(key) + ctr) >> np.uint64(11)
    return (bits.astype(np.float64) + 0.5) * _INV53
