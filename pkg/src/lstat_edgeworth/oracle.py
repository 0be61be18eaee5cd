"""Brute-force references computed by enumerating samples.

Nothing here uses the closed-form kernels; these functions exist to check
them on small populations.
"""

from itertools import combinations
import math

import numpy as np

from .errors import CapacityError, DomainError

MAX_ENUMERATION = 10_000_000


def _guard(count, limit):
    if count > limit:
        raise CapacityError(f"enumeration of {count} samples exceeds the guard of {limit}")


def l_values(pop, w, subsets):
    """``L_n`` for each row of an (R, n) array of 0-based index subsets."""
    x = np.sort(pop.values[subsets], axis=1)
    acc = np.zeros(x.shape[0])
    for j in range(w.n):
        acc = acc + w.c[j] * x[:, j]
    return acc / w.n


def all_subsets(N, n, limit=MAX_ENUMERATION):
    """Every n-subset of ``range(N)`` as a (C(N,n), n) int array."""
    _guard(math.comb(N, n), limit)
    if n == 0:
        return np.empty((1, 0), dtype=np.intp)
    flat = np.fromiter(
        (i for combo in combinations(range(N), n) for i in combo),
        dtype=np.intp,
        count=math.comb(N, n) * n,
    )
    return flat.reshape(-1, n)


def enumerate_L(pop, w, limit=MAX_ENUMERATION):
    """``L_n`` on all C(N, n) samples, in lexicographic subset order."""
    if not 1 <= w.n < pop.N:
        raise DomainError(f"need 1 <= n < N, got n={w.n}, N={pop.N}")
    return l_values(pop, w, all_subsets(pop.N, w.n, limit))


def expected_L_enum(pop, w, limit=MAX_ENUMERATION):
    return math.fsum(enumerate_L(pop, w, limit)) / math.comb(pop.N, w.n)


def variance_S_enum(pop, w, limit=MAX_ENUMERATION):
    """Exact ``Var S_n = n Var L_n`` by enumeration."""
    L = enumerate_L(pop, w, limit)
    mu = math.fsum(L) / L.size
    return w.n * math.fsum((L - mu) ** 2) / L.size


def h_oracle(pop, w, fixed, mean_L=None, limit=MAX_ENUMERATION):
    """``h_j = E(L_n - E L_n | X_1 = x_{k_1}, ..., X_j = x_{k_j})`` by enumeration.

    ``fixed`` holds distinct 1-based unit indices; all completions of the
    sample from the remaining ``N - j`` units are averaged.
    """
    N, n = pop.N, w.n
    fixed = [int(k) for k in fixed]
    j = len(fixed)
    if not 1 <= j <= min(3, n):
        raise DomainError(f"h_j is available for 1 <= j <= min(3, n), got j={j}, n={n}")
    if len(set(fixed)) != j or not all(1 <= k <= N for k in fixed):
        raise DomainError(f"fixed units must be distinct indices in 1..{N}: {fixed}")
    if n >= N:
        raise DomainError(f"need n < N, got n={n}, N={N}")
    _guard(math.comb(N - j, n - j), limit)
    if mean_L is None:
        mean_L = expected_L_enum(pop, w, limit)
    base = [k - 1 for k in fixed]
    rest = [u for u in range(N) if u not in base]
    comps = all_subsets(len(rest), n - j, limit)
    subsets = np.concatenate(
        [np.tile(base, (comps.shape[0], 1)), np.asarray(rest)[comps].reshape(comps.shape[0], -1)],
        axis=1,
    ).astype(np.intp)
    L = l_values(pop, w, subsets)
    return math.fsum(L) / L.size - mean_L


def kernels_from_h(pop, w, indices, mean_L=None, limit=MAX_ENUMERATION):
    """Kernel of arity ``len(indices)`` assembled from enumerated ``h_1, h_2, h_3``.

    Uses the standard inversion formulas for samples drawn without
    replacement, e.g. ``g1 = (N-1)/(N-n) h_1``.
    """
    N, n = pop.N, w.n
    idx = [int(k) for k in indices]
    a = len(idx)
    if a == 2 and n > N - 2:
        raise DomainError(f"g2 from h needs n <= N-2, got n={n}, N={N}")
    if a == 3 and (n > N - 3 or N < 5):
        raise DomainError(f"g3 from h needs n <= N-3, got n={n}, N={N}")
    if a not in (1, 2, 3):
        raise DomainError("arity must be 1, 2 or 3")
    if a > n:
        raise DomainError(f"arity {a} exceeds sample size n={n}")
    if mean_L is None:
        mean_L = expected_L_enum(pop, w, limit)

    def h(*ks):
        return h_oracle(pop, w, ks, mean_L=mean_L, limit=limit)

    if a == 1:
        return (N - 1) / (N - n) * h(idx[0])
    if a == 2:
        x, y = idx
        return (N - 2) / (N - n) * (N - 3) / (N - n - 1) * (
            h(x, y) - (N - 1) / (N - 2) * (h(x) + h(y))
        )
    x, y, z = idx
    pref = (N - 3) / (N - n) * (N - 4) / (N - n - 1) * (N - 5) / (N - n - 2)
    return pref * (
        h(x, y, z)
        - (N - 2) / (N - 4) * (h(x, y) + h(x, z) + h(y, z))
        + (N - 1) / (N - 3) * (N - 2) / (N - 4) * (h(x) + h(y) + h(z))
    )


def spacing_oracle(pop, n, fixed, r=None, limit=MAX_ENUMERATION):
    """``E(𝚫_{r:n} | X_1..X_m fixed)`` by enumerating sample completions.

    With ``r=None`` the expectations for all ranks ``0..n`` are returned as
    an array from a single pass over the completions.
    """
    N = pop.N
    fixed = [int(k) - 1 for k in fixed]
    m = len(fixed)
    rest = [u for u in range(N) if u not in fixed]
    comps = all_subsets(len(rest), n - m, limit)
    units = np.concatenate(
        [np.tile(np.asarray(fixed, dtype=np.intp), (comps.shape[0], 1)), np.asarray(rest, dtype=np.intp)[comps]],
        axis=1,
    )
    # tie convention: units are ranked by index, so order by index not value
    units.sort(axis=1)
    padded = pop.padded()
    xs = np.concatenate(
        [np.full((units.shape[0], 1), padded[0]), pop.values[units], np.full((units.shape[0], 1), padded[-1])],
        axis=1,
    )
    gaps = np.diff(xs, axis=1)
    means = np.array([math.fsum(col) / gaps.shape[0] for col in gaps.T])
    return means if r is None else float(means[r])
