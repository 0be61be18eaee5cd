"""Reproducible simulation of simple random sampling without replacement.

Replicate ``r`` under seed ``s`` is a partial Fisher-Yates shuffle driven by
the counter-based stream ``(s, r)``. Replicates are therefore independent
tasks: splitting a run over threads, or recomputing a single replicate, gives
the same values bit for bit.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
import math

import numpy as np

from . import _backend, rng
from .errors import DegenerateStatisticError, DomainError


def draw_sample(pop, n, replicate_index, seed):
    """1-based unit indices of replicate ``replicate_index``, in draw order."""
    N = pop.N if hasattr(pop, "N") else int(pop)
    if not 1 <= n < N:
        raise DomainError(f"need 1 <= n < N, got n={n}, N={N}")
    key = rng.stream_key(seed, replicate_index)
    perm = list(range(N))
    for t in range(n):
        j = min(t + int(rng.uniform(key, t) * float(N - t)), N - 1)
        perm[t], perm[j] = perm[j], perm[t]
    return [u + 1 for u in perm[:n]]


def l_statistic(sample, w):
    """``(1/n) Σ c_j X_{j:n}`` of one sample; the input order is irrelevant."""
    x = np.sort(np.asarray(sample, dtype=np.float64), kind="stable")
    if x.size != w.n:
        raise DomainError(f"sample has {x.size} values but the weights expect n={w.n}")
    acc = 0.0
    for cj, xj in zip(w.c.tolist(), x.tolist()):
        acc = acc + cj * xj
    return acc / w.n


def _chunks(R, workers):
    workers = max(1, int(workers))
    bounds = np.linspace(0, R, workers + 1).astype(np.int64)
    return [(int(a), int(b)) for a, b in zip(bounds[:-1], bounds[1:]) if b > a]


def simulate_L(pop, w, R, seed, workers=1, backend=None):
    """Raw ``L_n`` values of replicates ``0 .. R-1`` in replicate order."""
    if R < 1:
        raise DomainError("R must be at least 1")
    if not 1 <= w.n < pop.N:
        raise DomainError(f"need 1 <= n < N, got n={w.n}, N={pop.N}")
    kernel = _backend.get_kernel(backend)
    out = np.empty(R)
    parts = _chunks(R, workers)
    if len(parts) == 1:
        out[:] = kernel(pop.values, w.c, seed, 0, R)
        return out
    with ThreadPoolExecutor(max_workers=len(parts)) as pool:
        futures = [(a, b, pool.submit(kernel, pop.values, w.c, seed, a, b)) for a, b in parts]
        for a, b, fut in futures:
            out[a:b] = fut.result()
    return out


@dataclass(frozen=True)
class SimulationPlan:
    R: int
    seed: int
    n: int
    mean_L: float
    sigma_tilde: float

    def __post_init__(self):
        if self.R < 1:
            raise DomainError("R must be at least 1")
        if self.n < 1:
            raise DomainError("n must be at least 1")
        if not self.sigma_tilde > 0:
            raise DegenerateStatisticError("σ̃_n must be positive to standardize")


class EmpiricalCdf:
    """Sorted realizations of ``S_n / σ̃_n`` with lower-order-statistic quantiles."""

    def __init__(self, values, seed=None, backend=None):
        vals = np.sort(np.asarray(values, dtype=np.float64))
        if vals.size < 1:
            raise DomainError("an empirical CDF needs at least one value")
        vals.setflags(write=False)
        self.sorted_values = vals
        self.R = int(vals.size)
        self.seed = seed
        self.backend = backend

    def __call__(self, x):
        return np.searchsorted(self.sorted_values, x, side="right") / self.R

    def quantile(self, q):
        return empirical_quantile(self, q)

    def mean(self):
        return math.fsum(self.sorted_values) / self.R

    def dump(self, path):
        """Raw realizations as little-endian float64 plus a ``.meta`` text sidecar."""
        path = str(path)
        self.sorted_values.astype("<f8").tofile(path)
        with open(path + ".meta", "w", encoding="utf-8") as fh:
            fh.write(f"seed = {self.seed}\n")
            fh.write(f"R = {self.R}\n")
            fh.write(f"generator = {rng.GENERATOR_VERSION}\n")
            fh.write("dtype = float64-le\n")
            fh.write("order = ascending\n")

    @classmethod
    def load(cls, path):
        raw = np.fromfile(str(path), dtype="<f8")
        return cls(raw)


def empirical_quantile(ecdf, q):
    """The ``ceil(q R)``-th smallest realization."""
    if not 0 < q < 1:
        raise DomainError(f"probability q={q} outside (0, 1)")
    k = max(1, math.ceil(q * ecdf.R))
    return float(ecdf.sorted_values[k - 1])


def simulate_cdf(pop, w, plan, workers=1, backend=None):
    """Empirical distribution of ``sqrt(n) (L_n - E L_n) / σ̃_n`` over ``plan.R`` replicates."""
    if plan.n != w.n:
        raise DomainError(f"plan is for n={plan.n} but the weights have n={w.n}")
    L = simulate_L(pop, w, plan.R, plan.seed, workers=workers, backend=backend)
    S = (L - plan.mean_L) * math.sqrt(w.n) / plan.sigma_tilde
    return EmpiricalCdf(S, seed=plan.seed, backend=backend or _backend.BACKEND)


