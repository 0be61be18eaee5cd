"""Explicit Hoeffding-decomposition kernels of finite population L-statistics.

For a sample of size ``n`` drawn without replacement from an ordered
population, the first three kernels of the orthogonal decomposition are
weighted sums over population spacings ``Δ_i``::

    g1(x_k)         = -1/n Σ_j Δ^0(c_j) Σ_i φ_k(i)      H_{N-2,n-1,i-1}(j-1) Δ_i
    g2(x_k,x_l)     = -1/n Σ_j Δ^1(c_j) Σ_i φ_{k,l}(i)  H_{N-4,n-2,i-2}(j-2) Δ_i
    g3(x_k,x_l,x_m) = -1/n Σ_j Δ^2(c_j) Σ_i θ_{k,l,m}(i) H_{N-6,n-3,i-3}(j-3) Δ_i

The inner j-sums do not depend on the kernel arguments and are computed once
per (population, weights); each kernel value is then a single sum over i.
All indices in this module's public functions are 1-based.
"""

from functools import cached_property
import math

import numpy as np

from .errors import DomainError
from .hypergeom import pmf_array
from .weights import difference


def falling(N, j):
    """Falling factorial ``N (N-1) ... (N-j+1)``."""
    out = 1
    for t in range(j):
        out *= N - t
    return out


def comb0(u, v):
    """Binomial coefficient that is 0 whenever ``v < 0``, ``u < 0`` or ``v > u``."""
    if u < 0 or v < 0 or v > u:
        return 0
    return math.comb(u, v)


def compensated_cumsum(x):
    """Prefix sums with Neumaier compensation; ``out[t] = Σ_{s<t} x[s]`` (length len(x)+1)."""
    out = np.empty(len(x) + 1)
    out[0] = 0.0
    s = 0.0
    comp = 0.0
    for t, v in enumerate(np.asarray(x, dtype=np.float64).tolist()):
        tot = s + v
        if abs(s) >= abs(v):
            comp += (s - tot) + v
        else:
            comp += (v - tot) + s
        s = tot
        out[t + 1] = s + comp
    return out


# ---------------------------------------------------------------------------
# coefficient functions (vectorized over i)

def phi1(N, k, i):
    """``φ_k(i)``: ``-i/N`` below k, ``1 - i/N`` from k on."""
    i = np.asarray(i, dtype=np.float64)
    return np.where(i < k, 0.0, 1.0) - i / N


def phi2(N, k, l, i):
    """``φ_{k,l}(i)`` of the quadratic kernel."""
    i = np.asarray(i, dtype=np.float64)
    den = falling(N - 1, 2)
    return np.where(
        i < k,
        i * (i - 1),
        np.where(i < l, -(i - 1) * (N - i - 1), (N - i - 1) * (N - i)),
    ) / den


def theta3(N, k, l, m, i):
    """``θ_{k,l,m}(i)`` of the cubic kernel."""
    i = np.asarray(i, dtype=np.float64)
    den = falling(N - 2, 3)
    return np.where(
        i < k,
        -i * (i - 1) * (i - 2),
        np.where(
            i < l,
            (i - 1) * (i - 2) * (N - i - 2),
            np.where(
                i < m,
                -(i - 2) * (N - i - 2) * (N - i - 1),
                (N - i - 2) * (N - i - 1) * (N - i),
            ),
        ),
    ) / den


def phi2_bound(N, k, l, i):
    """Product form ``(1{i>=k} - i/N)(1{i>=l} - i/N)`` dominating ``φ_{k,l}``."""
    i = np.asarray(i, dtype=np.float64)
    return ((i >= k) - i / N) * ((i >= l) - i / N)


def theta3_bound(N, k, l, m, i):
    i = np.asarray(i, dtype=np.float64)
    return ((i >= k) - i / N) * ((i >= l) - i / N) * ((i >= m) - i / N)


# ---------------------------------------------------------------------------
# conditional expectations of sample spacings

def expected_spacing_given(pop, n, fixed, r):
    """``E(𝚫_{r:n} | X_1 = x_{k_1}, ..., X_m = x_{k_m})`` in closed form.

    ``fixed`` is the strictly increasing 1-based index list ``k_1 < ... < k_m``
    (possibly empty) and ``r`` the spacing rank in ``0..n``; sample spacings
    use the boundary units ``X_{0:n} = x_1`` and ``X_{n+1:n} = x_N``.
    Coefficients are exact integers; each weight is rounded once.
    """
    N = pop.N
    fixed = [int(k) for k in fixed]
    m = len(fixed)
    if not 0 <= m <= n < N:
        raise DomainError(f"need 0 <= m <= n < N, got m={m}, n={n}, N={N}")
    if any(b <= a for a, b in zip(fixed, fixed[1:])) or (fixed and not 1 <= fixed[0] <= fixed[-1] <= N):
        raise DomainError(f"fixed indices must be strictly increasing in 1..{N}: {fixed}")
    if not 0 <= r <= n:
        raise DomainError(f"rank r={r} outside 0..{n}")
    delta = pop.spacings()
    bounds = [0, *fixed, N + 1]
    denom = math.comb(N - m, n - m)
    terms = []
    for s in range(1, m + 2):
        for i in range(bounds[s - 1], bounds[s]):
            w = comb0(i - s + 1, r - s + 1) * comb0(N - i - m + s - 1, n - r - m + s - 1)
            if w and delta[i]:
                terms.append((w / denom) * delta[i])
    return math.fsum(terms)


def order_stat_exceedance(N, n):
    """``P(X_{j:n} > x_i)`` for i = 1..N-1 (rows) and j = 1..n (columns).

    Under distinct ranks this is the probability that at most ``j-1`` of the
    sample falls among the first ``i`` units, i.e. a hypergeometric CDF.
    """
    i = np.arange(1, N)[:, None]
    r = np.arange(n)[None, :]
    pmf = pmf_array(N, n, i, r)
    cdf = np.cumsum(pmf, axis=1)
    return np.clip(cdf, 0.0, 1.0)


def expected_order_statistics(pop, n):
    """``E X_{j:n}`` for j = 1..n from the spacing representation."""
    N = pop.N
    if not 1 <= n < N:
        raise DomainError(f"need 1 <= n < N, got n={n}, N={N}")
    d = pop.spacings()[1:N]
    exceed = order_stat_exceedance(N, n)
    x0 = pop.values[0]
    return np.array([x0 + math.fsum(exceed[:, j] * d) for j in range(n)])


def expected_L(pop, w):
    """Exact ``E L_n`` (no sampling)."""
    n = w.n
    eo = expected_order_statistics(pop, n)
    return math.fsum(w.c * eo) / n


# ---------------------------------------------------------------------------
# the kernels

def _check_g1(N, n):
    if N < 2 or not 1 <= n <= N - 1:
        raise DomainError(f"kernel undefined at this (N,n): g1 needs 1 <= n <= N-1, got N={N}, n={n}")


def _check_g2(N, n):
    if N < 4 or not 2 <= n <= N - 2:
        raise DomainError(f"kernel undefined at this (N,n): g2 needs N >= 4 and 2 <= n <= N-2, got N={N}, n={n}")


def _check_g3(N, n):
    if N < 6 or not 3 <= n <= N - 3:
        raise DomainError(f"kernel undefined at this (N,n): g3 needs N >= 6 and 3 <= n <= N-3, got N={N}, n={n}")


def _mixed_weights(N, n, diff, deg):
    """``Σ_j diff_j H_{N-2d, n-d, i-d}(j-d)`` for i = 1..N-1, with ``d = deg``.

    ``diff`` holds ``Δ^{d-1}(c_j)`` for ``j = d..n``.
    """
    i = np.arange(1, N)[:, None]
    j = np.arange(deg, n + 1)[None, :]
    P = pmf_array(N - 2 * deg, n - deg, i - deg, j - deg)
    return np.array([math.fsum(row) for row in P * diff[None, :]])


class KernelSet:
    """Kernels g1, g2, g3 for a fixed population and weight scheme.

    ``g1`` is tabulated on first use (length N). ``g2`` is evaluated per pair or
    materialized with :meth:`g2_table`; ``g3`` is only evaluated per triple.
    The shared inner sums are computed lazily, so a KernelSet for ``n = 2``
    never touches the cubic kernel.
    """

    def __init__(self, pop, w):
        self.pop = pop
        self.w = w
        self.N = pop.N
        self.n = w.n
        _check_g1(self.N, self.n)
        self.delta = pop.spacings()[1:self.N]  # Δ_1..Δ_{N-1}
        self._i = np.arange(1, self.N, dtype=np.float64)

    # inner sums over j, times spacing ------------------------------------

    @cached_property
    def _b1(self):
        t = _mixed_weights(self.N, self.n, difference(self.w, 0), 1)
        return t * self.delta

    @cached_property
    def _b2(self):
        _check_g2(self.N, self.n)
        s = _mixed_weights(self.N, self.n, difference(self.w, 1), 2)
        return s * self.delta

    @cached_property
    def _b3(self):
        _check_g3(self.N, self.n)
        u = _mixed_weights(self.N, self.n, difference(self.w, 2), 3)
        return u * self.delta

    # g1 ------------------------------------------------------------------

    def g1_at(self, k):
        """Direct O(N) evaluation of ``g1(x_k)``."""
        if not 1 <= k <= self.N:
            raise DomainError(f"index k={k} outside 1..{self.N}")
        return -math.fsum(phi1(self.N, k, self._i) * self._b1) / self.n

    @cached_property
    def g1(self):
        """``g1(x_k)`` for k = 1..N, via compensated suffix sums (O(N))."""
        b = self._b1
        tail = compensated_cumsum(b[::-1])[::-1]  # tail[k-1] = Σ_{i>=k} b_i
        lin = math.fsum(self._i * b) / self.N
        out = -(tail[: self.N] - lin) / self.n
        out.setflags(write=False)
        return out

    # g2 ------------------------------------------------------------------

    def g2_at(self, k, l):
        """Direct O(N) evaluation of ``g2(x_k, x_l)``, ``k < l``."""
        b = self._b2
        if not 1 <= k < l <= self.N:
            raise DomainError(f"g2 needs 1 <= k < l <= {self.N}, got ({k}, {l})")
        return -math.fsum(phi2(self.N, k, l, self._i) * b) / self.n

    def g2_table(self):
        """Symmetric N x N array of ``g2`` with zero diagonal (O(N^2))."""
        b = self._b2
        N, i = self.N, self._i
        den = falling(N - 1, 2)
        A = compensated_cumsum(i * (i - 1) * b)  # A[t] = Σ_{i<=t}
        B = compensated_cumsum((i - 1) * (N - i - 1) * b)
        C = compensated_cumsum((N - i - 1) * (N - i) * b)
        k = np.arange(1, N + 1)[:, None]
        l = np.arange(1, N + 1)[None, :]
        # sums over 1 <= i < k, k <= i < l and l <= i <= N-1
        lower = A[k - 1]
        middle = B[l - 1] - B[k - 1]
        upper = C[N - 1] - C[l - 1]
        table = -(lower - middle + upper) / (den * self.n)
        table = np.triu(table, 1)
        return table + table.T

    # g3 ------------------------------------------------------------------

    def g3_at(self, k, l, m):
        """Direct O(N) evaluation of ``g3(x_k, x_l, x_m)``, ``k < l < m``."""
        b = self._b3
        if not 1 <= k < l < m <= self.N:
            raise DomainError(f"g3 needs 1 <= k < l < m <= {self.N}, got ({k}, {l}, {m})")
        return -math.fsum(theta3(self.N, k, l, m, self._i) * b) / self.n

    def g(self, *idx):
        """Kernel of arity ``len(idx)`` at arbitrary distinct 1-based indices."""
        idx = sorted(int(t) for t in idx)
        if len(set(idx)) != len(idx):
            raise DomainError(f"kernel arguments must be distinct units: {idx}")
        if len(idx) == 1:
            return self.g1_at(idx[0])
        if len(idx) == 2:
            return self.g2_at(*idx)
        if len(idx) == 3:
            return self.g3_at(*idx)
        raise DomainError("only kernels of degree 1..3 are available")

    def g3_moment(self, s=2, samples=10_000, seed=0, absolute=True):
        """Estimate ``E |g3(X_1,X_2,X_3)|^s`` by uniform sampling of triples.

        Returns ``(estimate, standard_error)``.
        """
        from . import rng

        N = self.N
        vals = np.empty(samples)
        for t in range(samples):
            key = rng.stream_key(seed, t)
            trip = []
            ctr = 0
            while len(trip) < 3:
                k = int(rng.uniform(key, ctr) * N) + 1
                ctr += 1
                if k not in trip:
                    trip.append(k)
            v = self.g3_at(*sorted(trip))
            vals[t] = abs(v) ** s if absolute else v ** s
        return float(vals.mean()), float(vals.std(ddof=1) / math.sqrt(samples))


def g1_table(pop, w):
    return KernelSet(pop, w).g1


def g2_at(pop, w, k, l):
    return KernelSet(pop, w).g2_at(k, l)


def g2_table(pop, w):
    return KernelSet(pop, w).g2_table()


def g3_at(pop, w, k, l, m):
    return KernelSet(pop, w).g3_at(k, l, m)
