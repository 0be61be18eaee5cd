"""One-term Edgeworth expansion for the standardized L-statistic.

The expansion approximates ``F_n(x) = P{S_n <= x σ̃_n}``, where
``S_n = sqrt(n) (L_n - E L_n)`` and ``σ̃_n^2 = Var S_n``, by::

    G_n(x) = Φ(x) - e Φ'''(x),   e = ((q - p) α + 3 κ) / (6 τ)

with ``p = n/N``, ``q = 1 - p``, ``τ^2 = N p q`` and the skewness-type
parameters α (from g1) and κ (from g1 and g2).
"""

from dataclasses import asdict, dataclass
import math
from statistics import NormalDist

import numpy as np

from .errors import CapacityError, DegenerateStatisticError, DomainError
from .kernels import KernelSet, expected_L

EXACT_LIMIT = 1_000_000
DEFAULT_MC_REPLICATES = 1_000_000
QUANTILE_BRACKET = (-10.0, 10.0)

_SQRT2 = math.sqrt(2.0)
_INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)
_erfc = np.vectorize(math.erfc, otypes=[np.float64])


def normal_cdf(x):
    """Standard normal distribution function via the complementary error function."""
    if np.ndim(x) == 0:
        return 0.5 * math.erfc(-float(x) / _SQRT2)
    return 0.5 * _erfc(-np.asarray(x, dtype=np.float64) / _SQRT2)


def normal_pdf(x):
    x = np.asarray(x, dtype=np.float64)
    out = _INV_SQRT_2PI * np.exp(-0.5 * x * x)
    return float(out) if out.ndim == 0 else out


def normal_cdf_d3(x):
    """Third derivative of Φ, ``(x^2 - 1) φ(x)``."""
    x = np.asarray(x, dtype=np.float64)
    out = (x * x - 1.0) * normal_pdf(x)
    return float(out) if np.ndim(out) == 0 else out


def normal_quantile(q):
    return NormalDist().inv_cdf(q)


# ---------------------------------------------------------------------------
# moments of the kernels

def linear_moments(g1):
    """``(σ1, α)`` with ``σ1^2 = E g1^2`` and ``α = E g1^3 / σ1^3``."""
    g1 = np.asarray(g1, dtype=np.float64)
    N = g1.size
    sigma1 = math.sqrt(math.fsum(g1 ** 2) / N)
    if sigma1 == 0.0:
        raise DegenerateStatisticError("σ1 = 0: the linear part vanishes, the expansion is undefined")
    alpha = math.fsum(g1 ** 3) / N / sigma1 ** 3
    return sigma1, alpha


def pair_moment(g1, g2):
    """``E g2(X_1,X_2) g1(X_1) g1(X_2)`` over an ordered pair of distinct units."""
    g1 = np.asarray(g1, dtype=np.float64)
    N = g1.size
    prod = np.triu(np.asarray(g2) * np.outer(g1, g1), 1)
    return 2.0 * math.fsum(prod.ravel()) / (N * (N - 1))


def kappa(g1, g2, tau, sigma1):
    """``κ = σ1^{-3} τ^2 E g2(X_1,X_2) g1(X_1) g1(X_2)``; ``g2`` is the full table."""
    if sigma1 <= 0:
        raise DegenerateStatisticError("σ1 = 0: κ is undefined")
    return tau ** 2 * pair_moment(g1, g2) / sigma1 ** 3


# ---------------------------------------------------------------------------
# variance of S_n

@dataclass(frozen=True)
class SigmaEstimate:
    """``σ̃_n^2`` with its provenance; ``std_error`` refers to the variance."""

    variance: float
    mode: str
    std_error: float = 0.0
    replicates: int = 0
    seed: int | None = None

    @property
    def sigma(self):
        return math.sqrt(self.variance)


def sigma_tilde(pop, w, mode="auto", replicates=DEFAULT_MC_REPLICATES, seed=0,
                workers=1, mean_L=None, g1=None):
    """Variance of ``S_n`` by enumeration, simulation or the linear approximation.

    ``mode`` is ``exact`` (all C(N,n) samples, at most 10^6), ``montecarlo``
    (``replicates >= 10^4`` seeded draws, centred at the exact ``E L_n``),
    ``linear`` (``n^2 σ1^2 (N-n)/(N-1)``, ignoring the higher-order parts) or
    ``auto`` (exact when feasible, otherwise montecarlo).
    """
    N, n = pop.N, w.n
    if mode == "auto":
        mode = "exact" if math.comb(N, n) <= EXACT_LIMIT else "montecarlo"
    if mode == "exact":
        from .oracle import variance_S_enum

        if math.comb(N, n) > EXACT_LIMIT:
            raise CapacityError(f"exact σ̃ needs C(N,n) <= {EXACT_LIMIT}, got C({N},{n}) = {math.comb(N, n)}")
        return SigmaEstimate(variance_S_enum(pop, w, limit=EXACT_LIMIT), "exact")
    if mode in ("montecarlo", "mc"):
        from .montecarlo import simulate_L

        if replicates < 10_000:
            raise DomainError(f"montecarlo σ̃ needs at least 10^4 replicates, got {replicates}")
        if mean_L is None:
            mean_L = expected_L(pop, w)
        L = simulate_L(pop, w, replicates, seed, workers=workers)
        sq = n * (L - mean_L) ** 2
        var = math.fsum(sq) / replicates
        se = float(np.std(sq, ddof=1)) / math.sqrt(replicates)
        return SigmaEstimate(var, "montecarlo", se, replicates, seed)
    if mode == "linear":
        if g1 is None:
            g1 = KernelSet(pop, w).g1
        s1sq = math.fsum(np.asarray(g1) ** 2) / N
        return SigmaEstimate(n * n * s1sq * (N - n) / (N - 1), "linear")
    raise DomainError(f"unknown sigma mode {mode!r}")


# ---------------------------------------------------------------------------
# the model

@dataclass(frozen=True)
class EdgeworthModel:
    N: int
    n: int
    p: float
    q: float
    tau: float
    n_star: int
    sigma1: float
    alpha: float
    kappa: float
    sigma_tilde: float
    e_coeff: float
    mean_L: float
    sigma_mode: str = "given"
    sigma_std_error: float = 0.0

    @classmethod
    def from_parameters(cls, N, n, alpha, kappa, sigma1=1.0, sigma_tilde=1.0, mean_L=0.0,
                        sigma_mode="given", sigma_std_error=0.0):
        if not 0 < n < N:
            raise DomainError(f"need 0 < n < N, got n={n}, N={N}")
        if sigma1 <= 0:
            raise DegenerateStatisticError("σ1 = 0: the expansion is undefined")
        if not sigma_tilde > 0:
            raise DegenerateStatisticError("σ̃_n = 0: the statistic is degenerate")
        p = n / N
        q = 1.0 - p
        tau = math.sqrt(N * p * q)
        e = ((q - p) * alpha + 3.0 * kappa) / (6.0 * tau)
        return cls(N, n, p, q, tau, min(n, N - n), sigma1, alpha, kappa, sigma_tilde, e, mean_L,
                   sigma_mode, sigma_std_error)

    @classmethod
    def with_correction(cls, e_coeff, N=100, n=10):
        """Model whose only relevant content is the correction coefficient."""
        base = cls.from_parameters(N, n, 0.0, 0.0)
        return cls(**{**asdict(base), "e_coeff": float(e_coeff)})

    def cdf(self, x):
        return edgeworth_cdf(self, x)

    def quantile(self, q):
        return edgeworth_quantile(self, q)

    def report(self):
        """Flat ``key = value`` text, one field per line."""
        lines = [f"{k} = {_fmt(v)}" for k, v in asdict(self).items()]
        return "\n".join(lines) + "\n"


def _fmt(v):
    if isinstance(v, float):
        return repr(v)
    return str(v)


def build_model(pop, w, sigma_mode="auto", replicates=DEFAULT_MC_REPLICATES, seed=0, workers=1,
                kernels=None):
    """Assemble all expansion parameters for ``(pop, w)``.

    κ needs the quadratic kernel; when it is undefined (``n < 2`` or
    ``n > N - 2``) κ is reported as 0, which is exact for ``n = 1`` where
    the statistic is linear.
    """
    N, n = pop.N, w.n
    if not 1 <= n < N:
        raise DomainError(f"need 1 <= n < N, got n={n}, N={N}")
    K = kernels or KernelSet(pop, w)
    g1 = K.g1
    sigma1, alpha = linear_moments(g1)
    p = n / N
    tau = math.sqrt(N * p * (1 - p))
    if n >= 2 and N >= 4 and n <= N - 2:
        kap = kappa(g1, K.g2_table(), tau, sigma1)
    elif n == 1:
        kap = 0.0
    else:
        raise DomainError(f"kernel undefined at this (N,n): κ needs 2 <= n <= N-2, got N={N}, n={n}")
    mL = expected_L(pop, w)
    est = sigma_tilde(pop, w, sigma_mode, replicates, seed, workers, mean_L=mL, g1=g1)
    if not est.variance > 0:
        raise DegenerateStatisticError("σ̃_n = 0: the statistic is degenerate")
    return EdgeworthModel.from_parameters(N, n, alpha, kap, sigma1, est.sigma, mL, est.mode,
                                          est.std_error)


# ---------------------------------------------------------------------------
# distribution function and quantiles

def edgeworth_cdf(m, x):
    """``G_n(x) = Φ(x) - e Φ'''(x)``, unclipped."""
    return normal_cdf(x) - m.e_coeff * normal_cdf_d3(x)


def edgeworth_cdf_clipped(m, x):
    return np.clip(edgeworth_cdf(m, x), 0.0, 1.0)


def edgeworth_quantile(m, q, tol=1e-12):
    """Root of ``G_n(x) = q`` in ``[-10, 10]``.

    When ``G_n`` is not monotone and several roots exist, the one closest to
    ``Φ^{-1}(q)`` is returned.
    """
    if not 0 < q < 1:
        raise DomainError(f"probability q={q} outside (0, 1)")
    lo, hi = QUANTILE_BRACKET
    grid = np.linspace(lo, hi, 4001)
    f = edgeworth_cdf(m, grid) - q
    sign_change = np.nonzero(np.signbit(f[:-1]) != np.signbit(f[1:]))[0]
    if sign_change.size == 0:
        raise DomainError(f"G_n - q has no sign change on [{lo}, {hi}] (e = {m.e_coeff})")
    target = normal_quantile(q)
    roots = [_bisect(m, q, grid[s], grid[s + 1], tol) for s in sign_change]
    return min(roots, key=lambda r: abs(r - target))


def _bisect(m, q, a, b, tol):
    fa = edgeworth_cdf(m, a) - q
    if fa == 0:
        return float(a)
    for _ in range(200):
        mid = 0.5 * (a + b)
        fm = edgeworth_cdf(m, mid) - q
        if fm == 0 or abs(fm) <= tol and (b - a) < 1e-13:
            return mid
        if (fm < 0) == (fa < 0):
            a, fa = mid, fm
        else:
            b = mid
        if b - a <= 4e-16 * max(1.0, abs(a)):
            break
    return 0.5 * (a + b)


# ---------------------------------------------------------------------------
# characteristic function diagnostics

def charfn_abs(g1, sigma1, t):
    """``|E exp(i t g1(X_1)/σ1)|`` for an array of frequencies."""
    z = np.asarray(g1, dtype=np.float64) / sigma1
    t = np.atleast_1d(np.asarray(t, dtype=np.float64))
    out = np.empty(t.size)
    chunk = max(1, 2_000_000 // max(z.size, 1))
    for s in range(0, t.size, chunk):
        arg = np.outer(t[s:s + chunk], z)
        out[s:s + chunk] = np.hypot(np.cos(arg).mean(axis=1), np.sin(arg).mean(axis=1))
    return out


def charfn_sup(g1, sigma1, band, grid_step=1e-3):
    """``sup_{lo < |t| < hi} |φ(t)|`` for ``φ(t) = E exp(i t g1(X_1)/σ1)``.

    Scans a grid on the band (``|φ|`` is even, so only ``t > 0`` is needed),
    then refines around the best grid point by golden-section search.
    """
    lo, hi = band
    if not 0 <= lo < hi:
        raise DomainError(f"band needs 0 <= lo < hi, got {band}")
    if grid_step <= 0:
        raise DomainError("grid_step must be positive")
    if sigma1 <= 0:
        raise DegenerateStatisticError("σ1 = 0: the characteristic function is degenerate")
    count = max(2, int(math.ceil((hi - lo) / grid_step)) + 1)
    grid = np.linspace(lo, hi, count)
    vals = charfn_abs(g1, sigma1, grid)
    best = int(np.argmax(vals))
    a = grid[max(best - 1, 0)]
    b = grid[min(best + 1, count - 1)]
    t_ref = _golden_max(lambda t: float(charfn_abs(g1, sigma1, t)[0]), a, b)
    return float(min(1.0, max(vals[best], charfn_abs(g1, sigma1, t_ref)[0])))


def _golden_max(f, a, b, iters=60):
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(iters):
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = f(d)
        if b - a < 1e-12:
            break
    return 0.5 * (a + b)


def charfn_diagnostics(g1, sigma1, tau, eps=0.1, B=10.0, grid_step=1e-3):
    """Suprema over the nonlattice band ``[eps, B]`` and the Cramér band ``[eps, τ]``."""
    out = {"nonlattice_sup": charfn_sup(g1, sigma1, (eps, B), grid_step)}
    if tau > eps:
        out["cramer_sup"] = charfn_sup(g1, sigma1, (eps, tau), grid_step)
    else:
        out["cramer_sup"] = float("nan")
    return out
