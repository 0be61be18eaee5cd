"""Ordered finite populations and the quantities derived from their spacings."""

from dataclasses import dataclass, field
import io
import math
import os

import numpy as np

from . import rng
from .errors import DomainError, PopulationParseError


@dataclass(frozen=True)
class Population:
    """A finite population ``x_1 <= ... <= x_N``.

    Values are sorted on construction; coincident values stay distinct units
    ordered by position. Indices in the public API are 1-based, matching the
    usual ``x_k`` notation.
    """

    values: np.ndarray
    N: int = field(init=False)

    def __post_init__(self):
        vals = np.sort(np.asarray(self.values, dtype=np.float64).ravel(), kind="stable")
        if vals.size < 2:
            raise DomainError("a population needs at least 2 values")
        if not np.all(np.isfinite(vals)):
            raise DomainError("population values must be finite")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "N", int(vals.size))

    def __len__(self):
        return self.N

    def padded(self):
        """Values with the boundary units ``x_0 = x_1`` and ``x_{N+1} = x_N``."""
        v = self.values
        return np.concatenate(([v[0]], v, [v[-1]]))

    def spacings(self):
        """Spacings ``Δ_i = x_{i+1} - x_i`` for ``i = 0..N`` (length N+1)."""
        return np.diff(self.padded())

    def mean(self):
        return math.fsum(self.values) / self.N

    def variance(self):
        """Central variance ``(1/N) Σ (x_k - mean)^2``."""
        mu = self.mean()
        return math.fsum((self.values - mu) ** 2) / self.N


def load_population(source):
    """Read a population from a path, a text/byte stream or raw bytes.

    The format is one decimal value per line. A single leading header line
    starting with ``#`` is skipped, as are blank lines.
    """
    if isinstance(source, (str, os.PathLike)):
        with open(source, "rb") as fh:
            data = fh.read()
    elif isinstance(source, (bytes, bytearray)):
        data = bytes(source)
    else:
        data = source.read()
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise PopulationParseError(f"not UTF-8 text ({exc.reason})") from None
    values = []
    for lineno, line in enumerate(io.StringIO(data), start=1):
        text = line.strip()
        if not text:
            continue
        if lineno == 1 and text.startswith("#"):
            continue
        try:
            x = float(text)
        except ValueError:
            raise PopulationParseError(f"not a number: {text!r}", line=lineno) from None
        if not math.isfinite(x):
            raise PopulationParseError(f"non-finite value: {text!r}", line=lineno)
        values.append(x)
    if len(values) < 2:
        raise DomainError(f"a population needs at least 2 values, got {len(values)}")
    return Population(np.array(values))


def logistic_quantile(u):
    """Inverse of the logistic distribution function ``1 / (1 + e^{-x})``."""
    u = np.asarray(u, dtype=np.float64)
    return np.log(u) - np.log1p(-u)


def simulate_logistic(N, seed):
    """Draw a logistic population of size ``N`` by inverse transform.

    The uniforms come from the counter-based stream keyed on ``seed``, so the
    result is bit-reproducible.
    """
    if N < 2:
        raise DomainError("N must be at least 2")
    u = rng.uniform_open_stream(rng.stream_key(seed, 0), N)
    return Population(logistic_quantile(u))


def moment(pop, s, absolute=False):
    """Raw population moment ``(1/N) Σ x^s`` (or of ``|x|^s``)."""
    x = pop.values
    if absolute:
        terms = np.abs(x) ** s
    elif float(s).is_integer():
        terms = x ** int(s)
    else:
        terms = x ** s
    return math.fsum(terms) / pop.N


def central_variance(pop):
    return pop.variance()


def ghm_at(pop, k):
    """The van Zwet functions G, H, M evaluated at ``x_k``.

    Returns ``(G(x_k), H(x_k), M(x_k))`` with

    * ``G(x_k) = Σ_{i<k} (i/N) Δ_i``
    * ``H(x_k) = Σ_{i>=k} (1 - i/N) Δ_i``
    * ``M(x_k) = Σ_{i<k} (i/N)(1 - i/N) Δ_i``

    where the sums run over ``1 <= i <= N-1``.
    """
    N = pop.N
    if not 1 <= k <= N:
        raise DomainError(f"index k={k} outside 1..{N}")
    d = pop.spacings()
    i = np.arange(1, N)
    frac = i / N
    di = d[1:N]
    lower = i < k
    G = math.fsum(frac[lower] * di[lower])
    H = math.fsum((1.0 - frac[~lower]) * di[~lower])
    M = math.fsum((frac * (1.0 - frac))[lower] * di[lower])
    return G, H, M


def cdf(pop, y):
    """Right-continuous distribution function ``(1/N) #{x_i <= y}``."""
    return np.searchsorted(pop.values, y, side="right") / pop.N
