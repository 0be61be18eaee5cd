"""Weight sequences of L-statistics."""

from dataclasses import dataclass, field
import csv
import math

import numpy as np

from .errors import DomainError, PopulationParseError

KINDS = ("constant", "gini", "trimmed", "center", "custom", "explicit")


@dataclass(frozen=True)
class WeightScheme:
    """Weights ``c_1..c_n`` of ``L_n = (1/n) Σ c_j X_{j:n}``.

    ``origin`` records how the weights were produced, e.g. ``("center",)`` or
    ``("trimmed", 0.1, 0.9)``; it is informational only.
    """

    c: np.ndarray
    origin: tuple = ("explicit",)
    n: int = field(init=False)

    def __post_init__(self):
        c = np.array(self.c, dtype=np.float64).ravel()
        if c.size < 1:
            raise DomainError("a weight scheme needs n >= 1")
        if not np.all(np.isfinite(c)):
            raise DomainError("weights must be finite")
        c.setflags(write=False)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "n", int(c.size))

    def difference(self, v):
        return difference(self, v)

    def describe(self):
        name, *params = self.origin
        if params:
            return f"{name}:" + ",".join(str(p) for p in params)
        return name


@dataclass(frozen=True)
class SmoothnessReport:
    a: float
    b: float
    c: float
    d: float

    def as_dict(self):
        return {"a": self.a, "b": self.b, "c": self.c, "d": self.d}


class TabulatedScore:
    """Score function given by a table of ``(u, J(u))``, linearly interpolated."""

    def __init__(self, u, J, name="custom"):
        u = np.asarray(u, dtype=np.float64)
        J = np.asarray(J, dtype=np.float64)
        if u.ndim != 1 or u.shape != J.shape or u.size < 2:
            raise DomainError("score table needs at least two (u, J) pairs")
        if np.any(u <= 0) or np.any(u >= 1):
            raise DomainError("score table abscissae must lie in (0, 1)")
        order = np.argsort(u, kind="stable")
        self.u = u[order]
        self.J = J[order]
        if np.any(np.diff(self.u) <= 0):
            raise DomainError("score table abscissae must be distinct")
        self.name = name

    def __call__(self, u):
        return np.interp(u, self.u, self.J)

    @classmethod
    def from_csv(cls, path):
        us, js = [], []
        with open(path, newline="", encoding="utf-8") as fh:
            for lineno, row in enumerate(csv.reader(fh), start=1):
                if not row or not "".join(row).strip() or row[0].lstrip().startswith("#"):
                    continue
                if len(row) != 2:
                    raise PopulationParseError("expected two columns u,J", line=lineno)
                try:
                    u, j = float(row[0]), float(row[1])
                except ValueError:
                    if not us:
                        continue  # header row
                    raise PopulationParseError(f"not numeric: {row!r}", line=lineno) from None
                us.append(u)
                js.append(j)
        return cls(us, js, name=str(path))


def _score(kind, params):
    if kind == "constant":
        return lambda u: np.ones_like(u)
    if kind == "gini":
        return lambda u: 2.0 * (2.0 * u - 1.0)
    if kind == "center":
        return lambda u: 6.0 * u * (1.0 - u)
    if kind == "trimmed":
        t1, t2 = params
        if not 0 < t1 < t2 < 1:
            raise DomainError(f"trimming parameters need 0 < t1 < t2 < 1, got ({t1}, {t2})")
        return lambda u: np.where((u > t1) & (u < t2), 1.0 / (t2 - t1), 0.0)
    raise DomainError(f"unknown score kind {kind!r}")


def weights_from_score(kind, n, *params, score=None):
    """Weights ``c_j = J(j/(n+1))`` for a named or tabulated score function.

    ``kind`` is one of ``constant``, ``gini``, ``trimmed`` (with ``t1, t2``),
    ``center`` or ``custom`` (pass a callable or :class:`TabulatedScore` as
    ``score``). Gini's mean difference carries the extra factor
    ``(n+1)/(n-1)``; no other kind is rescaled.
    """
    n = int(n)
    if n < 1:
        raise DomainError("n must be at least 1")
    u = np.arange(1, n + 1) / (n + 1)
    if kind == "custom":
        if score is None:
            raise DomainError("custom weights need a score function")
        c = np.asarray(score(u), dtype=np.float64)
        origin = ("custom", getattr(score, "name", "callable"))
    else:
        c = np.asarray(_score(kind, params)(u), dtype=np.float64)
        origin = (kind, *params)
        if kind == "gini":
            if n < 2:
                raise DomainError("Gini weights need n >= 2")
            c = (n + 1) * c / (n - 1)
    return WeightScheme(c, origin=origin)


def explicit_weights(c):
    return WeightScheme(c, origin=("explicit",))


def load_weights(path):
    """Explicit weights, one per line (a leading ``#`` header is allowed)."""
    values = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            text = line.strip()
            if not text or (lineno == 1 and text.startswith("#")):
                continue
            try:
                values.append(float(text))
            except ValueError:
                raise PopulationParseError(f"not a number: {text!r}", line=lineno) from None
    if not values:
        raise DomainError(f"no weights in {path}")
    return WeightScheme(values, origin=("file", str(path)))


def difference(w, v):
    """Unscaled forward differences ``Δ^v(c_j)`` for ``j = v+1..n``."""
    c = w.c if isinstance(w, WeightScheme) else np.asarray(w, dtype=np.float64)
    n = c.size
    if not 0 <= v <= n - 1:
        raise DomainError(f"difference order v={v} outside 0..{n - 1}")
    out = c.copy()
    for _ in range(v):
        out = out[1:] - out[:-1]
    return out


def smoothness_constants(w):
    """Realized constants ``(a, b, c, d)`` of the weight smoothness conditions.

    Order ``v`` contributes ``n^v max_j |Δ^v(c_j)|``; orders whose index
    range is empty (``v >= n``) contribute 0.
    """
    n = w.n
    vals = []
    for v in range(4):
        if v >= n:
            vals.append(0.0)
            continue
        vals.append(float(n ** v * np.max(np.abs(difference(w, v)))))
    return SmoothnessReport(*vals)


def parse_weights_spec(spec):
    """Parse a CLI weights spec ``kind[:p1,p2,...]`` into a factory of ``n``."""
    kind, _, rest = spec.partition(":")
    kind = kind.strip().lower()
    if kind == "custom":
        if not rest:
            raise DomainError("custom weights need a CSV path: custom:PATH")
        table = TabulatedScore.from_csv(rest)
        return lambda n: weights_from_score("custom", n, score=table)
    params = ()
    if rest:
        try:
            params = tuple(float(p) for p in rest.split(","))
        except ValueError:
            raise DomainError(f"bad weight parameters in {spec!r}") from None
    if kind == "trimmed":
        if len(params) != 2:
            raise DomainError("trimmed weights need two parameters: trimmed:t1,t2")
        _score(kind, params)
    elif kind in ("constant", "gini", "center"):
        if params:
            raise DomainError(f"{kind} weights take no parameters")
    else:
        raise DomainError(f"unknown weights kind {kind!r}")
    return lambda n: weights_from_score(kind, n, *params)


def mean_weight(w):
    return math.fsum(w.c) / w.n
