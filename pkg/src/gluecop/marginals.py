"""Marginal distribution models: CDF/quantile pairs with explicit support.

A marginal is anything exposing ``cdf``, ``quantile`` and ``support``.  The
quantile is always the generalized inverse ``q(p) = inf{x : cdf(x) >= p}``,
so ``cdf(quantile(p)) >= p`` and ``quantile(cdf(x)) <= x`` at continuity
points.  Truncation to an interval is supported for the piecewise-regression
machinery (conditioning the explanatory variable on a segment).
"""

from __future__ import annotations

import numpy as np

from .errors import DataError, DomainError


class Marginal:
    """Abstract CDF/quantile pair.

    Subclasses implement ``_cdf`` and ``_quantile`` on numpy arrays and set
    ``support = (lo, hi)`` (either endpoint may be infinite).
    """

    support: tuple[float, float] = (-np.inf, np.inf)

    def cdf(self, x):
        x = np.asarray(x, dtype=float)
        out = self._cdf(x)
        return float(out) if np.isscalar(x) or x.ndim == 0 else out

    def quantile(self, p):
        p = np.asarray(p, dtype=float)
        if np.any((p < 0) | (p > 1) | np.isnan(p)):
            raise DomainError("quantile argument must lie in [0, 1]")
        out = self._quantile(p)
        return float(out) if p.ndim == 0 else out

    def contains(self, x) -> bool:
        lo, hi = self.support
        return bool(np.all((np.asarray(x, dtype=float) >= lo) & (np.asarray(x, dtype=float) <= hi)))

    def require_in_support(self, x):
        if not self.contains(x):
            raise DomainError(f"value {x!r} outside marginal support {self.support}")

    def truncate(self, lo: float, hi: float) -> "TruncatedMarginal":
        return TruncatedMarginal(self, lo, hi)

    def _cdf(self, x):  # pragma: no cover - abstract
        raise NotImplementedError

    def _quantile(self, p):  # pragma: no cover - abstract
        raise NotImplementedError


class UniformMarginal(Marginal):
    """Uniform distribution on [a, b]."""

    def __init__(self, a: float = 0.0, b: float = 1.0):
        if not (np.isfinite(a) and np.isfinite(b) and b > a):
            raise DataError("uniform marginal needs finite a < b")
        self.a = float(a)
        self.b = float(b)
        self.support = (self.a, self.b)

    def _cdf(self, x):
        return np.clip((x - self.a) / (self.b - self.a), 0.0, 1.0)

    def _quantile(self, p):
        return self.a + p * (self.b - self.a)

    def __repr__(self):
        return f"UniformMarginal({self.a}, {self.b})"


class EmpiricalMarginal(Marginal):
    """Piecewise-linear CDF/quantile interpolating the order statistics.

    Knot probabilities are the plotting positions i/(n+1), which keep the
    mapped values strictly inside (0, 1); the CDF is extended linearly to
    0 at the sample minimum and 1 at the sample maximum.
    """

    def __init__(self, values):
        v = np.asarray(values, dtype=float).ravel()
        if v.size < 2 or not np.all(np.isfinite(v)):
            raise DataError("empirical marginal needs >= 2 finite values")
        self.knots_x = np.sort(v)
        n = v.size
        self.knots_p = np.arange(1, n + 1) / (n + 1)
        self.support = (float(self.knots_x[0]), float(self.knots_x[-1]))

    def _cdf(self, x):
        return np.interp(x, self.knots_x, self.knots_p,
                         left=0.0, right=1.0)

    def _quantile(self, p):
        # Below the first / above the last plotting position the quantile
        # clamps to the sample extremes (generalized-inverse convention).
        return np.interp(p, self.knots_p, self.knots_x)

    def __repr__(self):
        return f"EmpiricalMarginal(n={self.knots_x.size})"


class TruncatedMarginal(Marginal):
    """Base marginal conditioned on the interval (lo, hi]."""

    def __init__(self, base: Marginal, lo: float, hi: float):
        plo = float(base.cdf(lo)) if np.isfinite(lo) else 0.0
        phi = float(base.cdf(hi)) if np.isfinite(hi) else 1.0
        if not phi > plo:
            raise DataError("truncation interval carries zero probability mass")
        self.base = base
        self.lo, self.hi = float(lo), float(hi)
        self.plo, self.phi = plo, phi
        self.support = (max(lo, base.support[0]), min(hi, base.support[1]))

    def _cdf(self, x):
        p = (self.base.cdf(np.clip(x, self.lo, self.hi)) - self.plo) / (self.phi - self.plo)
        return np.clip(p, 0.0, 1.0)

    def _quantile(self, p):
        return self.base.quantile(self.plo + p * (self.phi - self.plo))

    def __repr__(self):
        return f"TruncatedMarginal({self.base!r}, {self.lo}, {self.hi})"
