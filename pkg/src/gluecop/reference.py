"""Executable reference models: tent dependence and parabola-plus-noise.

Both serve as oracles for the rest of the package.  The tent model has
uniform margins, a singular copula (the gluing of the Fréchet bounds) and a
piecewise-linear regression curve known in closed form.  The parabola model
Y = (X-0.5)^2 + k*eps has a smooth copula only available through nested
quadrature and inversion of the response marginal; its regression curve is
the parabola itself.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import ndtr

from .copulas import Copula, Example1Copula
from .errors import DomainError, ParameterError
from .marginals import Marginal, UniformMarginal


@dataclass(frozen=True)
class Sample:
    """A bivariate sample; the common currency of the empirical machinery."""

    x: np.ndarray
    y: np.ndarray

    def __post_init__(self):
        x = np.asarray(self.x, dtype=float).ravel()
        y = np.asarray(self.y, dtype=float).ravel()
        if x.size != y.size or x.size < 2:
            raise DomainError("sample needs >= 2 (x, y) pairs of equal length")
        if not (np.all(np.isfinite(x)) and np.all(np.isfinite(y))):
            raise DomainError("sample values must be finite")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)

    @property
    def n(self) -> int:
        return self.x.size


# ---------------------------------------------------------------------------
# tent model
# ---------------------------------------------------------------------------

def example1_copula(theta: float) -> Copula:
    """Singular copula of the tent model (closed form, indicator du)."""
    return Example1Copula(theta)


def tent(x, theta: float):
    """The tent regression curve x/theta rising then (1-x)/(1-theta) falling."""
    x = np.asarray(x, dtype=float)
    out = np.where(x <= theta, x / theta, (1.0 - x) / (1.0 - theta))
    return float(out) if out.ndim == 0 else out


def simulate_example1(n: int, theta: float, seed: int) -> Sample:
    """Draw X uniform(0,1) and set Y = tent(X) exactly (singular model).

    Uses numpy's seeded PCG64 generator; reproducible for a fixed seed.
    """
    if n < 1:
        raise DomainError("n must be >= 1")
    if not 0.0 < theta < 1.0:
        raise ParameterError("theta must lie in (0, 1)")
    rng = np.random.default_rng(seed)
    x = rng.uniform(size=n)
    return Sample(x=x, y=tent(x, theta))


# ---------------------------------------------------------------------------
# parabola-plus-noise model
# ---------------------------------------------------------------------------

class Example4Model:
    """Y = (X - 0.5)^2 + k*eps with X uniform(0,1), eps standard normal.

    The response marginal is F_Y(y) = int_0^1 Phi((y - (r-0.5)^2)/k) dr,
    computed by Gauss-Legendre quadrature; its inverse is served from a
    cached monotone table refined by bisection on the true F_Y.
    """

    #: half-width of the response-marginal table beyond the parabola's range,
    #: in units of k; 6.5 sigma keeps the clamped tail mass below 1e-10
    TAIL_SIGMAS = 6.5
    TABLE_SIZE = 2048

    def __init__(self, k: float = 0.1, quad_nodes: int = 256):
        if not (np.isfinite(k) and k > 0):
            raise ParameterError("noise scale k must be positive")
        self.k = float(k)
        xg, wg = np.polynomial.legendre.leggauss(quad_nodes)
        self._r = 0.5 * (xg + 1.0)       # nodes on [0, 1]
        self._w = 0.5 * wg
        lo = -self.TAIL_SIGMAS * self.k
        hi = 0.25 + self.TAIL_SIGMAS * self.k
        self._ygrid = np.linspace(lo, hi, self.TABLE_SIZE)
        self._Fgrid = self.marginal_y_cdf(self._ygrid)

    # -- response marginal --------------------------------------------------

    def marginal_y_cdf(self, y):
        """F_Y(y) by quadrature over the uniform explanatory variable."""
        y = np.asarray(y, dtype=float)
        z = (y[..., None] - (self._r - 0.5) ** 2) / self.k
        out = ndtr(z) @ self._w
        return float(out) if y.ndim == 0 else out

    def marginal_y_quantile(self, p):
        """F_Y^{-1}(p): table lookup bracket, then bisection on the true F_Y.

        Probabilities beyond the table range clamp to its endpoints (the
        excluded tail mass is below 1e-10 by construction).
        """
        p = np.asarray(p, dtype=float)
        scalar = p.ndim == 0
        pf = np.atleast_1d(p).astype(float)
        pc = np.clip(pf, self._Fgrid[0], self._Fgrid[-1])
        idx = np.clip(np.searchsorted(self._Fgrid, pc), 1, self.TABLE_SIZE - 1)
        lo = self._ygrid[idx - 1].copy()
        hi = self._ygrid[idx].copy()
        for _ in range(40):
            mid = 0.5 * (lo + hi)
            ge = self.marginal_y_cdf(mid) >= pc
            hi = np.where(ge, mid, hi)
            lo = np.where(ge, lo, mid)
        out = 0.5 * (lo + hi)
        return float(out[0]) if scalar else out.reshape(p.shape)

    def marginal_y(self) -> Marginal:
        return _Example4YMarginal(self)

    def marginal_x(self) -> Marginal:
        return UniformMarginal(0.0, 1.0)

    # -- copula -------------------------------------------------------------

    def copula(self) -> "Example4Copula":
        return Example4Copula(self)

    def pieces(self) -> tuple["Example4Piece", "Example4Piece"]:
        """Closed-form gluing pieces at theta = 1/2 (left NQD, right PQD)."""
        return Example4Piece(self, side="left"), Example4Piece(self, side="right")


class _Example4YMarginal(Marginal):
    def __init__(self, model: Example4Model):
        self.model = model
        self.support = (float(model._ygrid[0]), float(model._ygrid[-1]))

    def _cdf(self, x):
        return np.clip(self.model.marginal_y_cdf(x), 0.0, 1.0)

    def _quantile(self, p):
        return self.model.marginal_y_quantile(p)

    def __repr__(self):
        return f"Example4YMarginal(k={self.model.k})"


class Example4Copula(Copula):
    """Copula of the parabola model: C(u,v) = int_0^u Phi((y_v-(r-.5)^2)/k) dr
    with y_v = F_Y^{-1}(v); du is the integrand at r = u."""

    name = "example4"
    smooth = True
    numerical = True

    def __init__(self, model: Example4Model):
        self.model = model

    def _yv(self, v):
        return self.model.marginal_y_quantile(v)

    def _cdf(self, u, v):
        m = self.model
        out = np.zeros(np.broadcast(u, v).shape)
        u, v = (a.ravel() for a in np.broadcast_arrays(u, v))
        flat = out.reshape(-1)
        interior = (u > 0) & (v > 0)
        if np.any(interior):
            ui, vi = u[interior], v[interior]
            yv = self._yv(vi)
            # rescale the unit-interval nodes to [0, u] per point
            r = 0.5 * ui[:, None] * (2.0 * m._r[None, :])
            z = (yv[:, None] - (r - 0.5) ** 2) / m.k
            flat[interior] = ui * (ndtr(z) @ m._w)
        # exact edges keep the uniform margins to machine precision
        flat[np.asarray(v >= 1.0)] = u[np.asarray(v >= 1.0)]
        flat[np.asarray(u >= 1.0) & (v < 1.0)] = v[np.asarray(u >= 1.0) & (v < 1.0)]
        return out

    def _du(self, u, v):
        m = self.model
        out = np.zeros(np.broadcast(u, v).shape)
        u, v = (a.ravel() for a in np.broadcast_arrays(u, v))
        flat = out.reshape(-1)
        pos = v > 0
        if np.any(pos):
            yv = self._yv(v[pos])
            flat[pos] = ndtr((yv - (u[pos] - 0.5) ** 2) / m.k)
        flat[np.asarray(v >= 1.0)] = 1.0
        return out


class Example4Piece(Copula):
    """Closed-form gluing pieces of the parabola copula at theta = 1/2.

    left:  C1(u,v) = 2 int_0^{u/2} Phi((y_v-(r-.5)^2)/k) dr,
           dC1/du = Phi((y_v - 0.25 (1-u)^2)/k)   (non-decreasing in u: NRD)
    right: C2(u,v) = 2 int_0^{(u+1)/2} Phi(...) dr - v,
           dC2/du = Phi((y_v - 0.25 u^2)/k)       (non-increasing in u: PRD)
    """

    smooth = True
    numerical = True

    def __init__(self, model: Example4Model, side: str):
        if side not in ("left", "right"):
            raise ParameterError("side must be 'left' or 'right'")
        self.model = model
        self.side = side
        self.name = f"example4-{side}"
        self._parent = Example4Copula(model)

    def _cdf(self, u, v):
        if self.side == "left":
            return 2.0 * self._parent._cdf(0.5 * u, np.asarray(v, float))
        return 2.0 * self._parent._cdf(0.5 * (u + 1.0), np.asarray(v, float)) - v

    def _du(self, u, v):
        m = self.model
        out = np.zeros(np.broadcast(u, v).shape)
        u, v = (a.ravel() for a in np.broadcast_arrays(u, v))
        flat = out.reshape(-1)
        pos = v > 0
        if np.any(pos):
            yv = m.marginal_y_quantile(v[pos])
            if self.side == "left":
                arg = yv - 0.25 * (1.0 - u[pos]) ** 2
            else:
                arg = yv - 0.25 * u[pos] ** 2
            flat[pos] = ndtr(arg / m.k)
        flat[np.asarray(v >= 1.0)] = 1.0
        return out


def simulate_example4(n: int, k: float = 0.1, seed: int = 0) -> Sample:
    """Draw the parabola model; k = 0 is allowed and gives the exact parabola."""
    if n < 1:
        raise DomainError("n must be >= 1")
    if k < 0 or not np.isfinite(k):
        raise ParameterError("noise scale k must be non-negative")
    rng = np.random.default_rng(seed)
    x = rng.uniform(size=n)
    eps = rng.standard_normal(size=n)
    return Sample(x=x, y=(x - 0.5) ** 2 + k * eps)
