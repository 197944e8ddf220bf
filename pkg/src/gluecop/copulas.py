"""Bivariate copulas: parametric families, partial derivatives, conditionals.

Every copula exposes ``cdf(u, v)`` on the unit square plus ``du(u, v)``,
the partial derivative with respect to the first argument, which equals the
conditional distribution of V given U=u.  Families with a closed-form
derivative provide it; the rest fall back to central finite differences.
Inputs outside [0, 1] are rejected, never clamped — silent clamping hides
marginal-model bugs upstream.

Singular copulas (the Fréchet bounds and the tent-dependence copula) return
{0, 1} indicator values from ``du``; their conditional quantiles resolve to
the jump location through the infimum convention in ``conditional_quantile``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ParameterError
from .marginals import Marginal

FD_STEP = 1e-5          # finite-difference step for the u-derivative
BISECT_TOL = 1e-10      # conditional-quantile bisection tolerance in v
BISECT_MAX_ITER = 200


def _validate_unit(*arrays):
    for a in arrays:
        if np.any(np.isnan(a)) or np.any((a < 0.0) | (a > 1.0)):
            raise DomainError("copula arguments must lie in [0, 1] and be non-NaN")


class Copula:
    """Abstract bivariate copula C(u, v).

    Attributes
    ----------
    name : family tag used for serialization and reporting.
    smooth : False for copulas with kinks or singular components; steers the
        quadrature rule used by the dependence measures.
    numerical : True when the evaluator itself is built on quadrature or data,
        which loosens default classification tolerances.
    """

    name = "copula"
    smooth = True
    numerical = False

    # -- evaluation ---------------------------------------------------------

    def cdf(self, u, v):
        u = np.asarray(u, dtype=float)
        v = np.asarray(v, dtype=float)
        _validate_unit(u, v)
        out = self._cdf(*np.broadcast_arrays(u, v))
        if u.ndim == 0 and v.ndim == 0:
            return float(out)
        return out

    def du(self, u, v):
        """∂C/∂u, clamped to [0, 1]; the conditional CDF of V given U=u."""
        u = np.asarray(u, dtype=float)
        v = np.asarray(v, dtype=float)
        _validate_unit(u, v)
        ub, vb = np.broadcast_arrays(u, v)
        out = np.clip(self._du(ub, vb), 0.0, 1.0)
        if u.ndim == 0 and v.ndim == 0:
            return float(out)
        return out

    def diagonal(self, t):
        """Diagonal section δ(t) = C(t, t)."""
        return self.cdf(t, t)

    def cdf_grid(self, us, vs):
        """C evaluated on the tensor grid us × vs, shape (len(us), len(vs))."""
        U, V = np.meshgrid(np.asarray(us, float), np.asarray(vs, float), indexing="ij")
        return self.cdf(U, V)

    # -- implementation hooks ----------------------------------------------

    def _cdf(self, u, v):  # pragma: no cover - abstract
        raise NotImplementedError

    def _du(self, u, v):
        return _finite_difference_du(self._cdf, u, v)

    def __repr__(self):
        return f"<{type(self).__name__} {self.name}>"


def _finite_difference_du(f, u, v, h: float = FD_STEP):
    """Central difference in u, one-sided at the boundaries."""
    u = np.asarray(u, dtype=float)
    lo = np.maximum(u - h, 0.0)
    hi = np.minimum(u + h, 1.0)
    return (f(hi, v) - f(lo, v)) / (hi - lo)


# ---------------------------------------------------------------------------
# parameter-free copulas
# ---------------------------------------------------------------------------

class IndependenceCopula(Copula):
    """Product copula Π(u, v) = uv."""

    name = "product"

    def _cdf(self, u, v):
        return u * v

    def _du(self, u, v):
        return v + np.zeros_like(u)


class FrechetUpperCopula(Copula):
    """Fréchet–Hoeffding upper bound M(u, v) = min(u, v) (comonotone)."""

    name = "frechet-upper"
    smooth = False

    def _cdf(self, u, v):
        return np.minimum(u, v)

    def _du(self, u, v):
        # Point mass at v = u: the conditional CDF steps 0 -> 1 there.
        return np.where(v >= u, 1.0, 0.0)


class FrechetLowerCopula(Copula):
    """Fréchet–Hoeffding lower bound W(u, v) = max(u+v-1, 0) (countermonotone)."""

    name = "frechet-lower"
    smooth = False

    def _cdf(self, u, v):
        return np.maximum(u + v - 1.0, 0.0)

    def _du(self, u, v):
        return np.where(u + v >= 1.0, 1.0, 0.0)


# ---------------------------------------------------------------------------
# one-parameter families
# ---------------------------------------------------------------------------

class ClaytonCopula(Copula):
    """Clayton copula, strict positive-dependence branch (theta > 0)."""

    name = "clayton"

    def __init__(self, theta: float):
        if not (np.isfinite(theta) and theta > 0):
            raise ParameterError("Clayton requires theta > 0")
        self.theta = float(theta)

    def _cdf(self, u, v):
        th = self.theta
        with np.errstate(divide="ignore", over="ignore"):
            s = u ** (-th) + v ** (-th) - 1.0
            out = s ** (-1.0 / th)
        return np.where((u <= 0) | (v <= 0), 0.0, out)

    def _du(self, u, v):
        th = self.theta
        uu = np.clip(u, 1e-12, 1.0)
        with np.errstate(divide="ignore", over="ignore"):
            s = uu ** (-th) + np.clip(v, 1e-300, 1.0) ** (-th) - 1.0
            out = uu ** (-th - 1.0) * s ** (-1.0 / th - 1.0)
        return np.where(v <= 0, 0.0, np.where(v >= 1, 1.0, out))


class FrankCopula(Copula):
    """Frank copula; theta != 0, either sign of dependence."""

    name = "frank"

    def __init__(self, theta: float):
        if not (np.isfinite(theta) and theta != 0.0):
            raise ParameterError("Frank requires finite theta != 0")
        self.theta = float(theta)

    def _cdf(self, u, v):
        th = self.theta
        with np.errstate(divide="ignore", invalid="ignore"):
            num = np.expm1(-th * u) * np.expm1(-th * v)
            out = -np.log1p(num / np.expm1(-th)) / th
        # for |theta| large enough that doubles cannot resolve 1 + num/expm1,
        # the exact value is within 1e-14 of the matching Fréchet bound
        bound = np.minimum(u, v) if th > 0 else np.maximum(u + v - 1.0, 0.0)
        return np.where(np.isfinite(out), out, bound)

    def _du(self, u, v):
        th = self.theta
        a = np.expm1(-th * v)
        return np.exp(-th * u) * a / (np.expm1(-th) + np.expm1(-th * u) * a)


class GumbelCopula(Copula):
    """Gumbel–Hougaard copula, theta >= 1."""

    name = "gumbel"

    def __init__(self, theta: float):
        if not (np.isfinite(theta) and theta >= 1.0):
            raise ParameterError("Gumbel requires theta >= 1")
        self.theta = float(theta)

    def _cdf(self, u, v):
        th = self.theta
        uu = np.clip(u, 1e-300, 1.0)
        vv = np.clip(v, 1e-300, 1.0)
        with np.errstate(divide="ignore", over="ignore"):
            a = (-np.log(uu)) ** th + (-np.log(vv)) ** th
            out = np.exp(-a ** (1.0 / th))
        return np.where((u <= 0) | (v <= 0), 0.0, out)

    def _du(self, u, v):
        th = self.theta
        uu = np.clip(u, 1e-12, 1.0 - 1e-16)
        vv = np.clip(v, 1e-300, 1.0)
        with np.errstate(divide="ignore", over="ignore"):
            lu = -np.log(uu)
            a = lu ** th + (-np.log(vv)) ** th
            c = np.exp(-a ** (1.0 / th))
            out = c * a ** (1.0 / th - 1.0) * lu ** (th - 1.0) / uu
        return np.where(v <= 0, 0.0, np.where(v >= 1, 1.0, out))


class FGMCopula(Copula):
    """Farlie–Gumbel–Morgenstern copula, theta in [-1, 1]."""

    name = "fgm"

    def __init__(self, theta: float):
        if not (np.isfinite(theta) and -1.0 <= theta <= 1.0):
            raise ParameterError("FGM requires theta in [-1, 1]")
        self.theta = float(theta)

    def _cdf(self, u, v):
        return u * v * (1.0 + self.theta * (1.0 - u) * (1.0 - v))

    def _du(self, u, v):
        return v * (1.0 + self.theta * (1.0 - 2.0 * u) * (1.0 - v))


class PlackettCopula(Copula):
    """Plackett copula, theta > 0, theta != 1."""

    name = "plackett"

    def __init__(self, theta: float):
        if not (np.isfinite(theta) and theta > 0.0 and theta != 1.0):
            raise ParameterError("Plackett requires theta > 0, theta != 1")
        self.theta = float(theta)

    def _cdf(self, u, v):
        th = self.theta
        eta = th - 1.0
        s = 1.0 + eta * (u + v)
        d = np.sqrt(s * s - 4.0 * th * eta * u * v)
        return (s - d) / (2.0 * eta)

    def _du(self, u, v):
        th = self.theta
        eta = th - 1.0
        s = 1.0 + eta * (u + v)
        d = np.sqrt(s * s - 4.0 * th * eta * u * v)
        return 0.5 * (1.0 - (s - 2.0 * th * v) / d)


class Example1Copula(Copula):
    """Singular copula supported on two line segments (tent dependence).

    Mass theta sits uniformly on the segment from (0,0) to (theta,1) and mass
    1-theta on the segment from (theta,1) to (1,0); equivalently the gluing of
    M and W at theta.  V is a deterministic tent function of U.
    """

    name = "example1"
    smooth = False

    def __init__(self, theta: float):
        if not (np.isfinite(theta) and 0.0 < theta < 1.0):
            raise ParameterError("tent copula requires theta in (0, 1)")
        self.theta = float(theta)

    def _cdf(self, u, v):
        th = self.theta
        return np.select(
            [u <= th * v, u >= 1.0 - (1.0 - th) * v],
            [u, u + v - 1.0],
            default=th * v,
        )

    def _du(self, u, v):
        th = self.theta
        on = (u <= th * v) | (u >= 1.0 - (1.0 - th) * v)
        return np.where(on, 1.0, 0.0)


# ---------------------------------------------------------------------------
# conditional distributions and quantiles
# ---------------------------------------------------------------------------

def conditional_cdf(c: Copula, mx: Marginal, my: Marginal, x, y):
    """F_{Y|X}(y|x) = ∂C/∂u at (F_X(x), F_Y(y))."""
    mx.require_in_support(x)
    return c.du(mx.cdf(x), my.cdf(y))


def conditional_quantile(c: Copula, u, p):
    """Generalized inverse v = inf{v : ∂C/∂u (u, v) >= p}, by bisection.

    Monotone in v by 2-increasingness; jump discontinuities of singular
    copulas resolve to the jump location.
    """
    u = np.asarray(u, dtype=float)
    p = np.asarray(p, dtype=float)
    _validate_unit(u, p)
    u, p = np.broadcast_arrays(u, p)
    lo = np.zeros(u.shape)
    hi = np.ones(u.shape)
    # du(u, 0) = 0 <= p always holds for p > 0; p = 0 resolves to v = 0 via
    # the shrinking upper bracket since du(u, v) >= 0 everywhere.
    at0 = c.du(u, lo) >= p
    for _ in range(BISECT_MAX_ITER):
        if np.all(hi - lo <= BISECT_TOL):
            break
        mid = 0.5 * (lo + hi)
        ge = c.du(u, mid) >= p
        hi = np.where(ge, mid, hi)
        lo = np.where(ge, lo, mid)
    out = np.where(at0, 0.0, hi)
    if out.ndim == 0:
        return float(out)
    return out


# ---------------------------------------------------------------------------
# axiom checking
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AxiomReport:
    """Worst numerical violations of the copula axioms on an n×n grid."""

    grid_n: int
    grounded: float
    margins: float
    two_increasing: float
    frechet: float
    worst_location: tuple[float, float]

    @property
    def worst(self) -> float:
        return max(self.grounded, self.margins, self.two_increasing, self.frechet)

    def passed(self, tol: float) -> bool:
        return self.worst <= tol


def check_copula_axioms(c: Copula, n: int = 101) -> AxiomReport:
    """Evaluate groundedness, uniform margins, 2-increasingness and the
    Fréchet–Hoeffding bounds on an n×n grid; report worst violations."""
    if n < 2:
        raise DomainError("grid size must be >= 2")
    t = np.linspace(0.0, 1.0, n)
    M = c.cdf_grid(t, t)

    grounded = max(float(np.max(np.abs(M[0, :]))), float(np.max(np.abs(M[:, 0]))))
    margins = max(float(np.max(np.abs(M[-1, :] - t))), float(np.max(np.abs(M[:, -1] - t))))

    d2 = M[1:, 1:] - M[1:, :-1] - M[:-1, 1:] + M[:-1, :-1]
    two_inc = max(0.0, float(-np.min(d2)))
    i, j = np.unravel_index(np.argmin(d2), d2.shape)
    worst_loc = (float(t[i + 1]), float(t[j + 1]))

    U, V = np.meshgrid(t, t, indexing="ij")
    low = np.maximum(U + V - 1.0, 0.0)
    high = np.minimum(U, V)
    frechet = max(0.0, float(np.max(low - M)), float(np.max(M - high)))

    return AxiomReport(grid_n=n, grounded=grounded, margins=margins,
                       two_increasing=two_inc, frechet=frechet,
                       worst_location=worst_loc)


# family registry used by fitting and serialization -------------------------

FAMILY_CONSTRUCTORS = {
    "product": lambda: IndependenceCopula(),
    "frechet-upper": lambda: FrechetUpperCopula(),
    "frechet-lower": lambda: FrechetLowerCopula(),
    "clayton": ClaytonCopula,
    "frank": FrankCopula,
    "gumbel": GumbelCopula,
    "fgm": FGMCopula,
    "plackett": PlackettCopula,
    "example1": Example1Copula,
}

PARAMETRIC_FAMILIES = ("clayton", "frank", "gumbel", "fgm", "plackett", "example1")


def make_copula(family: str, theta: float | None = None) -> Copula:
    """Construct a built-in copula from its family tag."""
    if family not in FAMILY_CONSTRUCTORS:
        raise ParameterError(f"unknown copula family {family!r}")
    ctor = FAMILY_CONSTRUCTORS[family]
    if family in PARAMETRIC_FAMILIES:
        if theta is None:
            raise ParameterError(f"family {family!r} requires a parameter")
        return ctor(theta)
    if theta is not None:
        raise ParameterError(f"family {family!r} takes no parameter")
    return ctor()
