"""Dependence measures and quadrant/regression-dependence classification.

Spearman's rho is 12 * double-integral of C minus 3; the Schweizer–Wolff
sigma is 12 times the L1 distance between C and the product copula.  Both
are computed by deterministic tensor-product quadrature: Gauss–Legendre for
smooth copulas, composite midpoint for copulas with kinks or singular parts
(Gauss nodes straddling a kink degrade accuracy, and sigma's absolute value
makes the integrand non-smooth anyway).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .copulas import Copula
from .errors import DomainError

GAUSS_NODES_DEFAULT = 64      # per axis, smooth integrands
MIDPOINT_NODES_DEFAULT = 512  # per axis, kinked integrands


class QuadrantClass(str, Enum):
    PQD = "PQD"
    NQD = "NQD"
    NEITHER = "NEITHER"
    INDEPENDENT_LIKE = "INDEPENDENT-LIKE"


class RegressionClass(str, Enum):
    PRD = "PRD"
    NRD = "NRD"
    NEITHER = "NEITHER"
    CONSTANT = "CONSTANT"


def _default_tol(c: Copula) -> float:
    return 1e-4 if c.numerical else 1e-6


def _quadrature_nodes(c: Copula, quad_n: int | None):
    """(nodes, weights) on [0, 1] matched to the copula's smoothness."""
    if quad_n is not None and quad_n < 8:
        raise DomainError("quadrature needs at least 8 nodes per axis")
    if c.smooth:
        n = quad_n or GAUSS_NODES_DEFAULT
        x, w = np.polynomial.legendre.leggauss(n)
        return 0.5 * (x + 1.0), 0.5 * w
    n = quad_n or MIDPOINT_NODES_DEFAULT
    nodes = (np.arange(n) + 0.5) / n
    return nodes, np.full(n, 1.0 / n)


def spearman_rho(c: Copula, quad_n: int | None = None) -> float:
    """Spearman's concordance measure 12 ∬ C du dv − 3, clamped to [-1, 1]."""
    t, w = _quadrature_nodes(c, quad_n)
    integral = float(w @ c.cdf_grid(t, t) @ w)
    return float(np.clip(12.0 * integral - 3.0, -1.0, 1.0))


def schweizer_wolff_sigma(c: Copula, quad_n: int | None = None) -> float:
    """Schweizer–Wolff dependence measure 12 ∬ |C − uv| du dv, in [0, 1]."""
    t, w = _quadrature_nodes(c, quad_n)
    diff = np.abs(c.cdf_grid(t, t) - np.outer(t, t))
    return float(np.clip(12.0 * float(w @ diff @ w), 0.0, 1.0))


def classify_quadrant(c: Copula, grid_n: int = 64, tol: float | None = None) -> QuadrantClass:
    """Classify PQD/NQD by the sign of C − Π on an interior grid."""
    if grid_n < 8:
        raise DomainError("grid_n must be >= 8")
    tol = _default_tol(c) if tol is None else tol
    t = np.arange(1, grid_n + 1) / (grid_n + 1)
    s = c.cdf_grid(t, t) - np.outer(t, t)
    smax, smin = float(np.max(s)), float(np.min(s))
    if abs(smax) <= tol and abs(smin) <= tol:
        return QuadrantClass.INDEPENDENT_LIKE
    if smin >= -tol:
        return QuadrantClass.PQD
    if smax <= tol:
        return QuadrantClass.NQD
    return QuadrantClass.NEITHER


def classify_regression_dependence(c: Copula, grid_n: int = 64,
                                   tol: float | None = None) -> RegressionClass:
    """Classify PRD/NRD by monotonicity of u -> ∂C/∂u (u, v) per grid column.

    PRD corresponds to the derivative non-increasing in u for every v (the
    conditional CDF shifting right as u grows); the criterion holds for
    almost all u, so isolated grid artifacts below tol are ignored.
    """
    if grid_n < 8:
        raise DomainError("grid_n must be >= 8")
    tol = _default_tol(c) if tol is None else tol
    t = np.arange(1, grid_n + 1) / (grid_n + 1)
    U, V = np.meshgrid(t, t, indexing="ij")
    D = c.du(U, V)
    steps = np.diff(D, axis=0)  # adjacent-pair differences along u
    max_step, min_step = float(np.max(steps)), float(np.min(steps))
    if max_step <= tol and min_step >= -tol:
        return RegressionClass.CONSTANT
    if max_step <= tol:
        return RegressionClass.PRD
    if min_step >= -tol:
        return RegressionClass.NRD
    return RegressionClass.NEITHER


@dataclass(frozen=True)
class DependenceReport:
    rho: float
    sigma: float
    quadrant_class: QuadrantClass
    regression_class: RegressionClass
    grid_n: int
    tolerance: float

    def to_dict(self) -> dict:
        return {
            "rho": self.rho,
            "sigma": self.sigma,
            "quadrant_class": self.quadrant_class.value,
            "regression_class": self.regression_class.value,
            "grid_n": self.grid_n,
            "tolerance": self.tolerance,
        }


def dependence_report(c: Copula, grid_n: int = 64, quad_n: int | None = None,
                      tol: float | None = None) -> DependenceReport:
    """Compute rho, sigma and both dependence classifications in one pass."""
    tol = _default_tol(c) if tol is None else tol
    return DependenceReport(
        rho=spearman_rho(c, quad_n),
        sigma=schweizer_wolff_sigma(c, quad_n),
        quadrant_class=classify_quadrant(c, grid_n, tol),
        regression_class=classify_regression_dependence(c, grid_n, tol),
        grid_n=grid_n,
        tolerance=tol,
    )
