"""Estimation from data: pseudo-observations, empirical copula, break-point
detection on samples, and per-segment parametric fitting.

Fitting is deliberately light-weight moment matching: each family's
parameter is found by inverting the family's Spearman rho (computed by the
same quadrature used everywhere else) against the sample rho, and the
winning family minimizes an L2 grid distance between the empirical and the
fitted copula.  The Fréchet bounds and the product copula enter as
parameterless candidates so that exactly monotone or independent segments
resolve cleanly.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
from scipy.stats import rankdata, spearmanr

from .changepoint import CrossingReport, detect_sign_crossings
from .copulas import Copula, conditional_quantile, make_copula
from .dependence import spearman_rho
from .errors import DataError, ParameterError
from .marginals import EmpiricalMarginal
from .reference import Sample
from .regression import PiecewiseRegressionModel

MIN_SEGMENT_POINTS = 20
GOF_GRID_N = 32

#: parameter search ranges for Spearman-rho inversion, keyed by family and
#: by the sign of the target rho where the family covers both signs
_FIT_RANGES = {
    "clayton": {"+": (1e-3, 50.0)},
    "gumbel": {"+": (1.0 + 1e-9, 50.0)},
    "fgm": {"+": (0.0 + 1e-12, 1.0), "-": (-1.0, -1e-12)},
    "frank": {"+": (1e-6, 30.0), "-": (-30.0, -1e-6)},
    "plackett": {"+": (1.0 + 1e-6, 1e4), "-": (1e-4, 1.0 - 1e-6)},
}

DEFAULT_FIT_FAMILIES = ("product", "frechet-upper", "frechet-lower",
                        "clayton", "frank", "gumbel", "fgm", "plackett")


@dataclass(frozen=True)
class PseudoSample:
    """Rank-transformed sample with coordinates strictly inside (0, 1)."""

    u: np.ndarray
    v: np.ndarray

    @property
    def n(self) -> int:
        return self.u.size


def pseudo_observations(s: Sample) -> PseudoSample:
    """Coordinatewise midranks scaled by 1/(n+1)."""
    n = s.n
    return PseudoSample(u=rankdata(s.x, method="average") / (n + 1),
                        v=rankdata(s.y, method="average") / (n + 1))


class EmpiricalCopula(Copula):
    """Step-function estimator (1/n) * #{u_i <= u, v_i <= v}."""

    name = "empirical"
    smooth = False
    numerical = True

    def __init__(self, ps: PseudoSample):
        self.u = np.asarray(ps.u, dtype=float)
        self.v = np.asarray(ps.v, dtype=float)
        self.n = self.u.size

    def _cdf(self, u, v):
        shape = np.broadcast(u, v).shape
        uq, vq = (a.ravel() for a in np.broadcast_arrays(u, v))
        out = np.empty(uq.shape)
        step = max(1, 10_000_000 // max(self.n, 1))
        for i in range(0, uq.size, step):
            sl = slice(i, i + step)
            hits = (self.u[None, :] <= uq[sl, None]) & (self.v[None, :] <= vq[sl, None])
            out[sl] = hits.sum(axis=1) / self.n
        return out.reshape(shape)

    def cdf_grid(self, us, vs):
        # histogram-and-cumsum evaluation: O(n + grid^2) instead of O(n*grid^2)
        us = np.asarray(us, dtype=float)
        vs = np.asarray(vs, dtype=float)
        iu = np.searchsorted(us, self.u, side="left")
        iv = np.searchsorted(vs, self.v, side="left")
        counts = np.zeros((us.size + 1, vs.size + 1))
        np.add.at(counts, (iu, iv), 1.0)
        return counts[:-1, :-1].cumsum(axis=0).cumsum(axis=1) / self.n

    def diagonal(self, t):
        # delta(t) is the ECDF of max(u_i, v_i)
        m = getattr(self, "_sorted_max", None)
        if m is None:
            m = np.sort(np.maximum(self.u, self.v))
            self._sorted_max = m
        t = np.asarray(t, dtype=float)
        out = np.searchsorted(m, t, side="right") / self.n
        return float(out) if t.ndim == 0 else out

    def _du(self, u, v):
        # coarse central difference; the raw estimator is a step function
        h = max(0.05, 2.0 / np.sqrt(self.n))
        lo = np.maximum(u - h, 0.0)
        hi = np.minimum(u + h, 1.0)
        return (self._cdf(hi, v) - self._cdf(lo, v)) / (hi - lo)


# ---------------------------------------------------------------------------
# break-point detection on samples
# ---------------------------------------------------------------------------

def empirical_tolerance(n: int) -> float:
    """Default crossing tolerance for empirical diagonals, O(n^{-1/2})."""
    return 1.5 / np.sqrt(n)


def empirical_crossing_report(s: Sample, grid_n: int = 512,
                              tol: float | None = None,
                              persistence: int = 10) -> CrossingReport:
    """Crossings of the empirical diagonal with t^2."""
    if s.n < 50:
        warnings.warn(f"only {s.n} points; break-point detection is unreliable "
                      "below 50", stacklevel=2)
    tol = empirical_tolerance(s.n) if tol is None else tol
    ec = EmpiricalCopula(pseudo_observations(s))
    t = np.linspace(0.0, 1.0, grid_n)
    g_vals = ec.diagonal(t) - t * t
    g = lambda tt: ec.diagonal(tt) - tt * tt
    crossings, touches = detect_sign_crossings(t, g_vals, g, tol, persistence)
    return CrossingReport(crossings=crossings, touches=touches, grid_n=grid_n,
                          tolerance=tol, persistence=persistence)


def empirical_breakpoints(s: Sample, grid_n: int = 512,
                          tol: float | None = None,
                          persistence: int = 10) -> list[float]:
    """Break-point candidates in x-space via the empirical x-quantile."""
    report = empirical_crossing_report(s, grid_n, tol, persistence)
    return [float(np.quantile(s.x, c.t)) for c in report.crossings]


# ---------------------------------------------------------------------------
# segment fitting
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FitResult:
    family: str
    theta: float | None
    rho_hat: float
    gof_distance: float
    interval: tuple[float, float] | None
    copula: Copula


def _rho_of(family: str, theta: float) -> float:
    return spearman_rho(make_copula(family, theta))


def _invert_rho(family: str, rho_hat: float) -> float | None:
    """Parameter with family rho equal to rho_hat, or None if unattainable."""
    ranges = _FIT_RANGES[family]
    key = "+" if rho_hat >= 0 else "-"
    if key not in ranges:
        return None
    lo, hi = ranges[key]
    rlo, rhi = _rho_of(family, lo), _rho_of(family, hi)
    if not (min(rlo, rhi) <= rho_hat <= max(rlo, rhi)):
        return None
    increasing = rhi >= rlo
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if (_rho_of(family, mid) < rho_hat) == increasing:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _gof_distance(u, v, c: Copula) -> float:
    """Mean squared difference between empirical and fitted copula on a grid."""
    t = np.arange(1, GOF_GRID_N + 1) / (GOF_GRID_N + 1)
    emp = EmpiricalCopula(PseudoSample(u=u, v=v)).cdf_grid(t, t)
    return float(np.mean((emp - c.cdf_grid(t, t)) ** 2))


def fit_segment(u, v, families=DEFAULT_FIT_FAMILIES,
                interval: tuple[float, float] | None = None) -> FitResult:
    """Best moment-matched copula for one segment's pseudo-observations."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    if u.size < MIN_SEGMENT_POINTS:
        raise DataError(f"segment has {u.size} points; need >= {MIN_SEGMENT_POINTS}")
    rho_hat = float(spearmanr(u, v).statistic)

    best: FitResult | None = None
    for family in families:
        if family in _FIT_RANGES:
            theta = _invert_rho(family, rho_hat)
            if theta is None:
                continue
            c = make_copula(family, theta)
        else:
            theta = None
            try:
                c = make_copula(family)
            except ParameterError:
                raise DataError(f"unknown family {family!r}") from None
        gof = _gof_distance(u, v, c)
        if best is None or gof < best.gof_distance:
            best = FitResult(family=family, theta=theta, rho_hat=rho_hat,
                             gof_distance=gof, interval=interval, copula=c)
    if best is None:
        raise DataError("no candidate family attains the sample Spearman rho")
    return best


@dataclass(frozen=True)
class PiecewiseFit:
    model: PiecewiseRegressionModel
    segments: list[FitResult]
    break_points: list[float]


def fit_piecewise(s: Sample, candidates=None,
                  families=DEFAULT_FIT_FAMILIES) -> PiecewiseFit:
    """Split at break-points, rescale each segment's u by within-segment
    ranks (the empirical conditional marginal), fit each segment, and
    assemble a piecewise regression model with empirical marginals."""
    if s.n < 50:
        warnings.warn(f"only {s.n} points; piecewise fitting is unreliable "
                      "below 50", stacklevel=2)
    if candidates is None:
        candidates = empirical_breakpoints(s)
    bps = sorted(float(b) for b in candidates)

    v_global = rankdata(s.y, method="average") / (s.n + 1)
    edges = [-np.inf] + bps + [np.inf]
    fits: list[FitResult] = []
    for lo, hi in zip(edges, edges[1:]):
        mask = (s.x > lo) & (s.x <= hi)
        xs = s.x[mask]
        useg = rankdata(xs, method="average") / (xs.size + 1)
        interval = (float(max(lo, s.x.min())), float(min(hi, s.x.max())))
        fits.append(fit_segment(useg, v_global[mask], families, interval))

    model = PiecewiseRegressionModel(
        break_points=tuple(bps),
        segment_copulas=tuple(f.copula for f in fits),
        marginal_x=EmpiricalMarginal(s.x),
        marginal_y=EmpiricalMarginal(s.y),
    )
    return PiecewiseFit(model=model, segments=fits, break_points=bps)


# ---------------------------------------------------------------------------
# simulation through the conditional quantile
# ---------------------------------------------------------------------------

def simulate_copula(c: Copula, n: int, seed: int = 0) -> PseudoSample:
    """Draw (U, V) from a copula: U uniform, V by conditional-quantile
    inversion; exact for singular copulas."""
    rng = np.random.default_rng(seed)
    u = rng.uniform(size=n)
    p = rng.uniform(size=n)
    return PseudoSample(u=u, v=np.asarray(conditional_quantile(c, u, p)))
