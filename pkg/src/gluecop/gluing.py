"""Vertical-section gluing of copulas and its inverse decomposition.

Two copulas C1, C2 and a gluing point theta combine into

    C(u, v) = theta * C1(u/theta, v)                       on [0, theta]
    C(u, v) = (1-theta) * C2((u-theta)/(1-theta), v) + theta*v   on [theta, 1]

and the same rescaling extends to finitely many pieces on vertical slabs.
The u-derivative of the glued copula is the active piece's derivative at the
rescaled coordinate.  ``decompose`` inverts the construction at a given
gluing point; the round trip glue(decompose(C, t), t) == C holds for any
copula, while the pieces themselves are valid copulas exactly when the
vertical section at t is linear (C(t, v) = t*v for all v).
"""

from __future__ import annotations

import numpy as np

from .copulas import Copula
from .errors import DomainError


class GluedCopula(Copula):
    """Copula assembled from rescaled pieces on vertical slabs."""

    name = "glued"
    smooth = False

    def __init__(self, pieces, gluing_points):
        pieces = list(pieces)
        pts = np.asarray(list(gluing_points), dtype=float)
        if len(pieces) != pts.size + 1 or len(pieces) < 1:
            raise DomainError("need exactly one more piece than gluing points")
        if pts.size and (np.any(np.diff(pts) <= 0) or pts[0] <= 0 or pts[-1] >= 1):
            raise DomainError("gluing points must be strictly increasing in (0, 1)")
        self.pieces = pieces
        self.gluing_points = pts
        self._bounds = np.concatenate(([0.0], pts, [1.0]))
        self.numerical = any(p.numerical for p in pieces)

    def _slab_index(self, u):
        # Right-continuous assignment; u exactly at a gluing point belongs to
        # the right slab so that du uses the right piece (tie-break).
        return np.clip(np.searchsorted(self._bounds, u, side="right") - 1,
                       0, len(self.pieces) - 1)

    def _piecewise(self, u, v, eval_piece):
        shape = np.broadcast(u, v).shape
        u, v = (a.ravel() for a in np.broadcast_arrays(u, v))
        idx = self._slab_index(u)
        out = np.empty(u.shape)
        for i, piece in enumerate(self.pieces):
            m = idx == i
            if not np.any(m):
                continue
            lo, hi = self._bounds[i], self._bounds[i + 1]
            out[m] = eval_piece(piece, u[m], v[m], lo, hi)
        return out.reshape(shape)

    def _cdf(self, u, v):
        return self._piecewise(
            u, v,
            lambda p, uu, vv, lo, hi: (hi - lo) * p._cdf((uu - lo) / (hi - lo), vv) + lo * vv,
        )

    def _du(self, u, v):
        return self._piecewise(
            u, v,
            lambda p, uu, vv, lo, hi: p._du((uu - lo) / (hi - lo), vv),
        )

    def __repr__(self):
        pts = ", ".join(f"{t:g}" for t in self.gluing_points)
        return f"<GluedCopula [{pts}] of {len(self.pieces)} pieces>"


def glue(pieces, gluing_points) -> GluedCopula:
    """Glue copulas on vertical slabs separated by the given points."""
    return GluedCopula(pieces, gluing_points)


class _LeftPiece(Copula):
    """C1(u*, v) = C(theta*u*, v) / theta."""

    name = "decomposed-left"
    smooth = False

    def __init__(self, parent: Copula, theta: float):
        self.parent = parent
        self.theta = theta
        self.numerical = parent.numerical

    def _cdf(self, u, v):
        return self.parent._cdf(self.theta * u, v) / self.theta

    def _du(self, u, v):
        # chain rule: d/du* [C(theta u*, v)/theta] = C_u(theta u*, v)
        return self.parent._du(self.theta * u, v)


class _RightPiece(Copula):
    """C2(u*, v) = (C((1-theta)*u* + theta, v) - theta*v) / (1-theta)."""

    name = "decomposed-right"
    smooth = False

    def __init__(self, parent: Copula, theta: float):
        self.parent = parent
        self.theta = theta
        self.numerical = parent.numerical

    def _cdf(self, u, v):
        th = self.theta
        return (self.parent._cdf((1.0 - th) * u + th, v) - th * v) / (1.0 - th)

    def _du(self, u, v):
        th = self.theta
        return self.parent._du((1.0 - th) * u + th, v)


def decompose(c: Copula, theta: float) -> tuple[Copula, Copula]:
    """Invert the two-piece gluing construction at the given point.

    Gluing the returned pair back at ``theta`` reproduces ``c`` pointwise.
    The pieces pass the copula axioms iff the vertical section of ``c`` at
    ``theta`` is linear; validate with ``check_copula_axioms`` on demand.
    """
    if not 0.0 < theta < 1.0:
        raise DomainError("gluing point must lie in (0, 1)")
    return _LeftPiece(c, float(theta)), _RightPiece(c, float(theta))
