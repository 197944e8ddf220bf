"""JSON serialization for copulas, marginals and piecewise models.

The on-disk document is versioned and canonical: keys are sorted and floats
round-trip exactly (repr-based), so serialize -> parse -> serialize is
byte-identical.
"""

from __future__ import annotations

import json

import numpy as np

from .copulas import Copula, PARAMETRIC_FAMILIES, make_copula
from .errors import DataError
from .gluing import GluedCopula
from .marginals import EmpiricalMarginal, Marginal, UniformMarginal
from .regression import PiecewiseRegressionModel

SCHEMA_VERSION = 1


def copula_to_dict(c: Copula) -> dict:
    if isinstance(c, GluedCopula):
        return {
            "family": "glued",
            "gluing_points": [float(t) for t in c.gluing_points],
            "pieces": [copula_to_dict(p) for p in c.pieces],
        }
    doc: dict = {"family": c.name}
    if c.name in PARAMETRIC_FAMILIES:
        doc["theta"] = float(c.theta)
    elif c.name not in ("product", "frechet-upper", "frechet-lower"):
        raise DataError(f"copula {c.name!r} is not serializable")
    return doc


def copula_from_dict(doc: dict) -> Copula:
    family = doc.get("family")
    if family == "glued":
        return GluedCopula([copula_from_dict(p) for p in doc["pieces"]],
                           doc["gluing_points"])
    return make_copula(family, doc.get("theta"))


def marginal_to_dict(m: Marginal) -> dict:
    if isinstance(m, UniformMarginal):
        return {"type": "uniform", "a": m.a, "b": m.b}
    if isinstance(m, EmpiricalMarginal):
        return {"type": "empirical", "knots": [float(x) for x in m.knots_x]}
    raise DataError(f"marginal {m!r} is not serializable")


def marginal_from_dict(doc: dict) -> Marginal:
    kind = doc.get("type")
    if kind == "uniform":
        return UniformMarginal(doc["a"], doc["b"])
    if kind == "empirical":
        return EmpiricalMarginal(doc["knots"])
    raise DataError(f"unknown marginal type {kind!r}")


def model_to_dict(pm: PiecewiseRegressionModel) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "break_points": [float(b) for b in pm.break_points],
        "segment_copulas": [copula_to_dict(c) for c in pm.segment_copulas],
        "marginal_x": marginal_to_dict(pm.marginal_x),
        "marginal_y": marginal_to_dict(pm.marginal_y),
    }


def model_from_dict(doc: dict) -> PiecewiseRegressionModel:
    version = doc.get("schema_version")
    if version != SCHEMA_VERSION:
        raise DataError(f"unsupported model schema version {version!r}")
    return PiecewiseRegressionModel(
        break_points=tuple(doc["break_points"]),
        segment_copulas=tuple(copula_from_dict(c) for c in doc["segment_copulas"]),
        marginal_x=marginal_from_dict(doc["marginal_x"]),
        marginal_y=marginal_from_dict(doc["marginal_y"]),
    )


def dumps_canonical(doc: dict) -> str:
    """Deterministic JSON text: sorted keys, no whitespace variance."""
    return json.dumps(_plain(doc), sort_keys=True, separators=(",", ":")) + "\n"


def _plain(obj):
    if isinstance(obj, dict):
        return {k: _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    return obj


def save_model(pm: PiecewiseRegressionModel, path: str) -> None:
    with open(path, "w") as fh:
        fh.write(dumps_canonical(model_to_dict(pm)))


def load_model(path: str) -> PiecewiseRegressionModel:
    with open(path) as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise DataError(f"invalid model JSON: {exc}") from exc
    return model_from_dict(doc)
