"""Command-line interface.

Subcommands: ``simulate`` (reference models to CSV), ``analyze`` (break-point
candidates from data, JSON report), ``fit`` (piecewise copula model, JSON
document), ``predict`` (regression curve CSV from a model document) and
``measures`` (dependence report for a family or a dataset).

Exit codes are a stable contract for scripting: 0 success, 1 usage error,
2 data error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import warnings

import numpy as np

from . import model_io
from .changepoint import pqd_nqd_prescreen
from .copulas import PARAMETRIC_FAMILIES, make_copula
from .dependence import (classify_quadrant, classify_regression_dependence,
                         schweizer_wolff_sigma, spearman_rho)
from .empirical import (DEFAULT_FIT_FAMILIES, EmpiricalCopula,
                        empirical_crossing_report, empirical_tolerance,
                        fit_piecewise, pseudo_observations)
from .errors import (DataError, DomainError, GluecopError, NumericalError,
                     ParameterError)
from .reference import Sample, simulate_example1, simulate_example4
from .regression import piecewise_regression
from .gluing import GluedCopula

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_NUMERICAL = 3

REPORT_SCHEMA_VERSION = 1


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to exit code 2
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _usage_error(message: str) -> "SystemExit":
    print(f"gluecop: error: {message}", file=sys.stderr)
    return SystemExit(EXIT_USAGE)


# ---------------------------------------------------------------------------
# CSV helpers
# ---------------------------------------------------------------------------

def read_xy_csv(path: str) -> Sample:
    """Read the first two numeric columns; header auto-detected."""
    try:
        fh = open(path, newline="")
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc}") from exc
    xs, ys, bad_lines = [], [], []
    with fh:
        reader = csv.reader(fh)
        for lineno, row in enumerate(reader, start=1):
            if not row or all(not cell.strip() for cell in row):
                continue
            if len(row) < 2:
                bad_lines.append(lineno)
                continue
            try:
                x, y = float(row[0]), float(row[1])
            except ValueError:
                if lineno == 1:
                    continue  # header row
                bad_lines.append(lineno)
                continue
            xs.append(x)
            ys.append(y)
    if bad_lines:
        raise DataError(f"unparseable CSV rows at lines: "
                        f"{', '.join(map(str, bad_lines))}")
    if len(xs) < 2:
        raise DataError("need at least 2 numeric (x, y) rows")
    return Sample(x=np.array(xs), y=np.array(ys))


def _write_csv(path: str | None, header: list[str], rows) -> None:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([repr(float(v)) for v in row])
    text = buf.getvalue()
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w") as out:
            out.write(text)


def _emit_json(doc: dict, path: str | None) -> None:
    text = model_io.dumps_canonical(doc)
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w") as out:
            out.write(text)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_simulate(args) -> int:
    if args.n < 1:
        raise _usage_error("--n must be >= 1")
    if args.model == "example1":
        sample = simulate_example1(args.n, args.theta, args.seed)
    else:
        sample = simulate_example4(args.n, args.k, args.seed)
    _write_csv(args.out, ["x", "y"], zip(sample.x, sample.y))
    return EXIT_OK


def cmd_analyze(args) -> int:
    sample = read_xy_csv(args.input)
    warning = None
    if sample.n < 50:
        warning = f"only {sample.n} points; detection is unreliable below 50"
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        report = empirical_crossing_report(sample, grid_n=args.grid_n,
                                           tol=args.tol,
                                           persistence=args.persistence)
    ps = pseudo_observations(sample)
    ec = EmpiricalCopula(ps)
    from scipy.stats import spearmanr
    doc = {
        "schema_version": REPORT_SCHEMA_VERSION,
        "n": sample.n,
        "rho_hat": float(spearmanr(sample.x, sample.y).statistic),
        "sigma_hat": schweizer_wolff_sigma(ec),
        "mixed_dependence": pqd_nqd_prescreen(
            ec, tol=report.tolerance),
        "crossings": report.to_dict()["crossings"],
        "candidates": [float(np.quantile(sample.x, c.t))
                       for c in report.crossings],
    }
    if warning:
        doc["warning"] = warning
    _emit_json(doc, args.out)
    return EXIT_OK


def _parse_float_list(text: str, what: str) -> list[float]:
    try:
        return [float(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise _usage_error(f"invalid {what} list: {text!r}")


def cmd_fit(args) -> int:
    sample = read_xy_csv(args.input)
    candidates = None
    if args.breakpoints is not None:
        candidates = _parse_float_list(args.breakpoints, "break-point")
    families = DEFAULT_FIT_FAMILIES
    if args.families is not None:
        families = tuple(tok.strip() for tok in args.families.split(",") if tok.strip())
        unknown = [f for f in families if f not in DEFAULT_FIT_FAMILIES]
        if unknown:
            raise _usage_error(f"unknown families: {', '.join(unknown)}")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        result = fit_piecewise(sample, candidates=candidates, families=families)
    model_io.save_model(result.model, args.out_model)
    print(f"{'segment':>8} {'interval':>24} {'family':>14} {'theta':>10} "
          f"{'rho_hat':>8} {'gof':>10}")
    for i, fit in enumerate(result.segments):
        lo, hi = fit.interval
        theta = "-" if fit.theta is None else f"{fit.theta:.4g}"
        print(f"{i:>8} {f'({lo:.4g}, {hi:.4g}]':>24} {fit.family:>14} "
              f"{theta:>10} {fit.rho_hat:>8.3f} {fit.gof_distance:>10.3e}")
    return EXIT_OK


def cmd_predict(args) -> int:
    pm = model_io.load_model(args.model)
    lo, hi = pm.marginal_x.support
    x_min = lo if args.x_min is None else args.x_min
    x_max = hi if args.x_max is None else args.x_max
    if not x_max > x_min:
        raise _usage_error("--x-max must exceed --x-min")
    xs = np.linspace(x_min, x_max, args.num)
    inside = (xs >= lo) & (xs <= hi)
    if not np.all(inside):
        if args.strict:
            raise DataError("x grid extends outside the model support "
                            f"[{lo:g}, {hi:g}]")
        print(f"gluecop: warning: {int(np.sum(~inside))} grid points outside "
              f"model support emitted as NaN", file=sys.stderr)
    mu = np.full(xs.shape, np.nan)
    if np.any(inside):
        mu[inside] = piecewise_regression(pm, xs[inside], statistic=args.statistic)
    _write_csv(args.out, ["x", "mu"], zip(xs, mu))
    return EXIT_OK


def cmd_measures(args) -> int:
    if (args.input is None) == (args.family is None):
        raise _usage_error("provide either a dataset or --family, not both")
    if args.family is not None:
        try:
            c = make_copula(args.family, args.theta)
        except ParameterError as exc:
            raise _usage_error(str(exc))
        grid_n, tol = 64, None
    else:
        sample = read_xy_csv(args.input)
        c = EmpiricalCopula(pseudo_observations(sample))
        grid_n, tol = 16, 2.0 * empirical_tolerance(sample.n)
    doc = {
        "schema_version": REPORT_SCHEMA_VERSION,
        "rho": spearman_rho(c),
        "sigma": schweizer_wolff_sigma(c),
        "quadrant_class": classify_quadrant(c, grid_n=grid_n, tol=tol).value,
        "regression_class": classify_regression_dependence(
            c, grid_n=grid_n, tol=tol).value,
    }
    _emit_json(doc, args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def build_parser() -> _Parser:
    parser = _Parser(prog="gluecop",
                     description="Copula gluing, dependence diagnostics and "
                                 "piecewise-monotone copula regression.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="simulate a reference model to CSV")
    p.add_argument("model", choices=["example1", "example4"])
    p.add_argument("--theta", type=float, default=0.5,
                   help="tent-model gluing point (example1)")
    p.add_argument("--k", type=float, default=0.1,
                   help="noise scale (example4)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None, help="output CSV path (default stdout)")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("analyze", help="break-point candidate report from data")
    p.add_argument("input", help="two-column CSV")
    p.add_argument("--grid-n", type=int, default=512)
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--persistence", type=int, default=10)
    p.add_argument("--out", default=None, help="output JSON path (default stdout)")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("fit", help="fit a piecewise copula regression model")
    p.add_argument("input", help="two-column CSV")
    p.add_argument("--breakpoints", default=None,
                   help="comma-separated break-points in x-space "
                        "(default: auto-detect)")
    p.add_argument("--families", default=None,
                   help="comma-separated candidate family names")
    p.add_argument("--out-model", required=True, help="output model JSON path")
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("predict", help="evaluate a fitted regression curve")
    p.add_argument("model", help="model JSON document")
    p.add_argument("--x-min", type=float, default=None)
    p.add_argument("--x-max", type=float, default=None)
    p.add_argument("--num", type=int, default=101)
    p.add_argument("--statistic", choices=["median", "mean"], default="median")
    p.add_argument("--strict", action="store_true",
                   help="fail instead of emitting NaN outside the support")
    p.add_argument("--out", default=None, help="output CSV path (default stdout)")
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("measures", help="dependence report for a family or data")
    p.add_argument("input", nargs="?", default=None, help="two-column CSV")
    p.add_argument("--family", default=None,
                   help="built-in copula family tag")
    p.add_argument("--theta", type=float, default=None,
                   help="family parameter, where required")
    p.add_argument("--out", default=None, help="output JSON path (default stdout)")
    p.set_defaults(func=cmd_measures)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SystemExit:
        raise
    except (DataError,) as exc:
        print(f"gluecop: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except NumericalError as exc:
        print(f"gluecop: numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (ParameterError, DomainError) as exc:
        print(f"gluecop: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GluecopError as exc:  # pragma: no cover - safety net
        print(f"gluecop: error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
