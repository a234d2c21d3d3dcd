"""
Command-line tables for the SFS computations.

Every command writes one table (CSV or JSON) headed by the full run
specification, defaults included. Floats are written with 17 significant
digits and nothing time-dependent is recorded, so re-running a command
reproduces its output byte for byte.

    phasesfs statespace --n 4
    phasesfs sfs --n 5 --theta 1 --kmax 10
    phasesfs intweight --n 4 --stat pairwise --kmax 30
    phasesfs estimators --n 10 --theta 1
    phasesfs neutrality-cdf --n 8 --stat taj_D
    phasesfs simulate --n 8 --stat taj_D --reps 10000 --seed 1
"""

import argparse
import csv
import io
import json
import sys
from dataclasses import asdict, dataclass, field
from typing import List, Optional, Sequence

import numpy as np

from . import __version__
from .blockcounting import build_model
from .estimators import (
    ESTIMATORS,
    TESTS,
    UnknownName,
    blue_coefficients,
    classical_coefficients,
    estimator_report,
    integer_coefficients,
)
from .intweight import build_intweight_law
from .inversion import DEFAULT_H, GridTooCoarse, default_grid, invert_cdf, quantiles
from .linalg import SingularMatrix
from .sfs import iton_count_law, sfs_model
from .phasetype import pmf_table
from .simulate import SimConfig, simulate_sfs

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_NUMERICAL = 3

COMMANDS = ("statespace", "sfs", "intweight", "estimators", "neutrality-cdf", "simulate")
QUANTILE_LEVELS = (0.025, 0.975)


@dataclass
class RunSpec:
    command: str
    n: int
    theta: float = 1.0
    coeffs: Optional[List[float]] = None
    stat: Optional[str] = None
    kmax: int = 20
    grid_H: int = DEFAULT_H
    grid_eta: Optional[float] = None
    window: Optional[str] = "lanczos"
    reps: int = 10000
    seed: int = 0
    format: str = "csv"
    out: Optional[str] = None
    version: str = field(default=__version__)

    def validate(self):
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        if self.n < 2:
            raise ValueError("--n must be at least 2")
        if not self.theta > 0:
            raise ValueError("--theta must be positive")
        if self.kmax < 0:
            raise ValueError("--kmax must be nonnegative")
        if self.reps < 1:
            raise ValueError("--reps must be positive")
        if self.format not in ("csv", "json"):
            raise ValueError("--format must be csv or json")
        if self.coeffs is not None and self.stat is not None:
            raise ValueError("give either --coeffs or --stat, not both")
        if self.coeffs is not None and len(self.coeffs) != self.n - 1:
            raise ValueError(f"--coeffs needs n-1 = {self.n - 1} values")

    def metadata(self) -> dict:
        meta = asdict(self)
        meta.pop("out")
        return meta


@dataclass
class Table:
    columns: List[str]
    rows: List[list]
    extra: dict = field(default_factory=dict)


def _fmt(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return "%.17g" % float(value)
    return str(value)


def _jsonable(value):
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, np.ndarray)):
        return [_jsonable(v) for v in value]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        # round-trips exactly and keeps the output independent of repr changes
        return float("%.17g" % float(value))
    return value


def render(spec: RunSpec, table: Table) -> str:
    meta = spec.metadata()
    if spec.format == "json":
        doc = {
            "run": _jsonable(meta),
            "summary": _jsonable(table.extra),
            "columns": table.columns,
            "rows": _jsonable(table.rows),
        }
        return json.dumps(doc, indent=1, sort_keys=False) + "\n"
    buf = io.StringIO()
    for key, value in meta.items():
        buf.write(f"# {key}={json.dumps(_jsonable(value))}\n")
    for key, value in table.extra.items():
        buf.write(f"# {key}={json.dumps(_jsonable(value))}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(table.columns)
    for row in table.rows:
        writer.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def _coefficients(spec: RunSpec, sm=None):
    """Resolve --coeffs / --stat to (vector, label)."""
    if spec.coeffs is not None:
        return np.asarray(spec.coeffs, dtype=float), "custom"
    if spec.stat is None:
        raise ValueError("give --coeffs or --stat")
    if spec.stat.lower() == "blue":
        return blue_coefficients(sm).c, "blue"
    w = classical_coefficients(spec.stat, spec.n)
    return w.c, w.label


def cmd_statespace(spec: RunSpec) -> Table:
    model = build_model(spec.n)
    cols = ["state"] + [f"a_{j}" for j in range(1, spec.n)] + ["exit_rate", "total_rate"]
    rows = []
    for idx, state in enumerate(model.states):
        rows.append([idx + 1, *map(int, state), float(model.exit_rates[idx]), float(-model.T[idx, idx])])
    src, dst = np.nonzero(model.T - np.diag(np.diag(model.T)))
    transitions = [[int(i) + 1, int(j) + 1, float(model.T[i, j])] for i, j in zip(src, dst)]
    return Table(cols, rows, {"states": model.size, "transitions": transitions})


def cmd_sfs(spec: RunSpec) -> Table:
    sm = sfs_model(spec.n, spec.theta)
    cols = ["k"] + [f"xi_{i}" for i in range(1, spec.n)]
    probs = np.column_stack([pmf_table(iton_count_law(sm, i), spec.kmax) for i in range(1, spec.n)])
    rows = [[k, *probs[k]] for k in range(spec.kmax + 1)]
    return Table(cols, rows, {"expected_sfs": list(spec.theta / np.arange(1, spec.n))})


def cmd_intweight(spec: RunSpec) -> Table:
    sm = sfs_model(spec.n, spec.theta)
    if spec.coeffs is not None:
        c, label = np.asarray(spec.coeffs, dtype=float), "custom"
    elif spec.stat is not None:
        w = classical_coefficients(spec.stat, spec.n)
        c, label = integer_coefficients(w), w.label
    else:
        raise ValueError("give --coeffs or --stat")
    law = build_intweight_law(sm, c)
    pmf = law.pmf(spec.kmax)
    cdf = np.cumsum(pmf)
    rows = [[k, pmf[k], cdf[k]] for k in range(spec.kmax + 1)]
    gaps = [k for k in range(spec.kmax + 1) if pmf[k] <= 1e-14]
    return Table(["k", "pmf", "cdf"], rows,
                 {"label": label, "integer_coefficients": list(law.c), "mean": law.mean(), "zero_mass": gaps})


def cmd_estimators(spec: RunSpec) -> Table:
    sm = sfs_model(spec.n, spec.theta)
    cols = ["estimator", "unbiased", "variance"] + [f"c_{i}" for i in range(1, spec.n)]
    rows = []
    for name in ESTIMATORS + ("blue",):
        w = blue_coefficients(sm) if name == "blue" else classical_coefficients(name, spec.n)
        rep = estimator_report(sm, w)
        rows.append([name, rep.unbiased, rep.variance, *rep.c])
    return Table(cols, rows)


def cmd_neutrality_cdf(spec: RunSpec) -> Table:
    sm = sfs_model(spec.n, spec.theta)
    c, label = _coefficients(spec, sm)
    grid = default_grid(sm, c, H=spec.grid_H, eta=spec.grid_eta)
    table = invert_cdf(sm, c, grid, window=spec.window)
    q = quantiles(table, QUANTILE_LEVELS)
    rows = [[x, v, r] for x, v, r in zip(table.x, table.values, table.raw)]
    extra = {
        "label": label,
        "coefficients": list(c),
        "mean": table.mu,
        "eta": grid.eta,
        "step": grid.step,
        "quantiles": {str(p): v for p, v in zip(QUANTILE_LEVELS, q)},
    }
    return Table(["x", "cdf", "raw"], rows, extra)


def cmd_simulate(spec: RunSpec) -> Table:
    sm = sfs_model(spec.n, spec.theta)
    c = None
    if spec.coeffs is not None or spec.stat is not None:
        c, label = _coefficients(spec, sm)
    sample = simulate_sfs(SimConfig(spec.n, spec.theta, spec.reps, spec.seed), sm.model)
    cols = ["replicate"] + [f"xi_{i}" for i in range(1, spec.n)]
    if c is not None:
        cols.append("statistic")
        stat = sample.statistic(c)
    rows = []
    for r in range(spec.reps):
        row = [r + 1, *sample.sfs[r]]
        if c is not None:
            row.append(stat[r])
        rows.append(row)
    return Table(cols, rows)


DISPATCH = {
    "statespace": cmd_statespace,
    "sfs": cmd_sfs,
    "intweight": cmd_intweight,
    "estimators": cmd_estimators,
    "neutrality-cdf": cmd_neutrality_cdf,
    "simulate": cmd_simulate,
}


def _float_list(text):
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of numbers: {text!r}")


def _window(text):
    return None if text.lower() == "none" else text


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="phasesfs", description="Phase-type tables for the site frequency spectrum.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--n", type=int, required=True, help="sample size")
        p.add_argument("--theta", type=float, default=1.0, help="scaled mutation rate")
        p.add_argument("--coeffs", type=_float_list, help="comma-separated coefficients c_1..c_{n-1}")
        p.add_argument("--stat", help=f"named statistic: {', '.join(ESTIMATORS + tuple(TESTS))}, blue")
        p.add_argument("--kmax", type=int, default=20)
        p.add_argument("--grid-H", dest="grid_H", type=int, default=DEFAULT_H)
        p.add_argument("--grid-eta", dest="grid_eta", type=float)
        p.add_argument("--window", type=_window, default="lanczos", help="lanczos, fejer or none")
        p.add_argument("--reps", type=int, default=10000)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--out", help="output file (default stdout)")
    return parser


def run(spec: RunSpec) -> str:
    spec.validate()
    return render(spec, DISPATCH[spec.command](spec))


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    spec = RunSpec(**vars(args))
    try:
        text = run(spec)
    except (GridTooCoarse, SingularMatrix) as err:
        print(f"phasesfs: numerical failure: {err}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (ValueError, UnknownName, IndexError) as err:
        print(f"phasesfs: {err}", file=sys.stderr)
        return EXIT_INVALID
    if spec.out:
        with open(spec.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
