"""Command-line front end.

Data goes to standard output (or ``--output``); diagnostics go to standard
error. Exit codes: 0 success, 1 usage error, 2 non-convergence, 3 failed
verification.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass

from . import checks, density
from .volume import DEFAULT_MAX_TERMS, DEFAULT_REL_TOL, ConvergenceError, MilnorSeriesParams, ideal_regular_simplex_volume

EXIT_OK, EXIT_USAGE, EXIT_NONCONVERGENCE, EXIT_VERIFY = 0, 1, 2, 3

TABLE_COLUMNS = ("dim", "volume", "vol_err", "v0", "q_n", "threshold", "classical", "generalized", "ratio", "label")
VOLUME_COLUMNS = ("dim", "volume", "vol_err", "terms_used", "converged")
SWEEP_COLUMNS = ("x", "V", "delta")
VERIFY_COLUMNS = ("check", "status", "detail")


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class OutputSpec:
    format: str = "csv"
    precision: int = 6
    destination: str | None = None

    def __post_init__(self):
        if self.format not in ("csv", "json", "markdown"):
            raise UsageError(f"unknown format {self.format!r}")
        if not 1 <= self.precision <= 15:
            raise UsageError(f"precision must lie in [1, 15], got {self.precision}")

    def cell(self, value) -> str:
        if isinstance(value, bool):
            return "true" if value else "false"
        if isinstance(value, float):
            return f"{value:.{self.precision}f}"
        return str(value)

    def json_value(self, value):
        if isinstance(value, float):
            return float(self.cell(value))
        return value


def render(rows: list[dict], columns, out: OutputSpec, single: bool = False) -> str:
    if out.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(columns)
        for row in rows:
            w.writerow([out.cell(row[c]) for c in columns])
        return buf.getvalue()
    if out.format == "json":
        records = [{c: out.json_value(row[c]) for c in columns} for row in rows]
        payload = records[0] if single and len(records) == 1 else records
        return json.dumps(payload, indent=2) + "\n"
    lines = ["| " + " | ".join(columns) + " |", "|" + "|".join("---" for _ in columns) + "|"]
    for row in rows:
        lines.append("| " + " | ".join(out.cell(row[c]) for c in columns) + " |")
    return "\n".join(lines) + "\n"


def emit(text: str, out: OutputSpec) -> None:
    if out.destination:
        with open(out.destination, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def report_row(rep: density.DensityReport) -> dict:
    return {
        "dim": rep.dim,
        "volume": rep.simplex_volume,
        "vol_err": rep.volume_uncertainty,
        "v0": rep.v0,
        "q_n": rep.q,
        "threshold": rep.threshold,
        "classical": rep.classical,
        "generalized": rep.generalized,
        "ratio": rep.ratio,
        "label": rep.optimal.value,
    }


def _dim(n: int) -> int:
    if n < 2:
        raise UsageError(f"--dim must be >= 2, got {n}")
    return n


def cmd_volume(n: int, rel_tol: float, max_terms: int, out: OutputSpec) -> int:
    vol, state = ideal_regular_simplex_volume(MilnorSeriesParams(_dim(n), rel_tol, max_terms))
    row = {"dim": n, "volume": vol, "vol_err": state.uncertainty, "terms_used": state.terms_used, "converged": state.converged}
    emit(render([row], VOLUME_COLUMNS, out, single=True), out)
    if not state.converged:
        print(f"volume series not converged after {state.terms_used} terms", file=sys.stderr)
        return EXIT_NONCONVERGENCE
    return EXIT_OK


def cmd_density(n: int, rel_tol: float, max_terms: int, out: OutputSpec) -> int:
    rep = density.density_report(_dim(n), rel_tol, max_terms)
    emit(render([report_row(rep)], TABLE_COLUMNS, out, single=True), out)
    return EXIT_OK


def cmd_table(dims: range, rel_tol: float, max_terms: int, out: OutputSpec) -> int:
    rows, status = [], EXIT_OK
    for n in dims:
        try:
            rows.append(report_row(density.density_report(_dim(n), rel_tol, max_terms)))
        except ConvergenceError as exc:
            print(f"n={n}: {exc}", file=sys.stderr)
            status = EXIT_NONCONVERGENCE
            break
    emit(render(rows, TABLE_COLUMNS, out), out)
    return status


def cmd_sweep(n: int, samples: int, rel_tol: float, max_terms: int, out: OutputSpec) -> int:
    if samples < 2:
        raise UsageError(f"--samples must be >= 2, got {samples}")
    rows = [{"x": s.x, "V": s.volume, "delta": s.delta} for s in density.density_sweep(_dim(n), samples, rel_tol, max_terms)]
    emit(render(rows, SWEEP_COLUMNS, out), out)
    return EXIT_OK


def cmd_verify(out: OutputSpec) -> int:
    results = checks.run_checks()
    rows = [{"check": r.name, "status": "pass" if r.passed else "fail", "detail": r.detail} for r in results]
    emit(render(rows, VERIFY_COLUMNS, out), out)
    failed = [r.name for r in results if not r.passed]
    if failed:
        print("failed checks: " + ", ".join(failed), file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_dims(text: str) -> range:
    try:
        lo, hi = (int(part) for part in text.split(".."))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected A..B, got {text!r}") from None
    if lo > hi:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return range(lo, hi + 1)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", default="csv", choices=("csv", "json", "markdown"))
    common.add_argument("--precision", type=int, default=6)
    common.add_argument("--output", metavar="PATH")
    series = argparse.ArgumentParser(add_help=False)
    series.add_argument("--rel-tol", type=float, default=DEFAULT_REL_TOL)
    series.add_argument("--max-terms", type=int, default=DEFAULT_MAX_TERMS)

    parser = _Parser(prog="horopack", description="Horoball packing densities of ideal regular simplices.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    p = sub.add_parser("volume", parents=[common, series], help="ideal regular simplex volume")
    p.add_argument("--dim", type=int, required=True)
    p = sub.add_parser("density", parents=[common, series], help="classical and generalized densities")
    p.add_argument("--dim", type=int, required=True)
    p = sub.add_parser("table", parents=[common, series], help="density report per dimension")
    p.add_argument("--dims", type=parse_dims, required=True)
    p = sub.add_parser("sweep", parents=[common, series], help="volume and density over the tangency offset")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--samples", type=int, default=101)
    sub.add_parser("verify", parents=[common], help="run the self-verification suite")
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:  # usage errors and --help
        return int(exc.code or 0)
    try:
        out = OutputSpec(args.format, args.precision, args.output)
        if args.command == "volume":
            return cmd_volume(args.dim, args.rel_tol, args.max_terms, out)
        if args.command == "density":
            return cmd_density(args.dim, args.rel_tol, args.max_terms, out)
        if args.command == "table":
            return cmd_table(args.dims, args.rel_tol, args.max_terms, out)
        if args.command == "sweep":
            return cmd_sweep(args.dim, args.samples, args.rel_tol, args.max_terms, out)
        return cmd_verify(out)
    except UsageError as exc:
        print(f"horopack: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConvergenceError as exc:
        print(f"horopack: {exc}", file=sys.stderr)
        return EXIT_NONCONVERGENCE
    except ValueError as exc:
        print(f"horopack: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
