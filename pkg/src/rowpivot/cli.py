"""Command-line front end.

Exit codes: 0 success, 1 parse or validation error, 2 invalid
configuration, 3 verification mismatch.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, TextIO

from .builders import ParseError, build_rips, parse_explicit_filtration, parse_lower_distance_matrix, parse_point_cloud
from .complex import Filtration, InvalidFiltrationError
from .matrix import build_boundary_matrix
from .pairing import PairingError, oracle_pairs
from .reduction import (
    ALL_STRATEGIES,
    InvalidStrategyError,
    Optimization,
    Orientation,
    Strategy,
    reduce_columns,
    reduce_rows,
    run_strategy,
    verify_certificate,
)

EXIT_OK, EXIT_INPUT, EXIT_CONFIG, EXIT_MISMATCH = 0, 1, 2, 3
FORMATS = ("flt", "ldm", "pts")


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    input: str
    format: Optional[str] = None
    strategy: str = Orientation.ROW_B.value
    optim: str = Optimization.COMPRESS.value
    max_dim: int = 1
    threshold: float = math.inf
    output: Optional[str] = None
    stats_output: Optional[str] = None
    emit_stats: bool = False
    values: bool = False
    verify: bool = False
    certificate: bool = False
    strategy_cap: int = 200
    oracle_cap: int = 40
    resolved: Strategy = field(init=False, repr=False)

    def __post_init__(self):
        try:
            self.resolved = Strategy(self.strategy, self.optim)
        except InvalidStrategyError as exc:
            raise ConfigError(str(exc)) from None
        if self.format is None:
            suffix = Path(self.input).suffix.lstrip(".")
            self.format = suffix if suffix in FORMATS else "flt"
        if self.format not in FORMATS:
            raise ConfigError(f"unknown format {self.format!r}")
        if self.max_dim < 0:
            raise ConfigError("--max-dim must be non-negative")
        if not self.threshold >= 0:
            raise ConfigError("--threshold must be non-negative")


def load_filtration(cfg: RunConfig) -> Filtration:
    text = sys.stdin.read() if cfg.input == "-" else Path(cfg.input).read_text()
    if cfg.format == "flt":
        return parse_explicit_filtration(text)
    dm = parse_lower_distance_matrix(text) if cfg.format == "ldm" else parse_point_cloud(text)
    return build_rips(dm, cfg.max_dim, cfg.threshold)


@dataclass
class VerifyReport:
    lines: list[str] = field(default_factory=list)
    failure: Optional[str] = None

    def note(self, line: str) -> None:
        self.lines.append(line)

    def fail(self, message: str) -> None:
        if self.failure is None:
            self.failure = message
        self.lines.append("FAIL " + message)

    @property
    def ok(self) -> bool:
        return self.failure is None


def _first_difference(a: set, b: set) -> str:
    diff = sorted(a ^ b)
    p = diff[0]
    side = "only in first" if p in a else "only in second"
    return f"({p[0]}, {p[1]}) {side}"


def verify_filtration(f: Filtration, strategy_cap: int = 200, oracle_cap: int = 40) -> VerifyReport:
    """Cross-check every strategy, the rank oracle, certificates and counter dualities."""
    report = VerifyReport()
    m = len(f)
    runs = {s: run_strategy(f, s) for s in ALL_STRATEGIES}
    reference = runs[ALL_STRATEGIES[0]]
    ref_pairs = {p.indices for p in reference.pairs}

    if m <= strategy_cap:
        for s, run in runs.items():
            got = {p.indices for p in run.pairs}
            if got != ref_pairs:
                report.fail(f"strategy {s} disagrees with {reference.strategy}: {_first_difference(got, ref_pairs)}")
            elif run.essential != reference.essential:
                report.fail(f"strategy {s} reports different essential births")
        if report.ok:
            report.note(f"strategies agree: {len(runs)} strategies, {len(ref_pairs)} pairs, "
                        f"{len(reference.essential)} essential")
    else:
        report.note(f"strategy cross-check skipped: m = {m} exceeds cap {strategy_cap}")

    D = build_boundary_matrix(f)
    if m <= oracle_cap:
        expected = oracle_pairs(D)
        if expected != ref_pairs:
            report.fail(f"oracle disagrees: {_first_difference(ref_pairs, expected)}")
        else:
            report.note(f"oracle agrees: {len(expected)} pairs")
    else:
        report.note(f"oracle skipped: m = {m} exceeds cap {oracle_cap}")

    rows = reduce_rows(D)
    cols = reduce_columns(D)
    for name, res in (("row", rows), ("column", cols)):
        problem = verify_certificate(D, res.reduced, res.certificate)
        if problem:
            report.fail(f"{name} certificate: {problem}")
    if report.ok:
        report.note("certificates verified")

    mirror = reduce_columns(D.anti_transpose(), certificate=False)
    a, b = rows.stats, mirror.stats
    if (a.additions, a.symbol_flips) != (b.additions, b.symbol_flips):
        report.fail(f"anti-transpose duality: additions {a.additions} vs {b.additions}, "
                    f"symbol_flips {a.symbol_flips} vs {b.symbol_flips}")
    else:
        report.note(f"anti-transpose duality: additions {a.additions} = {b.additions}, "
                    f"symbol_flips {a.symbol_flips} = {b.symbol_flips}")

    compress_rows = runs[Strategy(Orientation.ROW_B, Optimization.COMPRESS)].stats.rows_processed
    clear_cols = runs[Strategy(Orientation.COL_COB, Optimization.CLEAR)].stats.cols_processed
    if compress_rows != clear_cols:
        report.fail(f"duality counters: compress rows_processed {compress_rows} != clear cols_processed {clear_cols}")
    else:
        report.note(f"duality counters: compress rows_processed {compress_rows} = clear cols_processed {clear_cols}")
    return report


def _open_out(path: Optional[str]) -> TextIO:
    return sys.stdout if path in (None, "-") else open(path, "w")


def cmd_reduce(cfg: RunConfig) -> int:
    f = load_filtration(cfg)
    if cfg.values and f.values is None:
        raise ConfigError("--values needs a graded filtration")
    run = run_strategy(f, cfg.resolved)
    out = _open_out(cfg.output)
    try:
        out.write(run.barcode.to_text(values=cfg.values))
        if cfg.emit_stats and cfg.stats_output is None:
            out.write(json.dumps(run.record()) + "\n")
    finally:
        if out is not sys.stdout:
            out.close()
    if cfg.emit_stats and cfg.stats_output is not None:
        Path(cfg.stats_output).write_text(json.dumps(run.record()) + "\n")

    status = EXIT_OK
    if cfg.certificate:
        D = build_boundary_matrix(f)
        target = D.anti_transpose() if cfg.resolved.orientation.on_coboundary else D
        res = (reduce_rows if cfg.resolved.orientation.by_rows else reduce_columns)(target)
        problem = verify_certificate(target, res.reduced, res.certificate)
        if problem:
            print(f"certificate mismatch: {problem}", file=sys.stderr)
            status = EXIT_MISMATCH
        else:
            print("certificate verified", file=sys.stderr)
    if cfg.verify:
        report = verify_filtration(f, cfg.strategy_cap, cfg.oracle_cap)
        for line in report.lines:
            print(line, file=sys.stderr)
        if not report.ok:
            status = EXIT_MISMATCH
    return status


def cmd_verify(cfg: RunConfig) -> int:
    f = load_filtration(cfg)
    report = verify_filtration(f, cfg.strategy_cap, cfg.oracle_cap)
    out = _open_out(cfg.output)
    try:
        for line in report.lines:
            out.write(line + "\n")
        out.write(("OK" if report.ok else "MISMATCH") + "\n")
    finally:
        if out is not sys.stdout:
            out.close()
    if not report.ok:
        print(report.failure, file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rowpivot", description="Persistence barcodes by row and column pivot reduction over GF(2).")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", required=True, help="input file, '-' for stdin")
    common.add_argument("--format", choices=FORMATS, help="input format (default: from file extension, else flt)")
    common.add_argument("--max-dim", type=int, default=1, help="maximal simplex dimension for Rips inputs")
    common.add_argument("--threshold", type=float, default=math.inf, help="Rips distance threshold")
    common.add_argument("--output", help="output path (default: stdout)")
    common.add_argument("--strategy-cap", type=int, default=200, help="largest m for the strategy cross-check")
    common.add_argument("--oracle-cap", type=int, default=40, help="largest m for the rank oracle scan")

    red = sub.add_parser("reduce", parents=[common], help="compute a barcode")
    red.add_argument("--strategy", choices=[o.value for o in Orientation], default=Orientation.ROW_B.value)
    red.add_argument("--optim", choices=[o.value for o in Optimization], default=Optimization.COMPRESS.value)
    red.add_argument("--emit-stats", action="store_true", help="write the stats JSON record")
    red.add_argument("--stats-output", help="stats path (default: appended to the barcode output)")
    red.add_argument("--values", action="store_true", help="append birth and death grades")
    red.add_argument("--verify", action="store_true", help="also cross-check all strategies and the oracle")
    red.add_argument("--certificate", action="store_true", help="track and verify the reduction transform")

    sub.add_parser("verify", parents=[common], help="cross-check strategies, oracle and duality counters")
    return parser


def _config(args: argparse.Namespace) -> RunConfig:
    keys = RunConfig.__dataclass_fields__
    return RunConfig(**{k: v for k, v in vars(args).items() if k in keys and k != "resolved"})


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = _config(args)
        if args.command == "reduce":
            return cmd_reduce(cfg)
        return cmd_verify(cfg)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (ParseError, InvalidFiltrationError, PairingError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
