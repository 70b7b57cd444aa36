"""Command-line front end: ``queens``, ``detect``, ``simulate``, ``energy``."""
from __future__ import annotations

import argparse
import itertools
import json
import logging
import os
import sys
from pathlib import Path

from . import costing
from .config import RunConfig, parse_config
from .costing import EnergyCoefficients, cost_report, tally
from .detection import DirectorySink, SessionReport, run_pipeline
from .errors import ConfigError, DimensionMismatch, GridTooSmall, NoSolution, PGMError, SinkUnavailable
from .imaging import read_pgm, to_block_grid
from .placement import Kind, grid_placement, make_placement, map_to_grid
from .simulation import RASTERS, coverage_experiment

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_INPUT = 3


class InputError(Exception):
    pass


def _fail(code: int, message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return code


# -- queens -------------------------------------------------------------------

def cmd_queens(args) -> int:
    try:
        p = make_placement(args.n, args.double)
    except NoSolution as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_CONFIG
    except ValueError as exc:
        return _fail(EXIT_CONFIG, str(exc))
    for r, c in p.cells:
        print(f"{r},{c}")
    return EXIT_OK


# -- detect -------------------------------------------------------------------

def list_frames(frame_dir) -> list[Path]:
    paths = sorted(p for p in Path(frame_dir).iterdir()
                   if p.suffix.lower() == ".pgm" and p.is_file())
    if not paths:
        raise InputError(f"no .pgm files in {frame_dir}")
    return paths


def _load(path: Path):
    try:
        return read_pgm(path)
    except (PGMError, OSError) as exc:
        raise InputError(f"{path}: {exc}") from exc


def _frames(paths, width, height):
    for path in paths:
        frame = _load(path)
        if (frame.width, frame.height) != (width, height):
            raise InputError(f"{path}: frame is {frame.width}x{frame.height}, "
                             f"expected {width}x{height}")
        yield frame


def report_summary(session: SessionReport, costs: costing.CostReport, config: RunConfig) -> str:
    totals = session.totals
    summary = {
        "frames": totals["frames"],
        "alarms": totals["alarms"],
        "comparisons": totals["comparisons"],
        "updates": totals["updates"],
        "bytes": totals["bytes"],
        "energy_mj": costs.energy_mj,
        "cost": costs.to_dict(),
        "config": config.echo(),
    }
    return json.dumps(summary, indent=2) + "\n"


def detect_command(frame_dir, config: RunConfig,
                   coeffs: EnergyCoefficients | None = None) -> int:
    coeffs = coeffs or costing.default_coefficients()
    try:
        paths = list_frames(frame_dir)
        first = _load(paths[0])
        grid = to_block_grid(first, config.block_size)
    except InputError as exc:
        return _fail(EXIT_INPUT, str(exc))
    except ValueError as exc:
        return _fail(EXIT_INPUT, f"{paths[0]}: {exc}")
    try:
        cells = grid_placement(grid.rows, grid.cols, config.queens_n, config.double)
    except (GridTooSmall, NoSolution) as exc:
        return _fail(EXIT_CONFIG, str(exc))

    frames = itertools.chain([first], _frames(paths[1:], first.width, first.height))
    sink = DirectorySink(config.sink_dir)
    try:
        session = run_pipeline(frames, cells, config.detector_config(), config.schedule(), sink,
                               block_size=config.block_size, tx_ratio=config.tx_ratio)
    except InputError as exc:
        return _fail(EXIT_INPUT, str(exc))
    except DimensionMismatch as exc:
        return _fail(EXIT_INPUT, str(exc))
    except SinkUnavailable as exc:
        if exc.report is not None:
            _write_outputs(exc.report, config, coeffs)
        return _fail(EXIT_INPUT, str(exc))

    costs = _write_outputs(session, config, coeffs)
    log.info("%d frames scanned, %d alarms, %.3f mJ",
             len(session), session.totals["alarms"], costs.energy_mj)
    return EXIT_OK


def _write_outputs(session, config, coeffs):
    costs = cost_report(tally(session), coeffs)
    for path in (config.report_csv, config.summary_json):
        parent = os.path.dirname(path)
        if parent:
            os.makedirs(parent, exist_ok=True)
    with open(config.report_csv, "w", newline="") as fh:
        fh.write(session.to_csv())
    with open(config.summary_json, "w") as fh:
        fh.write(report_summary(session, costs, config))
    return costs


def _load_coeffs(path):
    if path is None:
        return costing.default_coefficients()
    with open(path) as fh:
        return EnergyCoefficients.parse(fh.read())


def cmd_detect(args) -> int:
    overrides = {
        "threshold": args.threshold,
        "block_size": args.block_size,
        "queens_n": args.queens_n,
        "double": args.double,
        "hybrid_k": args.hybrid_k,
        "zero_diff_policy": args.zero_diff_policy,
        "update_step": args.update_step,
        "tx_ratio": args.tx_ratio,
        "seed": args.seed,
        "sink_dir": args.sink_dir,
        "report_csv": args.report_csv,
        "summary_json": args.summary_json,
    }
    try:
        text = Path(args.config).read_text() if args.config else ""
        config = parse_config(text, overrides)
        coeffs = _load_coeffs(args.coeffs)
    except (ConfigError, ValueError, OSError) as exc:
        return _fail(EXIT_CONFIG, str(exc))
    return detect_command(args.frame_dir, config, coeffs)


# -- simulate -----------------------------------------------------------------

def _grid(text: str) -> tuple[int, int]:
    try:
        r, c = (int(v) for v in text.lower().split("x"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected RxC, got {text!r}") from None
    return r, c


def cmd_simulate(args) -> int:
    rows, cols = args.grid
    n = args.n if args.n is not None else min(rows, cols)
    try:
        placement = make_placement(n, args.double)
        cells = map_to_grid(placement, rows, cols)
        report = coverage_experiment(args.samples, cells, args.seed, args.raster)
    except NoSolution as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_CONFIG
    except ValueError as exc:
        return _fail(EXIT_CONFIG, str(exc))
    out = report.to_dict()
    out["placement"] = {
        "n": placement.n,
        "kind": placement.kind.value,
        "grid": [rows, cols],
        "raster": args.raster,
        "cells": [list(c) for c in cells.cells],
    }
    with open(args.out, "w") as fh:
        json.dump(out, fh, indent=2)
        fh.write("\n")
    kind = "double" if placement.kind is Kind.DOUBLE else "single"
    print(f"{kind} n={n} on {rows}x{cols}: {report.hits}/{report.samples} "
          f"trajectories crossed a queen (rate {report.rate:.4f}, seed {report.seed})")
    return EXIT_OK


# -- energy -------------------------------------------------------------------

def cmd_energy(args) -> int:
    try:
        coeffs = _load_coeffs(args.coeffs)
        session = SessionReport.from_csv(Path(args.report).read_text())
    except (ValueError, KeyError, OSError) as exc:
        return _fail(EXIT_CONFIG, str(exc))
    print(json.dumps(cost_report(tally(session), coeffs).to_dict(), indent=2))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="queensdetect", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    q = sub.add_parser("queens", help="print an N-Queens decimation pattern")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--double", action="store_true", help="add the vertical mirror")
    q.set_defaults(func=cmd_queens)

    d = sub.add_parser("detect", help="run the detector over a directory of PGM frames")
    d.add_argument("frame_dir")
    d.add_argument("--config", help="key = value configuration file")
    d.add_argument("--coeffs", help="energy coefficients file")
    d.add_argument("--threshold", type=int)
    d.add_argument("--block-size", type=int)
    d.add_argument("--queens-n", type=int)
    d.add_argument("--double", dest="double", action="store_true", default=None)
    d.add_argument("--single", dest="double", action="store_false")
    d.add_argument("--hybrid-k", type=int)
    d.add_argument("--zero-diff-policy", choices=["hold", "literal_decrement"])
    d.add_argument("--update-step", type=int)
    d.add_argument("--tx-ratio", type=float)
    d.add_argument("--seed", type=int)
    d.add_argument("--sink-dir")
    d.add_argument("--report-csv")
    d.add_argument("--summary-json")
    d.set_defaults(func=cmd_detect)

    s = sub.add_parser("simulate", help="trajectory coverage experiment")
    s.add_argument("--grid", type=_grid, required=True, metavar="RxC")
    s.add_argument("--n", type=int)
    s.add_argument("--double", action="store_true")
    s.add_argument("--samples", type=int, required=True)
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--raster", choices=sorted(RASTERS), default="traverse")
    s.add_argument("--out", default="coverage.json")
    s.set_defaults(func=cmd_simulate)

    e = sub.add_parser("energy", help="energy estimate for a per-frame report CSV")
    e.add_argument("--report", required=True)
    e.add_argument("--coeffs")
    e.set_defaults(func=cmd_energy)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
