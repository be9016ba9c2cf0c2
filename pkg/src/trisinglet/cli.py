"""Command line interface.

    trisinglet run        --config CFG --out DIR [--full-dump]
    trisinglet sweep      --config CFG --out DIR [--parallel N]
    trisinglet gamma-scan --config CFG --out DIR [--parallel N]
    trisinglet validate   [--out DIR]

Exit codes: 0 success, 1 configuration or validation error, 2 integrator
abort (run only).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .config import ConfigError, RunConfig, load_config
from .dynamics import IntegrationError
from .runner import gamma_scan, run_single, sweep_grid
from .validate import validate_suite

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_ABORT = 2


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="trisinglet",
        description="Simulate three-atom singlet preparation via Rydberg blockade "
                    "and adiabatic passage.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, parallel=False, full_dump=False):
        p.add_argument("--config", type=Path, default=None, help="key = value config file")
        p.add_argument("--out", type=Path, default=None, help="output directory")
        if parallel:
            p.add_argument("--parallel", type=int, default=None, help="worker processes")
        if full_dump:
            p.add_argument("--full-dump", action="store_true",
                           help="write every integration step instead of ~200 samples")

    add_common(sub.add_parser("run", help="single trajectory, timeseries.csv"),
               full_dump=True)
    add_common(sub.add_parser("sweep", help="1-D/2-D parameter sweep, sweep.csv"),
               parallel=True)
    add_common(sub.add_parser("gamma-scan", help="spontaneous-emission scan, sweep.csv"),
               parallel=True)
    val = sub.add_parser("validate", help="run the invariant self-checks")
    val.add_argument("--out", type=Path, default=None, help="directory for validation.json")
    return parser


def _load(args) -> RunConfig:
    if args.config is None:
        return RunConfig()
    return load_config(args.config)


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "run":
            config = _load(args)
            series = run_single(config, out_dir=args.out, full_dump=args.full_dump)
            print(f"final fidelity {series.final_fidelity:.6f}")
            return EXIT_OK
        if args.command == "sweep":
            config = _load(args)
            result = sweep_grid(config, out_dir=args.out, parallel=args.parallel)
            bad = sum(1 for f in result.flags if f != "ok")
            print(f"sweep finished: {result.grid.size} points, {bad} failed")
            return EXIT_OK
        if args.command == "gamma-scan":
            config = _load(args)
            result = gamma_scan(config, out_dir=args.out, parallel=args.parallel)
            bad = sum(1 for f in result.flags if f != "ok")
            print(f"gamma scan finished: {result.grid.size} points, {bad} failed")
            return EXIT_OK
        if args.command == "validate":
            report = validate_suite()
            for check in report.results:
                print(check.line())
            if args.out is not None:
                args.out.mkdir(parents=True, exist_ok=True)
                (args.out / "validation.json").write_text(report.to_json() + "\n",
                                                          encoding="utf-8")
            else:
                print(report.to_json())
            return EXIT_OK if report.passed else EXIT_CONFIG
    except (ConfigError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except IntegrationError as exc:
        print(f"integrator abort: {exc}", file=sys.stderr)
        return EXIT_ABORT
    raise AssertionError(f"unhandled command {args.command!r}")


if __name__ == "__main__":
    raise SystemExit(main())
