"""Command-line interface.

Exit codes: 0 success, 2 configuration/usage error, 3 numerical failure,
4 I/O failure.
"""

from __future__ import annotations

import argparse
import logging
import sys

from . import runner
from .__about__ import __version__
from .config import builtin_config, builtin_scenarios, load_config
from .errors import ConfigError, FactorizationError, ModeResolutionError

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERIC = 3
EXIT_IO = 4


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="faraday-schmidt",
        description=(
            "Schmidt analysis of the photon-atom state produced by cavity "
            "Faraday rotation: numeric SVD sweeps vs closed-form predictions, "
            "written as CSV (and PNG figures) per run."
        ),
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    scenario = sub.add_parser(
        "scenario", help="run a built-in parameter set by name"
    )
    scenario.add_argument("name", choices=builtin_scenarios())
    scenario.add_argument("--out", required=True, help="output directory")
    _add_sweep_options(scenario)

    sweep = sub.add_parser("sweep", help="run a tau sweep from a config file")
    sweep.add_argument("--config", required=True, help="path to key=value config")
    sweep.add_argument("--out", help="output directory (overrides output.dir)")
    _add_sweep_options(sweep)

    cavity = sub.add_parser(
        "cavity", help="kappa_c/g sweep adjudicating the output Schmidt number"
    )
    cavity.add_argument("--config", required=True, help="path to key=value config")
    cavity.add_argument("--out", help="output directory (overrides output.dir)")
    cavity.add_argument(
        "--window-mult", type=float, help="marginal window half-width in sigmas"
    )
    cavity.add_argument(
        "--no-figures", action="store_true", help="skip PNG rendering"
    )
    return parser


def _add_sweep_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--window-mult", type=float, help="marginal window half-width in sigmas"
    )
    parser.add_argument(
        "--tau-steps", type=int, help="number of tau grid points"
    )
    parser.add_argument(
        "--no-figures", action="store_true", help="skip PNG rendering"
    )


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s"
    )
    try:
        if args.command == "scenario":
            config = builtin_config(args.name).with_overrides(
                out_dir=args.out,
                window_mult=args.window_mult,
                tau_count=args.tau_steps,
                figures=False if args.no_figures else None,
            )
            result = runner.run_scenario(config)
        elif args.command == "sweep":
            config = load_config(args.config).with_overrides(
                out_dir=args.out,
                window_mult=args.window_mult,
                tau_count=args.tau_steps,
                figures=False if args.no_figures else None,
            )
            result = runner.run_scenario(config)
        else:
            config = load_config(args.config).with_overrides(
                out_dir=args.out,
                window_mult=args.window_mult,
                figures=False if args.no_figures else None,
            )
            result = runner.run_cavity_report(config)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (FactorizationError, ModeResolutionError, ArithmeticError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"I/O failure: {exc}", file=sys.stderr)
        return EXIT_IO
    for path in (result.csv_path, result.manifest_path, *result.figure_paths):
        print(path)
    return EXIT_OK


def run() -> None:
    sys.exit(main())
