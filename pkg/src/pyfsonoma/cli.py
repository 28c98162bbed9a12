"""Command-line interface.

Commands:
    run <scenario> --out <csv>: Sweep the scenario and write the outage table.
    check <scenario>: Validate the scenario and print derived quantities.

``<scenario>`` is a file path or the name of a bundled scenario
(``haze``, ``critical``). Exit status is 0 on success, 1 for invalid input and
2 when a numerical routine fails to converge.

Examples:
    $ pyfsonoma check haze
    $ pyfsonoma run haze --out haze.csv --samples 100000 --seed 7
"""

from __future__ import annotations

import argparse
import dataclasses
import logging
import sys
from collections.abc import Sequence
from pathlib import Path

import pandas as pd

from pyfsonoma import __version__
from pyfsonoma.constants import (
    CSV_FLOAT_FORMAT,
    EXIT_CONFIG_ERROR,
    EXIT_NUMERIC_ERROR,
    EXIT_OK,
)
from pyfsonoma.exceptions import NumericalError, ValidationError
from pyfsonoma.montecarlo import sweep_power
from pyfsonoma.printer import ScenarioPrinter
from pyfsonoma.scenario import ScenarioConfig, load_scenario, resolve_scenario_path

logger = logging.getLogger(__name__)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pyfsonoma",
        description="Outage of NOMA over FSO backhaul links to a central unit.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="log debug messages to stderr")
    commands = parser.add_subparsers(dest="command", required=True)

    run = commands.add_parser("run", help="sweep a scenario and write the outage CSV")
    run.add_argument("scenario", help="scenario file or bundled scenario name")
    run.add_argument("--out", required=True, type=Path, help="output CSV path")
    run.add_argument("--seed", type=int, help="override the Monte Carlo seed")
    run.add_argument("--samples", type=int, help="override the Monte Carlo sample count")
    run.add_argument("--workers", type=int, help="Monte Carlo worker threads")
    run.add_argument("--no-progress", action="store_true", help="hide progress bars")

    check = commands.add_parser("check", help="validate a scenario and print derived values")
    check.add_argument("scenario", help="scenario file or bundled scenario name")

    return parser


def _with_overrides(
    config: ScenarioConfig, seed: int | None, samples: int | None
) -> ScenarioConfig:
    changes: dict[str, int] = {}
    if seed is not None:
        changes["seed"] = seed
    if samples is not None:
        changes["n_samples"] = samples
    if not changes:
        return config
    return dataclasses.replace(config, mc=dataclasses.replace(config.mc, **changes))


def run_scenario(
    scenario: str | Path,
    out: str | Path,
    *,
    seed: int | None = None,
    samples: int | None = None,
    workers: int | None = None,
    progress: bool = True,
) -> pd.DataFrame:
    """Sweep every case of a scenario file and write the combined CSV.

    Args:
        scenario: Scenario file path or bundled scenario name.
        out: Output CSV path.
        seed: Override for the Monte Carlo seed.
        samples: Override for the Monte Carlo sample count.
        workers: Monte Carlo worker threads.
        progress: Show progress bars.

    Returns:
        The table that was written.

    Raises:
        ConfigError: If the scenario cannot be read or is invalid.
        ValidationError: If an override is invalid.
        NumericalError: If a quadrature fails to converge.
    """
    config = _with_overrides(load_scenario(resolve_scenario_path(scenario)), seed, samples)
    powers = config.powers()

    tables = []
    for case in config.scenarios():
        logger.info(
            "Sweeping attenuation %g, rates (%.4f, %.4f) over %d powers",
            case.attenuation,
            case.rate_1,
            case.rate_2,
            len(powers),
        )
        tables.append(
            sweep_power(
                case,
                powers,
                config.schemes,
                config.sic,
                config.mc,
                workers=workers,
                progress=progress,
            )
        )
    table = pd.concat(tables, ignore_index=True)

    out_path = Path(out)
    table.to_csv(
        out_path,
        index=False,
        float_format=CSV_FLOAT_FORMAT,
        encoding="utf-8",
        lineterminator="\n",
    )
    logger.info("Wrote %d rows to %s", len(table), out_path)
    return table


def check_scenario(scenario: str | Path) -> ScenarioConfig:
    """Validate a scenario file and print its derived quantities.

    Raises:
        ConfigError: If the scenario cannot be read or is invalid.
    """
    config = load_scenario(resolve_scenario_path(scenario))
    ScenarioPrinter(config).print_all()
    return config


def main(argv: Sequence[str] | None = None) -> int:
    """Run the command line and return the exit status."""
    args = _build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )

    try:
        if args.command == "run":
            run_scenario(
                args.scenario,
                args.out,
                seed=args.seed,
                samples=args.samples,
                workers=args.workers,
                progress=not args.no_progress,
            )
        else:
            check_scenario(args.scenario)
    except ValidationError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CONFIG_ERROR
    except NumericalError as e:
        print(f"numerical failure: {e}", file=sys.stderr)
        return EXIT_NUMERIC_ERROR
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CONFIG_ERROR

    return EXIT_OK
