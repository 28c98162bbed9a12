"""Scenario report printing for the ``check`` command.

This module formats the derived quantities of a scenario file without
running any sweep, separating presentation from parsing and numerics.

Classes:
    ScenarioPrinter: Formats and prints a scenario report to the console.

Examples:
    >>> from pyfsonoma.scenario import load_scenario, resolve_scenario_path
    >>> config = load_scenario(resolve_scenario_path("haze"))
    >>> ScenarioPrinter(config).print_all()
"""

from __future__ import annotations

import textwrap
from typing import TYPE_CHECKING

from pyfsonoma.analysis import diversity_order
from pyfsonoma.noma import oma_snr_penalty_db

if TYPE_CHECKING:
    from pyfsonoma.scenario import Scenario, ScenarioConfig


class ScenarioPrinter:
    """Helper class for formatting and printing a scenario report.

    For every case of the file the report lists the path and geometric
    losses, the SNR coefficients at the first power, the SINR thresholds,
    their product and the high-SNR regime of the optimal scheme.

    Args:
        config: The parsed scenario file.
    """

    WIDTH = 85
    LABEL_WIDTH = 20

    def __init__(self, config: ScenarioConfig) -> None:
        self.config = config

    def print_all(self) -> None:
        """Print the header and one section per case to the console."""
        self._print_header()
        for index, case in enumerate(self.config.scenarios(), start=1):
            self._print_case(index, case)

    def _print_header(self) -> None:
        """Print the sweep grid, schemes and sampling settings."""
        config = self.config
        if config.path:
            self._print_line("Scenario:", config.path)

        powers = config.powers()
        self._print_line(
            "Powers:",
            f"{config.power_start:g} to {powers[-1]:g} dBm in {config.power_step:g} dB steps "
            f"({len(powers)} points)",
        )
        self._print_wrapped(
            ", ".join(scheme.value for scheme in config.schemes),
            initial_indent=f"{'Schemes:':<{self.LABEL_WIDTH}} ",
        )
        self._print_line("SIC:", config.sic.value)
        self._print_line(
            "Samples:",
            f"{config.mc.n_samples} (seed {config.mc.seed}, chunk {config.mc.chunk_size})",
        )

        t = config.turbulence
        self._print_line(
            "Turbulence:",
            f"alpha = {t.alpha:g}, beta = {t.beta:g} (diversity order {diversity_order(t):g})",
        )
        print()

    def _print_case(self, index: int, case: Scenario) -> None:
        """Print the derived quantities of one case."""
        link1, link2 = case.link_budgets(self.config.power_start)
        thr = case.thresholds()

        self._print_line(
            f"Case {index}:",
            f"attenuation {case.attenuation:g} 1/m, rates ({case.rate_1:.4f}, {case.rate_2:.4f})",
        )
        self._print_pair("Path loss:", link1.path_loss, link2.path_loss)
        self._print_pair("Geometric loss:", link1.geo_loss, link2.geo_loss)
        self._print_pair("Gain c:", link1.c, link2.c)
        self._print_pair(f"SNR e @ {self.config.power_start:g} dBm:", link1.e, link2.e)
        self._print_pair("Threshold:", thr.gamma1_thr, thr.gamma2_thr)
        self._print_line("Threshold product:", f"{thr.product:.4f}")
        self._print_line("Regime:", thr.regime.value)
        self._print_line(
            "OMA SNR penalty:",
            f"BS1 {oma_snr_penalty_db(case.rate_1):.3f} dB, "
            f"BS2 {oma_snr_penalty_db(case.rate_2):.3f} dB",
        )
        print()

    def _print_pair(self, label: str, bs1: float, bs2: float) -> None:
        self._print_line(label, f"BS1 {bs1:.6g}, BS2 {bs2:.6g}")

    def _print_line(self, label: str, value: str) -> None:
        """Print a single labelled line with consistent formatting.

        Args:
            label: The label text (e.g., "Regime:").
            value: The value to display.
        """
        print(f"{label:<{self.LABEL_WIDTH}} {value}")

    def _print_wrapped(self, text: str, initial_indent: str) -> None:
        wrapper = textwrap.TextWrapper(
            width=self.WIDTH,
            initial_indent=initial_indent,
            subsequent_indent=" " * (self.LABEL_WIDTH + 1),
            break_long_words=False,
            break_on_hyphens=False,
        )
        print(wrapper.fill(text))
