"""pyfsonoma - Outage of NOMA over free-space optical backhaul links.

Two base stations send to a central unit over FSO links with Gamma-Gamma
turbulence. This package computes their outage probabilities under
optimal dynamic-order NOMA, the fixed- and sorted-order NOMA baselines,
OMA and the interference-free bound, by Monte Carlo simulation, by
quadrature and by high-SNR approximation.

Main Functions:
    link_budget: Deterministic gains of one link.
    qos_thresholds: SINR thresholds of two target rates.
    outage_events: Outage events of a scheme for one channel draw.
    outage_exact: Outage of the optimal scheme by quadrature.
    outage_asymptotic: High-SNR outage of the optimal scheme.
    estimate_outage: Monte Carlo outage of any scheme.
    sweep_power: Outage table over a grid of transmit powers.

Examples:
    >>> from pyfsonoma import Scenario, McConfig, Scheme, SicAssumption, sweep_power
    >>> case = Scenario(distance_1=1000.0, distance_2=2000.0, attenuation=4.2e-3,
    ...                 rate_1=0.1, rate_2=0.5)
    >>> table = sweep_power(case, [10.0, 20.0], [Scheme.OPTIMAL_DYNAMIC_NOMA],
    ...                     SicAssumption.IMPERFECT, McConfig(n_samples=100_000))
    >>> table[["power_dbm", "bs", "p_out_mc", "p_out_quad"]]
"""

from __future__ import annotations

import importlib.metadata

__version__ = importlib.metadata.version("pyfsonoma")

# Enums and value types
from pyfsonoma._types import (
    AsymptoticOutage,
    AsymptoticRegime,
    ChannelDraw,
    DecodingOrder,
    LinkBudget,
    McConfig,
    OpticsParams,
    OutageEstimate,
    OutageEvents,
    OutageMethod,
    OutageResult,
    QosThresholds,
    QuadratureControl,
    Scheme,
    SchemeSpec,
    SeriesControl,
    SicAssumption,
    TurbulenceParams,
)
from pyfsonoma.analysis import (
    diversity_order,
    f1_integral,
    f1_series,
    f2_integral,
    f2_ratio_cdf,
    fit_decay_slope,
    outage_asymptotic,
    outage_exact,
)
from pyfsonoma.cache import CacheInfo, NumericsCache
from pyfsonoma.channel import gg_cdf, gg_pdf, gg_sample, link_budget

# Exceptions
from pyfsonoma.exceptions import (
    ConfigError,
    ConvergenceError,
    DomainError,
    NomaFsoError,
    NumericalError,
    RangeError,
    ValidationError,
)
from pyfsonoma.montecarlo import estimate_outage, estimate_outage_many, sweep_power
from pyfsonoma.noma import (
    critical_rate,
    optimal_order,
    outage_events,
    qos_thresholds,
    rate,
    sinr,
    threshold_from_rate,
)
from pyfsonoma.scenario import Scenario, ScenarioConfig, load_scenario, parse_scenario

__all__ = [
    "AsymptoticOutage",
    "AsymptoticRegime",
    "CacheInfo",
    "ChannelDraw",
    "ConfigError",
    "ConvergenceError",
    "DecodingOrder",
    "DomainError",
    "LinkBudget",
    "McConfig",
    "NomaFsoError",
    "NumericalError",
    "NumericsCache",
    "OpticsParams",
    "OutageEstimate",
    "OutageEvents",
    "OutageMethod",
    "OutageResult",
    "QosThresholds",
    "QuadratureControl",
    "RangeError",
    "Scenario",
    "ScenarioConfig",
    "Scheme",
    "SchemeSpec",
    "SeriesControl",
    "SicAssumption",
    "TurbulenceParams",
    "ValidationError",
    "critical_rate",
    "diversity_order",
    "estimate_outage",
    "estimate_outage_many",
    "f1_integral",
    "f1_series",
    "f2_integral",
    "f2_ratio_cdf",
    "fit_decay_slope",
    "gg_cdf",
    "gg_pdf",
    "gg_sample",
    "link_budget",
    "load_scenario",
    "optimal_order",
    "outage_asymptotic",
    "outage_events",
    "outage_exact",
    "parse_scenario",
    "qos_thresholds",
    "rate",
    "sinr",
    "sweep_power",
    "threshold_from_rate",
]
