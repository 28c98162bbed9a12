"""Constants and configuration for pyfsonoma.

This module contains the physical defaults, numerical tolerances and lookup
tables used throughout the package. Centralising these values makes it
easier to update them and ensures consistency.

Constants:
    DEFAULT_RESPONSIVITY: Photodetector responsivity rho (A/W).
    DEFAULT_APERTURE_RADIUS: Receive aperture radius r (m).
    DEFAULT_DIVERGENCE: Beam divergence angle phi (rad).
    DEFAULT_NOISE_VARIANCE: Receiver noise variance (A^2).
    DEFAULT_ALPHA, DEFAULT_BETA: Gamma-Gamma shape parameters.
    ATTENUATION_*: Weather-dependent attenuation factors (1/m).
    SERIES_MAX_TERMS, SERIES_REL_TOL: Default series convergence control.
    QUAD_*: Default adaptive quadrature control.
    MC_*: Monte Carlo defaults.
    CSV_COLUMNS: Column order of the sweep CSV.
    SCENARIO_KEYS: Documented keys of a scenario file.
    EXIT_*: Command-line exit codes.
"""

from __future__ import annotations

import math

# =============================================================================
# Optics and Turbulence (simulation defaults)
# =============================================================================

DEFAULT_RESPONSIVITY: float = 0.5

DEFAULT_APERTURE_RADIUS: float = 0.1

DEFAULT_DIVERGENCE: float = 2e-3

DEFAULT_NOISE_VARIANCE: float = 1e-14

DEFAULT_ALPHA: float = 2.23

DEFAULT_BETA: float = 1.54

# Attenuation per metre for the weather conditions used in the sweeps
ATTENUATION_CLEAR: float = 0.43e-3
ATTENUATION_HAZE: float = 4.2e-3
ATTENUATION_FOG: float = 20e-3

# Orders closer than this to an integer are rejected
INTEGER_ORDER_TOLERANCE: float = 1e-6

# =============================================================================
# Rates
# =============================================================================

# 2*pi/e converts between the IM/DD capacity argument and SINR
SINR_RATE_FACTOR: float = 2.0 * math.pi / math.e

# Rate at which the SINR threshold equals one
CRITICAL_RATE: float = 0.5 * math.log2(1.0 + math.e / (2.0 * math.pi))

# =============================================================================
# Numerical Control
# =============================================================================

SERIES_MAX_TERMS: int = 500
SERIES_REL_TOL: float = 1e-10

QUAD_ABS_TOL: float = 1e-10
QUAD_REL_TOL: float = 1e-10
QUAD_MAX_SUBDIVISIONS: int = 200

# Probability mass left beyond the truncated upper integration limit
TAIL_PROBABILITY: float = 1e-12

# Bessel K evaluation crossovers and representable range
BESSEL_SERIES_MAX_X: float = 2.0
BESSEL_ASYMPTOTIC_MIN_X: float = 25.0
BESSEL_UNDERFLOW_X: float = 700.0
LOG_DOUBLE_MAX: float = math.log(1.7976931348623157e308)

# Lanczos approximation (g and the rational coefficients of the scaled sum)
LANCZOS_G: float = 6.024680040776729583740234375
LANCZOS_NUM: tuple[float, ...] = (
    0.006061842346248906525783753964555936883222,
    0.5098416655656676188125178644804694509993,
    19.51992788247617482847860966235652136208,
    449.9445569063168119446858607650988409623,
    6955.999602515376140356310115515198987526,
    75999.29304014542649875303443598909137092,
    601859.6171681098786670226533699352302507,
    3481712.15498064590882071018964774556468,
    14605578.08768506808414169982791359218571,
    43338889.32467613834773723740590533316085,
    86363131.28813859145546927288977868422342,
    103794043.1163445451906271053616070238554,
    56906521.91347156388090791033559122686859,
)
LANCZOS_DENOM: tuple[float, ...] = (
    1.0,
    66.0,
    1925.0,
    32670.0,
    357423.0,
    2637558.0,
    13339535.0,
    45995730.0,
    105258076.0,
    150917976.0,
    120543840.0,
    39916800.0,
    0.0,
)

# =============================================================================
# Monte Carlo
# =============================================================================

MC_DEFAULT_SAMPLES: int = 1_000_000
MC_DEFAULT_CHUNK_SIZE: int = 100_000
MC_DEFAULT_SEED: int = 2017

# Estimates backed by fewer events than this are reported as below the floor
MC_MIN_EVENTS: int = 10

MAX_WORKERS: int = 8

# Environment variable overriding the default worker count
WORKERS_ENV_VAR: str = "PYFSONOMA_WORKERS"

# =============================================================================
# Scenario Files and Output
# =============================================================================

DEFAULT_POWER_STEP_DB: float = 2.0

CSV_COLUMNS: tuple[str, ...] = (
    "power_dbm",
    "scheme",
    "sic",
    "bs",
    "p_out_mc",
    "stderr",
    "p_out_quad",
    "p_out_asym",
    "flag",
    "attenuation",
    "rate_1",
    "rate_2",
)

CSV_FLOAT_FORMAT: str = "%.16e"

FLAG_OK: str = "ok"
FLAG_TAIL: str = "tail"

# Keyword accepted in place of a numeric rate
CRITICAL_RATE_KEYWORD: str = "critical"

# Documented scenario keys with their units
SCENARIO_KEYS: dict[str, str] = {
    "power_start": "first optical transmit power (dBm)",
    "power_stop": "last optical transmit power (dBm)",
    "power_step": "power increment (dB), default 2",
    "distance_1": "distance BS1 to CU (m)",
    "distance_2": "distance BS2 to CU (m)",
    "attenuation": "attenuation factor kappa (1/m), comma list allowed",
    "responsivity": "photodetector responsivity rho (A/W)",
    "aperture_radius": "receive aperture radius r (m)",
    "divergence": "beam divergence angle phi (rad)",
    "noise_variance": "receiver noise variance (A^2)",
    "alpha": "Gamma-Gamma large-scale shape",
    "beta": "Gamma-Gamma small-scale shape",
    "rate_1": "target rate of BS1 (bits/symbol) or 'critical'",
    "rate_2": "target rate of BS2 (bits/symbol) or 'critical'",
    "rate_offset": "offset added to both rates (bits/symbol), comma list allowed",
    "schemes": "comma list of schemes to evaluate",
    "sic": "SIC assumption: perfect, imperfect or worst_case",
    "samples": "Monte Carlo samples per point",
    "seed": "Monte Carlo seed",
    "chunk_size": "Monte Carlo chunk size",
}

REQUIRED_SCENARIO_KEYS: frozenset[str] = frozenset(
    {"power_start", "power_stop", "distance_1", "distance_2", "attenuation", "rate_1", "rate_2"}
)

# =============================================================================
# Exit Codes
# =============================================================================

EXIT_OK: int = 0
EXIT_CONFIG_ERROR: int = 1
EXIT_NUMERIC_ERROR: int = 2
