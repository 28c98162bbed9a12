"""Scenario files and the scenario template consumed by power sweeps.

A scenario file is a flat list of ``key = value`` lines with ``#``
comments. Keys are listed in ``pyfsonoma.constants.SCENARIO_KEYS``.
``attenuation`` and ``rate_offset`` accept comma-separated lists; a file
expands into one Scenario per (attenuation, rate offset) pair, and both
rates accept the keyword ``critical``.

Two files ship with the package: ``haze`` (asymmetric links in haze, all
schemes) and ``critical`` (symmetric links at rates around the critical rate).

Classes:
    Scenario: Geometry, weather, rates, optics and turbulence of one case.
    ScenarioConfig: A parsed scenario file.

Public Functions:
    parse_scenario: Parse scenario text.
    load_scenario: Read and parse a scenario file.
    shipped_scenarios: Names of the scenario files bundled with the package.
    resolve_scenario_path: Map a path or bundled name to a readable file.

Examples:
    >>> config = load_scenario(resolve_scenario_path("haze"))
    >>> [case.attenuation for case in config.scenarios()]
    [0.0042]
"""

from __future__ import annotations

import configparser
import logging
import math
from collections.abc import Callable
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import TYPE_CHECKING, TypeVar

from pyfsonoma._types import (
    LinkBudget,
    McConfig,
    OpticsParams,
    QosThresholds,
    Scheme,
    SicAssumption,
    TurbulenceParams,
    _require,
    parse_enum,
)
from pyfsonoma.channel import link_budget
from pyfsonoma.constants import (
    CRITICAL_RATE,
    CRITICAL_RATE_KEYWORD,
    DEFAULT_ALPHA,
    DEFAULT_APERTURE_RADIUS,
    DEFAULT_BETA,
    DEFAULT_DIVERGENCE,
    DEFAULT_NOISE_VARIANCE,
    DEFAULT_POWER_STEP_DB,
    DEFAULT_RESPONSIVITY,
    MC_DEFAULT_CHUNK_SIZE,
    MC_DEFAULT_SAMPLES,
    MC_DEFAULT_SEED,
    REQUIRED_SCENARIO_KEYS,
    SCENARIO_KEYS,
)
from pyfsonoma.exceptions import ConfigError, ValidationError
from pyfsonoma.noma import qos_thresholds

if TYPE_CHECKING:
    from importlib.abc import Traversable

logger = logging.getLogger(__name__)

SCENARIO_SUFFIX = ".scenario"

# configparser needs a section header; scenario files have none
_SECTION = "scenario"

# Grid points closer than this fraction of a step to power_stop are kept
_GRID_SLACK = 1e-9

_T = TypeVar("_T")


@dataclass(frozen=True, slots=True)
class Scenario:
    """One physical case of a sweep.

    Attributes:
        distance_1: Distance from BS1 to the central unit (m).
        distance_2: Distance from BS2 to the central unit (m).
        attenuation: Attenuation factor kappa (1/m).
        rate_1: Target rate of BS1 (bits/symbol).
        rate_2: Target rate of BS2 (bits/symbol).
        optics: Transceiver optics and receiver noise.
        turbulence: Gamma-Gamma shape parameters.

    Examples:
        >>> case = Scenario(1000.0, 2000.0, 4.2e-3, 0.1, 0.5)
        >>> round(case.thresholds().product, 4)
        0.7945
    """

    distance_1: float
    distance_2: float
    attenuation: float
    rate_1: float
    rate_2: float
    optics: OpticsParams = field(default_factory=OpticsParams.default)
    turbulence: TurbulenceParams = field(default_factory=TurbulenceParams.default)

    def __post_init__(self) -> None:
        for name in ("distance_1", "distance_2"):
            value = getattr(self, name)
            _require(math.isfinite(value) and value > 0.0, f"{name} must be positive", name, value)
        _require(
            math.isfinite(self.attenuation) and self.attenuation >= 0.0,
            "attenuation must be nonnegative",
            "attenuation",
            self.attenuation,
        )
        for name in ("rate_1", "rate_2"):
            value = getattr(self, name)
            _require(
                math.isfinite(value) and value >= 0.0, f"{name} must be nonnegative", name, value
            )

    def link_budgets(self, power_dbm: float) -> tuple[LinkBudget, LinkBudget]:
        """Return the link budgets of BS1 and BS2 at a common transmit power."""
        return (
            link_budget(power_dbm, self.attenuation, self.distance_1, self.optics),
            link_budget(power_dbm, self.attenuation, self.distance_2, self.optics),
        )

    def thresholds(self) -> QosThresholds:
        """Return the SINR thresholds of the two target rates."""
        return qos_thresholds(self.rate_1, self.rate_2)


@dataclass(frozen=True, slots=True)
class ScenarioConfig:
    """A parsed scenario file.

    Attributes:
        power_start: First optical transmit power (dBm).
        power_stop: Last optical transmit power (dBm).
        power_step: Power increment (dB).
        distance_1: Distance from BS1 to the central unit (m).
        distance_2: Distance from BS2 to the central unit (m).
        attenuations: Attenuation factors, one case each (1/m).
        rate_1: Base target rate of BS1 (bits/symbol).
        rate_2: Base target rate of BS2 (bits/symbol).
        rate_offsets: Offsets added to both base rates, one case each.
        optics: Transceiver optics and receiver noise.
        turbulence: Gamma-Gamma shape parameters.
        schemes: Schemes to evaluate.
        sic: SIC assumption of the NOMA schemes.
        mc: Monte Carlo configuration.
        path: File the configuration was read from, if any.
    """

    power_start: float
    power_stop: float
    power_step: float
    distance_1: float
    distance_2: float
    attenuations: tuple[float, ...]
    rate_1: float
    rate_2: float
    rate_offsets: tuple[float, ...] = (0.0,)
    optics: OpticsParams = field(default_factory=OpticsParams.default)
    turbulence: TurbulenceParams = field(default_factory=TurbulenceParams.default)
    schemes: tuple[Scheme, ...] = tuple(Scheme)
    sic: SicAssumption = SicAssumption.IMPERFECT
    mc: McConfig = field(default_factory=McConfig)
    path: str | None = None

    def __post_init__(self) -> None:
        _require(
            math.isfinite(self.power_step) and self.power_step > 0.0,
            "power_step must be positive",
            "power_step",
            self.power_step,
        )
        _require(
            self.power_start <= self.power_stop,
            "power_start must not exceed power_stop",
            "power_start",
            self.power_start,
        )
        _require(len(self.schemes) > 0, "schemes must list at least one scheme", "schemes", ())
        lists = {"attenuation": self.attenuations, "rate_offset": self.rate_offsets}
        for name, values in lists.items():
            _require(len(values) > 0, f"{name} must list at least one value", name, ())

    def powers(self) -> list[float]:
        """Return the power grid from power_start to power_stop inclusive.

        Examples:
            >>> config.powers()[:3]
            [0.0, 2.0, 4.0]
        """
        n_steps = math.floor((self.power_stop - self.power_start) / self.power_step + _GRID_SLACK)
        return [self.power_start + k * self.power_step for k in range(n_steps + 1)]

    def scenarios(self) -> list[Scenario]:
        """Expand the file into one Scenario per (attenuation, rate offset).

        Raises:
            ValidationError: If an offset makes a rate negative.
        """
        return [
            Scenario(
                distance_1=self.distance_1,
                distance_2=self.distance_2,
                attenuation=attenuation,
                rate_1=self.rate_1 + offset,
                rate_2=self.rate_2 + offset,
                optics=self.optics,
                turbulence=self.turbulence,
            )
            for attenuation in self.attenuations
            for offset in self.rate_offsets
        ]


# =============================================================================
# Parsing
# =============================================================================


class _FieldReader:
    """Convert raw scenario values, collecting every problem found."""

    def __init__(self, values: dict[str, str]) -> None:
        self.values = values
        self.problems: list[str] = []

    def _raw(self, key: str) -> str | None:
        raw = self.values.get(key)
        return raw.strip() if raw is not None else None

    def number(self, key: str, default: float = math.nan) -> float:
        raw = self._raw(key)
        if raw is None:
            return default
        try:
            value = float(raw)
        except ValueError:
            self.problems.append(f"{key}: expected a number, got {raw!r}")
            return default
        if not math.isfinite(value):
            self.problems.append(f"{key}: expected a finite number, got {raw!r}")
            return default
        return value

    def integer(self, key: str, default: int) -> int:
        raw = self._raw(key)
        if raw is None:
            return default
        try:
            return int(raw)
        except ValueError:
            self.problems.append(f"{key}: expected an integer, got {raw!r}")
            return default

    def rate(self, key: str) -> float:
        raw = self._raw(key)
        if raw is not None and raw.lower() == CRITICAL_RATE_KEYWORD:
            return CRITICAL_RATE
        return self.number(key)

    def numbers(self, key: str, default: tuple[float, ...]) -> tuple[float, ...]:
        raw = self._raw(key)
        if raw is None:
            return default
        parsed: list[float] = []
        for item in filter(None, (part.strip() for part in raw.split(","))):
            try:
                parsed.append(float(item))
            except ValueError:
                self.problems.append(f"{key}: expected a number, got {item!r}")
        return tuple(parsed)

    def schemes(self) -> tuple[Scheme, ...]:
        raw = self._raw("schemes")
        if raw is None:
            return tuple(Scheme)
        parsed: list[Scheme] = []
        for item in filter(None, (part.strip() for part in raw.split(","))):
            try:
                parsed.append(parse_enum(Scheme, item, "schemes"))
            except ValidationError as e:
                self.problems.append(f"schemes: {e}")
        return tuple(dict.fromkeys(parsed))

    def sic(self) -> SicAssumption:
        raw = self._raw("sic")
        if raw is None:
            return SicAssumption.IMPERFECT
        try:
            return parse_enum(SicAssumption, raw, "sic")
        except ValidationError as e:
            self.problems.append(f"sic: {e}")
            return SicAssumption.IMPERFECT


def _read_values(text: str, path: str | None) -> dict[str, str]:
    parser = configparser.ConfigParser(
        comment_prefixes=("#",),
        inline_comment_prefixes=("#",),
        interpolation=None,
        strict=True,
    )
    try:
        parser.read_string(f"[{_SECTION}]\n{text}", source=path or "<scenario>")
    except configparser.Error as e:
        raise ConfigError(
            f"Could not parse scenario {path or '<text>'}", path=path, problems=[e.message]
        ) from e
    return dict(parser.items(_SECTION))


def _build(build: Callable[..., _T], problems: list[str], **kwargs: object) -> _T | None:
    try:
        return build(**kwargs)
    except ValidationError as e:
        problems.append(str(e))
        return None


def parse_scenario(text: str, path: str | None = None) -> ScenarioConfig:
    """Parse the text of a scenario file.

    Every problem in the file is collected before raising, so one run
    reports all offending keys.

    Args:
        text: Scenario file contents.
        path: File name used in diagnostics.

    Returns:
        The parsed ScenarioConfig.

    Raises:
        ConfigError: If the text cannot be parsed or violates an invariant.

    Examples:
        >>> config = parse_scenario('''
        ... power_start = 0      # dBm
        ... power_stop = 10      # dBm
        ... distance_1 = 1000    # m
        ... distance_2 = 2000    # m
        ... attenuation = 4.2e-3 # 1/m
        ... rate_1 = 0.1
        ... rate_2 = 0.5
        ... ''')
        >>> len(config.powers())
        6
    """
    values = _read_values(text, path)
    reader = _FieldReader(values)
    problems = reader.problems

    unknown = sorted(set(values) - set(SCENARIO_KEYS))
    problems.extend(f"{key}: unknown key" for key in unknown)
    missing = sorted(REQUIRED_SCENARIO_KEYS - set(values))
    problems.extend(f"{key}: required key is missing" for key in missing)

    optics = _build(
        OpticsParams,
        problems,
        responsivity=reader.number("responsivity", DEFAULT_RESPONSIVITY),
        aperture_radius=reader.number("aperture_radius", DEFAULT_APERTURE_RADIUS),
        divergence=reader.number("divergence", DEFAULT_DIVERGENCE),
        noise_variance=reader.number("noise_variance", DEFAULT_NOISE_VARIANCE),
    )
    turbulence = _build(
        TurbulenceParams,
        problems,
        alpha=reader.number("alpha", DEFAULT_ALPHA),
        beta=reader.number("beta", DEFAULT_BETA),
    )
    mc = _build(
        McConfig,
        problems,
        n_samples=reader.integer("samples", MC_DEFAULT_SAMPLES),
        seed=reader.integer("seed", MC_DEFAULT_SEED),
        chunk_size=reader.integer("chunk_size", MC_DEFAULT_CHUNK_SIZE),
    )
    settings = {
        "power_start": reader.number("power_start"),
        "power_stop": reader.number("power_stop"),
        "power_step": reader.number("power_step", DEFAULT_POWER_STEP_DB),
        "distance_1": reader.number("distance_1"),
        "distance_2": reader.number("distance_2"),
        "attenuations": reader.numbers("attenuation", ()),
        "rate_1": reader.rate("rate_1"),
        "rate_2": reader.rate("rate_2"),
        "rate_offsets": reader.numbers("rate_offset", (0.0,)),
        "schemes": reader.schemes(),
        "sic": reader.sic(),
    }

    config = None
    if not problems and optics and turbulence and mc:
        config = _build(
            ScenarioConfig,
            problems,
            optics=optics,
            turbulence=turbulence,
            mc=mc,
            path=path,
            **settings,
        )
    if config is not None:
        try:
            config.scenarios()
        except ValidationError as e:
            problems.append(str(e))

    if problems or config is None:
        raise ConfigError(f"Invalid scenario {path or '<text>'}", path=path, problems=problems)

    logger.debug("Parsed scenario %s with %d cases", path or "<text>", len(config.scenarios()))
    return config


def load_scenario(path: str | Path) -> ScenarioConfig:
    """Read and parse a scenario file.

    Raises:
        ConfigError: If the file cannot be read or is invalid.
    """
    scenario_path = Path(path)
    try:
        text = scenario_path.read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigError(
            f"Could not read scenario {scenario_path}", path=str(scenario_path), problems=[str(e)]
        ) from e
    return parse_scenario(text, path=str(scenario_path))


# =============================================================================
# Bundled Scenarios
# =============================================================================


def _bundled_dir() -> Traversable:
    return resources.files("pyfsonoma") / "scenarios"


def shipped_scenarios() -> list[str]:
    """Names of the scenario files bundled with the package.

    - ``haze``: every scheme against transmit power on asymmetric 1 km and
      2 km links in haze (kappa = 4.2e-3) at rates 0.1 and 0.5, with the
      NOMA baselines under imperfect SIC. The threshold product 0.7945 keeps
      the optimal scheme free of an outage floor.
    - ``critical``: the optimal scheme alone on symmetric 1 km links in
      clear air and fog at the critical rate plus small offsets, with the
      quadrature and high-SNR columns showing decay below the critical rate
      and a floor above it.

    Examples:
        >>> shipped_scenarios()
        ['critical', 'haze']
    """
    return sorted(
        entry.name.removesuffix(SCENARIO_SUFFIX)
        for entry in _bundled_dir().iterdir()
        if entry.name.endswith(SCENARIO_SUFFIX)
    )


def resolve_scenario_path(name_or_path: str | Path) -> Path:
    """Return a readable path for a scenario file or bundled scenario name.

    An existing file wins; otherwise a bundled scenario of that name (with
    or without the ``.scenario`` suffix) is used.

    Raises:
        ConfigError: If neither a file nor a bundled scenario matches.
    """
    candidate = Path(name_or_path)
    if candidate.is_file():
        return candidate

    name = candidate.name.removesuffix(SCENARIO_SUFFIX)
    if str(candidate.parent) == "." and name in shipped_scenarios():
        return Path(str(_bundled_dir() / f"{name}{SCENARIO_SUFFIX}"))

    raise ConfigError(
        f"Scenario not found: {name_or_path}",
        path=str(name_or_path),
        problems=[f"bundled scenarios are: {', '.join(shipped_scenarios())}"],
    )
