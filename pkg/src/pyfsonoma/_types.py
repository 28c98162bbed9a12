"""Type definitions and enums for pyfsonoma.

This module contains the shared enums and value types used throughout the
package. All dataclasses are frozen and validate their invariants on
construction, raising ValidationError.

Classes:
    SicAssumption: Enum of receiver behaviours after a failed first decoding.
    Scheme: Enum of multiple-access schemes that can be evaluated.
    AsymptoticRegime: Enum for the high-SNR behaviour of the optimal scheme.
    OutageMethod: Enum tagging how an outage probability was computed.
    SeriesControl: Convergence control for power series.
    QuadratureControl: Tolerances and truncation for adaptive quadrature.
    OpticsParams: Transceiver optics and receiver noise.
    TurbulenceParams: Gamma-Gamma shape parameters.
    LinkBudget: Deterministic per-link gains.
    DecodingOrder: Which base station is decoded first.
    ChannelDraw: One realisation of the two electrical SNRs.
    QosThresholds: Target rates and the matching SINR thresholds.
    OutageEvents: Per-BS outage indicators for one draw.
    SchemeSpec: A scheme together with the SIC assumption it runs under.
    McConfig: Monte Carlo sample count, seed and chunking.
    OutageEstimate: Monte Carlo outage frequency with its standard error.
    OutageResult: Outage probability tagged with its computation method.
    AsymptoticOutage: High-SNR outage approximation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import TypeVar

from pyfsonoma.constants import (
    DEFAULT_ALPHA,
    DEFAULT_APERTURE_RADIUS,
    DEFAULT_BETA,
    DEFAULT_DIVERGENCE,
    DEFAULT_NOISE_VARIANCE,
    DEFAULT_RESPONSIVITY,
    INTEGER_ORDER_TOLERANCE,
    MC_DEFAULT_CHUNK_SIZE,
    MC_DEFAULT_SAMPLES,
    MC_DEFAULT_SEED,
    MC_MIN_EVENTS,
    QUAD_ABS_TOL,
    QUAD_MAX_SUBDIVISIONS,
    QUAD_REL_TOL,
    SERIES_MAX_TERMS,
    SERIES_REL_TOL,
    TAIL_PROBABILITY,
)
from pyfsonoma.exceptions import ValidationError


class SicAssumption(str, Enum):
    """Receiver behaviour when decoding the first signal fails.

    Attributes:
        PERFECT: The interference is cancelled regardless.
        IMPERFECT: The interference remains when the first decoding fails.
        WORST_CASE: The second signal is lost when the first decoding fails.

    Examples:
        >>> from pyfsonoma import SicAssumption
        >>> SicAssumption("imperfect") is SicAssumption.IMPERFECT
        True
    """

    PERFECT = "perfect"
    IMPERFECT = "imperfect"
    WORST_CASE = "worst_case"


class Scheme(str, Enum):
    """Multiple-access schemes.

    Attributes:
        OPTIMAL_DYNAMIC_NOMA: NOMA with the outage-optimal decoding order.
        FIXED_NOMA: NOMA decoding the closer BS1 first.
        SORTED_DYNAMIC_NOMA: NOMA decoding the stronger signal first.
        OMA: Time sharing with doubled rates and no interference.
        INTERFERENCE_FREE_BOUND: Each BS decoded as if alone.
    """

    OPTIMAL_DYNAMIC_NOMA = "optimal"
    FIXED_NOMA = "fixed"
    SORTED_DYNAMIC_NOMA = "sorted"
    OMA = "oma"
    INTERFERENCE_FREE_BOUND = "bound"


class AsymptoticRegime(str, Enum):
    """High-SNR behaviour of the optimal scheme.

    Attributes:
        NO_FLOOR: Outage vanishes as power grows (threshold product < 1).
        FLOOR: Outage saturates at a nonzero floor (threshold product >= 1).
    """

    NO_FLOOR = "NoFloor"
    FLOOR = "Floor"


class OutageMethod(str, Enum):
    """How an outage probability was obtained."""

    MONTE_CARLO = "mc"
    QUADRATURE = "quadrature"
    ASYMPTOTIC = "asymptotic"


_E = TypeVar("_E", bound=Enum)


def parse_enum(enum_cls: type[_E], value: str | _E, parameter: str) -> _E:
    """Normalise a user-supplied string to a member of ``enum_cls``.

    Matching is case-insensitive and treats hyphens as underscores.

    Args:
        enum_cls: The enum class to parse into.
        value: String value or an existing member.
        parameter: Name reported in the error.

    Returns:
        The corresponding enum member.

    Raises:
        ValidationError: If the value matches no member.

    Examples:
        >>> parse_enum(SicAssumption, "Worst-Case", "sic")
        <SicAssumption.WORST_CASE: 'worst_case'>
    """
    if isinstance(value, enum_cls):
        return value

    normalised = str(value).lower().strip().replace("-", "_")
    for member in enum_cls:
        if str(member.value).lower() == normalised:
            return member

    valid = ", ".join(f'"{m.value}"' for m in enum_cls)
    raise ValidationError(
        f"Invalid {parameter} value: {value!r}. Valid options are: {valid}.",
        parameter=parameter,
        value=value,
    )


def _require(condition: bool, message: str, parameter: str, value: object) -> None:
    """Raise ValidationError unless ``condition`` holds."""
    if not condition:
        raise ValidationError(message, parameter=parameter, value=value)


# =============================================================================
# Numerical Control
# =============================================================================


@dataclass(frozen=True, slots=True)
class SeriesControl:
    """Convergence control for power series.

    Attributes:
        max_terms: Maximum number of terms to sum.
        rel_tol: Summation stops once a term is below ``rel_tol`` times the
            partial sum.
    """

    max_terms: int = SERIES_MAX_TERMS
    rel_tol: float = SERIES_REL_TOL

    def __post_init__(self) -> None:
        _require(self.max_terms >= 1, "max_terms must be at least 1", "max_terms", self.max_terms)
        _require(0.0 < self.rel_tol < 1.0, "rel_tol must lie in (0, 1)", "rel_tol", self.rel_tol)


@dataclass(frozen=True, slots=True)
class QuadratureControl:
    """Tolerances and truncation for adaptive quadrature.

    Attributes:
        abs_tol: Absolute error target passed to the integrator.
        rel_tol: Relative error target passed to the integrator.
        max_subdivisions: Subinterval limit of the integrator.
        tail_probability: Gamma-Gamma mass allowed beyond the truncated
            upper limit. Must not exceed ``abs_tol / 10``.
        upper_cutoff: Explicit truncation point. When None the
            ``1 - tail_probability`` quantile is used.
    """

    abs_tol: float = QUAD_ABS_TOL
    rel_tol: float = QUAD_REL_TOL
    max_subdivisions: int = QUAD_MAX_SUBDIVISIONS
    tail_probability: float = TAIL_PROBABILITY
    upper_cutoff: float | None = None

    def __post_init__(self) -> None:
        _require(0.0 < self.abs_tol < 1.0, "abs_tol must lie in (0, 1)", "abs_tol", self.abs_tol)
        _require(0.0 < self.rel_tol < 1.0, "rel_tol must lie in (0, 1)", "rel_tol", self.rel_tol)
        _require(
            self.max_subdivisions >= 1,
            "max_subdivisions must be at least 1",
            "max_subdivisions",
            self.max_subdivisions,
        )
        _require(
            0.0 < self.tail_probability <= self.abs_tol / 10.0,
            "tail_probability must lie in (0, abs_tol / 10]",
            "tail_probability",
            self.tail_probability,
        )
        if self.upper_cutoff is not None:
            _require(
                self.upper_cutoff > 0.0,
                "upper_cutoff must be positive",
                "upper_cutoff",
                self.upper_cutoff,
            )


# =============================================================================
# Physical Parameters
# =============================================================================


@dataclass(frozen=True, slots=True)
class OpticsParams:
    """Transceiver optics and receiver noise.

    Attributes:
        responsivity: Photodetector responsivity rho (A/W).
        aperture_radius: Receive aperture radius r (m).
        divergence: Beam divergence angle phi (rad).
        noise_variance: Receiver noise variance (A^2).

    Examples:
        >>> optics = OpticsParams.default()
        >>> optics.divergence
        0.002
    """

    responsivity: float
    aperture_radius: float
    divergence: float
    noise_variance: float

    def __post_init__(self) -> None:
        for name in ("responsivity", "aperture_radius", "divergence", "noise_variance"):
            value = getattr(self, name)
            _require(math.isfinite(value) and value > 0.0, f"{name} must be positive", name, value)

    @classmethod
    def default(cls) -> OpticsParams:
        """Return the default simulation optics."""
        return cls(
            responsivity=DEFAULT_RESPONSIVITY,
            aperture_radius=DEFAULT_APERTURE_RADIUS,
            divergence=DEFAULT_DIVERGENCE,
            noise_variance=DEFAULT_NOISE_VARIANCE,
        )


@dataclass(frozen=True, slots=True)
class TurbulenceParams:
    """Gamma-Gamma shape parameters.

    The difference ``alpha - beta`` must not be an integer: both the CDF
    residue series and the Bessel evaluation need a non-integer order.

    Attributes:
        alpha: Shape of the large-scale eddy factor.
        beta: Shape of the small-scale eddy factor.
    """

    alpha: float
    beta: float

    def __post_init__(self) -> None:
        _require(self.alpha > 0.0, "alpha must be positive", "alpha", self.alpha)
        _require(self.beta > 0.0, "beta must be positive", "beta", self.beta)
        order = self.alpha - self.beta
        _require(
            abs(order - round(order)) >= INTEGER_ORDER_TOLERANCE,
            f"alpha - beta = {order:g} must not be an integer",
            "alpha",
            self.alpha,
        )

    @classmethod
    def default(cls) -> TurbulenceParams:
        """Return the default turbulence (alpha, beta) = (2.23, 1.54)."""
        return cls(alpha=DEFAULT_ALPHA, beta=DEFAULT_BETA)

    @property
    def order(self) -> float:
        """Bessel order alpha - beta of the density."""
        return self.alpha - self.beta

    @property
    def product(self) -> float:
        """The product alpha * beta."""
        return self.alpha * self.beta


@dataclass(frozen=True, slots=True)
class LinkBudget:
    """Deterministic gains of one FSO link.

    The electrical SNR of a draw is ``gamma = e * h**2`` for fade ``h``.

    Attributes:
        path_loss: Atmospheric path loss in (0, 1].
        geo_loss: Geometric (beam divergence) loss in (0, 1].
        e: Power-dependent SNR coefficient.
        c: Power-independent coefficient rho^2 * path_loss^2 * geo_loss^2.
    """

    path_loss: float
    geo_loss: float
    e: float
    c: float

    def __post_init__(self) -> None:
        _require(
            0.0 < self.path_loss <= 1.0, "path_loss must lie in (0, 1]", "path_loss", self.path_loss
        )
        _require(
            0.0 < self.geo_loss <= 1.0, "geo_loss must lie in (0, 1]", "geo_loss", self.geo_loss
        )
        _require(self.e >= 0.0, "e must be nonnegative", "e", self.e)
        _require(self.c >= 0.0, "c must be nonnegative", "c", self.c)

    @property
    def snr_scale(self) -> float:
        """The transmit SNR e / c = P^2 / noise_variance."""
        return self.e / self.c if self.c > 0.0 else math.inf


# =============================================================================
# NOMA Decoding
# =============================================================================


@dataclass(frozen=True, slots=True)
class DecodingOrder:
    """Ordered pair of base station indices.

    Attributes:
        first: BS decoded first (sees the other as interference).
        second: BS decoded after cancellation.
    """

    first: int
    second: int

    def __post_init__(self) -> None:
        _require(
            {self.first, self.second} == {1, 2},
            "decoding order must be a permutation of (1, 2)",
            "order",
            (self.first, self.second),
        )

    @property
    def bs1_first(self) -> bool:
        """True when BS1 is decoded first."""
        return self.first == 1

    def __str__(self) -> str:
        return f"({self.first},{self.second})"


BS1_FIRST = DecodingOrder(1, 2)
BS2_FIRST = DecodingOrder(2, 1)


@dataclass(frozen=True, slots=True)
class ChannelDraw:
    """Electrical SNRs of one fading realisation.

    Attributes:
        gamma1: SNR of BS1.
        gamma2: SNR of BS2.
    """

    gamma1: float
    gamma2: float

    def __post_init__(self) -> None:
        _require(self.gamma1 >= 0.0, "gamma1 must be nonnegative", "gamma1", self.gamma1)
        _require(self.gamma2 >= 0.0, "gamma2 must be nonnegative", "gamma2", self.gamma2)


@dataclass(frozen=True, slots=True)
class QosThresholds:
    """Target rates and the SINR thresholds they imply.

    Build instances with ``pyfsonoma.noma.qos_thresholds`` so that the
    thresholds are consistent with the rates.

    Attributes:
        gamma1_thr: SINR threshold of BS1.
        gamma2_thr: SINR threshold of BS2.
        rate1: Target rate of BS1 (bits/symbol).
        rate2: Target rate of BS2 (bits/symbol).
    """

    gamma1_thr: float
    gamma2_thr: float
    rate1: float
    rate2: float

    def __post_init__(self) -> None:
        for name in ("gamma1_thr", "gamma2_thr", "rate1", "rate2"):
            value = getattr(self, name)
            _require(value >= 0.0, f"{name} must be nonnegative", name, value)

    @property
    def product(self) -> float:
        """Product of the two thresholds."""
        return self.gamma1_thr * self.gamma2_thr

    @property
    def regime(self) -> AsymptoticRegime:
        """High-SNR regime of the optimal scheme."""
        return AsymptoticRegime.NO_FLOOR if self.product < 1.0 else AsymptoticRegime.FLOOR


@dataclass(frozen=True, slots=True)
class OutageEvents:
    """Outage indicators of one draw (True means outage)."""

    oe1: bool
    oe2: bool


@dataclass(frozen=True, slots=True)
class SchemeSpec:
    """A scheme and the SIC assumption it is evaluated under."""

    scheme: Scheme
    sic: SicAssumption

    def __str__(self) -> str:
        return f"{self.scheme.value}/{self.sic.value}"


# =============================================================================
# Results
# =============================================================================


@dataclass(frozen=True, slots=True)
class McConfig:
    """Monte Carlo sampling configuration.

    The estimate is a deterministic function of all three fields.

    Attributes:
        n_samples: Number of fade pairs to draw.
        seed: Root seed (0 <= seed < 2**64).
        chunk_size: Samples per independent substream.
    """

    n_samples: int = MC_DEFAULT_SAMPLES
    seed: int = MC_DEFAULT_SEED
    chunk_size: int = MC_DEFAULT_CHUNK_SIZE

    def __post_init__(self) -> None:
        _require(self.n_samples >= 1, "n_samples must be at least 1", "n_samples", self.n_samples)
        _require(
            self.chunk_size >= 1, "chunk_size must be at least 1", "chunk_size", self.chunk_size
        )
        _require(0 <= self.seed < 2**64, "seed must be a 64-bit unsigned value", "seed", self.seed)

    @property
    def n_chunks(self) -> int:
        """Number of substreams the samples are split into."""
        return -(-self.n_samples // self.chunk_size)

    def chunk_sizes(self) -> list[int]:
        """Sample count of every chunk, in chunk-index order."""
        full, rest = divmod(self.n_samples, self.chunk_size)
        return [self.chunk_size] * full + ([rest] if rest else [])


@dataclass(frozen=True, slots=True)
class OutageResult:
    """Outage probability tagged with the method that produced it.

    Attributes:
        probability: Outage probability in [0, 1].
        method: How the value was computed.
        uncertainty: Standard error (Monte Carlo) or error estimate
            (quadrature); None for asymptotic values.
    """

    probability: float
    method: OutageMethod
    uncertainty: float | None = None

    def __post_init__(self) -> None:
        _require(
            0.0 <= self.probability <= 1.0,
            "probability must lie in [0, 1]",
            "probability",
            self.probability,
        )


@dataclass(frozen=True, slots=True)
class OutageEstimate:
    """Monte Carlo outage frequency.

    Attributes:
        p_hat: Fraction of draws in outage.
        stderr: Binomial standard error; ``3 / n`` when no event was seen.
        n_samples: Number of draws.
        n_events: Number of draws in outage.
    """

    p_hat: float
    stderr: float
    n_samples: int
    n_events: int

    def __post_init__(self) -> None:
        _require(0.0 <= self.p_hat <= 1.0, "p_hat must lie in [0, 1]", "p_hat", self.p_hat)
        _require(self.stderr >= 0.0, "stderr must be nonnegative", "stderr", self.stderr)

    @classmethod
    def from_count(cls, n_events: int, n_samples: int) -> OutageEstimate:
        """Build an estimate from an event count.

        Examples:
            >>> OutageEstimate.from_count(0, 1000).stderr
            0.003
        """
        p_hat = n_events / n_samples
        if n_events == 0:
            stderr = 3.0 / n_samples
        else:
            stderr = math.sqrt(p_hat * (1.0 - p_hat) / n_samples)
        return cls(p_hat=p_hat, stderr=stderr, n_samples=n_samples, n_events=n_events)

    @property
    def below_floor(self) -> bool:
        """True when too few events were seen to trust the estimate."""
        return self.n_events < MC_MIN_EVENTS

    def as_result(self) -> OutageResult:
        """Return the estimate as a tagged OutageResult."""
        return OutageResult(self.p_hat, OutageMethod.MONTE_CARLO, self.stderr)


@dataclass(frozen=True, slots=True)
class AsymptoticOutage:
    """High-SNR outage approximation of the optimal scheme.

    Attributes:
        regime: Whether the outage decays or saturates.
        value: Approximate outage probability.
        argument: Argument passed to the small-argument CDF (NoFloor), or
            None for the floor.
    """

    regime: AsymptoticRegime
    value: float
    argument: float | None = None

    def as_result(self) -> OutageResult:
        """Return the approximation as a tagged OutageResult."""
        return OutageResult(min(max(self.value, 0.0), 1.0), OutageMethod.ASYMPTOTIC)
